//! The real cyclotomic fields `Q(2cos(π/L))`.
//!
//! Elements are stored in the cosine basis `b_0 = 1`, `b_j = 2cos(jπ/L)` for
//! `1 <= j < D`, where `D = φ(2L)/2` is the degree of the field. In this basis
//! the Gram entries `-cos(π/m)` are (almost always) single basis vectors and
//! products obey `c_i c_j = c_{i+j} + c_{|i-j|}`, so multiplication only needs
//! a sparse reduction rule for `c_k` with `k >= D`. That rule comes from the
//! palindromic cyclotomic polynomial `Φ_{2L}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field `Q(θ_L)` with `θ_L = 2cos(π/L)`.
#[derive(Debug)]
pub struct CycloField {
    level: u32,
    degree: usize,
    /// `c_D = -rel_const - Σ_j rel[j] c_j`, sparse over `1 <= j < D`.
    rel_const: i64,
    rel: Vec<(usize, i64)>,
    approx: Vec<f64>,
    traces: Vec<BigRational>,
    fixed: Mutex<Option<(u32, Vec<BigInt>)>>,
    lucas: OnceLock<Vec<Vec<BigInt>>>,
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// Shared handle on `Q(2cos(π/level))`. Levels below 2 map to level 2.
    pub fn get(level: u32) -> Arc<CycloField> {
        let level = level.max(2);
        let mut map = registry().lock().expect("field registry poisoned");
        map.entry(level)
            .or_insert_with(|| Arc::new(CycloField::build(level)))
            .clone()
    }

    /// The rational field (level 2, `θ = 0`).
    pub fn rational() -> Arc<CycloField> {
        CycloField::get(2)
    }

    fn build(level: u32) -> CycloField {
        let n = 2 * level as u64;
        let phi = cyclotomic(n);
        let degree = phi.len() / 2;
        debug_assert_eq!(phi.len(), 2 * degree + 1);
        let coeff =
            |i: usize| -> i64 { i64::try_from(phi[i]).expect("cyclotomic coefficient overflow") };
        let rel_const = coeff(degree);
        let rel = (1..degree)
            .map(|j| (j, coeff(degree + j)))
            .filter(|&(_, r)| r != 0)
            .collect();
        let approx = (0..degree)
            .map(|j| {
                if j == 0 {
                    1.0
                } else {
                    2.0 * (j as f64 * std::f64::consts::PI / level as f64).cos()
                }
            })
            .collect();
        let traces = (0..degree)
            .map(|j| {
                if j == 0 {
                    BigRational::one()
                } else {
                    BigRational::new(
                        BigInt::from(ramanujan_sum(n, j as u64)),
                        BigInt::from(degree as u64),
                    )
                }
            })
            .collect();
        CycloField {
            level,
            degree,
            rel_const,
            rel,
            approx,
            traces,
            fixed: Mutex::new(None),
            lucas: OnceLock::new(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub(crate) fn approx(&self) -> &[f64] {
        &self.approx
    }

    pub(crate) fn traces(&self) -> &[BigRational] {
        &self.traces
    }

    /// Reduce a long cosine vector (index 0 = constant, index `k` = `c_k`)
    /// to the `D` basis coordinates.
    pub(crate) fn reduce(&self, mut long: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if long.len() < d {
            long.resize(d, BigInt::zero());
        }
        for k in (d..long.len()).rev() {
            let t = std::mem::take(&mut long[k]);
            if t.is_zero() {
                continue;
            }
            if k == d {
                if self.rel_const != 0 {
                    long[0] -= &t * self.rel_const;
                }
                for &(j, r) in &self.rel {
                    long[j] -= &t * r;
                }
                continue;
            }
            // c_k = c_{k-D} c_D - c_{|k-2D|}
            if self.rel_const != 0 {
                add_c(&mut long, k - d, &(-(&t * self.rel_const)));
            }
            for &(j, r) in &self.rel {
                let tr = -(&t * r);
                add_c(&mut long, k - d + j, &tr);
                add_c(&mut long, (k - d).abs_diff(j), &tr);
            }
            add_c(&mut long, k.abs_diff(2 * d), &(-t));
        }
        long.truncate(d);
        long
    }

    /// Coordinates of `2cos(kπ/L)` for any integer `k >= 0`.
    pub(crate) fn cosine(&self, k: usize) -> Vec<BigInt> {
        let k = k % (2 * self.level as usize);
        let k = if k > self.level as usize {
            2 * self.level as usize - k
        } else {
            k
        };
        let mut long = vec![BigInt::zero(); (k + 1).max(self.degree)];
        add_c(&mut long, k, &BigInt::one());
        self.reduce(long)
    }

    /// Product of two coordinate vectors.
    pub(crate) fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        let mut long = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                if i == 0 || j == 0 {
                    long[i + j] += p;
                } else if i == j {
                    long[0] += &p * 2u32;
                    long[2 * i] += p;
                } else {
                    long[i.abs_diff(j)] += &p;
                    long[i + j] += p;
                }
            }
        }
        self.reduce(long)
    }

    /// `L`-level cosine `c_k` of this field written in the field of `target`
    /// (requires `self.level | target.level`).
    pub(crate) fn embed_into(&self, coords: &[BigInt], target: &CycloField) -> Vec<BigInt> {
        assert!(
            target.level.is_multiple_of(self.level) || self.is_rational(),
            "cannot embed level {} into level {}",
            self.level,
            target.level
        );
        if self.is_rational() {
            let mut v = vec![BigInt::zero(); target.degree];
            v[0] = coords[0].clone();
            return v;
        }
        let scale = (target.level / self.level) as usize;
        let len = ((self.degree - 1) * scale + 1).max(target.degree);
        let mut long = vec![BigInt::zero(); len];
        for (j, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if j == 0 {
                long[0] += x;
            } else {
                long[j * scale] += x;
            }
        }
        target.reduce(long)
    }

    /// Lucas-type polynomials: `b_j` as an integer polynomial in `θ`.
    pub(crate) fn lucas(&self) -> &[Vec<BigInt>] {
        self.lucas.get_or_init(|| {
            let d = self.degree;
            let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
            // V_0 = 2, V_1 = θ, V_j = θ V_{j-1} - V_{j-2}
            let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
            let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
            out.push(vec![BigInt::one()]);
            for _ in 1..=d {
                out.push(cur.clone());
                let mut next = vec![BigInt::zero(); cur.len() + 1];
                for (i, c) in cur.iter().enumerate() {
                    next[i + 1] += c;
                }
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= c;
                }
                prev = std::mem::replace(&mut cur, next);
            }
            out
        })
    }

    /// Monic minimal polynomial of `θ_L`, lowest degree first.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        let d = self.degree;
        let lucas = self.lucas();
        let mut poly = vec![BigInt::zero(); d + 1];
        for (i, c) in lucas[d].iter().enumerate() {
            poly[i] += c;
        }
        if d == 1 {
            // lucas[1] is θ itself; c_1 = -rel_const
            poly = vec![BigInt::from(self.rel_const), BigInt::one()];
            return poly;
        }
        poly[0] += self.rel_const;
        for &(j, r) in &self.rel {
            for (i, c) in lucas[j].iter().enumerate() {
                poly[i] += c * r;
            }
        }
        poly
    }

    /// Fixed-point approximations `round(b_j · 2^prec)` with absolute error
    /// at most 2 units.
    pub(crate) fn fixed_basis(&self, prec: u32) -> Vec<BigInt> {
        let mut guard = self.fixed.lock().expect("fixed-point cache poisoned");
        if let Some((p, v)) = guard.as_ref() {
            if *p >= prec {
                let shift = p - prec;
                return v.iter().map(|x| x >> shift).collect();
            }
        }
        let work = prec + 40;
        let pi = fixed_pi(work);
        let one = BigInt::one() << work;
        let mut out = Vec::with_capacity(self.degree);
        for j in 0..self.degree {
            if j == 0 {
                out.push(one.clone() >> 40u32);
                continue;
            }
            let angle = (&pi * BigInt::from(j as u64)) / BigInt::from(self.level);
            let c = fixed_cos(&angle, work);
            out.push((c * 2u32) >> 40u32);
        }
        *guard = Some((prec, out.clone()));
        out
    }
}

fn add_c(long: &mut Vec<BigInt>, idx: usize, t: &BigInt) {
    if idx >= long.len() {
        long.resize(idx + 1, BigInt::zero());
    }
    if idx == 0 {
        long[0] += t * 2u32;
    } else {
        long[idx] += t;
    }
}

/// π to `prec` fractional bits via Machin's formula.
fn fixed_pi(prec: u32) -> BigInt {
    let work = prec + 16;
    let atan_inv = |x: u64| -> BigInt {
        let one = BigInt::one() << work;
        let x2 = BigInt::from(x * x);
        let mut term = one / BigInt::from(x);
        let mut sum = term.clone();
        let mut k = 1u64;
        loop {
            term /= &x2;
            if term.is_zero() {
                break;
            }
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    pi >> 16u32
}

/// cos(x) for `0 <= x <= π/2` in fixed point with `prec` fractional bits.
fn fixed_cos(x: &BigInt, prec: u32) -> BigInt {
    let one = BigInt::one() << prec;
    let x2 = (x * x) >> prec;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 1u64;
    loop {
        term = (&term * &x2) >> prec;
        term /= BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Σ_{k ∈ (Z/n)^*} ζ_n^{jk}`.
fn ramanujan_sum(n: u64, j: u64) -> i64 {
    let g = n.gcd(&j);
    let q = n / g;
    mobius(q) * (totient(n) / totient(q)) as i64
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic(n: u64) -> Vec<i128> {
    let deg = totient(n) as usize;
    // power series modulo x^{deg+1} of Π_{d|n} (x^d - 1)^{μ(n/d)}
    let mut series = vec![0i128; deg + 1];
    series[0] = 1;
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    for &d in &divisors {
        let mu = mobius(n / d);
        let d = d as usize;
        match mu {
            1 => {
                // multiply by (x^d - 1)
                for i in (0..=deg).rev() {
                    let shifted = if i >= d { series[i - d] } else { 0 };
                    series[i] = shifted - series[i];
                }
            }
            -1 => {
                // divide by (x^d - 1) = -(1 - x^d)
                for i in 0..=deg {
                    if i >= d {
                        series[i] += series[i - d];
                    }
                }
                for c in series.iter_mut() {
                    *c = -*c;
                }
            }
            _ => {}
        }
    }
    series
}
