//! Exact scalars in `Q(2cos(π/L))`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};
use crate::field::CycloField;

/// An exact element of a real cyclotomic field.
///
/// The value is `(Σ_j num[j] b_j) / den` in the cosine basis of the field
/// (`b_0 = 1`, `b_j = 2cos(jπ/L)`). The representation is normalized: `den > 0`
/// and the content of `num` is coprime to `den`.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scalar {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Scalar {
        debug_assert_eq!(num.len(), field.degree());
        let mut s = Scalar { field, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for x in self.num.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero_in(field: &Arc<CycloField>) -> Scalar {
        Scalar {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn from_ratio_in(field: &Arc<CycloField>, q: &BigRational) -> Scalar {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Scalar::from_parts(field.clone(), num, q.denom().clone())
    }

    pub fn from_int_in(field: &Arc<CycloField>, v: i64) -> Scalar {
        Scalar::from_ratio_in(field, &BigRational::from_integer(v.into()))
    }

    /// A rational number in the rational field.
    pub fn rational(numer: i64, denom: i64) -> Scalar {
        Scalar::from_ratio_in(
            &CycloField::rational(),
            &BigRational::new(numer.into(), denom.into()),
        )
    }

    pub fn zero() -> Scalar {
        Scalar::zero_in(&CycloField::rational())
    }

    pub fn one() -> Scalar {
        Scalar::rational(1, 1)
    }

    /// `θ = 2cos(π/L)`.
    pub fn theta(field: &Arc<CycloField>) -> Scalar {
        Scalar::from_parts(field.clone(), field.cosine(1), BigInt::one())
    }

    /// `2cos(kπ/L)`.
    pub fn two_cos(field: &Arc<CycloField>, k: usize) -> Scalar {
        Scalar::from_parts(field.clone(), field.cosine(k), BigInt::one())
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when the value is a rational number.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-express this value in `target`, whose level must be a multiple of
    /// ours (rational values move anywhere).
    pub fn lift_to(&self, target: &Arc<CycloField>) -> Scalar {
        if Arc::ptr_eq(&self.field, target) {
            return self.clone();
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); target.degree()];
            num[0] = self.num[0].clone();
            return Scalar::from_parts(target.clone(), num, self.den.clone());
        }
        let num = self.field.embed_into(&self.num, target);
        Scalar::from_parts(target.clone(), num, self.den.clone())
    }

    fn unify<'a>(
        a: &'a Scalar,
        b: &'a Scalar,
    ) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        if Arc::ptr_eq(&a.field, &b.field) {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if a.field.level() == b.field.level() {
            return (Cow::Borrowed(a), Cow::Owned(b.lift_to(&a.field)));
        }
        if a.is_rational() {
            return (Cow::Owned(a.lift_to(&b.field)), Cow::Borrowed(b));
        }
        if b.is_rational() {
            return (Cow::Borrowed(a), Cow::Owned(b.lift_to(&a.field)));
        }
        let level = a.field.level().lcm(&b.field.level());
        let field = CycloField::get(level);
        (Cow::Owned(a.lift_to(&field)), Cow::Owned(b.lift_to(&field)))
    }

    fn add_impl(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
        let (a, b) = Scalar::unify(a, b);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate_b {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Scalar::from_parts(a.field.clone(), num, &a.den * &b.den)
    }

    fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
        let (a, b) = Scalar::unify(a, b);
        if a.is_zero() || b.is_zero() {
            return Scalar::zero_in(&a.field);
        }
        let num = if b.is_rational() {
            a.num.iter().map(|x| x * &b.num[0]).collect()
        } else if a.is_rational() {
            b.num.iter().map(|x| x * &a.num[0]).collect()
        } else {
            a.field.mul(&a.num, &b.num)
        };
        Scalar::from_parts(a.field.clone(), num, &a.den * &b.den)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.field.degree()];
            num[0] = self.den.clone();
            return Some(Scalar::from_parts(
                self.field.clone(),
                num,
                self.num[0].clone(),
            ));
        }
        // Solve (num · y) = 1 through the multiplication matrix of num.
        let d = self.field.degree();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut basis = vec![BigInt::zero(); d];
            basis[j] = BigInt::one();
            columns.push(self.field.mul(&self.num, &basis));
        }
        let mut rhs = vec![BigInt::zero(); d];
        rhs[0] = BigInt::one();
        let (sol, det) = solve_integer(columns, rhs)?;
        let num = sol.into_iter().map(|x| x * &self.den).collect();
        Some(Scalar::from_parts(self.field.clone(), num, det))
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating-point approximation of the value.
    pub fn to_f64(&self) -> f64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let num: f64 = self
            .num
            .iter()
            .zip(self.field.approx())
            .map(|(x, a)| x.to_f64().unwrap_or(f64::NAN) * a)
            .sum();
        if num.is_finite() && den.is_finite() {
            return num / den;
        }
        let prec = 128;
        let fixed = self.field.fixed_basis(prec);
        let total: BigInt = self.num.iter().zip(&fixed).map(|(x, f)| x * f).sum();
        let q = BigRational::new(total, &self.den << prec);
        q.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.num[0].is_positive() { 1 } else { -1 };
        }
        if let Some(s) = self.float_sign() {
            return s;
        }
        let mut prec = 128u32;
        loop {
            let fixed = self.field.fixed_basis(prec);
            let mut total = BigInt::zero();
            let mut err = BigInt::zero();
            for (x, f) in self.num.iter().zip(&fixed) {
                total += x * f;
                err += x.abs() * 4u32;
            }
            if total.abs() > err {
                return if total.is_positive() { 1 } else { -1 };
            }
            prec *= 2;
            assert!(prec < 1 << 20, "sign refinement did not terminate");
        }
    }

    fn float_sign(&self) -> Option<i32> {
        let eps = f64::EPSILON;
        let d = self.num.len() as f64;
        let mut value = 0.0;
        let mut mag = 0.0;
        for (x, a) in self.num.iter().zip(self.field.approx()) {
            let xf = x.to_f64()?;
            if !xf.is_finite() {
                return None;
            }
            value += xf * a;
            mag += xf.abs() * a.abs().max(1.0);
        }
        // cos() and product/summation rounding, generously bounded
        let err = mag * eps * (d + 16.0) * 8.0;
        if value.abs() > err && err.is_finite() {
            Some(if value > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    /// Field-independent rational invariant used for hashing (the trace
    /// divided by the field degree).
    pub fn normalized_trace(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (x, t) in self.num.iter().zip(self.field.traces()) {
            if !x.is_zero() {
                total += t * BigRational::from_integer(x.clone());
            }
        }
        total / BigRational::from_integer(self.den.clone())
    }

    /// Coefficients of the value as a polynomial in `θ_L` of degree `< D`.
    pub fn theta_poly(&self) -> Vec<BigRational> {
        let d = self.field.degree();
        if d == 1 {
            return vec![BigRational::new(self.num[0].clone(), self.den.clone())];
        }
        let lucas = self.field.lucas();
        let mut poly = vec![BigInt::zero(); d];
        for (j, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in lucas[j].iter().enumerate() {
                poly[i] += x * c;
            }
        }
        poly.into_iter()
            .map(|c| BigRational::new(c, self.den.clone()))
            .collect()
    }

    /// Build a value from polynomial coefficients in `θ_L`.
    pub fn from_theta_poly(field: &Arc<CycloField>, coeffs: &[BigRational]) -> Scalar {
        let theta = Scalar::theta(field);
        let mut acc = Scalar::zero_in(field);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &theta) + &Scalar::from_ratio_in(field, c);
        }
        acc
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson {
            poly: self
                .theta_poly()
                .iter()
                .map(|q| {
                    if q.is_integer() {
                        q.numer().to_string()
                    } else {
                        format!("{}/{}", q.numer(), q.denom())
                    }
                })
                .collect(),
            level: self.field.level(),
        }
    }

    pub fn from_json(json: &ScalarJson) -> Result<Scalar> {
        let field = CycloField::get(json.level);
        let coeffs = json
            .poly
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scalar::from_theta_poly(&field, &coeffs))
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || CoxeterError::Parse {
        position: 0,
        message: format!("invalid rational '{s}'"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serialized form of a [`Scalar`]: coefficients of a polynomial in
/// `θ_L = 2cos(π/L)`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub poly: Vec<String>,
    #[serde(rename = "L")]
    pub level: u32,
}

/// Solve `M y = rhs` for an integer matrix given by columns. Returns the
/// numerators and the common denominator, or `None` when singular.
fn solve_integer(columns: Vec<Vec<BigInt>>, rhs: Vec<BigInt>) -> Option<(Vec<BigInt>, BigInt)> {
    let n = rhs.len();
    // augmented row-major matrix
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    // Bareiss elimination to upper triangular form
    let mut prev = BigInt::one();
    let mut sign_flip = false;
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[r][k].is_zero())?;
        if pivot_row != k {
            a.swap(pivot_row, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let _ = sign_flip;
    // back substitution over rationals
    let mut sol = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(a[i][j].clone()) * &sol[j];
        }
        sol[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    let mut den = BigInt::one();
    for q in &sol {
        den = den.lcm(q.denom());
    }
    let num = sol
        .into_iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    Some((num, den))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        let (a, b) = Scalar::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized_trace().hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Scalar::add_impl(a, b, false));
binop!(Sub, sub, |a, b| Scalar::add_impl(a, b, true));
binop!(Mul, mul, Scalar::mul_impl);
binop!(Div, div, |a: &Scalar, b: &Scalar| {
    a * &b.inverse().expect("division by zero scalar")
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<i64> for &Scalar {
    type Output = Scalar;
    fn mul(self, k: i64) -> Scalar {
        let num = self.num.iter().map(|x| x * k).collect();
        Scalar::from_parts(self.field.clone(), num, self.den.clone())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (L={})", self, self.field.level())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.theta_poly();
        let terms: Vec<String> = poly
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let coeff = if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}·θ"),
                    _ => format!("{coeff}·θ^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}
