import init, { explore, gram_matrix, orbit } from "./pkg/coxeter_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function svgEl(name, attrs, text) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

function call(fn, out, ...args) {
  const res = JSON.parse(fn(...args));
  if (res.error) {
    out.className = "error";
    out.textContent = res.error;
    return null;
  }
  out.className = "";
  return res.ok;
}

// Vertices on a circle; labels shown for m >= 4 as usual.
function drawGraph(svg, data) {
  svg.replaceChildren();
  const n = data.vertices.length;
  const w = +svg.getAttribute("width"), h = +svg.getAttribute("height");
  const r = Math.min(w, h) / 2 - 30;
  const pos = {};
  data.vertices.forEach((v, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pos[v] = [w / 2 + r * Math.cos(a), h / 2 + r * Math.sin(a)];
  });
  for (const e of data.edges) {
    const [x1, y1] = pos[e.u], [x2, y2] = pos[e.v];
    svg.append(svgEl("line", { x1, y1, x2, y2, stroke: "#555" }));
    if (e.label !== "3") {
      svg.append(svgEl("text", { x: (x1 + x2) / 2 + 4, y: (y1 + y2) / 2 - 4, fill: "#06c" }, e.label));
    }
  }
  const classOf = {};
  for (const c of data.classify.components) for (const v of c.vertices) classOf[v] = c.class;
  const colour = { spherical: "#7bc67b", affine: "#f0c05a", indefinite: "#e57373" };
  for (const v of data.vertices) {
    const [cx, cy] = pos[v];
    svg.append(svgEl("circle", { cx, cy, r: 6, fill: colour[classOf[v]], stroke: "#333" }));
    svg.append(svgEl("text", { x: cx + 8, y: cy + 14 }, v));
  }
}

function runExplore() {
  const out = $("explore-out");
  const data = call(explore, out, $("explore-spec").value);
  if (!data) return $("explore-svg").replaceChildren();
  drawGraph($("explore-svg"), data);
  out.textContent = data.text;
}

function runGram() {
  const out = $("gram-out");
  const data = call(gram_matrix, out, $("gram-spec").value);
  const host = $("gram-table");
  host.replaceChildren();
  if (!data) return;
  const table = document.createElement("table");
  table.className = "matrix";
  const head = table.insertRow();
  head.append(document.createElement("th"));
  for (const v of data.vertices) head.append(Object.assign(document.createElement("th"), { textContent: v }));
  data.approx.forEach((row, i) => {
    const tr = table.insertRow();
    tr.append(Object.assign(document.createElement("th"), { textContent: data.vertices[i] }));
    row.forEach((x, j) => {
      const td = tr.insertCell();
      td.textContent = x.toFixed(4);
      td.title = data.exact[i][j];
    });
  });
  host.append(table);
  out.textContent =
    `field level L = ${data.level} (θ = 2cos(π/L))\n` +
    `det B = ${data.determinant.exact} ≈ ${data.determinant.approx.toFixed(6)}\n` +
    `form: ${data.definiteness.verdict}\n\nnon-degenerate extension:\n${data.text}`;
}

function runOrbit() {
  const out = $("orbit-out");
  const data = call(orbit, out, $("orbit-spec").value, $("orbit-word").value, $("orbit-root").value, +$("orbit-steps").value);
  const svg = $("orbit-svg");
  svg.replaceChildren();
  if (!data) return;
  const step = Math.min(40, 880 / data.orbit.length);
  data.orbit.forEach((p, i) => {
    const x = 10 + i * step;
    svg.append(svgEl("rect", { x, y: p.positive ? 10 : 30, width: step - 2, height: 20, fill: p.positive ? "#4a90d9" : "#d9534f" }));
    if (data.orbit.length <= 30 || p.m % 5 === 0) svg.append(svgEl("text", { x, y: 65 }, p.m));
  });
  const lines = [`w = ${data.word.join(" ")}`, `verdict: ${data.parity.verdict}`];
  if (data.parity.separation_indices.length) lines.push(`separations at m = ${data.parity.separation_indices.join(", ")}`);
  lines.push("", ...data.orbit.map((p) => `m = ${p.m}: ${p.exact} ${p.positive ? "+" : "-"}`));
  out.textContent = lines.join("\n");
}

await init();
$("explore-run").onclick = runExplore;
$("gram-run").onclick = runGram;
$("orbit-run").onclick = runOrbit;
runExplore();
runGram();
runOrbit();
