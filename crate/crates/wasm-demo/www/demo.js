import init, { classifyMatrix, completeVector, simulateLoop } from "./pkg/monodromy_wasm.js";

const A = 1, B = -1;

function show(el, fn) {
  el.classList.remove("error");
  try {
    el.textContent = fn();
  } catch (e) {
    el.classList.add("error");
    el.textContent = String(e.message ?? e);
    return null;
  }
}

function pretty(json) {
  return JSON.stringify(JSON.parse(json), null, 2).replace(/\[\s+(-?\d+),\s+(-?\d+)(,\s+(-?\d+))?\s+\]/g,
    (_, a, b, _c, d) => d === undefined ? `[${a}, ${b}]` : `[${a}, ${b}, ${d}]`);
}

// lower boundary of the image of (J, H): min over r of j²/2r² + a r⁴ + b r²
function hMin(j) {
  let best = Infinity;
  for (let i = 1; i <= 400; i++) {
    const r = 2 * i / 400;
    best = Math.min(best, j * j / (2 * r * r) + A * r ** 4 + B * r * r);
  }
  return best;
}

function axes(ctx, xs, ys, pad = 30) {
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const w = ctx.canvas.width, h = ctx.canvas.height;
  const sx = x => pad + (x - x0) / (x1 - x0 || 1) * (w - 2 * pad);
  const sy = y => h - pad - (y - y0) / (y1 - y0 || 1) * (h - 2 * pad);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "10px sans-serif";
  ctx.fillText(x0.toPrecision(3), pad, h - 10);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - 10);
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  return [sx, sy];
}

function line(ctx, pts, sx, sy, color) {
  ctx.strokeStyle = color;
  ctx.beginPath();
  pts.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
  ctx.stroke();
}

function plotPlane(samples) {
  const ctx = document.getElementById("plane").getContext("2d");
  const js = samples.map(s => s.j), hs = samples.map(s => s.h);
  const span = Math.max(...js.map(Math.abs), 0.05) * 1.5;
  const boundary = [];
  for (let i = 0; i <= 100; i++) {
    const j = -span + 2 * span * i / 100;
    boundary.push([j, hMin(j)]);
  }
  const [sx, sy] = axes(ctx, [-span, span], [...hs, ...boundary.map(p => p[1]), 0]);
  line(ctx, boundary, sx, sy, "#888");
  ctx.fillStyle = "#d00";
  ctx.beginPath();
  ctx.arc(sx(0), sy(0), 4, 0, 2 * Math.PI);
  ctx.fill();
  line(ctx, samples.map(s => [s.j, s.h]), sx, sy, "#06c");
  ctx.fillStyle = "#222";
  ctx.fillText("(J, H) loop", 40, 20);
}

function plotSeries(id, title, samples, series) {
  const ctx = document.getElementById(id).getContext("2d");
  const ys = series.flatMap(({ key }) => samples.map(s => s[key]));
  const [sx, sy] = axes(ctx, [0, 1], ys);
  series.forEach(({ key, color }) => line(ctx, samples.map(s => [s.s, s[key]]), sx, sy, color));
  ctx.fillStyle = "#222";
  ctx.fillText(title, 40, 20);
}

function runSimulation(ev) {
  ev?.preventDefault();
  const f = new FormData(document.getElementById("simulate-form"));
  const num = k => Number(f.get(k));
  const out = document.getElementById("simulate-out");
  show(out, () => {
    const { report, samples } = JSON.parse(
      simulateLoop(num("cj"), num("ch"), num("rj"), num("rh"), num("n"), f.get("orientation") === "cw"));
    plotPlane(samples);
    plotSeries("theta", "unwrapped rotation angle vs s", samples, [{ key: "theta_unwrapped", color: "#06c" }]);
    plotSeries("actions", "I1 (blue), I2 (orange) vs s", samples,
      [{ key: "i1", color: "#06c" }, { key: "i2", color: "#e80" }]);
    return pretty(JSON.stringify(report));
  });
}

await init();
document.getElementById("simulate-form").addEventListener("submit", runSimulation);
document.getElementById("classify-run").addEventListener("click", () =>
  show(document.getElementById("classify-out"), () => pretty(classifyMatrix(document.getElementById("classify-in").value))));
document.getElementById("complete-run").addEventListener("click", () =>
  show(document.getElementById("complete-out"), () => pretty(completeVector(document.getElementById("complete-in").value))));
runSimulation();
