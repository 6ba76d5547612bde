import init, { trace, sweep, jump_order } from "./pkg/cc_wasm.js";

const $ = (id) => document.getElementById(id);

function fail(el, err) {
  el.textContent = String(err);
  el.className = "status error";
}

function ok(el, text) {
  el.textContent = text;
  el.className = "status";
}

// Forest trace

let current = null;

function layout(t, width, height) {
  const pad = 24;
  if (t.grid) {
    const [rows, cols] = t.grid;
    const dx = (width - 2 * pad) / Math.max(cols - 1, 1);
    const dy = (height - 2 * pad) / Math.max(rows - 1, 1);
    return Array.from({ length: t.n }, (_, v) => [
      pad + (v % cols) * dx,
      pad + Math.floor(v / cols) * dy,
    ]);
  }
  const r = Math.min(width, height) / 2 - pad;
  return Array.from({ length: t.n }, (_, v) => {
    const a = (2 * Math.PI * v) / Math.max(t.n, 1) - Math.PI / 2;
    return [width / 2 + r * Math.cos(a), height / 2 + r * Math.sin(a)];
  });
}

function rootOf(parents, v) {
  while (parents[v] !== v) v = parents[v];
  return v;
}

function hue(root) {
  return Math.round((root * 137.508) % 360);
}

function arrow(ctx, [x0, y0], [x1, y1], inset) {
  const dx = x1 - x0, dy = y1 - y0;
  const len = Math.hypot(dx, dy);
  if (len < 1e-6) return;
  const ux = dx / len, uy = dy / len;
  const ex = x1 - ux * inset, ey = y1 - uy * inset;
  ctx.beginPath();
  ctx.moveTo(x0 + ux * inset, y0 + uy * inset);
  ctx.lineTo(ex, ey);
  ctx.stroke();
  ctx.beginPath();
  ctx.moveTo(ex, ey);
  ctx.lineTo(ex - ux * 7 - uy * 3.5, ey - uy * 7 + ux * 3.5);
  ctx.lineTo(ex - ux * 7 + uy * 3.5, ey - uy * 7 - ux * 3.5);
  ctx.closePath();
  ctx.fill();
}

function drawTrace() {
  if (!current) return;
  const { t, pos } = current;
  const step = Number($("trace-step").value);
  const snap = t.snapshots[step];
  const canvas = $("trace-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const radius = Math.max(2, Math.min(7, 160 / Math.sqrt(t.n + 1)));

  // Edges of the segment that was just hooked are highlighted.
  const [lo, hi] = snap.phase === "hook"
    ? [t.boundaries[snap.segment], t.boundaries[snap.segment + 1]]
    : [0, 0];
  t.edges.forEach(([u, v], i) => {
    const active = i >= lo && i < hi;
    ctx.strokeStyle = active ? "#f0a020" : "#e4e4e4";
    ctx.lineWidth = active ? 2 : 1;
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  });

  ctx.lineWidth = 1.2;
  for (let v = 0; v < t.n; v++) {
    const p = snap.parents[v];
    if (p === v) continue;
    const color = `hsl(${hue(rootOf(snap.parents, v))} 70% 40%)`;
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    arrow(ctx, pos[v], pos[p], radius + 1);
  }
  for (let v = 0; v < t.n; v++) {
    const root = snap.parents[v] === v;
    ctx.fillStyle = `hsl(${hue(rootOf(snap.parents, v))} 70% ${root ? 35 : 65}%)`;
    ctx.beginPath();
    ctx.arc(...pos[v], root ? radius * 1.5 : radius, 0, 2 * Math.PI);
    ctx.fill();
  }

  const label = snap.phase === "init"
    ? "initial forest"
    : `segment ${snap.segment + 1}/${t.s}, after ${snap.phase}`;
  ok($("trace-status"),
    `${label}: ${snap.trees} trees\n` +
    `n=${t.n} m=${t.m} s=${t.s} components=${t.components} ` +
    `hook_traversal_steps=${t.counters.hook_traversal_steps} ` +
    `cas_failures=${t.counters.cas_failures} jump_steps=${t.counters.jump_steps}`);
}

function runTrace() {
  try {
    const t = JSON.parse(trace($("trace-spec").value.trim(), Number($("trace-s").value) || 0));
    const canvas = $("trace-canvas");
    current = { t, pos: layout(t, canvas.width, canvas.height) };
    const slider = $("trace-step");
    slider.max = t.snapshots.length - 1;
    slider.value = 0;
    drawTrace();
  } catch (err) {
    current = null;
    fail($("trace-status"), err);
  }
}

function stepBy(delta) {
  const slider = $("trace-step");
  slider.value = Math.min(Number(slider.max), Math.max(0, Number(slider.value) + delta));
  drawTrace();
}

// Segment sweep

function drawSweep(data) {
  const canvas = $("sweep-canvas");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  const left = 60, right = 20, top = 20, bottom = 36;
  ctx.clearRect(0, 0, w, h);
  const series = [
    ["hook_traversal_steps", "#2a6fb0"],
    ["cas_failures", "#c0392b"],
    ["jump_steps", "#27ae60"],
  ];
  const max = Math.max(1, ...data.rows.flatMap((r) => series.map(([k]) => r[k])));
  const maxS = data.rows[data.rows.length - 1].s;
  const x = (s) => left + ((s - 1) / Math.max(maxS - 1, 1)) * (w - left - right);
  const y = (v) => h - bottom - (v / max) * (h - top - bottom);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(left, top);
  ctx.lineTo(left, h - bottom);
  ctx.lineTo(w - right, h - bottom);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(max.toLocaleString(), 4, top + 4);
  ctx.fillText("0", left - 14, h - bottom + 4);
  ctx.fillText("s = 1", left - 10, h - bottom + 18);
  ctx.fillText(`s = ${maxS}`, w - right - 36, h - bottom + 18);

  if (data.auto_s <= maxS) {
    ctx.strokeStyle = "#aaa";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(x(data.auto_s), top);
    ctx.lineTo(x(data.auto_s), h - bottom);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillText(`auto s = ${data.auto_s}`, x(data.auto_s) + 4, top + 12);
  }

  series.forEach(([key, color], i) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    data.rows.forEach((r, j) => (j ? ctx.lineTo : ctx.moveTo).call(ctx, x(r.s), y(r[key])));
    ctx.stroke();
    ctx.fillStyle = color;
    ctx.fillText(key, w - right - 160, top + 14 + i * 15);
  });
  ctx.lineWidth = 1;
}

function runSweep() {
  try {
    const data = JSON.parse(sweep($("sweep-spec").value.trim(), Number($("sweep-max").value) || 1));
    drawSweep(data);
    const first = data.rows[0];
    const auto = data.rows.find((r) => r.s === data.auto_s);
    ok($("sweep-status"),
      `n=${data.n} m=${data.m} avg_degree=${data.avg_degree.toFixed(2)} auto s=${data.auto_s}\n` +
      `s=1: cas_failures=${first.cas_failures} hook_traversal_steps=${first.hook_traversal_steps}` +
      (auto ? `\ns=${auto.s}: cas_failures=${auto.cas_failures} hook_traversal_steps=${auto.hook_traversal_steps}` : ""));
  } catch (err) {
    fail($("sweep-status"), err);
  }
}

// Multi-jump order

function runJump() {
  try {
    const r = JSON.parse(jump_order(Number($("jump-k").value) || 0));
    const canvas = $("jump-canvas");
    const ctx = canvas.getContext("2d");
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const max = Math.max(1, r.descending);
    const width = canvas.width - 140;
    ctx.font = "12px system-ui";
    [["ascending", r.ascending, "#27ae60"], ["descending", r.descending, "#c0392b"]].forEach(
      ([name, value, color], i) => {
        const y = 18 + i * 46;
        ctx.fillStyle = "#444";
        ctx.fillText(name, 4, y + 16);
        ctx.fillStyle = color;
        ctx.fillRect(90, y, Math.max(1, (value / max) * width), 24);
        ctx.fillStyle = "#222";
        ctx.fillText(value.toLocaleString(), 96 + Math.max(1, (value / max) * width), y + 16);
      });
    ok($("jump-status"),
      `chain 0 <- 1 <- ... <- ${r.k}: ascending order makes ${r.ascending} writes, ` +
      `descending order makes ${r.descending}`);
  } catch (err) {
    fail($("jump-status"), err);
  }
}

await init();
$("trace-run").addEventListener("click", runTrace);
$("trace-step").addEventListener("input", drawTrace);
$("trace-prev").addEventListener("click", () => stepBy(-1));
$("trace-next").addEventListener("click", () => stepBy(1));
$("sweep-run").addEventListener("click", runSweep);
$("jump-run").addEventListener("click", runJump);
runTrace();
runSweep();
runJump();
