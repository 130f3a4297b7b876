import init, { tester_plan, weight_profile, learn_random } from "./pkg/pauliprobe_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(id, fn) {
  const out = $(id);
  try {
    const value = JSON.parse(fn());
    out.classList.remove("err");
    return value;
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
    return null;
  }
}

function bars(canvas, groups, colors) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const pad = 28;
  const max = Math.max(1e-12, ...groups.flatMap((g) => g.values.map(Math.abs)));
  const signed = groups.some((g) => g.values.some((v) => v < 0));
  const zero = signed ? pad + (height - 2 * pad) / 2 : height - pad;
  const scale = signed ? (height - 2 * pad) / 2 / max : (height - 2 * pad) / max;
  const slot = (width - 2 * pad) / groups.length;
  const bw = (slot * 0.8) / colors.length;
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.moveTo(pad, zero);
  ctx.lineTo(width - pad, zero);
  ctx.stroke();
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  groups.forEach((g, i) => {
    const x0 = pad + i * slot + slot * 0.1;
    g.values.forEach((v, j) => {
      ctx.fillStyle = colors[j];
      const h = v * scale;
      ctx.fillRect(x0 + j * bw, h >= 0 ? zero - h : zero, bw - 1, Math.abs(h));
    });
    ctx.fillStyle = "#000";
    ctx.fillText(g.label, x0 + (bw * colors.length) / 2, height - 8);
  });
}

function runPlan() {
  const plan = show("p-out", () =>
    tester_plan(num("p-eps1"), num("p-eps2"), num("p-delta"), num("p-k"), num("p-c")));
  if (plan) {
    $("p-out").textContent =
      `alpha = ${plan.alpha}\nlow bound = ${plan.low_bound}, high bound = ${plan.high_bound}\n` +
      `threshold = ${plan.threshold}, tau = ${plan.tau}\nsamples m = ${plan.m_samples}`;
  }
}

function runProfile() {
  $("w-t-val").textContent = num("w-t").toFixed(2);
  const p = show("w-out", () =>
    weight_profile(num("w-n"), num("w-k"), num("w-density"), num("w-t"), num("w-seed")));
  if (!p) return;
  bars($("w-canvas"), p.mass.map((m, w) => ({ label: `weight ${w}`, values: [m] })), ["#3a6ea5"]);
  $("w-out").textContent =
    `tail norm above k = ${p.k}: ${p.tail_norm.toExponential(4)}\n` +
    `mass by weight: ${p.mass.map((m) => m.toExponential(3)).join(", ")}\n` +
    `H = ${p.hamiltonian.map(([w, c]) => `${c.toFixed(3)} ${w}`).join(" + ")}`;
}

function runLearn() {
  $("l-out").textContent = "learning...";
  setTimeout(() => {
    const r = show("l-out", () =>
      learn_random(num("l-n"), num("l-k"), num("l-density"), num("l-alpha"), num("l-gamma"),
        num("l-beta"), num("l-m1"), num("l-seed")));
    if (!r) return;
    bars($("l-canvas"), r.coefficients.map(([w, t, l]) => ({ label: w, values: [t, l] })), ["#3a6ea5", "#e08a2c"]);
    $("l-out").textContent =
      `blue: true, orange: learned\n‖H - H''‖₂ = ${r.error.toFixed(4)} using ${r.queries} queries`;
  }, 0);
}

await init();
$("p-run").addEventListener("click", runPlan);
for (const id of ["w-n", "w-k", "w-density", "w-t", "w-seed"]) $(id).addEventListener("input", runProfile);
$("l-run").addEventListener("click", runLearn);
runPlan();
runProfile();
