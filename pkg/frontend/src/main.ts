// Wires the teleop loop, the event stream and the dashboard widgets to the
// session service. All workload math happens server-side; this file only
// sends commands and renders frames.

import { ArenaView, drawArena } from "./arena.js";
import { IndicatorModel } from "./indicator.js";
import { DEFAULT_TELEOP, KeyboardTeleop, TeleopKey } from "./input.js";
import { encodeCmd, encodeEnd, parseServerMessage } from "./protocol.js";
import { SparklineBuffer, drawSparkline } from "./sparkline.js";

const WAIS_THRESHOLD = 0.6;
const RECONNECT_MS = 2000;

const KEY_MAP: Record<string, TeleopKey> = {
  KeyW: "forward",
  ArrowUp: "forward",
  KeyS: "back",
  ArrowDown: "back",
  KeyA: "left",
  ArrowLeft: "left",
  KeyD: "right",
  ArrowRight: "right",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const indicatorEl = el<HTMLDivElement>("indicator");
const bannerEl = el<HTMLDivElement>("banner");
const entropyEl = el<HTMLDivElement>("entropy-readout");
const alphaEl = el<HTMLDivElement>("alpha-readout");
const rateEl = el<HTMLDivElement>("rate-warning");
const arenaCanvas = el<HTMLCanvasElement>("arena");
const sparkCanvas = el<HTMLCanvasElement>("spark");

let audio: AudioContext | null = null;

function ping(): void {
  try {
    audio = audio ?? new AudioContext();
    const osc = audio.createOscillator();
    const gain = audio.createGain();
    osc.frequency.value = 880;
    gain.gain.setValueAtTime(0.2, audio.currentTime);
    gain.gain.exponentialRampToValueAtTime(0.001, audio.currentTime + 0.25);
    osc.connect(gain).connect(audio.destination);
    osc.start();
    osc.stop(audio.currentTime + 0.25);
  } catch {
    // no audio available: the visual indication still happened
  }
}

const arena = new ArenaView();
const indicator = new IndicatorModel(ping);
const sparkline = new SparklineBuffer(120);
const teleop = new KeyboardTeleop(DEFAULT_TELEOP);

function renderIndicator(): void {
  const view = indicator.view();
  indicatorEl.textContent = view.label;
  indicatorEl.className = `indicator ${view.className}`;
}

function connect(): void {
  const proto = location.protocol === "https:" ? "wss:" : "ws:";
  const ws = new WebSocket(`${proto}//${location.host}/ws`);

  ws.onopen = () => {
    bannerEl.textContent = "connected";
    bannerEl.className = "banner ok";
    teleop.start((cmd) => {
      if (ws.readyState === WebSocket.OPEN) ws.send(encodeCmd(cmd.tMs, cmd.lin, cmd.ang));
    });
  };

  ws.onmessage = (event: MessageEvent) => {
    const msg = parseServerMessage(String(event.data));
    if (msg === null) return;
    switch (msg.type) {
      case "pose":
        arena.update({ x: msg.x, y: msg.y, heading: msg.heading });
        break;
      case "entropy":
        sparkline.push({ tMs: msg.t_ms, total: msg.total, avg: msg.avg });
        entropyEl.textContent =
          `total ${msg.total.toFixed(3)}  avg ${msg.avg.toFixed(3)}  ` +
          `(lin ${msg.hp_lin.toFixed(3)} / ang ${msg.hp_ang.toFixed(3)})`;
        break;
      case "indication":
        if (indicator.apply(msg)) renderIndicator();
        break;
      case "profile_update":
        alphaEl.textContent =
          `alpha lin ${msg.alpha_lin.toPrecision(4)} / ang ${msg.alpha_ang.toPrecision(4)}  rev ${msg.revision}`;
        break;
      case "rate_warning":
        rateEl.textContent = `command rate off nominal for ${msg.off_nominal_ms} ms`;
        setTimeout(() => (rateEl.textContent = ""), 5000);
        break;
      case "done":
        bannerEl.textContent = `session closed: ${msg.computations} computations`;
        bannerEl.className = "banner";
        break;
    }
  };

  ws.onclose = () => {
    teleop.stop();
    teleop.releaseAll();
    bannerEl.textContent = "disconnected, retrying...";
    bannerEl.className = "banner bad";
    setTimeout(connect, RECONNECT_MS);
  };

  window.addEventListener("beforeunload", () => {
    if (ws.readyState === WebSocket.OPEN) ws.send(encodeEnd());
  });
}

document.addEventListener("keydown", (event) => {
  const key = KEY_MAP[event.code];
  if (key !== undefined) {
    teleop.press(key);
    event.preventDefault();
  }
});

document.addEventListener("keyup", (event) => {
  const key = KEY_MAP[event.code];
  if (key !== undefined) teleop.release(key);
});

function frame(): void {
  const arenaCtx = arenaCanvas.getContext("2d");
  if (arenaCtx !== null) drawArena(arenaCtx, arenaCanvas.width, arena);
  const sparkCtx = sparkCanvas.getContext("2d");
  if (sparkCtx !== null) {
    drawSparkline(sparkCtx, sparkCanvas.width, sparkCanvas.height, sparkline, WAIS_THRESHOLD);
  }
  requestAnimationFrame(frame);
}

renderIndicator();
connect();
requestAnimationFrame(frame);
