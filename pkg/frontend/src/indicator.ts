// Workload indicator state: mirrors the latest indication frame from the
// server and fires the audio ping exactly once per NORMAL -> HIGH raise.

import { IndicationMessage } from "./protocol.js";

export interface IndicatorView {
  state: "NORMAL" | "HIGH";
  label: string;
  className: string;
}

export class IndicatorModel {
  state: "NORMAL" | "HIGH" = "NORMAL";
  private lastTms = -Infinity;
  private readonly onPing: () => void;

  constructor(onPing: () => void) {
    this.onPing = onPing;
  }

  /** Apply one indication frame; stale (out-of-order t_ms) frames are dropped. */
  apply(msg: IndicationMessage): boolean {
    if (msg.t_ms < this.lastTms) return false;
    this.lastTms = msg.t_ms;
    const wasHigh = this.state === "HIGH";
    this.state = msg.state;
    // duplicates cannot re-ping: the state must actually rise
    if (msg.state === "HIGH" && !wasHigh && msg.play_ping) this.onPing();
    return true;
  }

  view(): IndicatorView {
    return this.state === "HIGH"
      ? { state: "HIGH", label: "HIGH WORKLOAD", className: "high" }
      : { state: "NORMAL", label: "NORMAL OPERATION", className: "normal" };
  }
}
