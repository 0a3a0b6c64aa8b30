// Keyboard teleoperation: held keys ramp a velocity target, and a 50 ms
// clock emits one cmd frame per tick. The ramp stands in for analog sticks.
//
// Tuning knobs (per 50 ms tick):
//   capLin / capAng   speed caps the emitted commands never exceed
//   rampLin / rampAng how fast the command slews toward its target

export type TeleopKey = "forward" | "back" | "left" | "right";

export interface TeleopConfig {
  capLin: number;
  capAng: number;
  rampLin: number;
  rampAng: number;
}

export const DEFAULT_TELEOP: TeleopConfig = {
  capLin: 0.8,
  capAng: 1.2,
  rampLin: 0.08,
  rampAng: 0.12,
};

export const TICK_MS = 50;

export interface CmdOut {
  tMs: number;
  lin: number;
  ang: number;
}

function slew(current: number, target: number, step: number): number {
  if (target > current) return Math.min(current + step, target);
  if (target < current) return Math.max(current - step, target);
  return current;
}

export class KeyboardTeleop {
  lin = 0;
  ang = 0;
  private held = new Set<TeleopKey>();
  private timer: ReturnType<typeof setInterval> | null = null;
  private t0 = 0;
  private lastTms = -1;
  private readonly config: TeleopConfig;
  private readonly now: () => number;

  constructor(config: TeleopConfig = DEFAULT_TELEOP, now: () => number = () => Date.now()) {
    this.config = config;
    this.now = now;
  }

  press(key: TeleopKey): void {
    this.held.add(key);
  }

  release(key: TeleopKey): void {
    this.held.delete(key);
  }

  releaseAll(): void {
    this.held.clear();
  }

  get running(): boolean {
    return this.timer !== null;
  }

  /** Advance one tick: ramp toward the key target, return the frame to send. */
  tick(): CmdOut {
    const target = {
      lin: ((this.held.has("forward") ? 1 : 0) - (this.held.has("back") ? 1 : 0)) * this.config.capLin,
      ang: ((this.held.has("left") ? 1 : 0) - (this.held.has("right") ? 1 : 0)) * this.config.capAng,
    };
    this.lin = slew(this.lin, target.lin, this.config.rampLin);
    this.ang = slew(this.ang, target.ang, this.config.rampAng);
    // session time is wall-clock but strictly monotonic even if the browser
    // fires queued ticks in a burst after a stall
    this.lastTms = Math.max(this.lastTms + 1, Math.round(this.now() - this.t0));
    return { tMs: this.lastTms, lin: this.lin, ang: this.ang };
  }

  start(send: (cmd: CmdOut) => void): void {
    if (this.timer !== null) return;
    this.t0 = this.now();
    this.lastTms = -1;
    this.lin = 0;
    this.ang = 0;
    this.timer = setInterval(() => send(this.tick()), TICK_MS);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
