import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { CmdOut, DEFAULT_TELEOP, KeyboardTeleop } from "./input.js";

describe("KeyboardTeleop", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("emits at 20 Hz within 10% over a 30 s run", () => {
    const frames: CmdOut[] = [];
    const teleop = new KeyboardTeleop();
    teleop.start((c) => frames.push(c));
    vi.advanceTimersByTime(30_000);
    teleop.stop();
    expect(frames.length).toBeGreaterThanOrEqual(540);
    expect(frames.length).toBeLessThanOrEqual(660);
    for (let i = 1; i < frames.length; i++) {
      expect(frames[i].tMs).toBeGreaterThan(frames[i - 1].tMs);
    }
  });

  it("sends zero commands when no keys are held", () => {
    const frames: CmdOut[] = [];
    const teleop = new KeyboardTeleop();
    teleop.start((c) => frames.push(c));
    vi.advanceTimersByTime(500);
    teleop.stop();
    expect(frames.length).toBe(10);
    expect(frames.every((f) => f.lin === 0 && f.ang === 0)).toBe(true);
  });

  it("ramps to the speed cap while forward is held, never past it", () => {
    const frames: CmdOut[] = [];
    const teleop = new KeyboardTeleop();
    teleop.start((c) => frames.push(c));
    teleop.press("forward");
    vi.advanceTimersByTime(1000);
    expect(frames.length).toBe(20);
    for (let i = 1; i < frames.length; i++) {
      expect(frames[i].lin).toBeGreaterThanOrEqual(frames[i - 1].lin);
      expect(frames[i].lin).toBeLessThanOrEqual(DEFAULT_TELEOP.capLin);
    }
    expect(frames[frames.length - 1].lin).toBeCloseTo(DEFAULT_TELEOP.capLin, 10);

    teleop.release("forward");
    frames.length = 0;
    vi.advanceTimersByTime(1000);
    teleop.stop();
    expect(frames[frames.length - 1].lin).toBe(0);
  });

  it("mixes turn and drive axes independently", () => {
    const teleop = new KeyboardTeleop();
    teleop.press("forward");
    teleop.press("right");
    let last: CmdOut | null = null;
    for (let i = 0; i < 40; i++) last = teleop.tick();
    expect(last?.lin).toBeCloseTo(DEFAULT_TELEOP.capLin, 10);
    expect(last?.ang).toBeCloseTo(-DEFAULT_TELEOP.capAng, 10);
    // opposing keys cancel
    teleop.press("left");
    for (let i = 0; i < 40; i++) last = teleop.tick();
    expect(last?.ang).toBe(0);
  });

  it("halts emission once stopped", () => {
    const frames: CmdOut[] = [];
    const teleop = new KeyboardTeleop();
    teleop.start((c) => frames.push(c));
    vi.advanceTimersByTime(1000);
    teleop.stop();
    expect(teleop.running).toBe(false);
    const count = frames.length;
    vi.advanceTimersByTime(5000);
    expect(frames.length).toBe(count);
  });

  it("keeps timestamps strictly monotonic under a bursty clock", () => {
    let t = 0;
    const clock = () => t; // frozen: simulates queued ticks firing together
    const teleop = new KeyboardTeleop(DEFAULT_TELEOP, clock);
    teleop.start(() => {});
    teleop.stop();
    const a = teleop.tick();
    const b = teleop.tick();
    const c = teleop.tick();
    expect(b.tMs).toBeGreaterThan(a.tMs);
    expect(c.tMs).toBeGreaterThan(b.tMs);
    t = 10_000; // clock jumps ahead: timestamps follow
    expect(teleop.tick().tMs).toBe(10_000);
  });
});
