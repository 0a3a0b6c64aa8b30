// Wire frames exchanged with the session service. The UI renders only what
// the server sends; none of the entropy math is duplicated here.

export interface CmdMessage {
  type: "cmd";
  t_ms: number;
  lin: number;
  ang: number;
}

export interface PoseMessage {
  type: "pose";
  t_ms: number;
  x: number;
  y: number;
  heading: number;
}

export interface EntropyMessage {
  type: "entropy";
  t_ms: number;
  hp_lin: number;
  hp_ang: number;
  total: number;
  avg: number;
}

export interface IndicationMessage {
  type: "indication";
  t_ms: number;
  state: "NORMAL" | "HIGH";
  play_ping: boolean;
}

export interface ProfileUpdateMessage {
  type: "profile_update";
  t_ms: number;
  alpha_lin: number;
  alpha_ang: number;
  revision: number;
}

export interface RateWarningMessage {
  type: "rate_warning";
  t_ms: number;
  off_nominal_ms: number;
}

export interface DoneMessage {
  type: "done";
  computations: number;
}

export type ServerMessage =
  | PoseMessage
  | EntropyMessage
  | IndicationMessage
  | ProfileUpdateMessage
  | RateWarningMessage
  | DoneMessage;

const NUMERIC_FIELDS: Record<string, string[]> = {
  pose: ["t_ms", "x", "y", "heading"],
  entropy: ["t_ms", "hp_lin", "hp_ang", "total", "avg"],
  indication: ["t_ms"],
  profile_update: ["t_ms", "alpha_lin", "alpha_ang", "revision"],
  rate_warning: ["t_ms", "off_nominal_ms"],
  done: ["computations"],
};

/** Parse one server frame; returns null for anything malformed. */
export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const frame = data as Record<string, unknown>;
  const fields = NUMERIC_FIELDS[frame.type as string];
  if (fields === undefined) return null;
  for (const name of fields) {
    if (typeof frame[name] !== "number" || !isFinite(frame[name] as number)) return null;
  }
  if (frame.type === "indication") {
    if (frame.state !== "NORMAL" && frame.state !== "HIGH") return null;
    if (typeof frame.play_ping !== "boolean") return null;
  }
  return frame as unknown as ServerMessage;
}

export function encodeCmd(tMs: number, lin: number, ang: number): string {
  const msg: CmdMessage = { type: "cmd", t_ms: tMs, lin, ang };
  return JSON.stringify(msg);
}

export function encodeEnd(): string {
  return JSON.stringify({ type: "end" });
}
