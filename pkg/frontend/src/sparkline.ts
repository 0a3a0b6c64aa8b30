// Rolling buffer of entropy computations plus a minimal canvas renderer.

export interface EntropyPoint {
  tMs: number;
  total: number;
  avg: number;
}

export class SparklineBuffer {
  readonly points: EntropyPoint[] = [];
  private readonly capacity: number;

  constructor(capacity = 120) {
    this.capacity = capacity;
  }

  /** Append one computation; out-of-order t_ms is dropped to keep the line ordered. */
  push(point: EntropyPoint): boolean {
    const last = this.points[this.points.length - 1];
    if (last !== undefined && point.tMs <= last.tMs) return false;
    this.points.push(point);
    if (this.points.length > this.capacity) this.points.shift();
    return true;
  }

  latest(): EntropyPoint | undefined {
    return this.points[this.points.length - 1];
  }
}

// Structural subset of CanvasRenderingContext2D: keeps the renderer testable
// without a DOM canvas.
export interface LineContext {
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  setLineDash(segments: number[]): void;
}

export function drawSparkline(
  ctx: LineContext,
  width: number,
  height: number,
  buffer: SparklineBuffer,
  threshold: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const y = (value: number) => height - Math.min(Math.max(value, 0), 1) * height;

  ctx.setLineDash([4, 4]);
  ctx.strokeStyle = "#aa5500";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, y(threshold));
  ctx.lineTo(width, y(threshold));
  ctx.stroke();
  ctx.setLineDash([]);

  const pts = buffer.points;
  if (pts.length < 2) return;
  const x = (i: number) => (i / (pts.length - 1)) * width;

  ctx.strokeStyle = "#3388cc";
  ctx.lineWidth = 1;
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(x(i), y(p.total)) : ctx.lineTo(x(i), y(p.total))));
  ctx.stroke();

  ctx.strokeStyle = "#dddddd";
  ctx.lineWidth = 2;
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(x(i), y(p.avg)) : ctx.lineTo(x(i), y(p.avg))));
  ctx.stroke();
}
