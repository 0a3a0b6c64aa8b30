// Top-down arena view: latest robot pose with a fading trail.

export interface Pose {
  x: number;
  y: number;
  heading: number;
}

export class ArenaView {
  pose: Pose = { x: 0, y: 0, heading: 0 };
  readonly trail: Pose[] = [];
  private readonly trailCap: number;
  readonly spanM: number;

  constructor(spanM = 16, trailCap = 600) {
    this.spanM = spanM;
    this.trailCap = trailCap;
  }

  update(pose: Pose): void {
    this.pose = pose;
    this.trail.push(pose);
    if (this.trail.length > this.trailCap) this.trail.shift();
  }

  /** World metres -> canvas pixels, origin centred, y up. */
  toCanvas(x: number, y: number, size: number): [number, number] {
    const scale = size / this.spanM;
    return [size / 2 + x * scale, size / 2 - y * scale];
  }
}

export function drawArena(ctx: CanvasRenderingContext2D, size: number, view: ArenaView): void {
  ctx.clearRect(0, 0, size, size);

  ctx.strokeStyle = "#333";
  ctx.lineWidth = 1;
  ctx.strokeRect(0.5, 0.5, size - 1, size - 1);

  ctx.strokeStyle = "#2a4a5a";
  ctx.beginPath();
  view.trail.forEach((p, i) => {
    const [cx, cy] = view.toCanvas(p.x, p.y, size);
    if (i === 0) ctx.moveTo(cx, cy);
    else ctx.lineTo(cx, cy);
  });
  ctx.stroke();

  const { x, y, heading } = view.pose;
  const [cx, cy] = view.toCanvas(x, y, size);
  const r = 8;
  ctx.fillStyle = "#55cc88";
  ctx.beginPath();
  ctx.moveTo(cx + r * Math.cos(heading), cy - r * Math.sin(heading));
  ctx.lineTo(cx + r * Math.cos(heading + 2.5), cy - r * Math.sin(heading + 2.5));
  ctx.lineTo(cx + r * Math.cos(heading - 2.5), cy - r * Math.sin(heading - 2.5));
  ctx.closePath();
  ctx.fill();
}
