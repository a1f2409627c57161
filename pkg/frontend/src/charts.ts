// Canvas spectrum plots: frequency on x, normalized magnitude on y.

export interface ChartOptions {
  title: string;
  maxHz?: number;
  markerHz?: number | null;
}

export function drawSpectrum(
  canvas: HTMLCanvasElement,
  points: [number, number][],
  options: ChartOptions,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  const pad = { left: 38, right: 8, top: 20, bottom: 24 };
  const plotW = width - pad.left - pad.right;
  const plotH = height - pad.top - pad.bottom;

  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#14181f";
  ctx.fillRect(0, 0, width, height);
  ctx.fillStyle = "#9aa4b2";
  ctx.font = "12px sans-serif";
  ctx.fillText(options.title, pad.left, 14);

  if (points.length === 0) {
    ctx.fillText("no data", pad.left + plotW / 2 - 20, pad.top + plotH / 2);
    return;
  }

  const lastPoint = points[points.length - 1];
  const maxHz = options.maxHz ?? (lastPoint ? lastPoint[0] : 4000);
  const x = (hz: number) => pad.left + (hz / maxHz) * plotW;
  const y = (mag: number) => pad.top + (1 - Math.min(mag, 1)) * plotH;

  // axes and a few frequency gridlines
  ctx.strokeStyle = "#2a3240";
  ctx.beginPath();
  for (let hz = 0; hz <= maxHz; hz += maxHz / 4) {
    ctx.moveTo(x(hz), pad.top);
    ctx.lineTo(x(hz), pad.top + plotH);
    ctx.fillText(`${Math.round(hz)}`, x(hz) - 10, height - 8);
  }
  ctx.stroke();

  ctx.strokeStyle = "#58c4dd";
  ctx.lineWidth = 1;
  ctx.beginPath();
  let started = false;
  for (const [hz, mag] of points) {
    if (hz > maxHz) break;
    if (!started) {
      ctx.moveTo(x(hz), y(mag));
      started = true;
    } else {
      ctx.lineTo(x(hz), y(mag));
    }
  }
  ctx.stroke();

  if (options.markerHz != null && options.markerHz <= maxHz) {
    ctx.strokeStyle = "#ff8c42";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(x(options.markerHz), pad.top);
    ctx.lineTo(x(options.markerHz), pad.top + plotH);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#ff8c42";
    ctx.fillText(`${options.markerHz.toFixed(1)} Hz`, x(options.markerHz) + 4, pad.top + 12);
  }
}
