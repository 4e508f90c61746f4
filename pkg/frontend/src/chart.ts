/** Canvas renderer for the rolling force trace. */

import { ConsoleStore, TRACE_WINDOW_S } from "./store.js";

const PADDING = { left: 44, right: 10, top: 10, bottom: 22 };

export class TraceChart {
  private ctx: CanvasRenderingContext2D;

  constructor(private canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
  }

  render(store: ConsoleStore): void {
    const { width, height } = this.canvas;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, width, height);

    const plotW = width - PADDING.left - PADDING.right;
    const plotH = height - PADDING.top - PADDING.bottom;
    const yMax = Math.max(store.forceLimit * 1.15, 10);
    const latestT = store.latestSample?.t ?? 0;
    const t0 = Math.max(0, latestT - TRACE_WINDOW_S);

    const x = (t: number) => PADDING.left + ((t - t0) / TRACE_WINDOW_S) * plotW;
    const y = (f: number) => PADDING.top + plotH - (f / yMax) * plotH;

    // frame and axis labels
    ctx.strokeStyle = "#555";
    ctx.strokeRect(PADDING.left, PADDING.top, plotW, plotH);
    ctx.fillStyle = "#aaa";
    ctx.font = "11px sans-serif";
    for (const frac of [0, 0.5, 1]) {
      const value = yMax * frac;
      ctx.fillText(`${value.toFixed(0)} N`, 4, y(value) + 4);
    }
    ctx.fillText(`${TRACE_WINDOW_S} s window`, PADDING.left + 4, height - 8);

    // force limit line
    ctx.strokeStyle = store.limitExceeded ? "#ff4d4d" : "#d08700";
    ctx.setLineDash([6, 4]);
    ctx.beginPath();
    ctx.moveTo(PADDING.left, y(store.forceLimit));
    ctx.lineTo(PADDING.left + plotW, y(store.forceLimit));
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = store.limitExceeded ? "#ff4d4d" : "#d08700";
    ctx.fillText(`${store.forceLimit.toFixed(0)} N limit`, PADDING.left + plotW - 74, y(store.forceLimit) - 4);

    // trace
    if (store.trace.length > 1) {
      ctx.strokeStyle = "#4da6ff";
      ctx.lineWidth = 1.6;
      ctx.beginPath();
      for (let i = 0; i < store.trace.length; i++) {
        const p = store.trace[i];
        if (i === 0) ctx.moveTo(x(p.t), y(p.force));
        else ctx.lineTo(x(p.t), y(p.force));
      }
      ctx.stroke();
      ctx.lineWidth = 1;
    }

    // pinned pain marker
    if (store.marker) {
      ctx.fillStyle = "#7CFC98";
      ctx.beginPath();
      ctx.arc(x(store.marker.t), y(store.marker.force), 4, 0, Math.PI * 2);
      ctx.fill();
      ctx.fillText(
        `${store.marker.force.toFixed(1)} N -> ${store.marker.ppt.toFixed(3)} MPa`,
        Math.min(x(store.marker.t) + 6, PADDING.left + plotW - 150),
        y(store.marker.force) - 6,
      );
    }

    // limit-crossing flag
    if (store.limitExceeded) {
      ctx.fillStyle = "#ff4d4d";
      ctx.font = "bold 13px sans-serif";
      ctx.fillText("FORCE LIMIT EXCEEDED - ABORTED", PADDING.left + 8, PADDING.top + 16);
    }
  }
}
