/** Orchestrates the console: stream consumption, actions, matrix refresh.
 *
 * All state mutation flows through the documented API; the controller holds
 * no analytics of its own.  The pain mark pins the latest *rendered* sample
 * by its timestamp, so what the operator saw is exactly what gets recorded,
 * regardless of how far the server ramp has run on in the meantime.
 */

import { ApiClient } from "./api.js";
import { sseEvents } from "./sse.js";
import { ConsoleStore } from "./store.js";
import type { MatrixResponse, PainRef, SelectionResponse, StreamEvent } from "./types.js";

export type EventHook = (ev: StreamEvent) => void;

export class ConsoleController {
  readonly store = new ConsoleStore();
  readonly api: ApiClient;
  matrix: MatrixResponse = { entries: [] };
  selection: SelectionResponse = { complete: false };

  private hooks: EventHook[] = [];
  private abortController: AbortController | null = null;
  private running = false;
  private reconnectDelayMs: number;

  constructor(private base: string = "", reconnectDelayMs = 1000) {
    this.api = new ApiClient(base);
    this.reconnectDelayMs = reconnectDelayMs;
  }

  onEvent(hook: EventHook): void {
    this.hooks.push(hook);
  }

  /** Consume the event stream until stop(); reconnects with a stale banner. */
  async run(): Promise<void> {
    this.running = true;
    while (this.running) {
      this.abortController = new AbortController();
      try {
        for await (const ev of sseEvents(`${this.base}/api/session/stream`, this.abortController.signal)) {
          this.store.apply(ev);
          for (const hook of this.hooks) hook(ev);
          if (ev.event === "marked" || ev.event === "aborted") {
            void this.refreshResults().catch(() => undefined);
          }
        }
        if (this.running) this.store.markStale("stream closed by server");
      } catch (err) {
        if (this.running) this.store.markStale(`stream error: ${String(err)}`);
      }
      if (!this.running) break;
      await delay(this.reconnectDelayMs);
    }
  }

  stop(): void {
    this.running = false;
    this.abortController?.abort();
  }

  async start(region: string, material: string, thicknessMm: number, overrideRest = false): Promise<void> {
    if (!this.store.canStart) {
      throw new Error("a session is already active");
    }
    if (overrideRest) {
      this.store.addLog(
        `operator override: rest skipped before ${region}/${material}/${thicknessMm} mm`,
      );
    }
    await this.api.start(region, material, thicknessMm, overrideRest);
  }

  /** Mark pain at the latest rendered sample. */
  async mark(): Promise<PainRef> {
    const latest = this.store.latestSample;
    if (!this.store.canMark || latest === null) {
      throw new Error("pain mark is only available while ramping");
    }
    return this.api.mark(latest.t);
  }

  async abort(): Promise<void> {
    await this.api.abort();
  }

  async refreshResults(): Promise<void> {
    this.matrix = await this.api.matrix();
    this.selection = await this.api.selection();
  }
}

function delay(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
