/** Console state: a pure reducer over stream events.
 *
 * Server data is the only source of truth; the store never computes
 * thresholds itself, it just renders what the API sent.  Samples are
 * deduplicated by timestamp so a stream reconnect cannot double-draw the
 * trace.
 */

import type { SessionInfo, SessionState, StreamEvent } from "./types.js";

export type Connection = "connecting" | "live" | "stale";

export const TRACE_WINDOW_S = 30;

export interface TracePoint {
  t: number;
  force: number;
}

export class ConsoleStore {
  connection: Connection = "connecting";
  sessionState: SessionState = "idle";
  session: SessionInfo | null = null;
  trace: TracePoint[] = [];
  lastSampleT: number | null = null;
  marker: { t: number; force: number; ppt: number } | null = null;
  limitExceeded = false;
  abortReason: string | null = null;
  replayDone = false;
  forceLimit = 200;
  restDeadlineMs: number | null = null;
  lastError: string | null = null;
  log: string[] = [];

  /** True exactly when the pain-mark action is legal. */
  get canMark(): boolean {
    return this.sessionState === "ramping" && this.trace.length > 0;
  }

  get latestSample(): TracePoint | null {
    return this.trace.length ? this.trace[this.trace.length - 1] : null;
  }

  restRemainingS(nowMs: number): number {
    if (this.restDeadlineMs === null) return 0;
    return Math.max(0, (this.restDeadlineMs - nowMs) / 1000);
  }

  /** A new session may start only when nothing is resting or ramping. */
  get canStart(): boolean {
    return this.sessionState !== "resting" && this.sessionState !== "ramping";
  }

  markStale(message: string): void {
    this.connection = "stale";
    this.lastError = message;
  }

  addLog(entry: string): void {
    this.log.push(entry);
  }

  apply(ev: StreamEvent, nowMs: number = Date.now()): void {
    switch (ev.event) {
      case "snapshot": {
        this.connection = "live";
        const session = ev.session ?? null;
        this.session = session;
        this.sessionState = session?.state ?? "idle";
        this.replayDone = session?.replay_done ?? false;
        if (session?.max_force_limit_n) this.forceLimit = session.max_force_limit_n;
        if (session?.abort_reason) this.noteAbort(session.abort_reason);
        if (ev.rest_remaining_s && ev.rest_remaining_s > 0) {
          this.restDeadlineMs = nowMs + ev.rest_remaining_s * 1000;
        }
        break;
      }
      case "state": {
        this.connection = "live";
        if (ev.session) {
          this.session = ev.session;
          if (ev.session.max_force_limit_n) this.forceLimit = ev.session.max_force_limit_n;
        }
        if (ev.state) this.sessionState = ev.state;
        if (ev.state === "resting") {
          // fresh session: clear everything tied to the previous ramp
          this.trace = [];
          this.lastSampleT = null;
          this.marker = null;
          this.limitExceeded = false;
          this.abortReason = null;
          this.replayDone = false;
          this.restDeadlineMs = nowMs + (ev.rest_remaining_s ?? 0) * 1000;
        }
        if (ev.state === "ramping") this.restDeadlineMs = null;
        break;
      }
      case "sample": {
        if (ev.t_s === undefined || ev.force_n === undefined) return;
        if (this.lastSampleT !== null && ev.t_s <= this.lastSampleT) return; // reconnect dedupe
        this.lastSampleT = ev.t_s;
        this.trace.push({ t: ev.t_s, force: ev.force_n });
        const cutoff = ev.t_s - TRACE_WINDOW_S;
        while (this.trace.length && this.trace[0].t < cutoff) this.trace.shift();
        break;
      }
      case "marked": {
        this.sessionState = "marked";
        if (ev.session) this.session = ev.session;
        if (ev.t_s !== undefined && ev.force_n !== undefined && ev.ppt_mpa !== undefined) {
          this.marker = { t: ev.t_s, force: ev.force_n, ppt: ev.ppt_mpa };
        }
        break;
      }
      case "aborted": {
        this.sessionState = "aborted";
        if (ev.session) this.session = ev.session;
        this.noteAbort(ev.reason ?? "aborted");
        break;
      }
      case "replay_done": {
        this.replayDone = true;
        break;
      }
      case "overflow": {
        this.markStale(ev.detail ?? "stream overflow");
        break;
      }
    }
  }

  private noteAbort(reason: string): void {
    this.abortReason = reason;
    this.limitExceeded = reason.includes("force limit");
  }
}

export function sampleEvent(t_s: number, force_n: number): StreamEvent {
  return { event: "sample", t_s, force_n };
}
