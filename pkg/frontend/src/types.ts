/** Payload shapes of the session service API. */

export interface SampleRef {
  t_s: number;
  force_n: number;
}

export interface PainRef extends SampleRef {
  ppt_mpa: number;
}

export interface SessionInfo {
  region: string;
  material: string;
  thickness_mm: number;
  state: SessionState;
  samples: number;
  latest: SampleRef | null;
  max_force_limit_n: number;
  pain?: PainRef;
  abort_reason?: string;
  replay_done?: boolean;
}

export type SessionState = "idle" | "resting" | "ramping" | "marked" | "aborted";

export interface StateResponse {
  session: SessionInfo | null;
  rest_remaining_s: number;
  sessions_started: number;
  matrix_entries: number;
  replay_kind: string;
}

export interface MatrixEntry {
  region: string;
  material: string;
  thickness_mm: number;
  ppt_mpa: number;
}

export interface MatrixResponse {
  entries: MatrixEntry[];
}

export interface RegionChoice {
  material: string;
  thickness_mm: number;
  ppt_mpa: number;
}

export interface SelectionResponse {
  complete: boolean;
  missing?: string[];
  per_region?: Record<string, RegionChoice>;
  rest_of_socket?: { material: string; thickness_mm: number };
}

/** One server-sent event from /api/session/stream. */
export interface StreamEvent {
  event:
    | "snapshot"
    | "state"
    | "sample"
    | "marked"
    | "aborted"
    | "replay_done"
    | "overflow";
  state?: SessionState;
  session?: SessionInfo | null;
  rest_remaining_s?: number;
  t_s?: number;
  force_n?: number;
  ppt_mpa?: number;
  reason?: string;
  detail?: string;
}
