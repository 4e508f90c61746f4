/** Thin fetch wrappers for the session service API. */

import type { MatrixResponse, PainRef, SelectionResponse, StateResponse } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, (payload as { detail?: string }).detail ?? response.statusText);
  }
  return payload as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  state(): Promise<StateResponse> {
    return request(`${this.base}/api/state`);
  }

  start(region: string, material: string, thicknessMm: number, overrideRest = false): Promise<StateResponse> {
    return request(`${this.base}/api/session/start`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        region,
        material,
        thickness_mm: thicknessMm,
        override_rest: overrideRest,
      }),
    });
  }

  mark(tS: number): Promise<PainRef> {
    return request(`${this.base}/api/session/mark`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ t_s: tS }),
    });
  }

  abort(): Promise<unknown> {
    return request(`${this.base}/api/session/abort`, { method: "POST" });
  }

  matrix(): Promise<MatrixResponse> {
    return request(`${this.base}/api/matrix`);
  }

  selection(): Promise<SelectionResponse> {
    return request(`${this.base}/api/selection`);
  }
}
