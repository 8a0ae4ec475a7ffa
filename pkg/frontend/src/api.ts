// Typed client for the session service.  Every call returns the parsed
// JSON body; non-2xx answers throw ApiError carrying the HTTP status and
// the server's detail string so the UI can show it inline.

import type { Topology } from "./geometry.js";

export interface CountsJson {
  black: number;
  white: number;
  min: number;
}

export interface StateJson {
  n: number;
  topology: Topology;
  black: [number, number][];
  white: [number, number][];
  counts: CountsJson;
  peaceful: boolean;
  search_status: string;
}

export interface WitnessJson {
  line: string;
  black: [number, number];
  white: [number, number];
}

export interface ToggleResponse {
  accepted: boolean;
  witness: WitnessJson | null;
  state: StateJson;
}

export interface EventJson {
  k: number;
  type: string;
  counts: CountsJson;
  line?: string;
  black?: [number, number][];
  cell?: [number, number];
  set?: "black" | "white" | "empty";
  status?: string;
}

export interface EventsResponse {
  events: EventJson[];
  next: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export class SessionApi {
  constructor(readonly baseUrl: string = "") {}

  private async call<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) return undefined as T;
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const parsed = await response.json();
        if (parsed && typeof parsed.detail === "string") detail = parsed.detail;
        else detail = JSON.stringify(parsed);
      } catch {
        // non-JSON error body; keep statusText
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(
    topology: Topology,
    n: number,
  ): Promise<{ id: string; state: StateJson }> {
    return this.call("POST", "/session", { topology, n });
  }

  state(id: string): Promise<{ state: StateJson }> {
    return this.call("GET", `/session/${id}/state`);
  }

  toggle(
    id: string,
    cell: [number, number],
    color: "black" | "white",
    force = false,
  ): Promise<ToggleResponse> {
    return this.call("POST", `/session/${id}/toggle`, { cell, color, force });
  }

  swap(id: string, line: string): Promise<{ state: StateJson }> {
    return this.call("POST", `/session/${id}/swap`, { line });
  }

  step(id: string): Promise<{ event: EventJson | null; state: StateJson }> {
    return this.call("POST", `/session/${id}/step`);
  }

  run(
    id: string,
    options: { target: number; seed?: number; budget?: number; restarts?: number },
  ): Promise<{ state: StateJson }> {
    return this.call("POST", `/session/${id}/run`, options);
  }

  stop(id: string): Promise<{ state: StateJson }> {
    return this.call("POST", `/session/${id}/stop`);
  }

  events(id: string, since = 0): Promise<EventsResponse> {
    return this.call("GET", `/session/${id}/events?since=${since}`);
  }

  deleteSession(id: string): Promise<void> {
    return this.call("DELETE", `/session/${id}`);
  }
}
