/** Thin typed client for the session server. */

import type { ApiErrorJson, QpJson, SessionJson } from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: string;

  constructor(status: number, body: ApiErrorJson) {
    super(`${body.error}: ${body.detail}`);
    this.status = status;
    this.code = body.error;
    this.detail = body.detail;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request(method: string, path: string, payload?: unknown): Promise<SessionJson> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (payload !== undefined) {
      init.body = JSON.stringify(payload);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body as ApiErrorJson);
    }
    return body as SessionJson;
  }

  createSession(qp: QpJson): Promise<SessionJson> {
    return this.request("POST", "/sessions", { qp });
  }

  getSession(id: string): Promise<SessionJson> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, vertex: string): Promise<SessionJson> {
    return this.request("POST", `/sessions/${id}/mutate`, { vertex });
  }

  checkout(id: string, node: number): Promise<SessionJson> {
    return this.request("POST", `/sessions/${id}/checkout`, { node });
  }
}
