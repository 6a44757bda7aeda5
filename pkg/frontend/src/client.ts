/** Thin fetch wrapper over the advisor endpoints (same origin). */

import type {
  RecommendationPayload,
  SessionPayload,
  VoteResponse,
  WhatIfPayload,
} from './types.js';

export type Fetcher = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request<T>(fetcher: Fetcher, path: string, init?: RequestInit): Promise<T> {
  const response = await fetcher(path, init);
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, (body as { detail?: string }).detail ?? response.statusText);
  }
  return body as T;
}

export class AdvisorClient {
  constructor(private readonly fetcher: Fetcher = (input, init) => fetch(input, init)) {}

  createSession(n: number, chairPref: number[], advisor: string): Promise<SessionPayload> {
    return request(this.fetcher, '/sessions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ n, chair_pref: chairPref, advisor }),
    });
  }

  getSession(id: string): Promise<SessionPayload> {
    return request(this.fetcher, `/sessions/${id}`);
  }

  recordVote(id: string, winner: number, loser: number): Promise<VoteResponse> {
    return request(this.fetcher, `/sessions/${id}/votes`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ winner, loser }),
    });
  }

  undo(id: string): Promise<SessionPayload> {
    return request(this.fetcher, `/sessions/${id}/undo`, { method: 'POST' });
  }

  recommendation(id: string): Promise<RecommendationPayload> {
    return request(this.fetcher, `/sessions/${id}/recommendation`);
  }

  whatIf(id: string, x: number, y: number): Promise<WhatIfPayload> {
    return request(this.fetcher, `/sessions/${id}/what-if?x=${x}&y=${y}`);
  }
}
