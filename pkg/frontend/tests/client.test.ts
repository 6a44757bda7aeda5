/** Client behaviour with an injected transport: paths, bodies, errors. */

import { describe, expect, it } from 'vitest';

import { AdvisorClient, ApiError } from '../src/client.js';

function fakeFetch(status: number, payload: unknown, seen: { url?: string; init?: RequestInit }) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    seen.url = url;
    seen.init = init;
    return {
      ok: status < 400,
      status,
      statusText: `s${status}`,
      json: async () => payload,
    } as unknown as Response;
  };
}

describe('AdvisorClient', () => {
  it('posts session creation bodies in service shape', async () => {
    const seen: { url?: string; init?: RequestInit } = {};
    const client = new AdvisorClient(fakeFetch(200, { id: 'abc' }, seen));
    await client.createSession(3, [1, 2, 3], 'greedy');
    expect(seen.url).toBe('/sessions');
    expect(JSON.parse(String(seen.init?.body))).toEqual({
      n: 3,
      chair_pref: [1, 2, 3],
      advisor: 'greedy',
    });
  });

  it('builds what-if query strings', async () => {
    const seen: { url?: string } = {};
    const client = new AdvisorClient(fakeFetch(200, { pair: [1, 2], branches: [] }, seen));
    await client.whatIf('abc', 1, 2);
    expect(seen.url).toBe('/sessions/abc/what-if?x=1&y=2');
  });

  it('surfaces service errors with their detail', async () => {
    const client = new AdvisorClient(fakeFetch(400, { detail: 'pair (2, 3) is already ranked' }, {}));
    await expect(client.recordVote('abc', 2, 3)).rejects.toThrowError(ApiError);
    await expect(client.recordVote('abc', 2, 3)).rejects.toThrow('already ranked');
  });
});
