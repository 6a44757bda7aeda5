/** Payload types mirroring the advisor service's JSON bodies. */

export interface Edge {
  above: number;
  below: number;
  source: 'vote' | 'imposed';
}

export interface VoteRecord {
  winner: number;
  loser: number;
}

export interface SessionPayload {
  id: string;
  n: number;
  chair_pref: number[];
  advisor: string;
  status: 'open' | 'complete';
  created_at: string;
  updated_at: string;
  votes: VoteRecord[];
  edges: Edge[];
  unranked: number[][];
  ranking: number[] | null;
}

export interface Classification {
  pair: number[];
  status: 'clean' | 'misses_opportunity' | 'takes_risk' | 'both';
  miss_witnesses: number[];
  risk_witnesses: number[];
}

export interface RecommendationPayload {
  advisor: string;
  pair: number[];
  classifications: Classification[];
}

export interface WhatIfBranch {
  winner: number;
  loser: number;
  imposed: number[][];
  classifications: Classification[];
}

export interface WhatIfPayload {
  pair: number[];
  branches: WhatIfBranch[];
}

export interface VoteResponse {
  session: SessionPayload;
  implied: number[][];
}
