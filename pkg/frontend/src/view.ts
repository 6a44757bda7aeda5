/** Pure derivation of the console's view state from service payloads.
 *
 * No protocol rules are evaluated here: badges, witnesses and edges are
 * copied verbatim from the service. Volatile fields (timestamps) are
 * dropped so that an undo restores the previous view byte for byte.
 */

import type { Classification, RecommendationPayload, SessionPayload } from './types.js';

export interface NodeView {
  label: number;
  prefRank: number; // 1 = chair's favourite; drives the node colour
  x: number;
  y: number;
}

export interface EdgeView {
  above: number;
  below: number;
  source: 'vote' | 'imposed';
}

export interface PairView {
  pair: number[];
  status: Classification['status'];
  missWitnesses: number[];
  riskWitnesses: number[];
  recommended: boolean;
}

export interface SessionView {
  id: string;
  n: number;
  advisor: string;
  status: 'open' | 'complete';
  votes: { winner: number; loser: number }[];
  nodes: NodeView[];
  edges: EdgeView[];
  pairs: PairView[];
  recommendedPair: number[] | null;
  ranking: number[] | null;
}

const LAYOUT_RADIUS = 110;
const LAYOUT_CENTER = 140;

function round1(value: number): number {
  return Math.round(value * 10) / 10;
}

export function nodeLayout(n: number, chairPref: number[]): NodeView[] {
  const prefRank = new Map<number, number>();
  chairPref.forEach((label, index) => prefRank.set(label, index + 1));
  const nodes: NodeView[] = [];
  for (let label = 1; label <= n; label += 1) {
    const angle = -Math.PI / 2 + (2 * Math.PI * (label - 1)) / n;
    nodes.push({
      label,
      prefRank: prefRank.get(label) ?? label,
      x: round1(LAYOUT_CENTER + LAYOUT_RADIUS * Math.cos(angle)),
      y: round1(LAYOUT_CENTER + LAYOUT_RADIUS * Math.sin(angle)),
    });
  }
  return nodes;
}

function samePair(a: number[], b: number[]): boolean {
  return Math.min(a[0], a[1]) === Math.min(b[0], b[1]) && Math.max(a[0], a[1]) === Math.max(b[0], b[1]);
}

export function deriveView(
  session: SessionPayload,
  recommendation: RecommendationPayload | null,
): SessionView {
  const pairs: PairView[] = (recommendation?.classifications ?? []).map((cls) => ({
    pair: [...cls.pair],
    status: cls.status,
    missWitnesses: [...cls.miss_witnesses],
    riskWitnesses: [...cls.risk_witnesses],
    recommended: recommendation ? samePair(cls.pair, recommendation.pair) : false,
  }));
  return {
    id: session.id,
    n: session.n,
    advisor: session.advisor,
    status: session.status,
    votes: session.votes.map((v) => ({ winner: v.winner, loser: v.loser })),
    nodes: nodeLayout(session.n, session.chair_pref),
    edges: session.edges.map((e) => ({ above: e.above, below: e.below, source: e.source })),
    pairs,
    recommendedPair: recommendation ? [...recommendation.pair] : null,
    ranking: session.ranking ? [...session.ranking] : null,
  };
}

export function describeStatus(status: Classification['status']): string {
  switch (status) {
    case 'clean':
      return 'clean';
    case 'misses_opportunity':
      return 'misses opportunity';
    case 'takes_risk':
      return 'takes a risk';
    case 'both':
      return 'misses opportunity and takes a risk';
  }
}

export function badgeLine(view: PairView): string {
  const name = describeStatus(view.status);
  const witnesses = [...view.missWitnesses, ...view.riskWitnesses];
  return witnesses.length > 0 ? `${name} (witness ${witnesses.join(', ')})` : name;
}
