/** DOM rendering of a derived view: the order DAG, the pair list with
 * badges, the recommendation highlight, and the what-if panel. */

import type { WhatIfPayload } from './types.js';
import { badgeLine, type SessionView } from './view.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface Handlers {
  onVote(winner: number, loser: number): void;
  onUndo(): void;
  onInspect(x: number, y: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderDag(view: SessionView): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', '0 0 280 280');
  svg.classList.add('dag');
  const defs = document.createElementNS(SVG_NS, 'defs');
  defs.innerHTML =
    '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" ' +
    'markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker>';
  svg.appendChild(defs);
  const at = new Map(view.nodes.map((n) => [n.label, n]));
  for (const edge of view.edges) {
    const a = at.get(edge.above)!;
    const b = at.get(edge.below)!;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const trim = 18 / len;
    const line = document.createElementNS(SVG_NS, 'line');
    line.setAttribute('x1', String(a.x + dx * trim));
    line.setAttribute('y1', String(a.y + dy * trim));
    line.setAttribute('x2', String(b.x - dx * trim));
    line.setAttribute('y2', String(b.y - dy * trim));
    line.setAttribute('marker-end', 'url(#arrow)');
    line.classList.add('edge', edge.source);
    svg.appendChild(line);
  }
  for (const node of view.nodes) {
    const group = document.createElementNS(SVG_NS, 'g');
    const circle = document.createElementNS(SVG_NS, 'circle');
    circle.setAttribute('cx', String(node.x));
    circle.setAttribute('cy', String(node.y));
    circle.setAttribute('r', '14');
    circle.classList.add('node', `rank-${Math.min(node.prefRank, 6)}`);
    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', String(node.x));
    label.setAttribute('y', String(node.y + 4));
    label.setAttribute('text-anchor', 'middle');
    label.textContent = String(node.label);
    group.append(circle, label);
    svg.appendChild(group);
  }
  return svg;
}

function renderPairList(view: SessionView, handlers: Handlers): HTMLElement {
  const list = el('div', 'pairs');
  for (const pair of view.pairs) {
    const row = el('div', `pair ${pair.status}${pair.recommended ? ' recommended' : ''}`);
    const name = el('span', 'pair-name', `{${pair.pair[0]}, ${pair.pair[1]}}`);
    const badge = el('span', 'badge', badgeLine(pair));
    if (pair.recommended) {
      badge.textContent += ' - recommended';
    }
    row.append(name, badge);
    const buttons = el('span', 'actions');
    const [x, y] = pair.pair;
    for (const [winner, loser] of [
      [x, y],
      [y, x],
    ]) {
      const button = el('button', undefined, `${winner} beats ${loser}`);
      button.addEventListener('click', () => handlers.onVote(winner, loser));
      buttons.appendChild(button);
    }
    const inspect = el('button', 'ghost', 'what if?');
    inspect.addEventListener('click', () => handlers.onInspect(x, y));
    buttons.appendChild(inspect);
    row.appendChild(buttons);
    list.appendChild(row);
  }
  return list;
}

export function renderView(root: HTMLElement, view: SessionView, handlers: Handlers): void {
  root.replaceChildren();
  const header = el('div', 'session-header');
  header.append(
    el('span', 'session-id', `session ${view.id}`),
    el('span', `status ${view.status}`, view.status),
    el('span', 'advisor', `advisor: ${view.advisor}`),
  );
  const undo = el('button', 'ghost', 'undo last vote');
  undo.disabled = view.votes.length === 0;
  undo.addEventListener('click', () => handlers.onUndo());
  header.appendChild(undo);
  root.appendChild(header);

  const main = el('div', 'columns');
  const left = el('div', 'panel');
  left.appendChild(el('h2', undefined, 'ranked so far'));
  left.appendChild(renderDag(view));
  const legend = el('div', 'legend');
  legend.append(el('span', 'edge-vote', 'direct vote'), el('span', 'edge-imposed', 'imposed'));
  left.appendChild(legend);
  main.appendChild(left);

  const right = el('div', 'panel');
  if (view.status === 'complete' && view.ranking) {
    right.appendChild(el('h2', undefined, 'final ranking'));
    right.appendChild(el('p', 'ranking', view.ranking.join(' > ')));
    const provenance = el('ul', 'provenance');
    for (const edge of view.edges) {
      provenance.appendChild(
        el('li', edge.source, `${edge.above} above ${edge.below} (${edge.source})`),
      );
    }
    right.appendChild(provenance);
  } else {
    right.appendChild(el('h2', undefined, 'unranked pairs'));
    right.appendChild(renderPairList(view, handlers));
  }
  main.appendChild(right);
  root.appendChild(main);
}

export function renderWhatIf(root: HTMLElement, report: WhatIfPayload): void {
  root.replaceChildren();
  root.appendChild(el('h2', undefined, `what if {${report.pair[0]}, ${report.pair[1]}}?`));
  for (const branch of report.branches) {
    const box = el('div', 'branch');
    box.appendChild(el('h3', undefined, `${branch.winner} beats ${branch.loser}`));
    const imposed =
      branch.imposed.length > 0
        ? branch.imposed.map(([a, b]) => `${a} above ${b}`).join(', ')
        : 'nothing extra';
    box.appendChild(el('p', 'imposed', `imposed by transitivity: ${imposed}`));
    const after = el('ul', 'after');
    for (const cls of branch.classifications) {
      after.appendChild(
        el(
          'li',
          cls.status,
          `{${cls.pair[0]}, ${cls.pair[1]}}: ${badgeLine({
            pair: cls.pair,
            status: cls.status,
            missWitnesses: cls.miss_witnesses,
            riskWitnesses: cls.risk_witnesses,
            recommended: false,
          })}`,
        ),
      );
    }
    box.appendChild(after);
    root.appendChild(box);
  }
  root.hidden = false;
}

export function renderBanner(root: HTMLElement, message: string | null): void {
  root.textContent = message ?? '';
  root.hidden = message === null;
}
