/** Console wiring: create or resume a session, then keep the view in sync
 * with the service. Every mutation waits for the response; nothing is
 * rendered that the service did not say. */

import { AdvisorClient, ApiError } from './client.js';
import { renderBanner, renderView, renderWhatIf } from './render.js';
import { deriveView } from './view.js';

const client = new AdvisorClient();
const POLL_MS = 4000;

function element(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

let sessionId: string | null = null;
let pollTimer: number | undefined;

async function refresh(): Promise<void> {
  if (!sessionId) return;
  try {
    const session = await client.getSession(sessionId);
    const recommendation =
      session.status === 'open' ? await client.recommendation(sessionId) : null;
    renderView(element('session'), deriveView(session, recommendation), {
      onVote: (winner, loser) => void vote(winner, loser),
      onUndo: () => void undo(),
      onInspect: (x, y) => void inspect(x, y),
    });
    renderBanner(element('banner'), null);
  } catch (error) {
    renderBanner(element('banner'), describe(error));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `service error: ${error.message}`;
  return 'service unreachable; the view is unchanged';
}

async function vote(winner: number, loser: number): Promise<void> {
  if (!sessionId) return;
  try {
    await client.recordVote(sessionId, winner, loser);
    element('whatif').hidden = true;
    await refresh();
  } catch (error) {
    renderBanner(element('banner'), describe(error));
  }
}

async function undo(): Promise<void> {
  if (!sessionId) return;
  try {
    await client.undo(sessionId);
    element('whatif').hidden = true;
    await refresh();
  } catch (error) {
    renderBanner(element('banner'), describe(error));
  }
}

async function inspect(x: number, y: number): Promise<void> {
  if (!sessionId) return;
  try {
    renderWhatIf(element('whatif'), await client.whatIf(sessionId, x, y));
  } catch (error) {
    renderBanner(element('banner'), describe(error));
  }
}

function attach(id: string): void {
  sessionId = id;
  window.location.hash = id;
  element('setup').hidden = true;
  if (pollTimer !== undefined) window.clearInterval(pollTimer);
  pollTimer = window.setInterval(() => void refresh(), POLL_MS);
  void refresh();
}

async function createFromForm(event: Event): Promise<void> {
  event.preventDefault();
  const n = Number((element('n-input') as HTMLInputElement).value);
  const prefRaw = (element('pref-input') as HTMLInputElement).value.trim();
  const advisor = (element('advisor-input') as HTMLSelectElement).value;
  const pref = prefRaw
    ? prefRaw.split(/[\s,]+/).map(Number)
    : Array.from({ length: n }, (_, i) => i + 1);
  try {
    const session = await client.createSession(n, pref, advisor);
    attach(session.id);
  } catch (error) {
    renderBanner(element('banner'), describe(error));
  }
}

export function boot(): void {
  element('setup-form').addEventListener('submit', (event) => void createFromForm(event));
  const fromHash = window.location.hash.replace(/^#/, '');
  if (fromHash) attach(fromHash);
}

boot();
