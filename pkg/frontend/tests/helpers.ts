import type { FetchLike } from "../src/api.js";
import type { SessionView, TrajectoryFile } from "../src/types.js";

function line(n: number, shiftX = 0): TrajectoryFile {
  const waypoints: number[][] = [];
  for (let i = 0; i < n; i++) {
    const s = i / (n - 1);
    waypoints.push([shiftX * s, 40 * s, 0, 1 + s]);
  }
  return { waypoints };
}

interface StoredSession {
  view: SessionView;
  /** next proposal to reveal on the poll after a feedback verdict */
  pendingPlans: string[];
}

/**
 * In-memory stand-in for the review service, mirroring its contract: session
 * creation and feedback return an awaiting_llm snapshot while the (instant)
 * mock generation completes in the background, so the next poll observes the
 * proposed state; verdicts outside the proposed state get a 409.
 */
export class MockBackend {
  private sessions = new Map<string, StoredSession>();
  private counter = 0;
  readonly requests: string[] = [];

  createSession(sampleId: string): { status: number; body: unknown } {
    const id = `s${++this.counter}`;
    const snapshot: SessionView = {
      id,
      state: "awaiting_llm",
      instruction: `instruction for ${sampleId}`,
      iteration_count: 0,
      plan: null,
      scene: { objects: [{ label: "box", position: [3, 24, 0] }] },
      original: line(9),
      adapted: null,
      error: null,
    };
    const stored: StoredSession = {
      view: {
        ...snapshot,
        state: "proposed",
        iteration_count: 1,
        plan: "1) first plan",
        adapted: line(9, 12),
      },
      pendingPlans: ["1) revised plan after feedback"],
    };
    this.sessions.set(id, stored);
    return { status: 201, body: snapshot };
  }

  getSession(id: string): { status: number; body: unknown } {
    const stored = this.sessions.get(id);
    if (!stored) return { status: 404, body: { detail: `unknown session '${id}'` } };
    return { status: 200, body: stored.view };
  }

  verdict(
    id: string,
    body: { approve: boolean; feedback?: string },
  ): { status: number; body: unknown } {
    const stored = this.sessions.get(id);
    if (!stored) return { status: 404, body: { detail: `unknown session '${id}'` } };
    if (stored.view.state !== "proposed") {
      return { status: 409, body: { detail: `no pending proposal (state '${stored.view.state}')` } };
    }
    if (body.approve) {
      stored.view = { ...stored.view, state: "approved" };
      return { status: 200, body: stored.view };
    }
    if (!body.feedback || !body.feedback.trim()) {
      return { status: 400, body: { detail: "field 'feedback' is required" } };
    }
    const awaiting: SessionView = { ...stored.view, state: "awaiting_llm" };
    const nextPlan = stored.pendingPlans.shift() ?? "1) another plan";
    stored.view = {
      ...stored.view,
      state: "proposed",
      iteration_count: stored.view.iteration_count + 1,
      plan: nextPlan,
      adapted: line(9, 20),
    };
    return { status: 200, body: awaiting };
  }

  fetchLike(): FetchLike {
    return async (url: string, init?: RequestInit) => {
      const method = init?.method ?? "GET";
      this.requests.push(`${method} ${url}`);
      const verdictMatch = url.match(/^\/api\/sessions\/([^/]+)\/verdict$/);
      if (verdictMatch && method === "POST") {
        const parsed = JSON.parse(String(init?.body ?? "{}"));
        return respond(this.verdict(verdictMatch[1], parsed));
      }
      const sessionMatch = url.match(/^\/api\/sessions\/([^/]+)$/);
      if (sessionMatch && method === "GET") {
        return respond(this.getSession(sessionMatch[1]));
      }
      if (url === "/api/sessions" && method === "POST") {
        const parsed = JSON.parse(String(init?.body ?? "{}"));
        return respond(this.createSession(parsed.sample_id ?? "unknown"));
      }
      if (url === "/api/corpus" && method === "GET") {
        return respond({
          status: 200,
          body: [
            { id: "go_left", instruction: "Go left", category: "cartesian", checks: 4, objects: [] },
          ],
        });
      }
      return respond({ status: 404, body: { detail: `no route ${method} ${url}` } });
    };
  }
}

function respond({ status, body }: { status: number; body: unknown }): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function proposedView(): SessionView {
  return {
    id: "s1",
    state: "proposed",
    instruction: "Go left",
    iteration_count: 1,
    plan: "1) shift the goal left",
    scene: { objects: [{ label: "box", position: [3, 24, 0] }] },
    original: line(9),
    adapted: line(9, 12),
    error: null,
  };
}

export function awaitingView(): SessionView {
  return { ...proposedView(), state: "awaiting_llm", plan: null, adapted: null };
}
