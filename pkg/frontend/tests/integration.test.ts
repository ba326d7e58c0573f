/**
 * End-to-end check against the real review service running with its mock
 * LLM transport: overlay data, approve round-trip, feedback round-trip.
 * Skipped automatically when the service binary is not available.
 */
import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ReviewApp } from "../src/app.js";
import { ADAPTED_COLOR, ORIGINAL_COLOR, renderOverlay } from "../src/overlay.js";
import { FakeCanvas } from "./fake_canvas.js";

const PORT = 8971;
const BASE = `http://127.0.0.1:${PORT}`;
const POLL_MS = 100;

let server: ChildProcess | null = null;
let available = false;

async function waitForHealth(timeoutMs: number): Promise<boolean> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/health`);
      if (response.ok) return true;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  return false;
}

async function until(predicate: () => boolean, timeoutMs = 5000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((resolve) => setTimeout(resolve, 20));
  }
  throw new Error("condition not reached in time");
}

beforeAll(async () => {
  server = spawn("trajadapt", ["serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  server.on("error", () => {
    available = false;
  });
  available = await waitForHealth(10_000);
}, 20_000);

afterAll(() => {
  server?.kill();
});

describe("review UI against the mock-backed service", () => {
  it("polls a session to proposed and draws blue/red overlay", async () => {
    if (!available) return; // no service binary in this environment
    const app = new ReviewApp(new ApiClient(BASE), POLL_MS);
    await app.createFromSample("go_left");
    await until(() => app.state.view?.state === "proposed");

    const ctx = new FakeCanvas();
    renderOverlay(ctx, 720, 540, app.state.view!, "XY");
    expect(ctx.strokes.map((s) => s.color)).toEqual([ORIGINAL_COLOR, ADAPTED_COLOR]);
    expect(app.state.view!.plan).toBeTruthy();
    app.stop();
  });

  it("feedback then approve, each reflected within one poll interval", async () => {
    if (!available) return;
    const app = new ReviewApp(new ApiClient(BASE), POLL_MS);
    await app.createFromSample("go_left");
    await until(() => app.state.view?.state === "proposed");
    const firstPlan = app.state.view!.plan;

    app.setFeedbackDraft("more to the left please");
    await app.sendFeedback();
    expect(app.state.view?.state).toBe("awaiting_llm");
    const sentAt = Date.now();
    await until(() => app.state.view?.state === "proposed");
    // mock generation is instant, so one poll interval (plus slack) suffices
    expect(Date.now() - sentAt).toBeLessThan(POLL_MS * 5);
    expect(app.state.view!.plan).not.toBe(firstPlan);
    expect(app.state.view!.iteration_count).toBe(2);

    await app.approve();
    expect(app.state.view?.state).toBe("approved");
    expect(app.canAct()).toBe(false);
    app.stop();
  });

  it("double verdict from a second client yields a 409 banner", async () => {
    if (!available) return;
    const app = new ReviewApp(new ApiClient(BASE), POLL_MS);
    await app.createFromSample("go_right");
    await until(() => app.state.view?.state === "proposed");

    const other = new ApiClient(BASE);
    await other.submitVerdict(app.state.view!.id, true);

    await app.approve();
    expect(app.state.banner).toContain("409");
    app.stop();
  });
});
