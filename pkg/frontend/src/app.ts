import { ApiClient, ApiError } from "./api.js";
import type { Plane, SessionView } from "./types.js";

export const DEFAULT_POLL_MS = 500;

export interface ViewState {
  view: SessionView | null;
  polling: boolean;
  plane: Plane;
  feedbackDraft: string;
  banner: string | null;
  busy: boolean;
}

/**
 * The review loop's client-side state machine.  All trajectory data comes
 * from the server view; reloading the page and re-opening the session
 * reproduces the exact same state.  While the session is awaiting the LLM
 * the app polls; a verdict is only actionable in the proposed state.
 */
export class ReviewApp {
  readonly state: ViewState = {
    view: null,
    polling: false,
    plane: "XY",
    feedbackDraft: "",
    banner: null,
    busy: false,
  };

  private timer: ReturnType<typeof setInterval> | null = null;
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(
    private readonly api: ApiClient,
    private readonly pollMs: number = DEFAULT_POLL_MS,
  ) {}

  onChange(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  /** A verdict control is actionable only for a pending proposal. */
  canAct(): boolean {
    return this.state.view?.state === "proposed" && !this.state.busy;
  }

  setPlane(plane: Plane): void {
    this.state.plane = plane;
    this.emit();
  }

  setFeedbackDraft(text: string): void {
    this.state.feedbackDraft = text;
    this.emit();
  }

  async createFromSample(sampleId: string): Promise<void> {
    await this.adopt(() => this.api.createSession({ sample_id: sampleId }));
  }

  async open(sessionId: string): Promise<void> {
    await this.adopt(() => this.api.getSession(sessionId));
  }

  async approve(): Promise<void> {
    if (!this.canAct() || !this.state.view) return;
    await this.verdict(this.api.submitVerdict(this.state.view.id, true));
  }

  async sendFeedback(): Promise<void> {
    const text = this.state.feedbackDraft.trim();
    if (!this.canAct() || !this.state.view || !text) return;
    await this.verdict(this.api.submitVerdict(this.state.view.id, false, text));
    // the draft is consumed by a successful submission
    if (this.state.banner === null) {
      this.state.feedbackDraft = "";
      this.emit();
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.state.polling = false;
  }

  private async adopt(load: () => Promise<SessionView>): Promise<void> {
    this.state.banner = null;
    this.state.busy = true;
    this.emit();
    try {
      this.update(await load());
    } catch (error) {
      this.fail(error);
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  private async verdict(call: Promise<SessionView>): Promise<void> {
    this.state.banner = null;
    this.state.busy = true;
    this.emit();
    try {
      this.update(await call);
    } catch (error) {
      this.fail(error);
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      this.state.banner = `server says ${error.status}: ${error.message}`;
    } else {
      this.state.banner = `request failed: ${String(error)}`;
    }
    this.emit();
  }

  private update(view: SessionView): void {
    this.state.view = view;
    if (view.state === "awaiting_llm") {
      this.startPolling();
    } else {
      this.stop();
    }
    this.emit();
  }

  private startPolling(): void {
    if (this.timer !== null) return;
    this.state.polling = true;
    this.timer = setInterval(() => {
      void this.tick();
    }, this.pollMs);
    this.emit();
  }

  private async tick(): Promise<void> {
    const current = this.state.view;
    if (!current) {
      this.stop();
      return;
    }
    try {
      const fresh = await this.api.getSession(current.id);
      this.update(fresh);
    } catch (error) {
      this.fail(error);
      this.stop();
      this.emit();
    }
  }
}
