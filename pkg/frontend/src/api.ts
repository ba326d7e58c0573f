import type { CorpusEntry, SessionView } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

interface CreateSessionBody {
  sample_id?: string;
  instruction?: string;
  scene?: unknown;
  trajectory?: unknown;
}

/** Thin typed client for the review service; the UI has no other backend. */
export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string; error?: string };
        detail = body.detail ?? body.error ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(body: CreateSessionBody): Promise<SessionView> {
    return this.request<SessionView>("/api/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/api/sessions/${encodeURIComponent(id)}`);
  }

  submitVerdict(id: string, approve: boolean, feedback?: string): Promise<SessionView> {
    return this.request<SessionView>(`/api/sessions/${encodeURIComponent(id)}/verdict`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(approve ? { approve } : { approve, feedback }),
    });
  }

  listCorpus(): Promise<CorpusEntry[]> {
    return this.request<CorpusEntry[]>("/api/corpus");
  }
}
