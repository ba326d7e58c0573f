import { ApiClient } from "./api.js";
import { ReviewApp } from "./app.js";
import { renderOverlay } from "./overlay.js";
import { PLANES, type Plane } from "./types.js";

const api = new ApiClient("");
const app = new ReviewApp(api);

const canvas = document.getElementById("overlay") as HTMLCanvasElement;
const planeSelect = document.getElementById("plane") as HTMLSelectElement;
const sampleSelect = document.getElementById("sample") as HTMLSelectElement;
const openButton = document.getElementById("open") as HTMLButtonElement;
const approveButton = document.getElementById("approve") as HTMLButtonElement;
const feedbackInput = document.getElementById("feedback") as HTMLInputElement;
const feedbackButton = document.getElementById("send-feedback") as HTMLButtonElement;
const planPane = document.getElementById("plan") as HTMLPreElement;
const statusBadge = document.getElementById("status") as HTMLSpanElement;
const bannerPane = document.getElementById("banner") as HTMLDivElement;
const instructionPane = document.getElementById("instruction") as HTMLDivElement;

for (const plane of PLANES) {
  const option = document.createElement("option");
  option.value = plane;
  option.textContent = plane;
  planeSelect.appendChild(option);
}

async function loadCorpus(): Promise<void> {
  const entries = await api.listCorpus();
  for (const entry of entries) {
    const option = document.createElement("option");
    option.value = entry.id;
    option.textContent = `${entry.id} — ${entry.instruction}`;
    sampleSelect.appendChild(option);
  }
}

function redraw(): void {
  const state = app.state;
  bannerPane.textContent = state.banner ?? "";
  bannerPane.style.display = state.banner ? "block" : "none";
  if (!state.view) {
    statusBadge.textContent = "no session";
    statusBadge.dataset.state = "";
    return;
  }
  const view = state.view;
  statusBadge.textContent = state.polling ? `${view.state} (polling)` : view.state;
  statusBadge.dataset.state = view.state;
  instructionPane.textContent = view.instruction;
  planPane.textContent = view.plan ?? (view.error ? `error: ${view.error}` : "waiting for plan…");
  const actionable = app.canAct();
  approveButton.disabled = !actionable;
  feedbackButton.disabled = !actionable;
  feedbackInput.disabled = !actionable;
  if (feedbackInput.value !== state.feedbackDraft) {
    feedbackInput.value = state.feedbackDraft;
  }
  const ctx = canvas.getContext("2d");
  if (ctx) {
    renderOverlay(ctx, canvas.width, canvas.height, view, state.plane);
  }
}

app.onChange(redraw);

openButton.addEventListener("click", () => {
  const sampleId = sampleSelect.value;
  if (sampleId) {
    void app.createFromSample(sampleId);
  }
});

planeSelect.addEventListener("change", () => {
  app.setPlane(planeSelect.value as Plane);
});

feedbackInput.addEventListener("input", () => {
  app.setFeedbackDraft(feedbackInput.value);
});

approveButton.addEventListener("click", () => {
  void app.approve();
});

feedbackButton.addEventListener("click", () => {
  void app.sendFeedback();
});

void loadCorpus();
