export type SessionState = "awaiting_llm" | "proposed" | "approved" | "failed";

export interface TrajectoryFile {
  waypoints: number[][]; // rows of [x, y, z, v]
}

export interface SceneObjectView {
  label: string;
  position: number[];
}

export interface SceneFile {
  objects: SceneObjectView[];
  description?: string;
}

export interface SessionView {
  id: string;
  state: SessionState;
  instruction: string;
  iteration_count: number;
  plan: string | null;
  scene: SceneFile;
  original: TrajectoryFile;
  adapted: TrajectoryFile | null;
  error: string | null;
}

export interface CorpusEntry {
  id: string;
  instruction: string;
  category: string;
  checks: number;
  objects: string[];
}

export type Plane = "XY" | "XZ" | "YZ";

export const PLANES: Plane[] = ["XY", "XZ", "YZ"];
