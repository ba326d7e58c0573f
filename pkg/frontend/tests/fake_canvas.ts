import type { Canvas2DLike } from "../src/overlay.js";

export interface Stroke {
  color: string;
  points: [number, number][];
}

export interface Dot {
  color: string;
  x: number;
  y: number;
  r: number;
}

/** Records draw calls so tests can assert on what the overlay painted. */
export class FakeCanvas implements Canvas2DLike {
  strokeStyle: string | CanvasGradient | CanvasPattern = "";
  fillStyle: string | CanvasGradient | CanvasPattern = "";
  lineWidth = 0;
  font = "";

  strokes: Stroke[] = [];
  dots: Dot[] = [];
  texts: { text: string; x: number; y: number }[] = [];
  cleared = 0;

  private path: [number, number][] = [];
  private arcCenter: { x: number; y: number; r: number } | null = null;

  clearRect(): void {
    this.cleared += 1;
  }

  beginPath(): void {
    this.path = [];
    this.arcCenter = null;
  }

  moveTo(x: number, y: number): void {
    this.path.push([x, y]);
  }

  lineTo(x: number, y: number): void {
    this.path.push([x, y]);
  }

  stroke(): void {
    this.strokes.push({ color: String(this.strokeStyle), points: [...this.path] });
  }

  arc(x: number, y: number, r: number): void {
    this.arcCenter = { x, y, r };
  }

  fill(): void {
    if (this.arcCenter) {
      this.dots.push({ color: String(this.fillStyle), ...this.arcCenter });
    }
  }

  fillText(text: string, x: number, y: number): void {
    this.texts.push({ text, x, y });
  }
}
