/**
 * Horizontal brush-to-zoom on an SVG time axis: drag selects a date span,
 * double-clicking the background zooms back out. Pixel-to-date mapping comes
 * from the shared band domain.
 */

import { dateAtPixel, type ChartBox } from "./charts.js";

export interface BrushTarget {
  box: ChartBox;
  domain: () => readonly string[];
  onBrush: (from: string, to: string) => void;
  onReset: () => void;
}

const OVERLAY_CLASS = "brush-overlay";

export function attachBrush(svg: SVGSVGElement, target: BrushTarget): void {
  let anchor: number | null = null;
  let overlay: SVGRectElement | null = null;

  const localX = (event: PointerEvent | MouseEvent): number => {
    const rect = svg.getBoundingClientRect();
    return Math.min(target.box.width, Math.max(0, event.clientX - rect.left));
  };

  svg.addEventListener("pointerdown", (event) => {
    anchor = localX(event);
    overlay = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    overlay.setAttribute("class", OVERLAY_CLASS);
    overlay.setAttribute("y", "0");
    overlay.setAttribute("height", String(target.box.height));
    overlay.setAttribute("x", String(anchor));
    overlay.setAttribute("width", "0");
    svg.appendChild(overlay);
    svg.setPointerCapture(event.pointerId);
  });

  svg.addEventListener("pointermove", (event) => {
    if (anchor === null || overlay === null) {
      return;
    }
    const x = localX(event);
    overlay.setAttribute("x", String(Math.min(anchor, x)));
    overlay.setAttribute("width", String(Math.abs(x - anchor)));
  });

  svg.addEventListener("pointerup", (event) => {
    if (anchor === null) {
      return;
    }
    const start = anchor;
    anchor = null;
    overlay?.remove();
    overlay = null;
    const end = localX(event);
    const domain = target.domain();
    const a = dateAtPixel(domain, Math.min(start, end), target.box);
    const b = dateAtPixel(domain, Math.max(start, end), target.box);
    if (a !== null && b !== null && a < b) {
      target.onBrush(a, b); // zero-width spans never reach here
    }
  });

  svg.addEventListener("dblclick", () => target.onReset());
}
