/**
 * SVG/DOM placement of the pure chart geometry. Nothing here computes
 * analytics values; it draws exactly what the geometry and payloads carry.
 */

import type { BiometricSeries, BreakdownPayload, DayPayload, KindName } from "./api.js";
import {
  breakdownRows,
  lineGeometry,
  stackedBars,
  valueExtent,
  type ChartBox,
  type LineGeometry,
} from "./charts.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgChild<K extends keyof SVGElementTagNameMap>(
  parent: Element,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  parent.appendChild(el);
  return el;
}

function clear(el: Element): void {
  while (el.firstChild) {
    el.removeChild(el.firstChild);
  }
}

export function renderBars(
  svg: SVGSVGElement,
  days: readonly DayPayload[] | null,
  domain: readonly string[],
  box: ChartBox,
): void {
  clear(svg);
  if (!days || days.length === 0) {
    const label = svgChild(svg, "text", {
      x: String(box.width / 2),
      y: String(box.height / 2),
      class: "empty-note",
      "text-anchor": "middle",
    });
    label.textContent = days === null ? "select a subject" : "no days retained";
    return;
  }
  for (const bar of stackedBars(days, domain, box)) {
    const group = svgChild(svg, "g", { class: "day-bar" });
    const title = svgChild(group, "title", {});
    title.textContent = `${bar.date}${bar.weekend ? " (weekend)" : ""}: ${bar.totalHours.toFixed(2)} h recorded`;
    for (const seg of bar.segments) {
      if (seg.height <= 0) {
        continue;
      }
      svgChild(group, "rect", {
        x: seg.x.toFixed(2),
        y: seg.y.toFixed(2),
        width: seg.width.toFixed(2),
        height: seg.height.toFixed(2),
        fill: seg.color,
      });
    }
  }
}

const DASH_PATTERNS = ["", "6 3", "2 3", "8 3 2 3", "1 3", "10 4", "4 4"];

export function renderLines(
  svg: SVGSVGElement,
  topSeries: ReadonlyMap<KindName, BiometricSeries>,
  bottomSeries: ReadonlyMap<KindName, BiometricSeries>,
  domain: readonly string[],
  box: ChartBox,
  frameColors: { top: string; bottom: string },
): void {
  clear(svg);
  const all = [...topSeries.values(), ...bottomSeries.values()];
  const extent = valueExtent(all);
  if (extent === null) {
    return; // nothing selected or no data: draw nothing
  }
  const kindsInOrder = [...new Set([...topSeries.keys(), ...bottomSeries.keys()])];
  const drawSide = (
    series: ReadonlyMap<KindName, BiometricSeries>,
    color: string,
  ): void => {
    for (const [kind, payload] of series) {
      const geometry = lineGeometry(payload, domain, box, extent);
      const dash = DASH_PATTERNS[kindsInOrder.indexOf(kind) % DASH_PATTERNS.length];
      drawSeries(svg, geometry, color, dash, kind);
    }
  };
  drawSide(topSeries, frameColors.top);
  drawSide(bottomSeries, frameColors.bottom);
}

function drawSeries(
  svg: SVGSVGElement,
  geometry: LineGeometry,
  color: string,
  dash: string,
  kind: string,
): void {
  if (geometry.path.length > 1) {
    svgChild(svg, "polyline", {
      points: geometry.path.map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`).join(" "),
      fill: "none",
      stroke: color,
      "stroke-width": "2",
      ...(dash ? { "stroke-dasharray": dash } : {}),
    });
  }
  for (const marker of geometry.markers) {
    const dot = svgChild(svg, "circle", {
      cx: marker.x.toFixed(2),
      cy: marker.y.toFixed(2),
      r: "3.5",
      fill: color,
    });
    const title = svgChild(dot, "title", {});
    title.textContent = `${kind} ${marker.date}: ${marker.value}`;
  }
}

function meansBlock(container: HTMLElement, payload: BreakdownPayload, group: "weekday" | "weekend"): void {
  const view = breakdownRows(payload).find((g) => g.group === group)!;
  const block = document.createElement("div");
  block.className = "breakdown-block";
  const days = document.createElement("div");
  days.className = "breakdown-days";
  days.textContent = `${view.days} day${view.days === 1 ? "" : "s"}`;
  block.appendChild(days);
  for (const row of view.rows) {
    const line = document.createElement("div");
    line.className = "breakdown-row";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = row.color;
    const label = document.createElement("span");
    label.className = "breakdown-label";
    label.textContent = row.level;
    const value = document.createElement("span");
    value.className = "breakdown-value";
    if (row.mean === null) {
      value.textContent = "no data";
    } else {
      value.textContent = `${row.mean} h`;
      const bar = document.createElement("span");
      bar.className = "breakdown-bar";
      bar.style.width = `${Math.min(100, (row.mean / 24) * 100 * 3)}%`;
      bar.style.background = row.color;
      line.appendChild(bar);
    }
    line.prepend(swatch, label, value);
    block.appendChild(line);
  }
  container.appendChild(block);
}

/**
 * Right-side panels: weekday averages for the top subject, weekend averages
 * for both in the middle, weekday averages for the bottom subject.
 */
export function renderBreakdownPanels(
  container: HTMLElement,
  top: BreakdownPayload | null,
  bottom: BreakdownPayload | null,
  frameColors: { top: string; bottom: string },
): void {
  clear(container);
  const section = (
    heading: string,
    color: string | null,
    fill: (body: HTMLElement) => void,
  ): void => {
    const box = document.createElement("section");
    box.className = "breakdown-section";
    if (color) {
      box.style.borderColor = color;
    }
    const title = document.createElement("h3");
    title.textContent = heading;
    box.appendChild(title);
    fill(box);
    container.appendChild(box);
  };

  section("Weekdays — top subject", frameColors.top, (body) => {
    if (top) meansBlock(body, top, "weekday");
  });
  section("Weekend days", null, (body) => {
    if (top) meansBlock(body, top, "weekend");
    if (bottom) meansBlock(body, bottom, "weekend");
  });
  section("Weekdays — bottom subject", frameColors.bottom, (body) => {
    if (bottom) meansBlock(body, bottom, "weekday");
  });
}
