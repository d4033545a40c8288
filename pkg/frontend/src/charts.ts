/**
 * Pure chart geometry: pixel rectangles, polylines, and panel rows computed
 * from API payloads. No DOM access here; the render layer only places what
 * these functions return, and the UI never does analytics arithmetic beyond
 * pixel scaling.
 */

import type {
  BiometricSeries,
  BreakdownPayload,
  DayPayload,
  LevelName,
} from "./api.js";
import { LEVEL_ORDER } from "./api.js";

// Fixed palette: bluish for sedentary/light, reddish for moderate/vigorous,
// orange frame for the top subject and violet for the bottom one.
export const LEVEL_COLORS: Record<LevelName, string> = {
  sedentary: "#2c4a6e",
  light: "#8ab4d8",
  moderate: "#e98a7a",
  vigorous: "#a32020",
};

export const FRAME_COLORS = { top: "#e08214", bottom: "#8073ac" } as const;

export const HOURS_DOMAIN = 24;

export interface ChartBox {
  width: number;
  height: number;
}

const DAY_MS = 86_400_000;

function toUtc(date: string): number {
  return Date.parse(`${date}T00:00:00Z`);
}

function fromUtc(ms: number): string {
  return new Date(ms).toISOString().slice(0, 10);
}

/** Every calendar date from first to last, inclusive. */
export function calendarRange(first: string, last: string): string[] {
  const out: string[] = [];
  for (let ms = toUtc(first); ms <= toUtc(last); ms += DAY_MS) {
    out.push(fromUtc(ms));
  }
  return out;
}

/**
 * The shared x-axis domain: the continuous calendar span covering every date
 * in every list, so both subjects' bars align and filtered-out days appear
 * as gaps.
 */
export function dateDomain(dateLists: readonly (readonly string[])[]): string[] {
  const all = dateLists.flat();
  if (all.length === 0) {
    return [];
  }
  let first = all[0];
  let last = all[0];
  for (const date of all) {
    if (date < first) first = date;
    if (date > last) last = date;
  }
  return calendarRange(first, last);
}

export function bandWidth(domain: readonly string[], box: ChartBox): number {
  return domain.length ? box.width / domain.length : 0;
}

export function bandCenter(
  domain: readonly string[],
  date: string,
  box: ChartBox,
): number | null {
  const index = domain.indexOf(date);
  if (index < 0) {
    return null;
  }
  const band = bandWidth(domain, box);
  return index * band + band / 2;
}

/** Map an x pixel back to the domain date under it (for the brush). */
export function dateAtPixel(
  domain: readonly string[],
  x: number,
  box: ChartBox,
): string | null {
  if (!domain.length) {
    return null;
  }
  const band = bandWidth(domain, box);
  const index = Math.min(domain.length - 1, Math.max(0, Math.floor(x / band)));
  return domain[index];
}

export interface BarSegment {
  level: LevelName;
  color: string;
  x: number;
  y: number;
  width: number;
  height: number;
  hours: number;
}

export interface DayBar {
  date: string;
  weekend: boolean;
  totalHours: number;
  segments: BarSegment[];
}

/**
 * One stacked bar per retained day, segments bottom-up in the fixed level
 * order. The y unit is box.height / 24 h, so a fully recorded day spans the
 * whole box.
 */
export function stackedBars(
  days: readonly DayPayload[],
  domain: readonly string[],
  box: ChartBox,
): DayBar[] {
  const band = bandWidth(domain, box);
  const barWidth = band * 0.8;
  const unit = box.height / HOURS_DOMAIN;
  const bars: DayBar[] = [];
  for (const day of days) {
    const center = bandCenter(domain, day.date, box);
    if (center === null) {
      continue;
    }
    const segments: BarSegment[] = [];
    let stackedHours = 0;
    for (const level of LEVEL_ORDER) {
      const hours = day.hours[level];
      stackedHours += hours;
      segments.push({
        level,
        color: LEVEL_COLORS[level],
        x: center - barWidth / 2,
        y: box.height - stackedHours * unit,
        width: barWidth,
        height: hours * unit,
        hours,
      });
    }
    bars.push({
      date: day.date,
      weekend: day.weekend,
      totalHours: stackedHours,
      segments,
    });
  }
  return bars;
}

export interface LinePoint {
  x: number;
  y: number;
  date: string;
  value: number;
}

export interface LineGeometry {
  /** Polyline through the server-interpolated daily points, span only. */
  path: LinePoint[];
  /** Markers at the true measurement dates. */
  markers: LinePoint[];
}

export function valueExtent(seriesList: readonly BiometricSeries[]): [number, number] | null {
  let min = Infinity;
  let max = -Infinity;
  for (const series of seriesList) {
    for (const point of [...series.measurements, ...(series.daily ?? [])]) {
      if (point.value < min) min = point.value;
      if (point.value > max) max = point.value;
    }
  }
  if (min === Infinity) {
    return null;
  }
  if (min === max) {
    return [min - 1, max + 1]; // avoid a degenerate scale
  }
  return [min, max];
}

export function lineGeometry(
  series: BiometricSeries,
  domain: readonly string[],
  box: ChartBox,
  extent: [number, number],
): LineGeometry {
  const [min, max] = extent;
  const scaleY = (value: number) =>
    box.height - ((value - min) / (max - min)) * box.height;
  const place = (points: readonly { date: string; value: number }[]) =>
    points.flatMap((p) => {
      const x = bandCenter(domain, p.date, box);
      return x === null ? [] : [{ x, y: scaleY(p.value), date: p.date, value: p.value }];
    });
  return { path: place(series.daily ?? []), markers: place(series.measurements) };
}

export interface BreakdownRow {
  level: LevelName;
  color: string;
  mean: number | null;
}

export interface BreakdownGroupView {
  group: "weekday" | "weekend";
  days: number;
  rows: BreakdownRow[];
}

/** Panel rows verbatim from the payload; null means "no data", never zero. */
export function breakdownRows(payload: BreakdownPayload): BreakdownGroupView[] {
  return (["weekday", "weekend"] as const).map((group) => ({
    group,
    days: payload[group].days,
    rows: LEVEL_ORDER.map((level) => ({
      level,
      color: LEVEL_COLORS[level],
      mean: payload[group].means ? payload[group].means[level] : null,
    })),
  }));
}
