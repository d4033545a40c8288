/**
 * The control-panel view state and its pure transitions. Every request the
 * dashboard issues is a function of this state alone.
 */

import type { Gender, KindName, TimeWindow } from "./api.js";

export type Slot = "top" | "bottom";

export interface ViewState {
  subjectTop: string | null;
  subjectBottom: string | null;
  genderFilter: Gender | null;
  maxSedentaryHours: number; // slider, 0..24 step 1
  selectedKinds: readonly KindName[];
  timeWindow: TimeWindow | null;
}

export const INITIAL_STATE: ViewState = {
  subjectTop: null,
  subjectBottom: null,
  genderFilter: null,
  maxSedentaryHours: 24, // default: no filtering
  selectedKinds: [],
  timeWindow: null,
};

export function subjectIn(state: ViewState, slot: Slot): string | null {
  return slot === "top" ? state.subjectTop : state.subjectBottom;
}

/** Assign a subject to a view; both views must show different subjects. */
export function withSubject(state: ViewState, slot: Slot, id: string): ViewState {
  const other = slot === "top" ? state.subjectBottom : state.subjectTop;
  if (id === other) {
    return state; // rejected: the two views must differ
  }
  return slot === "top"
    ? { ...state, subjectTop: id }
    : { ...state, subjectBottom: id };
}

export function withSlider(state: ViewState, hours: number): ViewState {
  const clamped = Math.min(24, Math.max(0, Math.round(hours)));
  return { ...state, maxSedentaryHours: clamped };
}

export function withGenderFilter(state: ViewState, gender: Gender | null): ViewState {
  return { ...state, genderFilter: gender };
}

/** Brush selection; a zero-width or inverted span is ignored. */
export function withBrush(state: ViewState, from: string, to: string): ViewState {
  if (!(from < to)) {
    return state;
  }
  return { ...state, timeWindow: { from, to } };
}

/** Double-click background: clear the zoom, back to the full range. */
export function withoutWindow(state: ViewState): ViewState {
  return { ...state, timeWindow: null };
}

export function withKindToggled(state: ViewState, kind: KindName): ViewState {
  const selected = state.selectedKinds.includes(kind)
    ? state.selectedKinds.filter((k) => k !== kind)
    : [...state.selectedKinds, kind];
  return { ...state, selectedKinds: selected };
}
