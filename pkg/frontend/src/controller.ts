/**
 * Dashboard orchestration: applies control-panel transitions to the view
 * state, issues exactly the requests that state implies, and keeps the last
 * response per view. Overlapping fetches resolve last-write-wins through a
 * sequence number per (view, resource).
 */

import {
  ApiClient,
  type BiometricSeries,
  type BreakdownPayload,
  type DayPayload,
  type Gender,
  type KindName,
  type SubjectInfo,
} from "./api.js";
import {
  INITIAL_STATE,
  subjectIn,
  withBrush,
  withGenderFilter,
  withKindToggled,
  withSlider,
  withSubject,
  withoutWindow,
  type Slot,
  type ViewState,
} from "./state.js";

const SLOTS: readonly Slot[] = ["top", "bottom"];

interface SlotData {
  days: DayPayload[] | null;
  breakdown: BreakdownPayload | null;
  biometrics: Map<KindName, BiometricSeries>;
}

function emptySlot(): SlotData {
  return { days: null, breakdown: null, biometrics: new Map() };
}

export class DashboardController {
  private viewState: ViewState = INITIAL_STATE;
  private readonly data: Record<Slot, SlotData> = {
    top: emptySlot(),
    bottom: emptySlot(),
  };
  private readonly seq = new Map<string, number>();

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
  ) {}

  get state(): ViewState {
    return this.viewState;
  }

  daysFor(slot: Slot): DayPayload[] | null {
    return this.data[slot].days;
  }

  breakdownFor(slot: Slot): BreakdownPayload | null {
    return this.data[slot].breakdown;
  }

  /** Line series for the currently selected kinds of one view. */
  linesFor(slot: Slot): ReadonlyMap<KindName, BiometricSeries> {
    const visible = new Map<KindName, BiometricSeries>();
    for (const kind of this.viewState.selectedKinds) {
      const series = this.data[slot].biometrics.get(kind);
      if (series) {
        visible.set(kind, series);
      }
    }
    return visible;
  }

  /** Dates backing the shared x-axis: bars and markers of both views. */
  visibleDates(): string[][] {
    const lists: string[][] = [];
    for (const slot of SLOTS) {
      lists.push((this.data[slot].days ?? []).map((d) => d.date));
      for (const [, series] of this.linesFor(slot)) {
        lists.push(series.measurements.map((m) => m.date));
        lists.push((series.daily ?? []).map((m) => m.date));
      }
    }
    return lists;
  }

  async loadSubjects(): Promise<SubjectInfo[]> {
    return this.api.subjects(this.viewState.genderFilter);
  }

  async setGenderFilter(gender: Gender | null): Promise<SubjectInfo[]> {
    this.viewState = withGenderFilter(this.viewState, gender);
    return this.loadSubjects();
  }

  async selectSubject(slot: Slot, id: string): Promise<void> {
    const next = withSubject(this.viewState, slot, id);
    if (next === this.viewState) {
      return; // rejected: same subject in both views
    }
    this.viewState = next;
    this.data[slot] = emptySlot();
    await this.refetch([slot], { days: true, breakdown: true, biometrics: true });
  }

  async setSlider(hours: number): Promise<void> {
    const next = withSlider(this.viewState, hours);
    if (next === this.viewState) {
      return;
    }
    this.viewState = next;
    // biometrics are unaffected by the sedentary-hours filter
    await this.refetch(SLOTS, { days: true, breakdown: true, biometrics: false });
  }

  async brush(from: string, to: string): Promise<void> {
    const next = withBrush(this.viewState, from, to);
    if (next === this.viewState) {
      return; // zero-width brush ignored
    }
    this.viewState = next;
    await this.refetch(SLOTS, { days: true, breakdown: true, biometrics: true });
  }

  async resetZoom(): Promise<void> {
    if (this.viewState.timeWindow === null) {
      return;
    }
    this.viewState = withoutWindow(this.viewState);
    await this.refetch(SLOTS, { days: true, breakdown: true, biometrics: true });
  }

  async toggleKind(kind: KindName): Promise<void> {
    const wasSelected = this.viewState.selectedKinds.includes(kind);
    this.viewState = withKindToggled(this.viewState, kind);
    if (wasSelected) {
      // unchecking removes the lines locally; nothing is refetched
      for (const slot of SLOTS) {
        this.data[slot].biometrics.delete(kind);
      }
      this.onChange();
      return;
    }
    const fetches: Promise<void>[] = [];
    for (const slot of SLOTS) {
      const id = subjectIn(this.viewState, slot);
      if (id !== null) {
        fetches.push(this.fetchBiometric(slot, id, kind));
      }
    }
    await Promise.all(fetches);
  }

  private async refetch(
    slots: readonly Slot[],
    parts: { days: boolean; breakdown: boolean; biometrics: boolean },
  ): Promise<void> {
    const fetches: Promise<void>[] = [];
    for (const slot of slots) {
      const id = subjectIn(this.viewState, slot);
      if (id === null) {
        continue;
      }
      if (parts.days) {
        fetches.push(this.fetchDays(slot, id));
      }
      if (parts.breakdown) {
        fetches.push(this.fetchBreakdown(slot, id));
      }
      if (parts.biometrics) {
        for (const kind of this.viewState.selectedKinds) {
          fetches.push(this.fetchBiometric(slot, id, kind));
        }
      }
    }
    await Promise.all(fetches);
  }

  private bump(key: string): number {
    const next = (this.seq.get(key) ?? 0) + 1;
    this.seq.set(key, next);
    return next;
  }

  private isCurrent(key: string, ticket: number): boolean {
    return this.seq.get(key) === ticket;
  }

  private async fetchDays(slot: Slot, id: string): Promise<void> {
    const key = `${slot}:days`;
    const ticket = this.bump(key);
    const { maxSedentaryHours, timeWindow } = this.viewState;
    const days = await this.api.days(id, maxSedentaryHours, timeWindow);
    if (this.isCurrent(key, ticket)) {
      this.data[slot].days = days;
      this.onChange();
    }
  }

  private async fetchBreakdown(slot: Slot, id: string): Promise<void> {
    const key = `${slot}:breakdown`;
    const ticket = this.bump(key);
    const { maxSedentaryHours, timeWindow } = this.viewState;
    const breakdown = await this.api.breakdown(id, maxSedentaryHours, timeWindow);
    if (this.isCurrent(key, ticket)) {
      this.data[slot].breakdown = breakdown;
      this.onChange();
    }
  }

  private async fetchBiometric(slot: Slot, id: string, kind: KindName): Promise<void> {
    const key = `${slot}:bio:${kind}`;
    const ticket = this.bump(key);
    const series = await this.api.biometrics(id, kind, this.viewState.timeWindow);
    if (this.isCurrent(key, ticket)) {
      this.data[slot].biometrics.set(kind, series);
      this.onChange();
    }
  }
}
