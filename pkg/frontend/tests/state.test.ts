import { describe, expect, it } from "vitest";

import {
  INITIAL_STATE,
  withBrush,
  withKindToggled,
  withSlider,
  withSubject,
  withoutWindow,
} from "../src/state.js";

describe("view state transitions", () => {
  it("starts unfiltered: slider 24, no window, no kinds", () => {
    expect(INITIAL_STATE.maxSedentaryHours).toBe(24);
    expect(INITIAL_STATE.timeWindow).toBeNull();
    expect(INITIAL_STATE.selectedKinds).toEqual([]);
  });

  it("assigns subjects per view but rejects the same subject twice", () => {
    let state = withSubject(INITIAL_STATE, "top", "84");
    state = withSubject(state, "bottom", "82");
    expect(state.subjectTop).toBe("84");
    expect(state.subjectBottom).toBe("82");

    const rejected = withSubject(state, "bottom", "84");
    expect(rejected).toBe(state); // unchanged, identical reference
  });

  it("clamps the slider to whole hours in [0, 24]", () => {
    expect(withSlider(INITIAL_STATE, 16).maxSedentaryHours).toBe(16);
    expect(withSlider(INITIAL_STATE, -3).maxSedentaryHours).toBe(0);
    expect(withSlider(INITIAL_STATE, 99).maxSedentaryHours).toBe(24);
  });

  it("brush sets the window; zero-width and inverted spans are ignored", () => {
    const brushed = withBrush(INITIAL_STATE, "2015-03-05", "2015-03-10");
    expect(brushed.timeWindow).toEqual({ from: "2015-03-05", to: "2015-03-10" });
    expect(withBrush(INITIAL_STATE, "2015-03-05", "2015-03-05")).toBe(INITIAL_STATE);
    expect(withBrush(INITIAL_STATE, "2015-03-10", "2015-03-05")).toBe(INITIAL_STATE);
  });

  it("brush then reset returns the pre-brush state exactly", () => {
    const before = withSubject(withSubject(INITIAL_STATE, "top", "84"), "bottom", "82");
    const after = withoutWindow(withBrush(before, "2015-03-05", "2015-03-10"));
    expect(after).toEqual(before);
  });

  it("toggling a kind adds then removes exactly that kind", () => {
    const on = withKindToggled(INITIAL_STATE, "bmi");
    expect(on.selectedKinds).toEqual(["bmi"]);
    const two = withKindToggled(on, "body_fat_pct");
    expect(two.selectedKinds).toEqual(["bmi", "body_fat_pct"]);
    const off = withKindToggled(two, "bmi");
    expect(off.selectedKinds).toEqual(["body_fat_pct"]);
  });
});
