/**
 * Dashboard bootstrap: builds the control panel, wires it to the controller,
 * and redraws the visualization panel whenever data lands.
 */

import {
  ALL_KINDS,
  ApiClient,
  fetchTransport,
  type Gender,
  type KindName,
  type SubjectInfo,
} from "./api.js";
import { attachBrush } from "./brush.js";
import { FRAME_COLORS, LEVEL_COLORS, dateDomain, type ChartBox } from "./charts.js";
import { DashboardController } from "./controller.js";
import { renderBars, renderBreakdownPanels, renderLines } from "./render.js";
import type { Slot } from "./state.js";

const BAR_BOX: ChartBox = { width: 760, height: 220 };
const LINE_BOX: ChartBox = { width: 760, height: 150 };

function apiBase(): string {
  const override = new URLSearchParams(location.search).get("api");
  if (override) {
    return override;
  }
  return (window as { ACTIDASH_API?: string }).ACTIDASH_API ?? "";
}

function el<T extends HTMLElement = HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function showBanner(message: string, retry: () => void): void {
  const banner = el("banner");
  banner.textContent = "";
  banner.append(`${message} `);
  const button = document.createElement("button");
  button.textContent = "Retry";
  button.addEventListener("click", () => {
    banner.hidden = true;
    retry();
  });
  banner.appendChild(button);
  banner.hidden = false;
}

function guarded(action: () => Promise<void>): () => void {
  const run = (): void => {
    action().catch((err: unknown) => {
      showBanner(err instanceof Error ? err.message : String(err), run);
    });
  };
  return run;
}

function main(): void {
  const controller = new DashboardController(
    new ApiClient(fetchTransport(apiBase())),
    () => redraw(controller),
  );

  const topSelect = el<HTMLSelectElement>("subject-top");
  const bottomSelect = el<HTMLSelectElement>("subject-bottom");
  const genderSelect = el<HTMLSelectElement>("gender-filter");
  const slider = el<HTMLInputElement>("sedentary-slider");
  const sliderValue = el("slider-value");

  const fillSubjects = (subjects: SubjectInfo[]): void => {
    for (const select of [topSelect, bottomSelect]) {
      const previous = select.value;
      select.textContent = "";
      const blank = document.createElement("option");
      blank.value = "";
      blank.textContent = "—";
      select.appendChild(blank);
      for (const subject of subjects) {
        const option = document.createElement("option");
        option.value = subject.id;
        option.textContent = `${subject.id} (${subject.gender})`;
        select.appendChild(option);
      }
      select.value = previous;
    }
  };

  const selectHandler = (slot: Slot, select: HTMLSelectElement) =>
    guarded(async () => {
      if (select.value) {
        await controller.selectSubject(slot, select.value);
        const shown = slot === "top" ? controller.state.subjectTop : controller.state.subjectBottom;
        select.value = shown ?? ""; // rejected picks (same subject twice) roll back
      }
    });
  topSelect.addEventListener("change", selectHandler("top", topSelect));
  bottomSelect.addEventListener("change", selectHandler("bottom", bottomSelect));

  genderSelect.addEventListener(
    "change",
    guarded(async () => {
      const value = genderSelect.value as Gender | "";
      fillSubjects(await controller.setGenderFilter(value === "" ? null : value));
    }),
  );

  slider.addEventListener(
    "change",
    guarded(async () => {
      sliderValue.textContent = `${slider.value} h`;
      await controller.setSlider(Number(slider.value));
    }),
  );
  slider.addEventListener("input", () => {
    sliderValue.textContent = `${slider.value} h`;
  });

  const kindBoxes = el("kind-checkboxes");
  for (const kind of ALL_KINDS) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = kind;
    box.addEventListener(
      "change",
      guarded(async () => controller.toggleKind(kind as KindName)),
    );
    label.append(box, ` ${kind}`);
    kindBoxes.appendChild(label);
  }

  const legend = el("legend");
  for (const [level, color] of Object.entries(LEVEL_COLORS)) {
    const item = document.createElement("span");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = color;
    item.append(swatch, ` ${level}`);
    legend.appendChild(item);
  }

  for (const slot of ["top", "bottom"] as const) {
    const svg = el(`bars-${slot}`) as unknown as SVGSVGElement;
    attachBrush(svg, {
      box: BAR_BOX,
      domain: () => dateDomain(controller.visibleDates()),
      onBrush: (from, to) => guarded(async () => controller.brush(from, to))(),
      onReset: () => guarded(async () => controller.resetZoom())(),
    });
  }

  const bootstrap = guarded(async () => {
    const subjects = await controller.loadSubjects();
    fillSubjects(subjects);
    if (subjects.length > 0) {
      topSelect.value = subjects[0].id;
      await controller.selectSubject("top", subjects[0].id);
    }
    if (subjects.length > 1) {
      bottomSelect.value = subjects[1].id;
      await controller.selectSubject("bottom", subjects[1].id);
    }
  });
  bootstrap();
}

function redraw(controller: DashboardController): void {
  const domain = dateDomain(controller.visibleDates());
  renderBars(
    el("bars-top") as unknown as SVGSVGElement,
    controller.daysFor("top"),
    domain,
    BAR_BOX,
  );
  renderBars(
    el("bars-bottom") as unknown as SVGSVGElement,
    controller.daysFor("bottom"),
    domain,
    BAR_BOX,
  );
  renderLines(
    el("lines") as unknown as SVGSVGElement,
    controller.linesFor("top"),
    controller.linesFor("bottom"),
    domain,
    LINE_BOX,
    FRAME_COLORS,
  );
  renderBreakdownPanels(
    el("breakdowns"),
    controller.breakdownFor("top"),
    controller.breakdownFor("bottom"),
    FRAME_COLORS,
  );
  const windowLabel = el("window-label");
  const window = controller.state.timeWindow;
  windowLabel.textContent = window
    ? `window: ${window.from} → ${window.to} (double-click a chart to reset)`
    : "full range (drag on a chart to zoom)";
}

main();
