// DOM rendering: string buttons with targets, TEST STRING, the prompt
// board, per-string boards with read-only knobs, and the two spectrum plots.

import { drawSpectrum } from "./charts.js";
import { OPEN_STRINGS, StringId } from "./protocol.js";
import { canSelect, canStartTest, formatHz, UiState } from "./state.js";

export interface ViewHandles {
  render(state: UiState): void;
  onSelect(handler: (id: StringId) => void): void;
  onTest(handler: () => void): void;
}

export function buildView(root: HTMLElement): ViewHandles {
  root.innerHTML = `
    <div id="banner" class="banner hidden"></div>
    <h1>Guitar Tuner</h1>
    <div id="prompt" class="prompt"></div>
    <div id="notice" class="notice hidden"></div>
    <div class="strings" id="strings"></div>
    <button id="test" class="test-button" disabled>TEST STRING</button>
    <div class="charts">
      <canvas id="raw-chart" width="440" height="220"></canvas>
      <canvas id="harmonic-chart" width="440" height="220"></canvas>
    </div>
  `;

  const stringsBox = root.querySelector("#strings") as HTMLElement;
  const buttons = new Map<StringId, HTMLButtonElement>();
  const boards = new Map<StringId, HTMLElement>();
  const knobs = new Map<StringId, HTMLElement>();

  let selectHandler: (id: StringId) => void = () => {};
  let testHandler: () => void = () => {};

  for (const s of OPEN_STRINGS) {
    const cell = document.createElement("div");
    cell.className = "string-cell";
    const button = document.createElement("button");
    button.className = "string-button";
    button.textContent = `${s.id} · ${formatHz(s.target)}`;
    button.addEventListener("click", () => selectHandler(s.id));
    const knob = document.createElement("div");
    knob.className = "knob";
    knob.innerHTML = '<div class="knob-pointer"></div><div class="knob-label"></div>';
    const board = document.createElement("div");
    board.className = "board";
    cell.append(button, knob, board);
    stringsBox.append(cell);
    buttons.set(s.id, button);
    boards.set(s.id, board);
    knobs.set(s.id, knob);
  }

  const banner = root.querySelector("#banner") as HTMLElement;
  const prompt = root.querySelector("#prompt") as HTMLElement;
  const notice = root.querySelector("#notice") as HTMLElement;
  const testButton = root.querySelector("#test") as HTMLButtonElement;
  testButton.addEventListener("click", () => testHandler());
  const rawChart = root.querySelector("#raw-chart") as HTMLCanvasElement;
  const harmonicChart = root.querySelector("#harmonic-chart") as HTMLCanvasElement;

  function render(state: UiState): void {
    banner.classList.toggle("hidden", state.connection === "open");
    banner.textContent =
      state.connection === "connecting" ? "connecting to tuner service..." : "connection lost - retrying";

    prompt.textContent = state.prompt;
    notice.classList.toggle("hidden", state.notice === null);
    notice.textContent = state.notice ?? "";

    const selectable = canSelect(state);
    for (const s of OPEN_STRINGS) {
      const button = buttons.get(s.id)!;
      button.disabled = !selectable;
      button.classList.toggle("selected", state.selected === s.id);
      const board = boards.get(s.id)!;
      const info = state.boards[s.id];
      board.textContent = info.detected === null ? "" : `${formatHz(info.detected)} · ${info.advice}`;
      const knob = knobs.get(s.id)!;
      const pointer = knob.querySelector(".knob-pointer") as HTMLElement;
      pointer.style.transform = `rotate(${info.knobDegrees}deg)`;
      const label = knob.querySelector(".knob-label") as HTMLElement;
      label.textContent = info.detected === null ? "" : `${Math.round(info.knobDegrees)}°`;
      knob.title = `${info.knobDegrees}°`; // full precision in the tooltip
    }
    testButton.disabled = !canStartTest(state);

    const result = state.lastResult;
    drawSpectrum(rawChart, result?.raw_spectrum ?? [], {
      title: "recorded signal spectrum",
      maxHz: 2000,
    });
    drawSpectrum(harmonicChart, result?.harmonic_sum_spectrum ?? [], {
      title: "harmonic sum spectrum",
      maxHz: 2000,
      markerHz: result ? result.detected : null,
    });
  }

  return {
    render,
    onSelect(handler) {
      selectHandler = handler;
    },
    onTest(handler) {
      testHandler = handler;
    },
  };
}
