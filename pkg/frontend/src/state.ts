// UI state machine mirroring the service protocol, plus display formatting.
//
// Everything here is pure and DOM-free so it can be exercised against a
// mocked socket. Displayed tuning numerics are taken verbatim from the
// latest ResultMessage; the documented rounding is:
//   - advice text rounds |degrees| to the nearest whole degree
//   - detected/target frequencies display with one decimal
//   - knob angles use the raw degrees field (full precision)

import { OPEN_STRINGS, ResultMessage, ServerMessage, StringId } from "./protocol.js";

export type Connection = "connecting" | "open" | "closed";

export type Phase = "idle" | "play" | "stop" | "result";

export interface Board {
  target: number;
  detected: number | null;
  advice: string;
  knobDegrees: number;
}

export interface UiState {
  connection: Connection;
  selected: StringId | null;
  phase: Phase;
  prompt: string;
  notice: string | null;
  lastResult: ResultMessage | null;
  boards: Record<StringId, Board>;
}

export function initialBoards(): Record<StringId, Board> {
  const boards = {} as Record<StringId, Board>;
  for (const s of OPEN_STRINGS) {
    boards[s.id] = { target: s.target, detected: null, advice: "", knobDegrees: 0 };
  }
  return boards;
}

export function initialState(): UiState {
  return {
    connection: "connecting",
    selected: null,
    phase: "idle",
    prompt: "select a string to begin",
    notice: null,
    lastResult: null,
    boards: initialBoards(),
  };
}

export function adviceText(result: ResultMessage): string {
  let text: string;
  if (result.direction === "in_tune") {
    text = "in tune";
  } else {
    text = `${result.direction} ~${Math.round(Math.abs(result.degrees))}°`;
  }
  if (result.clamped) {
    text += " (large correction: retest after turning)";
  }
  return text;
}

export function knobAngle(result: ResultMessage): number {
  return result.degrees;
}

export function formatHz(value: number): string {
  return `${value.toFixed(1)} Hz`;
}

export function applyServer(state: UiState, message: ServerMessage): UiState {
  switch (message.type) {
    case "ack":
      return {
        ...state,
        selected: message.string,
        phase: "idle",
        prompt: `selected ${message.string} (target ${formatHz(message.target)}) - press TEST STRING`,
        notice: null,
      };
    case "recording_started":
      return { ...state, phase: "play", prompt: "PLAY", notice: null };
    case "recording_stopped":
      return { ...state, phase: "stop", prompt: "STOP" };
    case "result": {
      const boards = { ...state.boards };
      boards[message.string] = {
        target: message.target,
        detected: message.detected,
        advice: adviceText(message),
        knobDegrees: knobAngle(message),
      };
      return {
        ...state,
        phase: "result",
        prompt: `detected ${formatHz(message.detected)}`,
        lastResult: message,
        boards,
      };
    }
    case "no_signal":
      return {
        ...state,
        phase: "idle",
        prompt: "string not heard - play again",
        notice: null,
      };
    case "busy":
      return { ...state, phase: "idle", notice: message.message ?? "service is busy" };
    case "error":
      return { ...state, phase: "idle", notice: message.message ?? "service error" };
    default:
      return state;
  }
}

export function connectionChanged(state: UiState, connection: Connection): UiState {
  if (connection === "open") {
    // fresh session on (re)connect: the service starts a new state machine
    return { ...initialState(), connection: "open", boards: state.boards };
  }
  return { ...state, connection, phase: "idle" };
}

// Controls are only clickable in phases where the service would accept the
// message (select/start are idle-or-result operations; result is idle on
// the service side).
export function canSelect(state: UiState): boolean {
  return state.connection === "open" && (state.phase === "idle" || state.phase === "result");
}

export function canStartTest(state: UiState): boolean {
  return canSelect(state) && state.selected !== null;
}
