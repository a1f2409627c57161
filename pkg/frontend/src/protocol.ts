// Wire types for the tuning service's WebSocket protocol (v1).

export const PROTOCOL_VERSION = 1;

export type StringId = "E2" | "A2" | "D3" | "G3" | "B3" | "E4";

export interface OpenString {
  id: StringId;
  number: number; // 6 = low E ... 1 = high E
  target: number; // Hz
}

// Standard targets shown alongside the string names before any result
// arrives. Tuning numerics displayed after a test come verbatim from
// ResultMessage, never from this table.
export const OPEN_STRINGS: OpenString[] = [
  { id: "E2", number: 6, target: 82.4 },
  { id: "A2", number: 5, target: 110.0 },
  { id: "D3", number: 4, target: 146.8 },
  { id: "G3", number: 3, target: 196.0 },
  { id: "B3", number: 2, target: 246.9 },
  { id: "E4", number: 1, target: 329.6 },
];

export type Direction = "tighten" | "loosen" | "in_tune";

export interface ResultMessage {
  v: number;
  type: "result";
  string: StringId;
  detected: number;
  target: number;
  cents: number;
  degrees: number;
  direction: Direction;
  clamped: boolean;
  raw_spectrum: [number, number][];
  harmonic_sum_spectrum: [number, number][];
}

export interface AckMessage {
  v: number;
  type: "ack";
  string: StringId;
  target: number;
}

export interface PlainEvent {
  v: number;
  type: "recording_started" | "recording_stopped" | "no_signal";
}

export interface NoticeMessage {
  v: number;
  type: "busy" | "error";
  message?: string;
}

export type ServerMessage = AckMessage | PlainEvent | ResultMessage | NoticeMessage;

export type ClientMessage =
  | { v: number; type: "select_string"; string: StringId }
  | { v: number; type: "start_test" };

export function selectStringMessage(id: StringId): ClientMessage {
  return { v: PROTOCOL_VERSION, type: "select_string", string: id };
}

export function startTestMessage(): ClientMessage {
  return { v: PROTOCOL_VERSION, type: "start_test" };
}
