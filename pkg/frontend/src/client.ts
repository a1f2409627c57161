// Service client: owns one socket, reapplies protocol events to UiState,
// reconnects with exponential backoff.
//
// The socket is injected as a factory of SocketLike so tests can drive the
// client with a mock and no live service.

import { selectStringMessage, ServerMessage, startTestMessage, StringId } from "./protocol.js";
import { applyServer, canSelect, canStartTest, connectionChanged, initialState, UiState } from "./state.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
}

export type SocketFactory = () => SocketLike;

const BACKOFF_INITIAL_MS = 1000;
const BACKOFF_MAX_MS = 30_000;

export class TunerClient {
  state: UiState = initialState();

  private socket: SocketLike | null = null;
  private backoffMs = BACKOFF_INITIAL_MS;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(
    private readonly factory: SocketFactory,
    private readonly onChange: (state: UiState) => void = () => {},
  ) {}

  connect(): void {
    this.stopped = false;
    this.setState({ ...this.state, connection: "connecting" });
    const socket = this.factory();
    this.socket = socket;
    socket.onopen = () => {
      this.backoffMs = BACKOFF_INITIAL_MS;
      this.setState(connectionChanged(this.state, "open"));
    };
    socket.onmessage = (event) => {
      let message: ServerMessage;
      try {
        message = JSON.parse(event.data) as ServerMessage;
      } catch {
        return;
      }
      this.setState(applyServer(this.state, message));
    };
    socket.onclose = () => {
      this.socket = null;
      this.setState(connectionChanged(this.state, "closed"));
      this.scheduleReconnect();
    };
  }

  stop(): void {
    this.stopped = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.socket?.close();
  }

  selectString(id: StringId): void {
    if (!this.socket || !canSelect(this.state)) return;
    this.socket.send(JSON.stringify(selectStringMessage(id)));
  }

  startTest(): void {
    if (!this.socket || !canStartTest(this.state)) return;
    this.socket.send(JSON.stringify(startTestMessage()));
  }

  private setState(state: UiState): void {
    this.state = state;
    this.onChange(state);
  }

  private scheduleReconnect(): void {
    if (this.stopped || this.reconnectTimer !== null) return;
    const delay = this.backoffMs;
    this.backoffMs = Math.min(this.backoffMs * 2, BACKOFF_MAX_MS);
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      this.connect();
    }, delay);
  }
}
