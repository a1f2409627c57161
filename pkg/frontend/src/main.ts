import { SocketLike, TunerClient } from "./client.js";
import { buildView } from "./view.js";

function openSocket(url: string): SocketLike {
  const ws = new WebSocket(url);
  const wrapper: SocketLike = {
    send: (data) => ws.send(data),
    close: () => ws.close(),
    onopen: null,
    onmessage: null,
    onclose: null,
  };
  ws.onopen = () => wrapper.onopen?.();
  ws.onmessage = (event) => wrapper.onmessage?.({ data: String(event.data) });
  ws.onclose = () => wrapper.onclose?.();
  return wrapper;
}

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}

const view = buildView(root);
const client = new TunerClient(
  () => openSocket(`ws://${location.host}/ws`),
  (state) => view.render(state),
);
view.onSelect((id) => client.selectString(id));
view.onTest(() => client.startTest());
client.connect();
view.render(client.state);
