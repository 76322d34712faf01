// Browser bootstrap: wire the client to a WebSocket and the DOM.

import { GameClient } from "./client.js";
import { Renderer, Ui } from "./render.js";

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function connect(client: GameClient, renderer: { error(m: string): void }) {
  const tier = new URLSearchParams(location.search).get("tier") ?? "extended";
  const url = `ws://${location.host}/ws?tier=${tier}`;
  const socket = new WebSocket(url);
  client.attach({ send: (d) => socket.send(d), close: () => socket.close() });
  socket.onmessage = (ev) => client.handleRaw(String(ev.data));
  socket.onclose = () => {
    client.onClose();
    renderer.error("connection lost - reconnecting");
    setTimeout(() => connect(client, renderer), 1000);
  };
}

window.addEventListener("DOMContentLoaded", () => {
  const ui: Ui = {
    canvas: el("tiles") as HTMLCanvasElement,
    status: el("status"),
    inventory: el("inventory"),
    achievements: el("achievements"),
    toasts: el("toasts"),
    banner: el("banner"),
    overlay: el("overlay"),
  };
  let renderer = new Renderer(ui, "extended");
  const client = new GameClient({
    onHello: (tier) => { renderer = new Renderer(ui, tier); },
    onState: (msg) => renderer.state(msg),
    onError: (msg) => renderer.error(msg),
  });
  window.addEventListener("keydown", (ev) => {
    if (ev.key === "Tab") ev.preventDefault();
    client.keyPressed(ev.key);
  });
  connect(client, { error: (m) => renderer.error(m) });
});
