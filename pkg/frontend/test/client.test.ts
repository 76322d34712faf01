import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { beforeEach, describe, expect, it } from "vitest";

import { GameClient, Transport } from "../src/client.js";
import { StateMessage } from "../src/protocol.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixture = JSON.parse(
  readFileSync(join(here, "fixtures", "session_500.json"), "utf-8"),
);

class FakeTransport implements Transport {
  sent: any[] = [];
  send(data: string): void {
    this.sent.push(JSON.parse(data));
  }
  close(): void {}
}

function stateMessage(partial: Partial<StateMessage>): string {
  return JSON.stringify({
    t: "state",
    obs_text: [],
    tiles: { w: 1, h: 1, rgb_base64: "AAAA" },
    inv: {},
    achievements: [],
    reward_total: 0,
    done: false,
    time: 0,
    floor: 0,
    ...partial,
  });
}

const hello = JSON.stringify({
  t: "hello", protocol: 1, tier: "extended", n_actions: 43,
  action_names: [], keys: {}, tile_px: 16,
});

describe("GameClient protocol behaviour", () => {
  let transport: FakeTransport;
  let client: GameClient;
  beforeEach(() => {
    transport = new FakeTransport();
    client = new GameClient();
    client.attach(transport);
  });

  it("requests a reset after the hello", () => {
    client.handleRaw(hello);
    expect(transport.sent[0]).toEqual({ t: "reset" });
  });

  it("sends protocol-legal steps and waits for the reply", () => {
    client.handleRaw(hello);
    client.handleRaw(stateMessage({}));
    client.keyPressed(" ");
    expect(transport.sent.at(-1)).toEqual({ t: "step", action: 5 });
    client.keyPressed("a");            // still awaiting: swallowed
    expect(transport.sent.filter((m) => m.t === "step").length).toBe(1);
    client.handleRaw(stateMessage({ time: 1 }));
    client.keyPressed("a");
    expect(transport.sent.at(-1)).toEqual({ t: "step", action: 1 });
  });

  it("ignores unmapped keys entirely", () => {
    client.handleRaw(hello);
    client.handleRaw(stateMessage({}));
    const before = transport.sent.length;
    client.keyPressed("9");
    client.keyPressed("Escape");
    expect(transport.sent.length).toBe(before);
  });

  it("survives error messages and keeps the session", () => {
    client.handleRaw(hello);
    client.handleRaw(stateMessage({}));
    client.keyPressed(" ");
    client.handleRaw(JSON.stringify({ t: "error", msg: "nope" }));
    client.keyPressed("w");
    expect(transport.sent.at(-1)).toEqual({ t: "step", action: 3 });
  });

  it("resumes from the last save after a reconnect", () => {
    client.handleRaw(hello);
    // walk far enough for the periodic save to fire, then answer it
    for (let i = 0; i < 21; i++) client.handleRaw(stateMessage({ time: i }));
    const saveReq = transport.sent.find((m) => m.t === "save");
    expect(saveReq).toBeTruthy();
    client.handleRaw(JSON.stringify({ t: "saved", blob: "QkxPQg==",
                                      reward_total: 2.5 }));
    client.onClose();
    const fresh = new FakeTransport();
    client.attach(fresh);
    client.handleRaw(hello);           // reconnect handshake
    expect(fresh.sent[0]).toEqual({ t: "load", blob: "QkxPQg==",
                                    reward_total: 2.5 });
  });
});

describe("recorded session replay", () => {
  it("reproduces the engine reward trace through the client", () => {
    const transport = new FakeTransport();
    const client = new GameClient();
    client.attach(transport);
    client.handleRaw(hello);

    let total = 0;
    let episodeActions = 0;
    for (const entry of fixture.steps) {
      if (entry.action === null) {
        client.keyPressed("Enter");
        expect(transport.sent.at(-1).t).toBe("reset");
        total = 0;
        continue;
      }
      const sent = client.keyPressed(entry.key);
      expect(sent).toBe(entry.action);
      expect(transport.sent.at(-1)).toEqual({ t: "step", action: entry.action });
      total += entry.reward;
      // float64 addition order matches the service's accumulation exactly
      expect(total).toBe(entry.reward_total);
      client.handleRaw(stateMessage({
        reward: entry.reward,
        reward_total: entry.reward_total,
        unlocked: entry.unlocked,
        done: entry.done,
      }));
      expect(client.rewardTotal).toBe(entry.reward_total);
      episodeActions += 1;
    }
    expect(episodeActions).toBe(500);
  });

  it("exercised every action id in the table", () => {
    const used = new Set(
      fixture.steps.filter((s: any) => s.action !== null)
        .map((s: any) => s.action),
    );
    expect(used.size).toBe(43);
  });
});
