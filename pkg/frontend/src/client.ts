// The session client: turn-based by design, the engine only advances when a
// mapped key is pressed. Keeps a periodic save blob so a dropped connection
// resumes where it left off.

import { keyToAction } from "./keys.js";
import {
  ClientMessage, ServerMessage, StateMessage, parseServerMessage,
} from "./protocol.js";

export interface Transport {
  send(data: string): void;
  close(): void;
}

export interface ClientCallbacks {
  onState?(msg: StateMessage): void;
  onError?(msg: string): void;
  onHello?(tier: string, nActions: number): void;
}

const SAVE_EVERY = 20;

export class GameClient {
  nActions = 0;
  tier = "extended";
  rewardTotal = 0;
  private awaiting = false;
  private stepsSinceSave = 0;
  private saveBlob: string | null = null;
  private savedReward = 0;
  private transport: Transport | null = null;

  constructor(private callbacks: ClientCallbacks = {}) {}

  attach(transport: Transport): void {
    this.transport = transport;
    this.awaiting = false;
  }

  /** Called when the socket (re)opens; resumes from the last save if any. */
  onOpen(): void {
    // the hello message arrives first; reset/load is sent on hello
  }

  onClose(): void {
    this.transport = null;
    this.awaiting = false;
  }

  handleRaw(raw: string): ServerMessage | null {
    const msg = parseServerMessage(raw);
    if (msg === null) {
      this.callbacks.onError?.("unparseable server message");
      return null;
    }
    this.handle(msg);
    return msg;
  }

  handle(msg: ServerMessage): void {
    switch (msg.t) {
      case "hello":
        this.tier = msg.tier;
        this.nActions = msg.n_actions;
        this.callbacks.onHello?.(msg.tier, msg.n_actions);
        if (this.saveBlob !== null) {
          this.send({ t: "load", blob: this.saveBlob,
                      reward_total: this.savedReward });
        } else {
          this.send({ t: "reset" });
        }
        break;
      case "state":
        this.awaiting = false;
        this.rewardTotal = msg.reward_total;
        this.callbacks.onState?.(msg);
        this.stepsSinceSave += 1;
        if (this.stepsSinceSave >= SAVE_EVERY && !msg.done) {
          this.stepsSinceSave = 0;
          this.send({ t: "save" });
        }
        break;
      case "saved":
        this.awaiting = false;
        this.saveBlob = msg.blob;
        this.savedReward = msg.reward_total;
        break;
      case "error":
        this.awaiting = false;
        this.callbacks.onError?.(msg.msg);
        break;
    }
  }

  /** Key press -> at most one protocol-legal step message. */
  keyPressed(key: string): number | null {
    if (key === "Enter") {
      this.newEpisode();
      return null;
    }
    if (this.awaiting || this.transport === null) return null;
    const action = keyToAction(key, this.nActions);
    if (action === null) return null;
    this.awaiting = true;
    this.send({ t: "step", action });
    return action;
  }

  newEpisode(seed?: number): void {
    this.saveBlob = null;
    this.savedReward = 0;
    this.send(seed === undefined ? { t: "reset" } : { t: "reset", seed });
  }

  private send(msg: ClientMessage): void {
    this.transport?.send(JSON.stringify(msg));
  }
}
