// Wire types for the session service protocol (version 1).

export interface HelloMessage {
  t: "hello";
  protocol: number;
  tier: "classic" | "extended";
  n_actions: number;
  action_names: string[];
  keys: Record<string, string>;
  tile_px: number;
}

export interface TilesPayload {
  w: number;
  h: number;
  rgb_base64: string;
}

export interface StateMessage {
  t: "state";
  obs_text: string[];
  tiles: TilesPayload;
  inv: Record<string, number>;
  achievements: string[];
  reward_total: number;
  done: boolean;
  time: number;
  floor: number;
  reward?: number;
  unlocked?: string[];
}

export interface SavedMessage {
  t: "saved";
  blob: string;
  reward_total: number;
}

export interface ErrorMessage {
  t: "error";
  msg: string;
}

export type ServerMessage = HelloMessage | StateMessage | SavedMessage | ErrorMessage;

export type ClientMessage =
  | { t: "reset"; seed?: number }
  | { t: "step"; action: number }
  | { t: "save" }
  | { t: "load"; blob: string; reward_total?: number };

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null || !("t" in data)) return null;
  return data as ServerMessage;
}
