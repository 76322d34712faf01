// DOM rendering: tile canvas, vitals, inventory, achievement toasts.

import type { StateMessage } from "./protocol.js";

// Reward value per achievement tier, for the unlock toasts.
const TIER_VALUE: Record<string, number> = {};
const BASIC = [
  "COLLECT_WOOD", "PLACE_TABLE", "EAT_COW", "COLLECT_SAPLING", "COLLECT_DRINK",
  "MAKE_WOOD_PICKAXE", "MAKE_WOOD_SWORD", "PLACE_PLANT", "DEFEAT_ZOMBIE",
  "COLLECT_STONE", "PLACE_STONE", "EAT_PLANT", "DEFEAT_SKELETON",
  "MAKE_STONE_PICKAXE", "MAKE_STONE_SWORD", "WAKE_UP", "PLACE_FURNACE",
  "COLLECT_COAL", "COLLECT_IRON", "COLLECT_DIAMOND", "MAKE_IRON_PICKAXE",
  "MAKE_IRON_SWORD", "MAKE_ARROW", "MAKE_TORCH", "PLACE_TORCH",
];
const INTERMEDIATE = [
  "MAKE_DIAMOND_SWORD", "MAKE_IRON_ARMOUR", "MAKE_DIAMOND_ARMOUR",
  "ENTER_GNOMISH_MINES", "ENTER_DUNGEON", "DEFEAT_GNOME_WARRIOR",
  "DEFEAT_GNOME_ARCHER", "DEFEAT_ORC_SOLDIER", "DEFEAT_ORC_MAGE", "EAT_BAT",
  "EAT_SNAIL", "FIND_BOW", "FIRE_BOW", "COLLECT_SAPPHIRE", "COLLECT_RUBY",
  "MAKE_DIAMOND_PICKAXE", "OPEN_CHEST", "DRINK_POTION",
];
const ADVANCED = [
  "ENTER_SEWERS", "ENTER_VAULT", "ENTER_TROLL_MINES", "DEFEAT_LIZARD",
  "DEFEAT_KOBOLD", "DEFEAT_TROLL", "DEFEAT_DEEP_THING", "LEARN_FIREBALL",
  "CAST_FIREBALL", "LEARN_ICEBALL", "CAST_ICEBALL", "ENCHANT_SWORD",
  "ENCHANT_ARMOUR", "DEFEAT_KNIGHT", "DEFEAT_ARCHER",
];
const VERY_ADVANCED = [
  "ENTER_FIRE_REALM", "ENTER_ICE_REALM", "ENTER_GRAVEYARD", "DEFEAT_PIGMAN",
  "DEFEAT_FIRE_ELEMENTAL", "DEFEAT_FROST_TROLL", "DEFEAT_ICE_ELEMENTAL",
  "DAMAGE_NECROMANCER", "DEFEAT_NECROMANCER",
];
for (const n of BASIC) TIER_VALUE[n] = 1;
for (const n of INTERMEDIATE) TIER_VALUE[n] = 3;
for (const n of ADVANCED) TIER_VALUE[n] = 5;
for (const n of VERY_ADVANCED) TIER_VALUE[n] = 8;

export function tierValue(name: string, tier: string): number {
  if (tier === "classic") return 1;
  return TIER_VALUE[name] ?? 1;
}

export function decodeFrame(
  rgbBase64: string, w: number, h: number,
): Uint8ClampedArray<ArrayBuffer> {
  const bin = atob(rgbBase64);
  const out = new Uint8ClampedArray(new ArrayBuffer(w * h * 4));
  for (let i = 0, j = 0; i < w * h; i++, j += 3) {
    out[i * 4] = bin.charCodeAt(j);
    out[i * 4 + 1] = bin.charCodeAt(j + 1);
    out[i * 4 + 2] = bin.charCodeAt(j + 2);
    out[i * 4 + 3] = 255;
  }
  return out;
}

export interface Ui {
  canvas: HTMLCanvasElement;
  status: HTMLElement;
  inventory: HTMLElement;
  achievements: HTMLElement;
  toasts: HTMLElement;
  banner: HTMLElement;
  overlay: HTMLElement;
}

const VITALS = ["health", "food", "drink", "energy", "mana"];

export class Renderer {
  constructor(private ui: Ui, private tier: string) {}

  state(msg: StateMessage): void {
    this.ui.banner.textContent = "";
    this.drawTiles(msg);
    this.drawStatus(msg);
    this.drawInventory(msg);
    this.ui.achievements.textContent =
      msg.achievements.length ? msg.achievements.join("  ") : "(none yet)";
    for (const name of msg.unlocked ?? []) this.toast(name);
    if (msg.done) {
      this.ui.overlay.style.display = "flex";
      this.ui.overlay.textContent =
        `episode over - return ${msg.reward_total.toFixed(1)}\n` +
        `${msg.achievements.length} achievements: ${msg.achievements.join(", ")}` +
        `\n(press Enter for a new world)`;
    } else {
      this.ui.overlay.style.display = "none";
    }
  }

  error(msg: string): void {
    this.ui.banner.textContent = `error: ${msg}`;
  }

  private drawTiles(msg: StateMessage): void {
    const { w, h, rgb_base64 } = msg.tiles;
    const ctx = this.ui.canvas.getContext("2d");
    if (!ctx) return;
    this.ui.canvas.width = w;
    this.ui.canvas.height = h;
    ctx.putImageData(new ImageData(decodeFrame(rgb_base64, w, h), w, h), 0, 0);
  }

  private drawStatus(msg: StateMessage): void {
    const bits = VITALS.filter((v) => v in msg.inv)
      .map((v) => `${v} ${msg.inv[v]}`);
    bits.push(`floor ${msg.floor}`, `t=${msg.time}`,
              `return ${msg.reward_total.toFixed(1)}`);
    this.ui.status.textContent = bits.join("  |  ");
  }

  private drawInventory(msg: StateMessage): void {
    const skip = new Set([...VITALS, "day_night"]);
    const rows = Object.entries(msg.inv)
      .filter(([k, v]) => !skip.has(k) && !k.startsWith("direction_") && v !== 0)
      .map(([k, v]) => `${k}: ${v}`);
    this.ui.inventory.textContent = rows.join("\n") || "(empty)";
  }

  toast(name: string): void {
    const el = document.createElement("div");
    el.className = "toast";
    el.textContent = `${name}  +${tierValue(name, this.tier)}`;
    this.ui.toasts.appendChild(el);
    setTimeout(() => el.remove(), 4000);
  }
}
