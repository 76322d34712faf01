import { describe, expect, it } from "vitest";
import { ACTION_KEYS, actionName, keyToAction } from "../src/keys.js";

describe("key bindings", () => {
  it("covers all 43 actions with distinct keys", () => {
    expect(ACTION_KEYS.length).toBe(43);
    const ids = ACTION_KEYS.map(([id]) => id);
    expect(new Set(ids).size).toBe(43);
    expect(ids).toEqual([...Array(43).keys()]);
    const keys = ACTION_KEYS.map(([, , key]) => key);
    expect(new Set(keys).size).toBe(43);
  });

  it("maps the published bindings", () => {
    expect(keyToAction(" ", 43)).toBe(5);        // DO
    expect(keyToAction("Tab", 43)).toBe(6);      // SLEEP
    expect(keyToAction("]", 43)).toBe(39);       // LEVEL_UP_DEXTERITY
    expect(keyToAction(";", 43)).toBe(42);       // ENCHANT_BOW
    expect(actionName(5)).toBe("DO");
  });

  it("classic mode exposes only ids 0-16", () => {
    expect(keyToAction(" ", 17)).toBe(5);
    expect(keyToAction("7", 17)).toBe(16);       // MAKE_IRON_SWORD
    expect(keyToAction(".", 17)).toBeNull();     // DESCEND is extended-only
    expect(keyToAction("e", 17)).toBeNull();     // REST is extended-only
  });

  it("unmapped keys produce no action", () => {
    expect(keyToAction("9", 43)).toBeNull();
    expect(keyToAction("Escape", 43)).toBeNull();
    expect(keyToAction("9", 17)).toBeNull();
  });
});
