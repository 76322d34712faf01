import { describe, expect, it } from "vitest";
import { decodeFrame, tierValue } from "../src/render.js";

describe("frame decoding", () => {
  it("expands base64 RGB into RGBA pixels", () => {
    // two pixels: red, then mid-grey
    const bytes = new Uint8Array([255, 0, 0, 128, 128, 128]);
    const b64 = Buffer.from(bytes).toString("base64");
    const rgba = decodeFrame(b64, 2, 1);
    expect(Array.from(rgba)).toEqual([255, 0, 0, 255, 128, 128, 128, 255]);
  });
});

describe("unlock toast values", () => {
  it("uses the four reward tiers", () => {
    expect(tierValue("COLLECT_WOOD", "extended")).toBe(1);
    expect(tierValue("ENTER_DUNGEON", "extended")).toBe(3);
    expect(tierValue("ENCHANT_SWORD", "extended")).toBe(5);
    expect(tierValue("DEFEAT_NECROMANCER", "extended")).toBe(8);
    expect(tierValue("ENTER_DUNGEON", "classic")).toBe(1);
  });
});
