// Keyboard bindings, one per action id. KeyboardEvent.key values.

export const ACTION_KEYS: ReadonlyArray<readonly [number, string, string]> = [
  [0, "NOOP", "q"],
  [1, "LEFT", "a"],
  [2, "RIGHT", "d"],
  [3, "UP", "w"],
  [4, "DOWN", "s"],
  [5, "DO", " "],
  [6, "SLEEP", "Tab"],
  [7, "PLACE_STONE", "r"],
  [8, "PLACE_TABLE", "t"],
  [9, "PLACE_FURNACE", "f"],
  [10, "PLACE_PLANT", "p"],
  [11, "MAKE_WOOD_PICKAXE", "1"],
  [12, "MAKE_STONE_PICKAXE", "2"],
  [13, "MAKE_IRON_PICKAXE", "3"],
  [14, "MAKE_WOOD_SWORD", "5"],
  [15, "MAKE_STONE_SWORD", "6"],
  [16, "MAKE_IRON_SWORD", "7"],
  [17, "REST", "e"],
  [18, "DESCEND", "."],
  [19, "ASCEND", ","],
  [20, "MAKE_DIAMOND_PICKAXE", "4"],
  [21, "MAKE_DIAMOND_SWORD", "8"],
  [22, "MAKE_IRON_ARMOUR", "y"],
  [23, "MAKE_DIAMOND_ARMOUR", "u"],
  [24, "SHOOT_ARROW", "i"],
  [25, "MAKE_ARROW", "o"],
  [26, "CAST_FIREBALL", "g"],
  [27, "CAST_ICEBALL", "h"],
  [28, "PLACE_TORCH", "j"],
  [29, "DRINK_POTION_RED", "z"],
  [30, "DRINK_POTION_GREEN", "x"],
  [31, "DRINK_POTION_BLUE", "c"],
  [32, "DRINK_POTION_PINK", "v"],
  [33, "DRINK_POTION_CYAN", "b"],
  [34, "DRINK_POTION_YELLOW", "n"],
  [35, "READ_BOOK", "m"],
  [36, "ENCHANT_SWORD", "k"],
  [37, "ENCHANT_ARMOUR", "l"],
  [38, "MAKE_TORCH", "["],
  [39, "LEVEL_UP_DEXTERITY", "]"],
  [40, "LEVEL_UP_STRENGTH", "-"],
  [41, "LEVEL_UP_INTELLIGENCE", "="],
  [42, "ENCHANT_BOW", ";"],
];

const KEY_TO_ACTION = new Map<string, number>(
  ACTION_KEYS.map(([id, _name, key]) => [key, id]),
);

/** Action id for a key press, or null when unmapped or outside the tier. */
export function keyToAction(key: string, nActions: number): number | null {
  const id = KEY_TO_ACTION.get(key);
  if (id === undefined || id >= nActions) return null;
  return id;
}

export function actionName(id: number): string {
  const row = ACTION_KEYS[id];
  return row ? row[1] : `ACTION_${id}`;
}
