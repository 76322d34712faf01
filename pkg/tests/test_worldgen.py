import numpy as np

from gridrogue import CLASSIC, EXTENDED, Block, Item
from gridrogue.constants import WALKABLE
from gridrogue.worldgen import generate_world, make_level_params


def worlds_equal(a, b):
    if len(a.floors) != len(b.floors):
        return False
    for fa, fb in zip(a.floors, b.floors):
        if not (np.array_equal(fa.blocks, fb.blocks)
                and np.array_equal(fa.items, fb.items)
                and fa.spawn == fb.spawn
                and fa.ladder_down == fb.ladder_down
                and fa.ladder_up == fb.ladder_up):
            return False
    return (np.array_equal(a.potion_permutation, b.potion_permutation)
            and a.chests == b.chests)


def test_deterministic():
    p = make_level_params(1234)
    assert worlds_equal(generate_world(p), generate_world(p))
    assert worlds_equal(generate_world(p, CLASSIC), generate_world(p, CLASSIC))


def test_overworld_palette_coverage():
    wanted = [Block.GRASS, Block.WATER, Block.TREE, Block.STONE, Block.COAL,
              Block.IRON, Block.DIAMOND, Block.SAND, Block.LAVA]
    hits = 0
    for seed in range(100):
        w = generate_world(make_level_params(seed), CLASSIC)
        blocks = w.floors[0].blocks
        if all((blocks == b).any() for b in wanted):
            hits += 1
    assert hits >= 95


def test_ladder_topology():
    for seed in (0, 7, 99):
        w = generate_world(make_level_params(seed), EXTENDED)
        assert len(w.floors) == 9
        for f, fm in enumerate(w.floors):
            n_down = int((fm.items == Item.LADDER_DOWN).sum())
            n_up = int((fm.items == Item.LADDER_UP).sum())
            assert n_down == (0 if f == 8 else 1), f"floor {f}"
            assert n_up == (0 if f == 0 else 1), f"floor {f}"
        assert w.floors[8].ladder_down is None
        assert w.floors[0].ladder_up is None


def test_spawn_walkable():
    for seed in range(30):
        w = generate_world(make_level_params(seed), EXTENDED)
        for fm in w.floors:
            assert WALKABLE[fm.blocks[fm.spawn]], fm.spawn


def test_classic_palette_restricted():
    classic_ok = {Block.GRASS, Block.WATER, Block.STONE, Block.TREE, Block.PATH,
                  Block.COAL, Block.IRON, Block.DIAMOND, Block.SAND, Block.LAVA}
    for seed in range(30):
        w = generate_world(make_level_params(seed), CLASSIC)
        present = set(np.unique(w.floors[0].blocks).tolist())
        assert present <= {int(b) for b in classic_ok}
        assert len(w.floors) == 1
        assert not w.floors[0].items.any()


def test_potion_permutation_is_permutation():
    for seed in range(20):
        w = generate_world(make_level_params(seed))
        assert sorted(w.potion_permutation.tolist()) == list(range(6))


def test_floor1_chest_guarantees():
    from gridrogue.constants import ChestLoot
    for seed in range(20):
        w = generate_world(make_level_params(seed))
        loots = [kind for (_, _, kind, _) in w.chests[1]]
        assert loots.count(ChestLoot.BOW) == 1
        assert loots.count(ChestLoot.BOOK) >= 1


def test_chest_blocks_match_registry():
    w = generate_world(make_level_params(5))
    for f, lanes in enumerate(w.chests):
        for (r, c, _, _) in lanes:
            assert w.floors[f].blocks[r, c] == Block.CHEST


def test_boss_floor_layout():
    w = generate_world(make_level_params(11))
    blocks = w.floors[8].blocks
    assert (blocks == Block.NECROMANCER).sum() == 1
    assert (blocks == Block.WATER).any()
    grave_count = sum(int((blocks == b).sum())
                      for b in (Block.GRAVE, Block.GRAVE2, Block.GRAVE3))
    assert grave_count >= 6


def test_gem_floors():
    w = generate_world(make_level_params(21))
    assert (w.floors[2].blocks == Block.SAPPHIRE).any()
    assert (w.floors[5].blocks == Block.RUBY).any()
    assert (w.floors[6].blocks == Block.ENCHANT_TABLE_FIRE).any()
    assert (w.floors[7].blocks == Block.ENCHANT_TABLE_ICE).any()


def test_extended_palette_per_floor():
    from gridrogue import EXTENDED
    w = generate_world(make_level_params(8), EXTENDED)
    for f, fm in enumerate(w.floors):
        present = set(np.unique(fm.blocks).tolist())
        if f != 6:
            assert int(Block.FIRE_GRASS) not in present
            assert int(Block.FIRE_TREE) not in present
        if f != 7:
            assert int(Block.ICE_GRASS) not in present
            assert int(Block.ICE_SHRUB) not in present
        if f != 8:
            assert int(Block.NECROMANCER) not in present
            assert int(Block.GRAVE) not in present
