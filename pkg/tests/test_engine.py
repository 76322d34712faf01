import numpy as np
import pytest

from gridrogue import CLASSIC, EXTENDED, Achievement, Action, Block, Creature, Item
from gridrogue import rng as R
from gridrogue.constants import health_max, food_max, mana_max
from gridrogue.engine import reset, step, resolve_attack

from conftest import clear_area, kill_all, place_creature, face_block


def run(gs, actions):
    total = 0.0
    unlocked = []
    for a in actions:
        out = step(gs, a)
        gs = out.state
        total += out.reward
        unlocked.extend(out.newly_unlocked)
        if out.done:
            break
    return gs, total, unlocked


class TestReset:
    def test_deterministic(self, classic_world):
        a = reset(classic_world, CLASSIC, R.make_stream(3))
        b = reset(classic_world, CLASSIC, R.make_stream(3))
        assert a.sim.equals(b.sim)

    def test_initial_conditions(self, extended_state):
        s = extended_state.sim
        assert not s.ach.any()
        assert extended_state.player_pos[1:] == extended_state.world.floors[0].spawn
        assert s.health[0] == 10.0 and s.mana[0] == 17.0
        assert s.dex[0] == s.str_[0] == s.intel[0] == 1
        assert s.time[0] == 0 and s.xp[0] == 0
        assert s.floors_visited[0, 0] and not s.floors_visited[0, 1:].any()

    def test_tier_mismatch_rejected(self, classic_world):
        with pytest.raises(ValueError):
            reset(classic_world, EXTENDED, R.make_stream(0))


class TestStepContract:
    def test_invalid_action(self, classic_state):
        with pytest.raises(ValueError):
            step(classic_state, 17)
        with pytest.raises(ValueError):
            step(classic_state, -1)

    def test_step_done_state(self, classic_state):
        classic_state.sim.done[0] = True
        with pytest.raises(RuntimeError):
            step(classic_state, 0)

    def test_step_is_pure(self, classic_state):
        snap = classic_state.sim.copy()
        step(classic_state, Action.DOWN)
        assert classic_state.sim.equals(snap)

    def test_noop_quiet_step(self, classic_state):
        gs = clear_area(classic_state)
        out = step(gs, Action.NOOP)
        assert out.reward == 0.0
        assert out.done is False
        assert out.newly_unlocked == []


class TestCollect:
    def test_collect_wood(self, classic_state):
        gs = clear_area(classic_state)
        face_block(gs, Block.TREE)
        out = step(gs, Action.DO)
        assert out.newly_unlocked == [Achievement.COLLECT_WOOD]
        assert out.reward == 1.0
        assert out.state.sim.inv_wood[0] == 1

    def test_craft_without_wood_is_noop(self, classic_state):
        gs = clear_area(classic_state)
        face_block(gs, Block.CRAFTING_TABLE)
        out = step(gs, Action.MAKE_WOOD_PICKAXE)
        assert out.state.sim.pick_tier[0] == 0
        assert out.newly_unlocked == []
        assert out.state.time == gs.time + 1  # the world still ticks

    def test_mining_needs_pickaxe(self, classic_state):
        gs = clear_area(classic_state)
        face_block(gs, Block.STONE)
        out = step(gs, Action.DO)
        assert out.state.sim.inv_stone[0] == 0
        gs.sim.pick_tier[0] = 1
        out = step(gs, Action.DO)
        assert out.state.sim.inv_stone[0] == 1
        assert Achievement.COLLECT_STONE in out.newly_unlocked

    def test_drink_water(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.drink[0] = 5.0
        face_block(gs, Block.WATER)
        out = step(gs, Action.DO)
        assert out.state.sim.drink[0] == 6.0
        assert Achievement.COLLECT_DRINK in out.newly_unlocked

    def test_stone_conservation(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.inv_stone[0] = 1
        gs.sim.pick_tier[0] = 1
        out = step(gs, Action.PLACE_STONE)
        assert out.state.sim.inv_stone[0] == 0
        out = step(out.state, Action.DO)
        assert out.state.sim.inv_stone[0] == 1


class TestCombat:
    def test_resolve_attack_plain(self):
        assert resolve_attack((2, 0, 0), (0, 0, 0)) == 2.0

    def test_resolve_attack_mixed(self):
        assert resolve_attack((3, 5, 0), (90, 100, 0)) == pytest.approx(0.3)

    def test_resolve_attack_immune(self):
        assert resolve_attack((4, 9, 9), (100, 100, 100)) == 0.0

    def test_resolve_attack_rejects_bad_defense(self):
        with pytest.raises(ValueError):
            resolve_attack((1, 0, 0), (120, 0, 0))

    def test_zombie_hit_costs_reward(self, classic_state):
        gs = clear_area(classic_state)
        place_creature(gs, "mel", Creature.ZOMBIE, 0, 1, cd=0)
        out = step(gs, Action.NOOP)
        assert out.state.sim.health[0] == 8.0
        assert out.reward == pytest.approx(-0.2)

    def test_attack_kills_zombie(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.facing[0] = 3
        place_creature(gs, "mel", Creature.ZOMBIE, 1, 0, hp=1.0, cd=3)
        out = step(gs, Action.DO)
        assert not out.state.sim.mel_alive[0, 0, 0]
        assert Achievement.DEFEAT_ZOMBIE in out.newly_unlocked

    def test_eat_cow(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.facing[0] = 3
        gs.sim.food[0] = 5.0
        place_creature(gs, "pas", Creature.COW, 1, 0, hp=1.0)
        out = step(gs, Action.DO)
        assert Achievement.EAT_COW in out.newly_unlocked
        assert out.state.sim.food[0] == 11.0

    def test_cow_never_hurts(self, classic_state):
        gs = clear_area(classic_state)
        place_creature(gs, "pas", Creature.COW, 0, 1)
        for _ in range(10):
            out = step(gs, Action.NOOP)
            gs = out.state
            assert gs.sim.health[0] == 10.0

    def test_skeleton_shoots_when_aligned(self, classic_state):
        gs = clear_area(classic_state)
        place_creature(gs, "ran", Creature.SKELETON, 0, -3, cd=0)
        out = step(gs, Action.NOOP)
        assert out.state.sim.eproj_alive[0].any()
        # the arrow crosses the three tiles toward the player
        for _ in range(3):
            out = step(out.state, Action.NOOP)
        assert out.state.sim.health[0] == 8.0

    def test_masked_lane_has_no_effect(self, classic_state):
        gs = clear_area(classic_state)
        base = step(gs, Action.NOOP)
        poked = gs.copy()
        poked.sim.mel_pos[0, 0, 1] = (int(gs.sim.prow[0]), int(gs.sim.pcol[0]) + 1)
        poked.sim.mel_hp[0, 0, 1] = 99.0
        poked.sim.mel_type[0, 0, 1] = Creature.ZOMBIE
        out = step(poked, Action.NOOP)
        assert out.reward == base.reward
        assert out.state.sim.health[0] == base.state.sim.health[0]
        assert np.array_equal(out.state.sim.prow, base.state.sim.prow)


class TestSurvival:
    def test_idle_decay_ratio_scales_with_dexterity(self, classic_world):
        firsts = {}
        for dex in (1, 5):
            gs = reset(classic_world, CLASSIC, R.make_stream(2))
            clear_area(gs)
            gs.sim.dex[0] = dex
            gs.sim.food[0] = food_max(dex)
            start = float(gs.sim.food[0])
            for t in range(1, 400):
                out = step(gs, Action.NOOP)
                gs = kill_all(out.state)
                if float(gs.sim.food[0]) < start:
                    firsts[dex] = t
                    break
        assert firsts[5] == 5 * firsts[1]

    def test_starvation_damage_and_reward(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.food[0] = 0.0
        gs.sim.clocks[0, 0] = 1  # keep the food clock from instantly re-decrementing
        total = 0.0
        hp0 = float(gs.sim.health[0])
        for _ in range(10):
            out = step(gs, Action.NOOP)
            gs = kill_all(out.state)
            total += out.reward
        assert float(gs.sim.health[0]) == hp0 - 1.0
        assert total == pytest.approx(-0.1)

    def test_regen_when_fed(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.health[0] = 5.0
        for _ in range(30):
            out = step(gs, Action.NOOP)
            gs = kill_all(out.state)
        assert float(gs.sim.health[0]) == 6.0

    def test_sleep_until_wake(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.energy[0] = 10.0
        out = step(gs, Action.SLEEP)
        gs = out.state
        assert gs.sim.sleeping[0]
        unlocked = []
        for _ in range(12):
            out = step(gs, Action.NOOP)
            gs = kill_all(out.state)
            unlocked.extend(out.newly_unlocked)
            if not gs.sim.sleeping[0]:
                break
        assert Achievement.WAKE_UP in unlocked
        assert float(gs.sim.energy[0]) == float(food_max(1))

    def test_damage_wakes_sleeper(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.energy[0] = 5.0
        gs = step(gs, Action.SLEEP).state
        place_creature(gs, "mel", Creature.ZOMBIE, 0, 1, cd=0)
        out = step(gs, Action.NOOP)
        assert not out.state.sim.sleeping[0]

    def test_death_terminates(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.health[0] = 2.0
        place_creature(gs, "mel", Creature.ZOMBIE, 0, 1, cd=0)
        out = step(gs, Action.NOOP)
        assert out.done
        assert out.state.sim.health[0] == 0.0

    def test_time_cap_terminates(self, classic_world):
        tier = CLASSIC.with_max_length(5)
        gs = reset(classic_world, tier, R.make_stream(1))
        clear_area(gs)
        for i in range(5):
            out = step(gs, Action.NOOP)
            gs = out.state
        assert out.done and gs.time == 5


class TestPlants:
    def test_plant_grows_and_feeds(self, classic_state):
        gs = clear_area(classic_state)
        gs.sim.inv_sapling[0] = 1
        target = face_block(gs, Block.GRASS)
        out = step(gs, Action.PLACE_PLANT)
        gs = out.state
        assert Achievement.PLACE_PLANT in out.newly_unlocked
        assert gs.sim.blocks[0, 0, target[0], target[1]] == Block.PLANT
        for _ in range(61):
            gs = kill_all(step(gs, Action.NOOP).state)
        assert gs.sim.blocks[0, 0, target[0], target[1]] == Block.RIPE_PLANT
        gs.sim.food[0] = 5.0
        out = step(gs, Action.DO)
        assert Achievement.EAT_PLANT in out.newly_unlocked
        assert out.state.sim.food[0] == 9.0
        assert out.state.sim.blocks[0, 0, target[0], target[1]] == Block.PLANT


class TestExtended:
    def test_descend_grants_xp_and_flag(self, extended_state):
        gs = kill_all(extended_state)
        lf = gs.world.floors[0].ladder_down
        gs.sim.prow[0], gs.sim.pcol[0] = lf
        out = step(gs, Action.DESCEND)
        s = out.state.sim
        assert s.pfloor[0] == 1
        assert s.xp[0] == 1
        assert Achievement.ENTER_DUNGEON in out.newly_unlocked
        assert out.reward == pytest.approx(3.0)
        assert (int(s.prow[0]), int(s.pcol[0])) == gs.world.floors[1].ladder_up

    def test_second_descend_no_xp(self, extended_state):
        gs = kill_all(extended_state)
        lf = gs.world.floors[0].ladder_down
        gs.sim.prow[0], gs.sim.pcol[0] = lf
        gs = step(gs, Action.DESCEND).state
        gs = kill_all(gs)
        out = step(gs, Action.ASCEND)
        gs = kill_all(out.state)
        assert gs.sim.pfloor[0] == 0
        out = step(gs, Action.DESCEND)
        assert out.state.sim.xp[0] == 1  # revisits earn nothing

    def test_level_up_caps_at_five(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.xp[0] = 3
        gs.sim.str_[0] = 5
        out = step(gs, Action.LEVEL_UP_STRENGTH)
        assert out.state.sim.str_[0] == 5
        assert out.state.sim.xp[0] == 3
        gs.sim.str_[0] = 2
        out = step(gs, Action.LEVEL_UP_STRENGTH)
        assert out.state.sim.str_[0] == 3
        assert out.state.sim.xp[0] == 2

    def test_enchant_sword_ice(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.sword_tier[0] = 1
        gs.sim.inv_sapphire[0] = 1
        face_block(gs, Block.ENCHANT_TABLE_ICE)
        out = step(gs, Action.ENCHANT_SWORD)
        s = out.state.sim
        assert s.sword_ench[0] == 2
        assert s.inv_sapphire[0] == 0
        assert Achievement.ENCHANT_SWORD in out.newly_unlocked

    def test_enchant_needs_mana(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.sword_tier[0] = 1
        gs.sim.inv_sapphire[0] = 1
        gs.sim.mana[0] = 1.0
        face_block(gs, Block.ENCHANT_TABLE_ICE)
        out = step(gs, Action.ENCHANT_SWORD)
        assert out.state.sim.sword_ench[0] == 0
        assert out.state.sim.inv_sapphire[0] == 1

    def test_read_books_learns_spells_in_order(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.inv_book[0] = 2
        out = step(gs, Action.READ_BOOK)
        assert Achievement.LEARN_FIREBALL in out.newly_unlocked
        out = step(out.state, Action.READ_BOOK)
        assert Achievement.LEARN_ICEBALL in out.newly_unlocked
        assert out.state.sim.inv_book[0] == 0

    def test_cast_fireball(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.learned_fire[0] = True
        out = step(gs, Action.CAST_FIREBALL)
        s = out.state.sim
        assert Achievement.CAST_FIREBALL in out.newly_unlocked
        assert s.mana[0] == 15.0

    def test_shoot_arrow_consumes(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        gs.sim.has_bow[0] = True
        gs.sim.inv_arrow[0] = 2
        out = step(gs, Action.SHOOT_ARROW)
        assert out.state.sim.inv_arrow[0] == 1
        assert Achievement.FIRE_BOW in out.newly_unlocked

    def test_potion_effects_follow_permutation(self, extended_state):
        gs = kill_all(clear_area(extended_state))
        perm = gs.sim.potion_map[0].copy()
        heal_color = int(np.nonzero(perm == 0)[0][0])
        gs.sim.inv_potion[0, heal_color] = 1
        gs.sim.health[0] = 1.0
        out = step(gs, int(Action.DRINK_POTION_RED) + heal_color)
        assert out.state.sim.health[0] == 9.0
        assert Achievement.DRINK_POTION in out.newly_unlocked
        assert out.reward == pytest.approx(3.0 + 0.8)

    def test_open_chest(self, extended_state):
        gs = kill_all(extended_state)
        s = gs.sim
        # jump to the dungeon's first chest and face it
        r, c = s.chest_pos[0, 1, 0]
        s.pfloor[0] = 8  # visited flags unaffected; place directly
        s.pfloor[0] = 1
        s.prow[0], s.pcol[0] = r + 1, c
        s.facing[0] = 2  # up
        s.blocks[0, 1, r + 1, c] = Block.PATH
        out = step(gs, Action.DO)
        assert Achievement.OPEN_CHEST in out.newly_unlocked
        assert Achievement.FIND_BOW in out.newly_unlocked
        assert out.state.sim.has_bow[0]
        assert out.state.sim.blocks[0, 1, r, c] == Block.PATH


class TestBoss:
    def _at_boss(self, extended_world):
        gs = reset(extended_world, EXTENDED, R.make_stream(9))
        kill_all(gs)
        s = gs.sim
        s.pfloor[0] = 7
        ld = extended_world.floors[7].ladder_down
        s.prow[0], s.pcol[0] = ld
        s.floors_visited[0, :8] = True
        return gs

    def test_enter_graveyard_and_first_wave(self, extended_world):
        gs = self._at_boss(extended_world)
        out = step(gs, Action.DESCEND)
        assert Achievement.ENTER_GRAVEYARD in out.newly_unlocked
        assert out.reward == pytest.approx(8.0)
        s = out.state.sim
        assert s.pfloor[0] == 8
        assert s.boss_wave[0] == 1
        assert s.mel_alive[0, 8].sum() == 2 and s.ran_alive[0, 8].sum() == 1
        assert (s.mel_type[0, 8, :2] == Creature.ZOMBIE).all()
        assert s.ran_type[0, 8, 0] == Creature.SKELETON

    def test_wave_clear_exposes_necromancer(self, extended_world):
        gs = self._at_boss(extended_world)
        gs = step(gs, Action.DESCEND).state
        s = gs.sim
        nr, nc = s.necro_pos[0]
        assert s.blocks[0, 8, nr, nc] == Block.NECROMANCER
        kill_all(gs)
        out = step(gs, Action.NOOP)
        s = out.state.sim
        assert s.boss_vuln[0]
        assert s.blocks[0, 8, nr, nc] == Block.NECROMANCER_VULN

    def test_invulnerable_phase_takes_no_damage(self, extended_world):
        gs = self._at_boss(extended_world)
        gs = step(gs, Action.DESCEND).state
        s = gs.sim
        nr, nc = int(s.necro_pos[0, 0]), int(s.necro_pos[0, 1])
        s.prow[0], s.pcol[0] = nr - 1, nc
        s.facing[0] = 3
        hp0 = float(s.boss_hp[0])
        out = step(gs, Action.DO)
        assert float(out.state.sim.boss_hp[0]) == hp0

    def test_vulnerable_melee_damage_and_next_wave(self, extended_world):
        gs = self._at_boss(extended_world)
        gs = step(gs, Action.DESCEND).state
        kill_all(gs)
        gs = step(gs, Action.NOOP).state  # boss becomes vulnerable
        s = gs.sim
        nr, nc = int(s.necro_pos[0, 0]), int(s.necro_pos[0, 1])
        s.prow[0], s.pcol[0] = nr - 1, nc
        s.facing[0] = 3
        s.sword_tier[0] = 4
        s.str_[0] = 5
        out = step(gs, Action.DO)
        s2 = out.state.sim
        assert Achievement.DAMAGE_NECROMANCER in out.newly_unlocked
        assert float(s2.boss_hp[0]) < float(s.boss_hp[0])
        # waiting out the window summons the next wave
        gs = out.state
        for _ in range(25):
            gs = kill_all(step(gs, Action.NOOP).state)
            if gs.sim.boss_wave[0] == 2 and (gs.sim.mel_alive[0, 8].any()):
                break
        assert gs.sim.boss_wave[0] == 2
        assert (gs.sim.mel_type[0, 8, :2] == Creature.ORC_SOLDIER).all()

    def test_boss_death_clears_floor(self, extended_world):
        gs = self._at_boss(extended_world)
        gs = step(gs, Action.DESCEND).state
        kill_all(gs)
        gs = step(gs, Action.NOOP).state
        s = gs.sim
        s.boss_hp[0] = 0.5
        nr, nc = int(s.necro_pos[0, 0]), int(s.necro_pos[0, 1])
        s.prow[0], s.pcol[0] = nr - 1, nc
        s.facing[0] = 3
        s.sword_tier[0] = 4
        out = step(gs, Action.DO)
        s2 = out.state.sim
        assert Achievement.DEFEAT_NECROMANCER in out.newly_unlocked
        assert s2.floor_cleared[0, 8]
        assert s2.blocks[0, 8, nr, nc] == Block.PATH


class TestClassicConformance:
    def test_action_count_enforced(self, classic_state):
        with pytest.raises(ValueError):
            step(classic_state, Action.DESCEND)

    def test_achievement_width(self, classic_state):
        assert classic_state.sim.ach.shape[1] == 22

    def test_no_extended_blocks_in_classic_world(self, classic_world):
        import numpy as np
        present = set(np.unique(classic_world.floors[0].blocks).tolist())
        assert all(b <= int(Block.PLANT) + 1 for b in present)
