import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gridrogue import CLASSIC
from gridrogue.batch import duplication_probability
from gridrogue.engine import resolve_attack
from gridrogue._kern import q1
from gridrogue.obs import decode_symbolic, encode_symbolic
from gridrogue import rng as R

from conftest import clear_area


dmg_vec = st.tuples(*[st.floats(0, 50) for _ in range(3)])
def_vec = st.tuples(*[st.floats(0, 100) for _ in range(3)])


class TestResolveAttackProperties:
    @given(dmg_vec, def_vec)
    def test_bounded_by_raw_damage(self, dmg, defense):
        dealt = resolve_attack(dmg, defense)
        assert 0.0 <= dealt <= sum(dmg) + 0.05

    @given(dmg_vec)
    def test_zero_defense_is_identity(self, dmg):
        assert resolve_attack(dmg, (0, 0, 0)) == pytest.approx(
            np.floor(sum(dmg) * 10 + 0.5) / 10)

    @given(dmg_vec)
    def test_full_immunity_nullifies(self, dmg):
        assert resolve_attack(dmg, (100, 100, 100)) == 0.0

    @given(dmg_vec, def_vec, st.integers(0, 2))
    def test_monotone_in_defense(self, dmg, defense, axis):
        harder = list(defense)
        harder[axis] = min(100.0, harder[axis] + 25.0)
        assert resolve_attack(dmg, harder) <= resolve_attack(dmg, defense) + 1e-9

    @given(st.floats(-100, 100))
    def test_quantization_half_up(self, x):
        q = float(q1(np.array([x], np.float32))[0])
        assert abs(q * 10 - round(q * 10)) < 1e-3


class TestDuplicationProbabilityProperties:
    @given(st.integers(1, 300), st.floats(0, 1), st.data())
    @settings(max_examples=60, deadline=None)
    def test_matches_scipy_everywhere(self, n, p, data):
        scipy = pytest.importorskip("scipy.stats")
        m = data.draw(st.integers(0, n))
        exact = duplication_probability(n, p, m)
        ref = float(scipy.binom.sf(m, n, p))
        assert exact == pytest.approx(ref, rel=1e-8, abs=1e-12)

    @given(st.integers(1, 200), st.floats(0.001, 0.999))
    @settings(max_examples=30, deadline=None)
    def test_monotone_decreasing_in_m(self, n, p):
        values = [duplication_probability(n, p, m) for m in range(0, n, max(1, n // 7))]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


_BASE_STATE = None


def _fresh_state():
    global _BASE_STATE
    if _BASE_STATE is None:
        from gridrogue import make_level_params, generate_world
        from gridrogue.engine import reset
        world = generate_world(make_level_params(400), CLASSIC)
        _BASE_STATE = clear_area(reset(world, CLASSIC, R.make_stream(1)))
    return _BASE_STATE.copy()


class TestObsRoundTripProperties:
    @given(st.integers(0, 99), st.integers(0, 99), st.integers(0, 4))
    @settings(max_examples=25, deadline=None)
    def test_inventory_counts_invert(self, wood, stone, pick):
        gs = _fresh_state()
        s = gs.sim
        s.inv_wood[0] = wood
        s.inv_stone[0] = stone
        s.pick_tier[0] = pick
        inv = decode_symbolic(encode_symbolic(gs), CLASSIC)["inventory"]
        assert inv["wood"] == wood
        assert inv["stone"] == stone
        assert inv["pickaxe"] == pick


class TestRngProperties:
    @given(st.integers(0, 2**63), st.integers(0, 2**32))
    @settings(max_examples=50)
    def test_split_reproducible_and_labelled(self, seed, sid):
        k = R.make_stream(seed)
        a, b = R.split(k, sid), R.split(k, sid)
        assert a == b and a.stream_id == sid

    @given(st.integers(0, 2**63), st.floats(-5, 5), st.floats(0, 5))
    @settings(max_examples=50)
    def test_uniform_within_bounds(self, seed, lo, width):
        v, _ = R.uniform(R.make_stream(seed), lo, lo + width)
        assert lo <= v <= lo + width
