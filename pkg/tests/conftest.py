import numpy as np
import pytest

from gridrogue import CLASSIC, EXTENDED, make_level_params, generate_world
from gridrogue import rng as R
from gridrogue.engine import reset


@pytest.fixture(scope="session")
def classic_world():
    return generate_world(make_level_params(100), CLASSIC)


@pytest.fixture(scope="session")
def extended_world():
    return generate_world(make_level_params(100), EXTENDED)


@pytest.fixture
def classic_state(classic_world):
    return reset(classic_world, CLASSIC, R.make_stream(5))


@pytest.fixture
def extended_state(extended_world):
    return reset(extended_world, EXTENDED, R.make_stream(5))


def clear_area(gs, radius=8, block=None):
    """Flatten the player's surroundings to grass/path for scripted scenarios."""
    from gridrogue.constants import Block
    if block is None:
        block = Block.GRASS if gs.tier.is_classic else Block.PATH
    s = gs.sim
    f, r, c = int(s.pfloor[0]), int(s.prow[0]), int(s.pcol[0])
    h, w = gs.tier.height, gs.tier.width
    r0, r1 = max(0, r - radius), min(h, r + radius + 1)
    c0, c1 = max(0, c - radius), min(w, c + radius + 1)
    s.blocks[0, f, r0:r1, c0:c1] = block
    s.items[0, f, r0:r1, c0:c1] = 0
    kill_all(gs)
    return gs


def kill_all(gs):
    s = gs.sim
    s.mel_alive[:] = False
    s.ran_alive[:] = False
    s.pas_alive[:] = False
    s.eproj_alive[:] = False
    s.pproj_alive[:] = False
    return gs


def place_creature(gs, cls, kind, dr, dc, hp=None, cd=0, floor=None, lane=0):
    """Put a creature at an offset from the player on its floor."""
    from gridrogue.constants import CREATURE_HP
    s = gs.sim
    f = int(s.pfloor[0]) if floor is None else floor
    r = int(s.prow[0]) + dr
    c = int(s.pcol[0]) + dc
    pos = getattr(s, cls + "_pos")
    pos[0, f, lane] = (r, c)
    getattr(s, cls + "_hp")[0, f, lane] = CREATURE_HP[kind] if hp is None else hp
    getattr(s, cls + "_type")[0, f, lane] = int(kind)
    getattr(s, cls + "_alive")[0, f, lane] = True
    if cls != "pas":
        getattr(s, cls + "_cd")[0, f, lane] = cd
    return (r, c)


def face_block(gs, block, item=None):
    """Put ``block`` on the tile the player faces (facing down)."""
    from gridrogue.constants import Block
    s = gs.sim
    s.facing[0] = 3
    f, r, c = int(s.pfloor[0]), int(s.prow[0]), int(s.pcol[0])
    s.blocks[0, f, r + 1, c] = block
    if item is not None:
        s.items[0, f, r + 1, c] = item
    return (r + 1, c)
