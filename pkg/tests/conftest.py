import functools
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dispersive_agp.geom import Corridor, OfficePolygon, OrthoPolygon, Point, Rect  # noqa: E402
from dispersive_agp.instances import (GenConfig, gen_fig_disp3, gen_random_office,  # noqa: E402
                                      gen_random_orthogonal, rationalize_office)


def poly(*coords, holes=()):
    return OrthoPolygon.from_coords(coords, holes)


SQUARE = poly((0, 0), (1, 0), (1, 1), (0, 1))
L_SHAPE = poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
U_SHAPE = poly((0, 0), (3, 0), (3, 3), (2, 3), (2, 1), (1, 1), (1, 3), (0, 3))
# 3x3 square with the middle unit cell removed; the hole ring runs clockwise
HOLED = poly((0, 0), (3, 0), (3, 3), (0, 3), holes=[((1, 1), (1, 2), (2, 2), (2, 1))])


def two_rooms():
    return OfficePolygon((Rect.of(0, 0, 3, 3), Rect.of(4, 0, 7, 3)),
                         (Corridor(Rect.of(3, 1, 4, 2), (0, 1)),))


@pytest.fixture
def square():
    return SQUARE


@pytest.fixture
def lshape():
    return L_SHAPE


@pytest.fixture
def ushape():
    return U_SHAPE


@pytest.fixture
def holed():
    return HOLED


@functools.lru_cache(maxsize=None)
def small_polygons():
    """Random orthogonal polygons with at most 14 vertices, plus the hand shapes."""
    out = [SQUARE, L_SHAPE, U_SHAPE]
    for n in (4, 6, 8, 10, 12, 14):
        for seed in range(5):
            out.append(gen_random_orthogonal(n, seed=seed, holes=False))
    out.append(two_rooms().polygon)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def medium_polygons():
    """Corpus instances with at most 60 vertices (holes allowed)."""
    out = list(small_polygons()) + [HOLED, gen_fig_disp3().polygon]
    for n in (20, 32, 44, 60):
        for seed in range(3):
            out.append(gen_random_orthogonal(n, seed=100 + seed))
    for seed in range(4):
        o = gen_random_office(GenConfig(seed=seed, n_rooms=3, allow_holes=False))
        if o.polygon.n <= 60:
            out.append(o.polygon)
    for seed in range(3):
        o = gen_random_office(GenConfig(seed=seed, n_rooms=4, allow_holes=True))
        if o.polygon.n <= 60:
            out.append(o.polygon)
    return tuple(out)


def independent_offices(count, lo=3, hi=15, base=0):
    for s in range(base, base + count):
        n = random.Random(s).randint(lo, hi)
        yield gen_random_office(GenConfig(seed=s, n_rooms=n, independent=True))


def integer_offices(count, lo=5, hi=40, base=0):
    for s in range(base, base + count):
        rng = random.Random(s)
        yield gen_random_office(GenConfig(seed=s, n_rooms=rng.randint(lo, hi), allow_holes=s % 2 == 1))


def rational_offices(count, lo=2, hi=20, base=0):
    for k, o in enumerate(integer_offices(count, lo, hi, base)):
        yield rationalize_office(o, seed=base + k)
