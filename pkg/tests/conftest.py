import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pachner import core, from_facets  # noqa: E402

RP2_6 = [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
         (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)]


@pytest.fixture
def rp2():
    return from_facets(RP2_6)


@pytest.fixture
def tetra_boundary():
    return core.sphere(2)


@pytest.fixture
def octahedron():
    return core.suspension(core.suspension(core.sphere(0)))


def catalog(d):
    """Complexes of dimension d built only from the generators."""
    out = [core.full_simplex(d), core.sphere(d)]
    if d >= 1:
        out += [core.cone(core.sphere(d - 1)), core.suspension(core.sphere(d - 1))]
    if d >= 2:
        out.append(core.suspension(core.suspension(core.sphere(d - 2))))
        out.append(core.join(core.sphere(0), core.relabel(core.sphere(d - 1), {v: v + 10 for v in range(1, d + 2)})))
    return out
