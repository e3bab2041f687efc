import random

import mpmath
import pytest

from eop.model import Grid
from eop.numeric import (
    TOLERANCE, crosscheck_grid, gauss_legendre_nodes, sample_points, xjacobi_inner, xjacobi_ode_numeric,
    xjacobi_orthogonality,
)


def test_node_count():
    nodes = gauss_legendre_nodes(8)
    assert len(nodes) >= 200
    with mpmath.workdps(50):
        assert abs(mpmath.fsum(w for _, w in nodes) - 2) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("dg", [(3, 1), (3, 2), (5, 2)])
def test_xjacobi_orthogonality(dg):
    assert xjacobi_orthogonality(2, 3, *dg) < TOLERANCE
    assert xjacobi_inner(2, 2, *dg) > 0


def test_sample_points_in_domain():
    pts = sample_points("radial", random.Random(0), 10)
    assert all(p > 0 for p in pts)
    pts = sample_points("azimuthal", random.Random(0), 10)
    assert all(-1 < p < 1 for p in pts)


def test_numeric_exceptional_equation():
    pts = sample_points("azimuthal", random.Random(3))
    for n in range(1, 6):
        assert xjacobi_ode_numeric(n, 3, 1, pts).ok


def test_crosscheck_small_grid():
    res = crosscheck_grid(Grid(alphas=(1,), N=(1, 1), dm=(0, 1), n=(1, 2)), seed=5)
    assert res and all(r.ok for r in res)
