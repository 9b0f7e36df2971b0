"""Shared fan and weight fixtures."""

from __future__ import annotations

import pytest

from mdsgit.toric import Fan, make_fan, weight_system


def projective_plane() -> Fan:
    rays = [(1, 0), (0, 1), (-1, -1)]
    return make_fan(rays, [(0, 1), (0, 2), (1, 2)])


def product_of_lines() -> Fan:
    rays = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    return make_fan(rays, [(0, 2), (0, 3), (1, 2), (1, 3)])


def cube_fan() -> Fan:
    """Three projective lines; the eight octants of R^3."""
    rays = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    cones = [(i, j, k) for i in (0, 1) for j in (2, 3) for k in (4, 5)]
    return make_fan(rays, cones)


def hirzebruch(a: int) -> Fan:
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return make_fan(rays, [(0, 1), (1, 2), (2, 3), (3, 0)])


def blown_up_plane() -> Fan:
    rays = [(1, 0), (0, 1), (-1, -1), (1, 1)]
    return make_fan(rays, [(0, 3), (1, 3), (1, 2), (0, 2)])


def twice_blown_up_plane() -> Fan:
    rays = [(1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0)]
    return make_fan(rays, [(0, 3), (1, 3), (1, 4), (2, 4), (0, 2)])


def weighted_plane() -> Fan:
    """P(1, 1, 2); simplicial but not smooth."""
    rays = [(1, 0), (0, 1), (-1, -2)]
    return make_fan(rays, [(0, 1), (0, 2), (1, 2)])


def flop_weights():
    """Rank one weights (1, 1, -1, -1); the classic small wall crossing."""
    return weight_system([(1,), (1,), (-1,), (-1,)])


@pytest.fixture
def p2():
    return projective_plane()


@pytest.fixture
def p1xp1():
    return product_of_lines()


@pytest.fixture
def p1cubed():
    return cube_fan()


@pytest.fixture
def blp2():
    return blown_up_plane()


@pytest.fixture
def bl2p2():
    return twice_blown_up_plane()


@pytest.fixture
def p112():
    return weighted_plane()


@pytest.fixture
def flop():
    return flop_weights()
