"""Subset-sum chamber bookkeeping for n points on a line."""

from __future__ import annotations

from collections import Counter

import pytest

from mdsgit.errors import InvariantViolationError
from mdsgit.linalg import dot
from mdsgit.npoints import (
    build_config,
    crossing_delta,
    exceptional_count,
    quotient_picard,
    rho_constant,
    verify_rho_formula,
)
from oracles import count_chambers_bruteforce

FROZEN = {
    # n: (walls, chambers, stable)
    4: (7, 12, 8),
    5: (15, 81, 76),
    6: (31, 1684, 1678),
}


@pytest.fixture(scope="module")
def configs():
    return {n: build_config(n) for n in (4, 5, 6)}


def test_bounds_are_enforced():
    with pytest.raises(ValueError):
        build_config(3)
    with pytest.raises(ValueError):
        build_config(9)
    with pytest.raises(ValueError):
        build_config(7, max_n=6)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_frozen_counts(configs, n):
    cfg = configs[n]
    walls, chambers, stable = FROZEN[n]
    assert len(cfg.walls) == walls
    assert len(cfg.chambers) == chambers
    assert sum(1 for ch in cfg.chambers if ch.stable) == stable
    assert sum(1 for ch in cfg.chambers if not ch.stable) == n


def test_wall_representatives_n4(configs):
    assert [w.subset for w in configs[4].walls] == [
        (1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4),
    ]
    assert configs[4].walls[4].covector == (1, 1, -1, -1)


def test_half_size_walls_contain_point_one(configs):
    for n in (4, 6):
        for w in configs[n].walls:
            if 2 * len(w.subset) == n:
                assert 1 in w.subset


def test_rho_constant():
    assert [rho_constant(n) for n in (4, 5, 6)] == [1, 5, 16]


def test_crossing_delta_table():
    # the n=4 half-splits leave rho alone; proper middle sizes trade 1:1
    assert crossing_delta(4, 1) == 0
    assert crossing_delta(4, 2) == 0
    assert crossing_delta(5, 2) == -1
    assert crossing_delta(5, 3) == 1
    assert crossing_delta(6, 2) == -1
    assert crossing_delta(6, 3) == 0
    assert crossing_delta(6, 4) == 1


@pytest.mark.parametrize("n", [4, 5])
def test_chamber_count_against_bruteforce(configs, n):
    cfg = configs[n]
    eye = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    expected = count_chambers_bruteforce([w.covector for w in cfg.walls], eye, n)
    assert len(cfg.chambers) == expected


@pytest.mark.parametrize("n", [4, 5, 6])
def test_representatives_realize_signs(configs, n):
    cfg = configs[n]
    for ch in cfg.chambers:
        assert all(x > 0 for x in ch.representative)
        for w, s in zip(cfg.walls, ch.signs):
            d = dot(w.covector, ch.representative)
            assert d != 0 and (d > 0) == (s > 0)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_stability_matches_singleton_signs(configs, n):
    cfg = configs[n]
    for ch in cfg.chambers:
        singleton_ok = all(ch.signs[i] == -1 for i in range(n))
        assert ch.stable == singleton_ok


def test_seed_chamber(configs):
    for n in (4, 5, 6):
        cfg = configs[n]
        seed = cfg.chambers[cfg.seed_index]
        assert seed.stable
        rho = quotient_picard(cfg)
        assert rho[cfg.seed_index] == 1
        assert exceptional_count(cfg, seed) == rho_constant(n) - 1
    assert configs[4].chambers[configs[4].seed_index].signs == (
        -1, -1, -1, -1, 1, 1, 1,
    )


@pytest.mark.parametrize("n", [4, 5, 6])
def test_rho_formula(configs, n):
    report = verify_rho_formula(configs[n])
    assert report.ok
    assert report.constant == rho_constant(n)
    assert report.failures == ()
    assert report.n_stable == FROZEN[n][2]
    assert report.n_unstable == n


def test_rho_histograms(configs):
    rho4 = quotient_picard(configs[4])
    assert Counter(v for v in rho4 if v is not None) == {1: 8}
    rho5 = quotient_picard(configs[5])
    assert Counter(v for v in rho5 if v is not None) == {
        1: 5, 2: 30, 3: 30, 4: 10, 5: 1,
    }
    rho6 = quotient_picard(configs[6])
    assert Counter(v for v in rho6 if v is not None) == {
        1: 6, 2: 30, 3: 140, 4: 480, 5: 690, 6: 332,
    }


def test_unstable_chambers_get_no_rho(configs):
    for n in (4, 5, 6):
        rho = quotient_picard(configs[n])
        for ch in configs[n].chambers:
            assert (rho[ch.index] is None) == (not ch.stable)


def test_symmetric_chamber_is_unique_maximum(configs):
    # only the democratic weights of five points see every exceptional
    # subset positively; for six points the democratic weights sit on walls
    cfg = configs[5]
    zero_e = [ch for ch in cfg.chambers if ch.stable and exceptional_count(cfg, ch) == 0]
    assert len(zero_e) == 1
    assert all(x == 1 for x in _normalized(zero_e[0].representative))
    cfg6 = configs[6]
    assert not [
        ch for ch in cfg6.chambers if ch.stable and exceptional_count(cfg6, ch) == 0
    ]


def _normalized(rep):
    g = min(rep)
    return tuple(x // g for x in rep) if g else rep


def test_adjacency_is_single_sign_flip(configs):
    cfg = configs[4]
    for a, b, w in cfg.adjacency:
        sa, sb = cfg.chambers[a].signs, cfg.chambers[b].signs
        diffs = [k for k in range(len(sa)) if sa[k] != sb[k]]
        assert diffs == [w]


def test_exceptional_count_accepts_index_or_chamber(configs):
    cfg = configs[5]
    ch = cfg.chambers[cfg.seed_index]
    assert exceptional_count(cfg, ch) == exceptional_count(cfg, cfg.seed_index)
