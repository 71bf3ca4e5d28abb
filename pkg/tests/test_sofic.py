import random
from dataclasses import replace
from fractions import Fraction

import pytest

from abcf.attractor import named_params
from abcf.core import params
from abcf.errors import MalformedSequence, NotMarkov
from abcf.sofic import PLUS, MINUS, is_admissible, partition_for, symbols_for_digit, transition_matrix
from abcf.surd import Surd
from abcf.verify import check_markov, check_minus_full_shift, check_paths

F = Fraction
DUAL_PAIRS = ["minus", "alternating", "hurwitz", "hurwitz-dual", "golden-self-dual", "rational-self-dual"]


def setup(name):
    p = named_params(name)
    part = partition_for(p)
    return p, part, transition_matrix(part, p)


def test_minus_case_is_full_shift():
    p, part, tm = setup("minus")
    assert [c.label for c in part.cells] == ["2"]
    assert part.minus_u is None
    assert check_minus_full_shift().ok
    assert not is_admissible([2, 1, 3], tm)
    assert is_admissible([], tm)
    assert is_admissible([2, 2, 7, 3, 100, 2], tm)


def test_zero_digit_rejected():
    _, _, tm = setup("hurwitz")
    with pytest.raises(MalformedSequence):
        is_admissible([2, 0, 3], tm)


@pytest.mark.parametrize("name", DUAL_PAIRS)
def test_dual_pairs_are_markov(name):
    assert check_markov(named_params(name)).ok


@pytest.mark.parametrize("name", DUAL_PAIRS)
def test_at_most_two_incomplete_bands_per_part(name):
    _, part, _ = setup(name)
    split = {c.digit for c in part.cells if "_" in c.label}
    assert len([n for n in split if n > 0]) <= 2
    assert len([n for n in split if n < 0]) <= 2


@pytest.mark.parametrize("name", DUAL_PAIRS)
def test_tail_cells_are_unit_squares_with_full_rows(name):
    p, part, tm = setup(name)
    for fam, n, u in ((PLUS, part.n_plus + 3, part.plus_u), (MINUS, part.n_minus - 3, part.minus_u)):
        if u is None:
            continue
        r = part.family_cell(n).rect
        assert r.u_hi - r.u_lo == 1 and r.w_hi - r.w_lo == 1
        # R maps the square to a full-height strip hugging u = 0 from the right (+) or left (-)
        expected = set()
        for t in tm.symbols:
            cell = part.family_cell(part.n_plus if t == PLUS else part.n_minus) if t in (PLUS, MINUS) else next(c for c in part.cells if c.label == t)
            lo, hi = cell.rect.u_lo, cell.rect.u_hi
            if (lo <= 0 < hi) if fam == PLUS else (lo < 0 <= hi):
                expected.add(t)
        assert tm.edges[fam] == expected


def test_strong_cycle_pair_is_not_markov():
    p = params(F(-5, 7), F(3, 7))
    with pytest.raises(NotMarkov):
        transition_matrix(partition_for(p), p)
    assert not check_markov(p).ok


@pytest.mark.parametrize("name", ["golden-self-dual", "rational-self-dual"])
def test_corrupted_partition_is_rejected(name):
    p, part, _ = setup(name)
    cells = list(part.cells)
    i = next(i for i in range(len(cells) - 1) if cells[i].digit == cells[i + 1].digit)
    d = Surd(1, 0, 100)
    cells[i] = replace(cells[i], rect=replace(cells[i].rect, w_hi=cells[i].rect.w_hi + d))
    cells[i + 1] = replace(cells[i + 1], rect=replace(cells[i + 1].rect, w_lo=cells[i + 1].rect.w_lo + d))
    with pytest.raises(NotMarkov):
        transition_matrix(replace(part, cells=tuple(cells)), p)


@pytest.mark.parametrize("name", DUAL_PAIRS)
def test_sign_alternation_is_forbidden(name):
    _, part, tm = setup(name)
    for s in symbols_for_digit(1, part) if part.family_of(1) or any(c.digit == 1 for c in part.cells) else []:
        for n in range(1, 8):
            for t in symbols_for_digit(n, part):
                assert not tm.allows(s, t)
    for s in symbols_for_digit(-1, part) if part.family_of(-1) or any(c.digit == -1 for c in part.cells) else []:
        for n in range(-8, 0):
            for t in symbols_for_digit(n, part):
                assert not tm.allows(s, t)


def _digit_of(symbol, part, rng):
    if symbol == PLUS:
        return part.n_plus + rng.randrange(6)
    if symbol == MINUS:
        return part.n_minus - rng.randrange(6)
    return int(symbol.split("_")[0])


@pytest.mark.parametrize("name", DUAL_PAIRS)
def test_erased_paths_are_admissible(name):
    _, part, tm = setup(name)
    rng = random.Random(1)
    for _ in range(200):
        s = rng.choice(tm.symbols)
        path = [s]
        for _ in range(10):
            s = rng.choice(sorted(tm.edges[s]))
            path.append(s)
        assert is_admissible([_digit_of(x, part, rng) for x in path], tm)


@pytest.mark.parametrize("name", ["hurwitz", "rational-self-dual", "golden-self-dual"])
def test_observed_paths_follow_matrix(name):
    assert check_paths(named_params(name), count=500, seed=2).ok
