"""Gadget constructions: pps formulas, symmetrization, up/down unaries, pinning."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from spincount.funcs import (
    DELTA0,
    DELTA1,
    EQ3,
    IMP,
    PBFunction,
    binary,
    is_decreasing_permissive_unary,
    is_increasing_permissive_unary,
    is_lsm,
    unary,
)
from spincount.gadgets import (
    GadgetError,
    PinningTag,
    PpsFormula,
    approx_pin,
    eval_pps,
    extract_nonlsm_binary,
    make_up_down,
    normalize_unary,
    parse_pps,
    pinning_analysis,
    serialize_pps,
    symmetrize,
)
from helpers import rand_function

# ---------------------------------------------------------------------------
# pps formulas


def test_eval_pps_sum_over_bound_variable():
    formula = PpsFormula(1, 1, (("f", (0, 1)),))
    out = eval_pps(formula, {"f": binary(1, 2, 3, 4)})
    assert out.table == (3, 7)


def test_pps_serialize_parse_round_trip():
    formula = PpsFormula(2, 1, (("f", (0, 2)), ("g", (2, 1))))
    text = serialize_pps(formula)
    assert text == "pps 2 1 ; f v0 v2 ; g v2 v1"
    assert parse_pps(text) == formula


def test_eval_pps_rejects_unknown_function():
    with pytest.raises(ValueError):
        eval_pps(PpsFormula(1, 0, (("nope", (0,)),)), {})


# ---------------------------------------------------------------------------
# symmetrize


def test_symmetrize_mode1_squares_asymmetry():
    sym, report = symmetrize(binary(1, 2, 2, 1), 1)
    assert sym.table == (1, 4, 4, 1)
    assert sym.table[1] == sym.table[2]


def test_symmetrize_mode2_convolves_lsm():
    sym, report = symmetrize(binary(3, 1, 2, 4), 2)
    assert sym.table == (10, 10, 10, 20)
    assert is_lsm(sym)


def test_symmetrize_mode3_breaks_ising_symmetry():
    sym, report = symmetrize(binary(2, 1, 1, 2), 3, unary(1, 2))
    assert sym.table == (6, 6, 6, 9)
    assert sym.table[1] == sym.table[2]


def test_symmetrize_rejects_trivial():
    with pytest.raises(GadgetError):
        symmetrize(binary(1, 0, 0, 1), 1)


# ---------------------------------------------------------------------------
# make_up_down


def test_make_up_down_known_example():
    pair = make_up_down(binary(3, 4, 1, 2))
    assert pair.up.table == (4, 6)
    assert pair.down.table == (7, 3)
    assert pair.swapped is True
    assert serialize_pps(pair.up_formula) == "pps 1 1 ; f v1 v0"
    assert serialize_pps(pair.down_formula) == "pps 1 1 ; f v0 v1"
    assert eval_pps(pair.up_formula, pair.registry).table == pair.up.table
    assert eval_pps(pair.down_formula, pair.registry).table == pair.down.table


def test_make_up_down_unswapped():
    pair = make_up_down(binary(1, 1, 2, 1))
    assert pair.swapped is False
    assert is_increasing_permissive_unary(pair.up)
    assert is_decreasing_permissive_unary(pair.down)


def test_make_up_down_needs_opposite_fourier_signs():
    with pytest.raises(GadgetError):
        make_up_down(binary(2, 1, 1, 2))


# ---------------------------------------------------------------------------
# extract_nonlsm_binary


def test_extract_route_from_f():
    got = extract_nonlsm_binary(binary(1, 2, 2, 1), binary(2, 1, 1, 2))
    assert got.route == "from_f"
    assert got.function.table == (1, 2, 2, 1)
    a, b, c, d = got.function.table
    assert a * d < b * c


def test_extract_route_from_g():
    got = extract_nonlsm_binary(binary(0, 2, 1, 0), binary(1, 2, 2, 1))
    assert got.route == "from_g"
    assert got.function.table == (1, 2, 2, 1)


def test_extract_route_composed():
    got = extract_nonlsm_binary(binary(0, 2, 1, 0), binary(2, 1, 1, 2))
    assert got.route == "composed"
    assert got.function.table == (1, 4, 2, 2)
    assert serialize_pps(got.formula) == "pps 2 1 ; g v0 v2 ; f v2 v1"


def test_extract_rejects_lsm_f():
    with pytest.raises(GadgetError):
        extract_nonlsm_binary(binary(2, 1, 1, 2), binary(1, 2, 2, 1))


def test_extract_rejects_trivial_g():
    with pytest.raises(GadgetError):
        extract_nonlsm_binary(binary(1, 2, 2, 1), binary(1, 0, 0, 1))


# ---------------------------------------------------------------------------
# unary pinning helpers


def test_normalize_unary_scales_toward_the_approached_end():
    scaled, scale = normalize_unary(unary(1, 3), "up")
    assert scaled.table == (Fraction(1, 3), 1)
    assert scale == 3
    scaled, scale = normalize_unary(unary(3, 1), "down")
    assert scaled.table == (1, Fraction(1, 3))
    assert scale == 3


def test_approx_pin_minimal_power():
    pinned, power = approx_pin(unary(Fraction(1, 3), 1), Fraction(1, 100))
    assert power == 5
    assert pinned.table == (Fraction(1, 243), 1)
    looser, power2 = approx_pin(unary(Fraction(1, 3), 1), Fraction(1, 3))
    assert power2 == 1 and looser.table == (Fraction(1, 3), 1)


def test_approx_pin_rejects_unnormalized():
    with pytest.raises(GadgetError):
        approx_pin(unary(1, 3), Fraction(1, 10))


# ---------------------------------------------------------------------------
# pinning analysis


def test_pinning_both_unaries_for_ising():
    verdict = pinning_analysis([binary(2, 1, 1, 2)])
    assert verdict.tag is PinningTag.BOTH_UNARIES
    assert verdict.case == 1
    assert verdict.up.table == (1, 2)
    assert verdict.down.table == (2, 1)
    registry = verdict.registry()
    assert eval_pps(verdict.up_formula, registry).table == verdict.up.table
    assert eval_pps(verdict.down_formula, registry).table == verdict.down.table


def test_pinning_monotone_family():
    verdict = pinning_analysis([binary(1, 2, 3, 4)])
    assert verdict.tag is PinningTag.MONOTONE_FAMILY
    assert verdict.case == 2
    assert verdict.witness_index == 0


def test_pinning_flipped_monotone_family():
    verdict = pinning_analysis([unary(2, 1)])
    assert verdict.tag is PinningTag.FLIPPED_MONOTONE_FAMILY
    assert verdict.case == 3


def test_pinning_all_pure():
    verdict = pinning_analysis([IMP])
    assert verdict.tag is PinningTag.ALL_PURE
    assert verdict.case == 4
    verdict = pinning_analysis([DELTA0, DELTA1])
    assert verdict.tag is PinningTag.ALL_PURE


def test_pinning_two_opposed_unaries():
    verdict = pinning_analysis([unary(1, 2), unary(2, 1)])
    assert verdict.tag is PinningTag.BOTH_UNARIES
    assert verdict.up.table == (1, 2)
    assert verdict.down.table == (2, 1)


def test_pinning_random_verdicts_self_verify():
    """Every verdict constructed over random families passes its own validation."""
    rng = random.Random(47)
    tags = set()
    for _ in range(60):
        family = [rand_function(rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
        verdict = pinning_analysis(family)
        tags.add(verdict.tag)
    assert PinningTag.BOTH_UNARIES in tags


def test_pinning_empty_family_is_vacuously_pure():
    assert pinning_analysis([]).tag is PinningTag.ALL_PURE


def test_pinning_eq3_is_pure():
    verdict = pinning_analysis([EQ3])
    assert verdict.tag is PinningTag.ALL_PURE
