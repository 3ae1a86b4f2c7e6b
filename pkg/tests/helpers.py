"""Seeded random generators shared across the test modules.

Every generator takes an explicit random.Random so tests stay reproducible;
nothing here touches global RNG state.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from spincount.funcs import (
    PBFunction,
    ProductForm,
    fourier,
    in_cp,
    is_pin_monotone,
    unary,
)
from spincount.instances import CspInstance, HolantInstance
from spincount.matching import sdp3_lift


def rand_fraction(rng: random.Random, max_num: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(0, max_num), rng.randint(1, max_den))


def rand_positive_fraction(rng: random.Random, max_num: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def rand_function(rng: random.Random, arity: int, zero_weight: int = 1) -> PBFunction:
    """Random nonnegative table; zero_weight skews toward sparse support."""
    values = []
    for _ in range(1 << arity):
        if rng.randrange(zero_weight + 2) < zero_weight:
            values.append(Fraction(0))
        else:
            values.append(rand_positive_fraction(rng))
    return PBFunction.from_values(arity, values)


def rand_binary(rng: random.Random) -> PBFunction:
    return rand_function(rng, 2)


def rand_cp_binary(rng: random.Random) -> PBFunction:
    """Random binary with every Fourier coefficient nonnegative, not all-zero."""
    while True:
        f = rand_function(rng, 2, zero_weight=0)
        if in_cp(f) and not f.is_zero():
            return f


def rand_wtilde(rng: random.Random) -> PBFunction:
    """Random carrier-class ternary: 1 at zero, 0 on odd weight."""
    values = [Fraction(0)] * 8
    values[0] = Fraction(1)
    for i in (0b011, 0b101, 0b110):
        values[i] = rand_fraction(rng)
    return PBFunction.from_values(3, values)


def rand_wtilde_cp(rng: random.Random) -> PBFunction:
    """Carrier-class ternary with nonnegative Fourier table, via a lifted binary."""
    f = rand_cp_binary(rng)
    coeffs = fourier(sdp3_lift(f)).table
    scale = coeffs[0]
    return PBFunction.from_values(3, [v / scale for v in coeffs])


def rand_monotone(rng: random.Random, arity: int) -> PBFunction:
    """Random monotone table by max-propagation up the lattice."""
    values = [rand_fraction(rng) for _ in range(1 << arity)]
    for i in range(1 << arity):
        for j in range(arity):
            below = i & ~(1 << j)
            if below != i and values[i] < values[below]:
                values[i] = values[below]
    return PBFunction.from_values(arity, values)


def rand_pin_monotone(rng: random.Random, arity: int) -> PBFunction:
    """Random pin-monotone function: filtered general tables, monotone fallback."""
    for _ in range(40):
        f = rand_function(rng, arity)
        if is_pin_monotone(f):
            return f
    return rand_monotone(rng, arity)


def rand_product_type(rng: random.Random, arity: int) -> PBFunction:
    """Assemble a product of unaries and EQ/NEQ pair factors over `arity` slots."""
    unaries = tuple(
        (coord, unary(rand_positive_fraction(rng), rand_positive_fraction(rng)))
        for coord in range(arity)
        if rng.random() < 0.7
    )
    slots = list(range(arity))
    rng.shuffle(slots)
    eq_pairs = []
    neq_pairs = []
    while len(slots) >= 2 and rng.random() < 0.6:
        pair = (slots.pop(), slots.pop())
        pair = (min(pair), max(pair))
        (eq_pairs if rng.random() < 0.5 else neq_pairs).append(pair)
    form = ProductForm(
        arity, rand_positive_fraction(rng), unaries, tuple(eq_pairs), tuple(neq_pairs)
    )
    return form.as_function()


def rand_csp_instance(
    rng: random.Random,
    functions: list[PBFunction],
    n_vars: int,
    n_constraints: int,
) -> CspInstance:
    """Random instance over the given functions with fully random scopes."""
    variables = [f"v{i}" for i in range(n_vars)]
    registry = [(f"f{i}", fn) for i, fn in enumerate(functions)]
    constraints = []
    for _ in range(n_constraints):
        name, fn = rng.choice(registry)
        scope = tuple(rng.choice(variables) for _ in range(fn.arity))
        constraints.append((scope, name))
    return CspInstance.build(registry, constraints, variables=variables)


def rand_holant_instance(
    rng: random.Random,
    make_function: Callable[[random.Random], PBFunction],
    n_constraints: int,
    arity: int = 3,
) -> HolantInstance:
    """Random holant instance: all slots paired up into variables."""
    registry = [(f"g{i}", make_function(rng)) for i in range(n_constraints)]
    slots = [(ci, pos) for ci in range(n_constraints) for pos in range(arity)]
    rng.shuffle(slots)
    scopes: list[list[Optional[str]]] = [[None] * arity for _ in range(n_constraints)]
    for vi in range(len(slots) // 2):
        for ci, pos in (slots[2 * vi], slots[2 * vi + 1]):
            scopes[ci][pos] = f"v{vi}"
    constraints = [(tuple(scope), f"g{ci}") for ci, scope in enumerate(scopes)]
    return HolantInstance(CspInstance.build(registry, constraints))


def rand_mixed_holant_instance(rng: random.Random, n_vars: int) -> HolantInstance:
    """Holant instance over random functions of mixed arity, 2*n_vars slots."""
    total_slots = 2 * n_vars
    arities = []
    while total_slots > 0:
        k = rng.randint(1, min(3, total_slots))
        arities.append(k)
        total_slots -= k
    registry = [(f"g{i}", rand_function(rng, k, zero_weight=0)) for i, k in enumerate(arities)]
    slots = [(ci, pos) for ci, k in enumerate(arities) for pos in range(k)]
    rng.shuffle(slots)
    scopes: list[list[Optional[str]]] = [[None] * k for k in arities]
    for vi in range(n_vars):
        for ci, pos in (slots[2 * vi], slots[2 * vi + 1]):
            scopes[ci][pos] = f"v{vi}"
    constraints = [(tuple(scope), f"g{ci}") for ci, scope in enumerate(scopes)]
    return HolantInstance(CspInstance.build(registry, constraints))
