"""Pseudo-Boolean function tables over exact rationals.

A function of arity k is stored as its full table of 2**k nonnegative
rationals.  Table order puts the first argument in the most significant
bit: index(x_0, ..., x_{k-1}) = sum x_j * 2**(k-1-j).  A binary function
written as a matrix [[a, b], [c, d]] therefore has table (a, b, c, d)
with a = f(0,0), b = f(0,1), c = f(1,0), d = f(1,1).

Signed tables (Fourier coefficients, holographic images) use the same
layout but may hold negative entries.  All arithmetic is exact; floats
are rejected at the door.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iterproduct
from typing import Iterable, Optional, Sequence, Union

ARITY_CAP = 16

Rational = Union[int, str, Fraction]


class CapacityError(Exception):
    """A table, instance, or graph is too large for the configured cap."""


def frac(value: Rational) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to Fraction.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def index_of(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b!r}")
        idx = (idx << 1) | b
    return idx


def bits_of(index: int, arity: int) -> tuple[int, ...]:
    return tuple((index >> (arity - 1 - j)) & 1 for j in range(arity))


def _check_arity(arity: int) -> None:
    if not isinstance(arity, int) or arity < 0:
        raise ValueError(f"arity must be a nonnegative int, got {arity!r}")
    if arity > ARITY_CAP:
        raise CapacityError(f"arity {arity} exceeds the cap of {ARITY_CAP}")


def _coerce_table(arity: int, table: Iterable[Rational]) -> tuple[Fraction, ...]:
    values = tuple(frac(v) for v in table)
    if len(values) != 1 << arity:
        raise ValueError(f"arity {arity} needs {1 << arity} values, got {len(values)}")
    return values


@dataclass(frozen=True)
class PBFunction:
    """A nonnegative rational-valued function {0,1}**arity -> Q>=0."""

    arity: int
    table: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        values = _coerce_table(self.arity, self.table)
        for v in values:
            if v < 0:
                raise ValueError(f"negative entry {v}; use SignedTable for signed data")
        object.__setattr__(self, "table", values)

    @classmethod
    def from_values(cls, arity: int, values: Iterable[Rational]) -> "PBFunction":
        return cls(arity, tuple(frac(v) for v in values))

    def __call__(self, bits: Sequence[int]) -> Fraction:
        if len(bits) != self.arity:
            raise ValueError(f"expected {self.arity} bits, got {len(bits)}")
        return self.table[index_of(bits)]

    def as_signed(self) -> "SignedTable":
        return SignedTable(self.arity, self.table)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.table)


@dataclass(frozen=True)
class SignedTable:
    """A rational-valued function table with entries of arbitrary sign."""

    arity: int
    table: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        object.__setattr__(self, "table", _coerce_table(self.arity, self.table))

    @classmethod
    def from_values(cls, arity: int, values: Iterable[Rational]) -> "SignedTable":
        return cls(arity, tuple(frac(v) for v in values))

    def __call__(self, bits: Sequence[int]) -> Fraction:
        if len(bits) != self.arity:
            raise ValueError(f"expected {self.arity} bits, got {len(bits)}")
        return self.table[index_of(bits)]

    def as_function(self) -> PBFunction:
        if any(v < 0 for v in self.table):
            raise ValueError("table has negative entries; not a PBFunction")
        return PBFunction(self.arity, self.table)


def binary(a: Rational, b: Rational, c: Rational, d: Rational) -> PBFunction:
    """The binary function [[a, b], [c, d]] with a = f(0,0), ..., d = f(1,1)."""
    return PBFunction.from_values(2, (a, b, c, d))


def unary(a: Rational, b: Rational) -> PBFunction:
    return PBFunction.from_values(1, (a, b))


EQ = binary(1, 0, 0, 1)
NEQ = binary(0, 1, 1, 0)
IMP = binary(1, 1, 0, 1)
DELTA0 = unary(1, 0)
DELTA1 = unary(0, 1)
EQ3 = PBFunction.from_values(3, (1, 0, 0, 0, 0, 0, 0, 1))
# Indicator of even parity: xor3(x, y, z) = 1 iff x ^ y ^ z = 0.
XOR3 = PBFunction.from_values(3, (1, 0, 0, 1, 0, 1, 1, 0))


# ---------------------------------------------------------------------------
# Fourier transform


def _wht(table: Sequence[Fraction]) -> list[Fraction]:
    out = list(table)
    n = len(out)
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                a, b = out[j], out[j + h]
                out[j], out[j + h] = a + b, a - b
        h *= 2
    return out


def fourier(f: Union[PBFunction, SignedTable]) -> SignedTable:
    """Fourier table F with F(x) = 2**-k * sum_p (-1)**(p.x) f(p)."""
    scale = Fraction(1, 1 << f.arity)
    return SignedTable(f.arity, tuple(v * scale for v in _wht(f.table)))


def inverse_fourier(F: SignedTable) -> SignedTable:
    """Inverse transform, no normalization: f(x) = sum_p (-1)**(p.x) F(p)."""
    return SignedTable(F.arity, tuple(_wht(F.table)))


# ---------------------------------------------------------------------------
# Clone operations


def bit_flip(f: PBFunction) -> PBFunction:
    """f_bar(x) = f(x with every bit flipped); reverses the table."""
    return PBFunction(f.arity, tuple(reversed(f.table)))


def permute(f: PBFunction, perm: Sequence[int]) -> PBFunction:
    """Relocate coordinate j to position perm[j]: g(x) = f(x[perm[0]], ...)."""
    k = f.arity
    if sorted(perm) != list(range(k)):
        raise ValueError(f"perm must be a permutation of range({k}), got {perm!r}")
    out = [Fraction(0)] * (1 << k)
    for idx in range(1 << k):
        x = bits_of(idx, k)
        out[idx] = f.table[index_of(tuple(x[perm[j]] for j in range(k)))]
    return PBFunction(k, tuple(out))


def product(f: PBFunction, g: PBFunction) -> PBFunction:
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    return PBFunction(f.arity, tuple(a * b for a, b in zip(f.table, g.table)))


def sum_out(f: PBFunction, i: int) -> PBFunction:
    """Sum coordinate i (0-based) out of f."""
    k = f.arity
    if not 0 <= i < k:
        raise ValueError(f"coordinate {i} out of range for arity {k}")
    out = []
    for idx in range(1 << (k - 1)):
        x = bits_of(idx, k - 1)
        lo = x[:i] + (0,) + x[i:]
        hi = x[:i] + (1,) + x[i:]
        out.append(f.table[index_of(lo)] + f.table[index_of(hi)])
    return PBFunction(k - 1, tuple(out))


def add_fictitious(f: PBFunction, i: Optional[int] = None) -> PBFunction:
    """Insert a coordinate at position i (default: append) that f ignores."""
    k = f.arity
    pos = k if i is None else i
    if not 0 <= pos <= k:
        raise ValueError(f"position {pos} out of range for arity {k}")
    out = []
    for idx in range(1 << (k + 1)):
        x = bits_of(idx, k + 1)
        out.append(f.table[index_of(x[:pos] + x[pos + 1 :])])
    return PBFunction(k + 1, tuple(out))


def pin(f: PBFunction, i: int, b: int) -> PBFunction:
    """Fix coordinate i (0-based) to the bit b."""
    k = f.arity
    if not 0 <= i < k:
        raise ValueError(f"coordinate {i} out of range for arity {k}")
    if b not in (0, 1):
        raise ValueError(f"pin value must be 0 or 1, got {b!r}")
    out = []
    for idx in range(1 << (k - 1)):
        x = bits_of(idx, k - 1)
        out.append(f.table[index_of(x[:i] + (b,) + x[i:])])
    return PBFunction(k - 1, tuple(out))


def _normalize_partition(arity: int, partition: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    blocks = [tuple(sorted(block)) for block in partition]
    seen = sorted(c for block in blocks for c in block)
    if seen != list(range(arity)):
        raise ValueError(f"partition must cover range({arity}) exactly, got {blocks!r}")
    return tuple(sorted(blocks, key=lambda blk: blk[0]))


def identify(f: PBFunction, partition: Iterable[Iterable[int]]) -> PBFunction:
    """Merge coordinates within each block; blocks are ordered by least member."""
    blocks = _normalize_partition(f.arity, partition)
    m = len(blocks)
    out = []
    for idx in range(1 << m):
        y = bits_of(idx, m)
        x = [0] * f.arity
        for j, block in enumerate(blocks):
            for c in block:
                x[c] = y[j]
        out.append(f.table[index_of(x)])
    return PBFunction(m, tuple(out))


# ---------------------------------------------------------------------------
# Support relations


@dataclass(frozen=True)
class SupportRelation:
    """The set of inputs on which a function is nonzero."""

    arity: int
    tuples: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        tuples = frozenset(tuple(t) for t in self.tuples)
        for t in tuples:
            if len(t) != self.arity or any(b not in (0, 1) for b in t):
                raise ValueError(f"bad tuple {t!r} for arity {self.arity}")
        object.__setattr__(self, "tuples", tuples)


def support(f: PBFunction) -> SupportRelation:
    k = f.arity
    nonzero = frozenset(bits_of(i, k) for i, v in enumerate(f.table) if v != 0)
    return SupportRelation(k, nonzero)


class RelationClass(enum.Enum):
    AFFINE = "Affine"
    IM2 = "IM2"
    NEITHER = "Neither"


def is_affine_relation(rel: SupportRelation) -> bool:
    """True iff the relation is the solution set of a GF(2) linear system."""
    points = sorted(index_of(t) for t in rel.tuples)
    if not points:
        return True
    base = points[0]
    basis: list[int] = []
    for p in points:
        v = p ^ base
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(points) == 1 << len(basis)


def is_and_or_closed(rel: SupportRelation) -> bool:
    """True iff the relation is closed under coordinatewise AND and OR."""
    points = [index_of(t) for t in rel.tuples]
    pointset = set(points)
    for i, a in enumerate(points):
        for b in points[i + 1 :]:
            if (a & b) not in pointset or (a | b) not in pointset:
                return False
    return True


def relation_class(rel: SupportRelation) -> RelationClass:
    if is_affine_relation(rel):
        return RelationClass.AFFINE
    if is_and_or_closed(rel):
        return RelationClass.IM2
    return RelationClass.NEITHER


# ---------------------------------------------------------------------------
# Properties


def is_permissive(f: PBFunction) -> bool:
    return all(v > 0 for v in f.table)


def pure_value(f: PBFunction) -> tuple[bool, Optional[Fraction]]:
    """A function is pure when its nonzero values are all equal."""
    values = {v for v in f.table if v != 0}
    if not values:
        return True, None
    if len(values) == 1:
        return True, next(iter(values))
    return False, None


def is_lsm(f: PBFunction) -> bool:
    """Log-supermodular: f(x|y) f(x&y) >= f(x) f(y) for all pairs."""
    t = f.table
    n = len(t)
    for x in range(n):
        for y in range(x + 1, n):
            if t[x | y] * t[x & y] < t[x] * t[y]:
                return False
    return True


def is_log_modular(f: PBFunction) -> bool:
    t = f.table
    n = len(t)
    for x in range(n):
        for y in range(x + 1, n):
            if t[x | y] * t[x & y] != t[x] * t[y]:
                return False
    return True


def is_monotone(f: PBFunction) -> bool:
    t = f.table
    n = len(t)
    for x in range(n):
        for y in range(x + 1, n):
            if (x & y) == x and t[x] > t[y]:
                return False
    return True


def is_monotone_on_support(f: PBFunction) -> bool:
    t = f.table
    nonzero = [i for i, v in enumerate(t) if v != 0]
    for ai, a in enumerate(nonzero):
        for b in nonzero[ai + 1 :]:
            if (a & b) == a and t[a] > t[b]:
                return False
    return True


def is_support_join_closed(f: PBFunction) -> bool:
    nonzero = [i for i, v in enumerate(f.table) if v != 0]
    pointset = set(nonzero)
    for i, a in enumerate(nonzero):
        for b in nonzero[i + 1 :]:
            if (a | b) not in pointset:
                return False
    return True


def in_cp(f: Union[PBFunction, SignedTable]) -> bool:
    """Membership in the class with entrywise nonnegative Fourier table."""
    return all(v >= 0 for v in fourier(f).table)


def in_sdp3(f: PBFunction) -> bool:
    """Arity-3 functions whose Fourier table is nonnegative and vanishes on odd weight."""
    if f.arity != 3:
        return False
    F = fourier(f).table
    for idx, v in enumerate(F):
        if bin(idx).count("1") % 2 == 1:
            if v != 0:
                return False
        elif v < 0:
            return False
    return True


def is_trivial_binary(f: PBFunction) -> bool:
    """Log-modular, or a unary times EQ, or a unary times NEQ."""
    if f.arity != 2:
        raise ValueError(f"triviality is a binary notion, got arity {f.arity}")
    a, b, c, d = f.table
    return a * d == b * c or (b == 0 and c == 0) or (a == 0 and d == 0)


def is_increasing_permissive_unary(f: PBFunction) -> bool:
    return f.arity == 1 and 0 < f.table[0] < f.table[1]


def is_decreasing_permissive_unary(f: PBFunction) -> bool:
    return f.arity == 1 and f.table[0] > f.table[1] > 0


@dataclass(frozen=True)
class PropertyReport:
    arity: int
    permissive: bool
    pure: bool
    pure_value: Optional[Fraction]
    lsm: bool
    log_modular: bool
    monotone: bool
    monotone_on_support: bool
    support_join_closed: bool
    affine_support: bool
    in_cp: bool
    in_sdp3: bool
    trivial: Optional[bool] = None
    ferromagnetic: Optional[bool] = None
    ising: Optional[bool] = None
    symmetric: Optional[bool] = None

    def record(self) -> list[tuple[str, str]]:
        """Stable key=value pairs for the CLI's machine output."""

        def fmt(v: object) -> str:
            if v is None:
                return "none"
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        keys = (
            "arity permissive pure pure_value lsm log_modular monotone "
            "monotone_on_support support_join_closed affine_support in_cp in_sdp3"
        ).split()
        pairs = [(k, fmt(getattr(self, k))) for k in keys]
        if self.arity == 2:
            for k in ("trivial", "ferromagnetic", "ising", "symmetric"):
                pairs.append((k, fmt(getattr(self, k))))
        return pairs


def property_report(f: PBFunction) -> PropertyReport:
    pure, pval = pure_value(f)
    report = {
        "arity": f.arity,
        "permissive": is_permissive(f),
        "pure": pure,
        "pure_value": pval,
        "lsm": is_lsm(f),
        "log_modular": is_log_modular(f),
        "monotone": is_monotone(f),
        "monotone_on_support": is_monotone_on_support(f),
        "support_join_closed": is_support_join_closed(f),
        "affine_support": is_affine_relation(support(f)),
        "in_cp": in_cp(f),
        "in_sdp3": in_sdp3(f),
    }
    if f.arity == 2:
        a, b, c, d = f.table
        report["trivial"] = is_trivial_binary(f)
        report["ferromagnetic"] = a * d >= b * c
        report["ising"] = a == d and b == c
        report["symmetric"] = b == c
    return PropertyReport(**report)


# ---------------------------------------------------------------------------
# Irredundant form and pin-monotonicity


def irredundant(f: PBFunction) -> tuple[PBFunction, tuple[tuple[int, ...], ...]]:
    """Identify coordinates forced equal on the support.

    Returns the reduced function and the coordinate partition used.  An
    all-zero function keeps its arity with the all-singletons partition.
    """
    k = f.arity
    nonzero = [bits_of(i, k) for i, v in enumerate(f.table) if v != 0]
    singletons = tuple((j,) for j in range(k))
    if not nonzero:
        return f, singletons
    blocks: list[list[int]] = []
    placed = [False] * k
    for i in range(k):
        if placed[i]:
            continue
        block = [i]
        placed[i] = True
        for j in range(i + 1, k):
            if not placed[j] and all(t[i] == t[j] for t in nonzero):
                block.append(j)
                placed[j] = True
        blocks.append(block)
    partition = _normalize_partition(k, blocks)
    if partition == singletons:
        return f, singletons
    return identify(f, partition), partition


def pin_monotone_violation(
    f: PBFunction,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """A witness (a, b, c) against pin-monotonicity of f, or None.

    On the irredundant form g: a and b differ only at coordinate j with
    a[j] = 0, b[j] = 1 and g(a) > g(b), yet c has c[j] = 1 and g(c) != 0.
    """
    g, _ = irredundant(f)
    k = g.arity
    t = g.table
    col_witness: list[Optional[int]] = []
    for j in range(k):
        mask = 1 << (k - 1 - j)
        witness = next((idx for idx in range(1 << k) if idx & mask and t[idx] != 0), None)
        col_witness.append(witness)
    for j in range(k):
        if col_witness[j] is None:
            continue
        mask = 1 << (k - 1 - j)
        for idx in range(1 << k):
            if idx & mask:
                continue
            if t[idx] > t[idx | mask]:
                c = col_witness[j]
                assert c is not None
                return bits_of(idx, k), bits_of(idx | mask, k), bits_of(c, k)
    return None


def is_pin_monotone(f: PBFunction) -> bool:
    return pin_monotone_violation(f) is None


# ---------------------------------------------------------------------------
# Product-type membership


@dataclass(frozen=True)
class ProductForm:
    """A factorization f(x) = constant * prod unaries * prod EQ * prod NEQ."""

    arity: int
    constant: Fraction
    unaries: tuple[tuple[int, PBFunction], ...]
    eq_pairs: tuple[tuple[int, int], ...]
    neq_pairs: tuple[tuple[int, int], ...]

    def __call__(self, bits: Sequence[int]) -> Fraction:
        if len(bits) != self.arity:
            raise ValueError(f"expected {self.arity} bits, got {len(bits)}")
        value = self.constant
        for coord, u in self.unaries:
            value *= u.table[bits[coord]]
        for i, j in self.eq_pairs:
            if bits[i] != bits[j]:
                return Fraction(0)
        for i, j in self.neq_pairs:
            if bits[i] == bits[j]:
                return Fraction(0)
        return value

    def as_function(self) -> PBFunction:
        return PBFunction(
            self.arity,
            tuple(self(bits_of(i, self.arity)) for i in range(1 << self.arity)),
        )


def product_form(f: PBFunction) -> Optional[ProductForm]:
    """Factor f over unaries, EQ, and NEQ, or return None.

    The support must be exactly the solution set of the equality,
    disequality, and constancy constraints it forces, and on the support
    the values must split multiplicatively across coordinate classes.
    """
    k = f.arity
    points = [bits_of(i, k) for i, v in enumerate(f.table) if v != 0]
    if not points:
        return ProductForm(k, Fraction(0), (), (), ())

    # Group coordinates forced pairwise equal or unequal on the support.
    placed = [False] * k
    classes: list[list[tuple[int, int]]] = []  # (coordinate, parity vs class rep)
    for i in range(k):
        if placed[i]:
            continue
        members = [(i, 0)]
        placed[i] = True
        for j in range(i + 1, k):
            if placed[j]:
                continue
            if all(t[i] == t[j] for t in points):
                members.append((j, 0))
                placed[j] = True
            elif all(t[i] != t[j] for t in points):
                members.append((j, 1))
                placed[j] = True
        classes.append(members)

    base = min(points, key=index_of)
    pinned: list[list[tuple[int, int]]] = []
    free: list[list[tuple[int, int]]] = []
    for members in classes:
        rep = members[0][0]
        if all(t[rep] == base[rep] for t in points):
            pinned.append(members)
        else:
            free.append(members)

    # Support must equal the full solution set of the forced constraints.
    if len(points) != 1 << len(free):
        return None

    fbase = f(base)
    ratios: list[Fraction] = []
    for members in free:
        flip = {coord for coord, _ in members}
        flipped = tuple(1 - b if j in flip else b for j, b in enumerate(base))
        ratios.append(f(flipped) / fbase)
    for t in points:
        expected = fbase
        for members, ratio in zip(free, ratios):
            rep = members[0][0]
            if t[rep] != base[rep]:
                expected *= ratio
        if f(t) != expected:
            return None

    unaries: list[tuple[int, PBFunction]] = []
    eq_pairs: list[tuple[int, int]] = []
    neq_pairs: list[tuple[int, int]] = []
    for members in pinned:
        rep = members[0][0]
        unaries.append((rep, DELTA1 if base[rep] else DELTA0))
    for members, ratio in zip(free, ratios):
        rep = members[0][0]
        values = [Fraction(1), ratio] if base[rep] == 0 else [ratio, Fraction(1)]
        unaries.append((rep, PBFunction(1, tuple(values))))
    for members in pinned + free:
        rep = members[0][0]
        for coord, parity in members[1:]:
            (eq_pairs if parity == 0 else neq_pairs).append((rep, coord))
    form = ProductForm(k, fbase, tuple(unaries), tuple(eq_pairs), tuple(neq_pairs))
    assert form.as_function().table == f.table
    return form


def is_product_type(f: PBFunction) -> bool:
    return product_form(f) is not None


def all_bits(arity: int) -> Iterable[tuple[int, ...]]:
    """All assignments in table-index order."""
    return _iterproduct((0, 1), repeat=arity)
