"""Gadget constructions witnessed by product-summation formulas.

Every constructed function comes with a formula over the input functions
(plus delta0/delta1 pins): a list of atoms multiplied together, with the
bound variables summed out.  Construction is mandatory-verified: the
formula is re-evaluated and the advertised shape of the result is
checked, and any mismatch raises GadgetError.

Formula text format, 0-based variables, free variables first:

    pps <n_free> <n_bound> ; <fname> v<i> v<j> ... ; <fname> v<k> ...
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .funcs import (
    DELTA0,
    DELTA1,
    CapacityError,
    PBFunction,
    PropertyReport,
    bits_of,
    bit_flip,
    fourier,
    frac,
    index_of,
    is_decreasing_permissive_unary,
    is_increasing_permissive_unary,
    is_lsm,
    is_monotone_on_support,
    is_support_join_closed,
    is_trivial_binary,
    permute,
    property_report,
    pure_value,
    sum_out,
)

PPS_VAR_CAP = 20


class GadgetError(Exception):
    """A gadget precondition failed or a constructed witness did not verify."""


@dataclass(frozen=True)
class PpsFormula:
    """Product of atoms over free variables 0..n_free-1, bound variables summed."""

    n_free: int
    n_bound: int
    atoms: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        if self.n_free < 0 or self.n_bound < 0:
            raise ValueError("variable counts must be nonnegative")
        n = self.n_free + self.n_bound
        atoms = tuple((name, tuple(scope)) for name, scope in self.atoms)
        for name, scope in atoms:
            if not all(isinstance(v, int) and 0 <= v < n for v in scope):
                raise ValueError(f"atom {name} scope {scope} out of range for {n} variables")
        object.__setattr__(self, "atoms", atoms)


def eval_pps(formula: PpsFormula, registry: Mapping[str, PBFunction]) -> PBFunction:
    """Brute-force evaluation of a formula to a function of its free variables."""
    nf, nb = formula.n_free, formula.n_bound
    if nf + nb > PPS_VAR_CAP:
        raise CapacityError(f"{nf + nb} formula variables exceed the cap of {PPS_VAR_CAP}")
    atoms = []
    for name, scope in formula.atoms:
        if name not in registry:
            raise ValueError(f"formula names unknown function {name!r}")
        fn = registry[name]
        if fn.arity != len(scope):
            raise ValueError(f"atom {name} has arity {fn.arity} but scope {scope}")
        atoms.append((fn.table, scope))
    out = []
    for free_idx in range(1 << nf):
        free_bits = bits_of(free_idx, nf)
        total = Fraction(0)
        for bound_idx in range(1 << nb):
            bits = free_bits + bits_of(bound_idx, nb)
            value = Fraction(1)
            for table, scope in atoms:
                value *= table[index_of(tuple(bits[v] for v in scope))]
                if value == 0:
                    break
            total += value
        out.append(total)
    return PBFunction(nf, tuple(out))


def serialize_pps(formula: PpsFormula) -> str:
    parts = [f"pps {formula.n_free} {formula.n_bound}"]
    for name, scope in formula.atoms:
        parts.append(" ".join([name] + [f"v{v}" for v in scope]))
    return " ; ".join(parts)


def parse_pps(text: str) -> PpsFormula:
    chunks = [chunk.strip() for chunk in text.strip().split(";")]
    head = chunks[0].split()
    if len(head) != 3 or head[0] != "pps":
        raise ValueError(f"formula must start with 'pps <n_free> <n_bound>', got {chunks[0]!r}")
    try:
        nf, nb = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ValueError(f"bad variable counts in {chunks[0]!r}") from exc
    atoms = []
    for chunk in chunks[1:]:
        if not chunk:
            raise ValueError("empty atom between ';' separators")
        tokens = chunk.split()
        scope = []
        for tok in tokens[1:]:
            if not tok.startswith("v") or not tok[1:].isdigit():
                raise ValueError(f"bad variable token {tok!r} in atom {chunk!r}")
            scope.append(int(tok[1:]))
        atoms.append((tokens[0], tuple(scope)))
    return PpsFormula(nf, nb, tuple(atoms))


class _Builder:
    """Accumulates atoms; bound variables are appended after the free block."""

    def __init__(self, n_free: int) -> None:
        self.n_free = n_free
        self.n_bound = 0
        self.atoms: list[tuple[str, tuple[int, ...]]] = []

    def fresh_bound(self) -> int:
        self.n_bound += 1
        return self.n_free + self.n_bound - 1

    def add_atom(self, name: str, scope: Sequence[int]) -> None:
        self.atoms.append((name, tuple(scope)))

    def graft(self, sub: PpsFormula, free_map: Sequence[int]) -> None:
        """Embed sub, mapping its free variables onto existing variables."""
        if len(free_map) != sub.n_free:
            raise ValueError("free_map length must match the subformula's free count")
        bound_map = {sub.n_free + t: self.fresh_bound() for t in range(sub.n_bound)}
        for name, scope in sub.atoms:
            self.add_atom(
                name, tuple(free_map[v] if v < sub.n_free else bound_map[v] for v in scope)
            )

    def build(self) -> PpsFormula:
        return PpsFormula(self.n_free, self.n_bound, tuple(self.atoms))


def _flip_deltas(formula: PpsFormula) -> PpsFormula:
    swap = {"delta0": "delta1", "delta1": "delta0"}
    return PpsFormula(
        formula.n_free,
        formula.n_bound,
        tuple((swap.get(name, name), scope) for name, scope in formula.atoms),
    )


def _base_registry(family: Sequence[PBFunction]) -> dict[str, PBFunction]:
    registry = {f"f{i}": f for i, f in enumerate(family)}
    registry["delta0"] = DELTA0
    registry["delta1"] = DELTA1
    return registry


def _verify_formula(
    formula: PpsFormula, registry: Mapping[str, PBFunction], claimed: PBFunction, what: str
) -> None:
    actual = eval_pps(formula, registry)
    if actual.table != claimed.table:
        raise GadgetError(
            f"{what}: formula evaluates to {actual.table}, construction claims {claimed.table}"
        )


# ---------------------------------------------------------------------------
# Symmetrization


def symmetrize(
    f: PBFunction, mode: int, up: Optional[PBFunction] = None
) -> tuple[PBFunction, PropertyReport]:
    """Build a symmetric binary function from f, three ways.

    Mode 1 squares away asymmetry of a non-lsm f; mode 2 convolves an lsm
    f with itself; mode 3 breaks the Ising symmetry of an lsm Ising f
    using a strictly increasing permissive unary.
    """
    if f.arity != 2:
        raise GadgetError(f"symmetrize needs a binary function, got arity {f.arity}")
    if is_trivial_binary(f):
        raise GadgetError("symmetrize needs a nontrivial function")
    registry = {"f": f}
    if mode == 1:
        if is_lsm(f):
            raise GadgetError("mode 1 needs a non-lsm function")
        builder = _Builder(2)
        builder.add_atom("f", (0, 1))
        builder.add_atom("f", (1, 0))
        required = {"symmetric": True, "lsm": False}
    elif mode == 2:
        if not is_lsm(f):
            raise GadgetError("mode 2 needs an lsm function")
        builder = _Builder(2)
        z = builder.fresh_bound()
        builder.add_atom("f", (0, z))
        builder.add_atom("f", (1, z))
        required = {"symmetric": True, "lsm": True}
    elif mode == 3:
        if not is_lsm(f):
            raise GadgetError("mode 3 needs an lsm function")
        a, b, c, d = f.table
        if a != d or b != c:
            raise GadgetError("mode 3 needs an Ising function (equal diagonals, equal off-diagonals)")
        if up is None or not is_increasing_permissive_unary(up):
            raise GadgetError("mode 3 needs a strictly increasing permissive unary")
        registry["up"] = up
        builder = _Builder(2)
        z = builder.fresh_bound()
        builder.add_atom("f", (0, z))
        builder.add_atom("f", (1, z))
        builder.add_atom("up", (z,))
        required = {"symmetric": True, "lsm": True, "ising": False}
    else:
        raise GadgetError(f"mode must be 1, 2, or 3, got {mode!r}")
    formula = builder.build()
    result = eval_pps(formula, registry)
    report = property_report(result)
    if report.trivial:
        raise GadgetError(f"mode {mode} output is trivial: {result.table}")
    for key, want in required.items():
        if getattr(report, key) != want:
            raise GadgetError(f"mode {mode} output fails {key}={want}: {result.table}")
    return result, report


# ---------------------------------------------------------------------------
# Row/column sums with opposite Fourier signs


@dataclass(frozen=True)
class UpDownPair:
    up: PBFunction
    down: PBFunction
    swapped: bool
    up_formula: PpsFormula
    down_formula: PpsFormula
    registry: Mapping[str, PBFunction]


def make_up_down(f: PBFunction) -> UpDownPair:
    """Row and column sums of f, argument-swapped so they strictly slope.

    Needs the Fourier coefficients at (0,1) and (1,0) to have strictly
    opposite signs; after an argument swap that makes the (0,1)
    coefficient positive, the row sums strictly increase and the column
    sums strictly decrease.
    """
    if f.arity != 2:
        raise GadgetError(f"make_up_down needs a binary function, got arity {f.arity}")
    F = fourier(f)
    c01, c10 = F((0, 1)), F((1, 0))
    if c01 * c10 >= 0:
        raise GadgetError(
            f"Fourier coefficients must have strictly opposite signs: F(0,1)={c01}, F(1,0)={c10}"
        )
    swapped = c01 < 0
    g = permute(f, (1, 0)) if swapped else f
    up = sum_out(g, 1)
    down = sum_out(g, 0)
    up_formula = PpsFormula(1, 1, ((("f", (1, 0)) if swapped else ("f", (0, 1))),))
    down_formula = PpsFormula(1, 1, ((("f", (0, 1)) if swapped else ("f", (1, 0))),))
    registry = {"f": f}
    if not is_increasing_permissive_unary(up):
        raise GadgetError(f"row sums {up.table} are not strictly increasing permissive")
    if not is_decreasing_permissive_unary(down):
        raise GadgetError(f"column sums {down.table} are not strictly decreasing permissive")
    _verify_formula(up_formula, registry, up, "make_up_down up")
    _verify_formula(down_formula, registry, down, "make_up_down down")
    return UpDownPair(up, down, swapped, up_formula, down_formula, registry)


# ---------------------------------------------------------------------------
# Extracting a nontrivial non-lsm binary function


@dataclass(frozen=True)
class NonLsmBinary:
    function: PBFunction
    route: str  # "from_f", "from_g", or "composed"
    formula: PpsFormula
    registry: Mapping[str, PBFunction]


def _lsm_violation_pair(f: PBFunction) -> Optional[tuple[int, int]]:
    t = f.table
    n = len(t)
    for a in range(n):
        for b in range(n):
            if t[a] * t[b] > t[a | b] * t[a & b]:
                return a, b
    return None


def _pin_identify_formula(name: str, f: PBFunction, a: tuple[int, ...], b: tuple[int, ...]) -> PpsFormula:
    """h(x, y): coordinates with (a=0, b=1) read x, (a=1, b=0) read y, agreements pinned."""
    builder = _Builder(2)
    scope = []
    for i in range(f.arity):
        if a[i] == b[i]:
            v = builder.fresh_bound()
            builder.add_atom(f"delta{a[i]}", (v,))
            scope.append(v)
        elif a[i] == 0:
            scope.append(0)
        else:
            scope.append(1)
    builder.add_atom(name, tuple(scope))
    return builder.build()


def extract_nonlsm_binary(f: PBFunction, g: PBFunction) -> NonLsmBinary:
    """A nontrivial non-lsm binary function from a non-lsm f and a nontrivial binary g.

    Pin and identify f down to a binary violator; if that is a weighted
    NEQ, either g itself is non-lsm or composing g with the violator
    flips its asymmetry into a nontrivial non-lsm function.
    """
    if g.arity != 2:
        raise GadgetError(f"g must be binary, got arity {g.arity}")
    if is_trivial_binary(g):
        raise GadgetError("g must be nontrivial")
    witness = _lsm_violation_pair(f)
    if witness is None:
        raise GadgetError("f is log-supermodular; no violating pair exists")
    a, b = bits_of(witness[0], f.arity), bits_of(witness[1], f.arity)
    registry = {"f": f, "g": g, "delta0": DELTA0, "delta1": DELTA1}
    f_prime_formula = _pin_identify_formula("f", f, a, b)
    f_prime = eval_pps(f_prime_formula, registry)
    if f_prime.table[0] != 0 or f_prime.table[3] != 0:
        result, route, formula = f_prime, "from_f", f_prime_formula
    elif not is_lsm(g):
        result, route, formula = g, "from_g", PpsFormula(2, 0, (("g", (0, 1)),))
    else:
        builder = _Builder(2)
        z = builder.fresh_bound()
        builder.add_atom("g", (0, z))
        builder.graft(f_prime_formula, (z, 1))
        formula = builder.build()
        result = eval_pps(formula, registry)
        route = "composed"
    ra, rb, rc, rd = result.table
    if ra * rd >= rb * rc:
        raise GadgetError(f"extracted function {result.table} is log-supermodular")
    if is_trivial_binary(result):
        raise GadgetError(f"extracted function {result.table} is trivial")
    _verify_formula(formula, registry, result, "extract_nonlsm_binary")
    return NonLsmBinary(result, route, formula, registry)


# ---------------------------------------------------------------------------
# Approximate pinning


def approx_pin(u: PBFunction, eps: Fraction) -> tuple[PBFunction, int]:
    """Entrywise power u**k with the off-pin value driven to at most eps.

    u must be a normalized strict unary: (a, 1) with 0 < a < 1 pins
    toward 1, and (1, a) pins toward 0.  k is minimal with a**k <= eps.
    """
    eps = frac(eps)
    if u.arity != 1:
        raise GadgetError(f"approx_pin needs a unary, got arity {u.arity}")
    if eps <= 0:
        raise GadgetError(f"tolerance must be positive, got {eps}")
    lo, hi = u.table
    if hi == 1 and 0 < lo < 1:
        off = lo
        pin_high = True
    elif lo == 1 and 0 < hi < 1:
        off = hi
        pin_high = False
    else:
        raise GadgetError(
            f"unary {u.table} is not normalized strictly monotone (one entry 1, the other in (0,1))"
        )
    # Jump below the answer with float logs, then settle upward exactly;
    # floor(log ratio) - 2 always undershoots the minimal exponent.
    k = 1
    value = off
    if eps < 1:
        try:
            est = math.floor(math.log(float(eps)) / math.log(float(off)))
        except (OverflowError, ValueError, ZeroDivisionError):
            est = 1
        if est > 4:
            k = est - 2
            value = off**k
    while value > eps:
        value *= off
        k += 1
    table = (value, Fraction(1)) if pin_high else (Fraction(1), value)
    return PBFunction(1, table), k


def normalize_unary(u: PBFunction, direction: str) -> tuple[PBFunction, Fraction]:
    """Scale a strict permissive unary so the approached end equals 1."""
    if u.arity != 1:
        raise GadgetError(f"normalize_unary needs a unary, got arity {u.arity}")
    if direction == "up":
        if not is_increasing_permissive_unary(u):
            raise GadgetError(f"{u.table} is not strictly increasing permissive")
        scale = u.table[1]
    elif direction == "down":
        if not is_decreasing_permissive_unary(u):
            raise GadgetError(f"{u.table} is not strictly decreasing permissive")
        scale = u.table[0]
    else:
        raise GadgetError(f"direction must be 'up' or 'down', got {direction!r}")
    return PBFunction(1, (u.table[0] / scale, u.table[1] / scale)), scale


# ---------------------------------------------------------------------------
# Pinning analysis over a family


class PinningTag(enum.Enum):
    BOTH_UNARIES = "BothUnaries"
    MONOTONE_FAMILY = "MonotoneFamily"
    FLIPPED_MONOTONE_FAMILY = "FlippedMonotoneFamily"
    ALL_PURE = "AllPure"


@dataclass(frozen=True)
class PinningVerdict:
    tag: PinningTag
    case: int
    family: tuple[PBFunction, ...]
    up: Optional[PBFunction] = None
    down: Optional[PBFunction] = None
    up_formula: Optional[PpsFormula] = None
    down_formula: Optional[PpsFormula] = None
    witness_index: Optional[int] = None

    def registry(self) -> dict[str, PBFunction]:
        return _base_registry(self.family)

    def __post_init__(self) -> None:
        registry = self.registry()
        if self.tag is PinningTag.BOTH_UNARIES:
            if self.up is None or self.down is None:
                raise GadgetError("BothUnaries needs both unaries")
            if not is_increasing_permissive_unary(self.up):
                raise GadgetError(f"up witness {self.up.table} is not strictly increasing permissive")
            if not is_decreasing_permissive_unary(self.down):
                raise GadgetError(f"down witness {self.down.table} is not strictly decreasing permissive")
            if self.up_formula is None or self.down_formula is None:
                raise GadgetError("BothUnaries needs construction formulas")
            _verify_formula(self.up_formula, registry, self.up, "pinning up witness")
            _verify_formula(self.down_formula, registry, self.down, "pinning down witness")
        elif self.tag is PinningTag.MONOTONE_FAMILY:
            if not all(is_monotone_on_support(f) for f in self.family):
                raise GadgetError("MonotoneFamily needs every function monotone on its support")
            if not all(is_support_join_closed(f) for f in self.family):
                raise GadgetError("MonotoneFamily needs every support join-closed")
            if self.witness_index is None or is_monotone_on_support(
                bit_flip(self.family[self.witness_index])
            ):
                raise GadgetError("MonotoneFamily needs a witness whose flip is not monotone on support")
        elif self.tag is PinningTag.FLIPPED_MONOTONE_FAMILY:
            flipped = [bit_flip(f) for f in self.family]
            if not all(is_monotone_on_support(f) for f in flipped):
                raise GadgetError("FlippedMonotoneFamily needs every flipped function monotone on support")
            if not all(is_support_join_closed(f) for f in flipped):
                raise GadgetError("FlippedMonotoneFamily needs every flipped support join-closed")
            if self.witness_index is None or is_monotone_on_support(self.family[self.witness_index]):
                raise GadgetError("FlippedMonotoneFamily needs a witness not monotone on support")
        elif self.tag is PinningTag.ALL_PURE:
            for f in self.family:
                pure, _ = pure_value(f)
                if not pure:
                    raise GadgetError(f"AllPure verdict but {f.table} is not pure")


def _first_pair(f: PBFunction, accept) -> Optional[tuple[int, int]]:
    """Lexicographically least index pair (a, b) accepted by the predicate."""
    n = len(f.table)
    for a in range(n):
        for b in range(n):
            if accept(a, b):
                return a, b
    return None


def _unary_sum_formula(name: str, f: PBFunction, a_idx: int, b_idx: int) -> PpsFormula:
    """u(x) = f at the pair's lower point for x=0 and upper point for x=1."""
    a, b = bits_of(a_idx, f.arity), bits_of(b_idx, f.arity)
    builder = _Builder(1)
    scope = []
    for i in range(f.arity):
        if a[i] == b[i]:
            v = builder.fresh_bound()
            builder.add_atom(f"delta{a[i]}", (v,))
            scope.append(v)
        else:
            scope.append(0)
    builder.add_atom(name, tuple(scope))
    return builder.build()


def _decreasing_from_mos_violation(
    name: str, f: PBFunction
) -> Optional[tuple[PBFunction, PpsFormula]]:
    t = f.table
    pair = _first_pair(f, lambda a, b: (a & b) == a and t[a] > t[b] > 0)
    if pair is None:
        return None
    formula = _unary_sum_formula(name, f, pair[0], pair[1])
    return PBFunction(1, (t[pair[0]], t[pair[1]])), formula


def _increasing_from_flip_violation(
    name: str, f: PBFunction
) -> Optional[tuple[PBFunction, PpsFormula]]:
    """An increasing pair c <= d with 0 < f(c) < f(d); exists iff flip(f) is not mos."""
    t = f.table
    pair = _first_pair(f, lambda c, d: (c & d) == c and 0 < t[c] < t[d])
    if pair is None:
        return None
    formula = _unary_sum_formula(name, f, pair[0], pair[1])
    return PBFunction(1, (t[pair[0]], t[pair[1]])), formula


def _case2(
    family: Sequence[PBFunction], registry: Mapping[str, PBFunction]
) -> tuple[str, object]:
    """All functions mos, some flip not mos: monotone family or both unaries."""
    if all(is_support_join_closed(f) for f in family):
        witness = next(
            i for i, f in enumerate(family) if not is_monotone_on_support(bit_flip(f))
        )
        return "monotone", witness
    up_built = next(
        built
        for i, f in enumerate(family)
        if (built := _increasing_from_flip_violation(f"f{i}", f)) is not None
    )
    up, up_formula = up_built
    gi, g = next((i, f) for i, f in enumerate(family) if not is_support_join_closed(f))
    t = g.table
    pair = _first_pair(g, lambda a, b: t[a] != 0 and t[b] != 0 and t[a | b] == 0)
    assert pair is not None
    a, b = bits_of(pair[0], g.arity), bits_of(pair[1], g.arity)
    h_formula = _pin_identify_formula(f"f{gi}", g, a, b)
    h = eval_pps(h_formula, registry)
    if h.table[1] == 0 or h.table[2] == 0 or h.table[3] != 0:
        raise GadgetError(f"join-gap gadget has unexpected shape {h.table}")
    builder = _Builder(1)
    y = builder.fresh_bound()
    builder.graft(h_formula, (0, y))
    builder.graft(h_formula, (y, 0))
    builder.graft(up_formula, (y,))
    down_formula = builder.build()
    down = eval_pps(down_formula, registry)
    return "both", (up, up_formula, down, down_formula)


def pinning_analysis(family: Sequence[PBFunction]) -> PinningVerdict:
    """Case split on support-monotonicity of a family and its bit-flips.

    Either both a strictly increasing and a strictly decreasing
    permissive unary are constructed over the family with pins, or the
    family is certified monotone, flipped-monotone, or all-pure.
    """
    family = tuple(family)
    registry = _base_registry(family)
    mos = [is_monotone_on_support(f) for f in family]
    mos_flip = [is_monotone_on_support(bit_flip(f)) for f in family]
    if not all(mos) and not all(mos_flip):
        fi = mos.index(False)
        built_down = _decreasing_from_mos_violation(f"f{fi}", family[fi])
        gi = mos_flip.index(False)
        built_up = _increasing_from_flip_violation(f"f{gi}", family[gi])
        assert built_down is not None and built_up is not None
        down, down_formula = built_down
        up, up_formula = built_up
        return PinningVerdict(
            PinningTag.BOTH_UNARIES,
            1,
            family,
            up=up,
            down=down,
            up_formula=up_formula,
            down_formula=down_formula,
        )
    if all(mos) and not all(mos_flip):
        kind, payload = _case2(family, registry)
        if kind == "monotone":
            return PinningVerdict(
                PinningTag.MONOTONE_FAMILY, 2, family, witness_index=payload
            )
        up, up_formula, down, down_formula = payload
        return PinningVerdict(
            PinningTag.BOTH_UNARIES,
            2,
            family,
            up=up,
            down=down,
            up_formula=up_formula,
            down_formula=down_formula,
        )
    if all(mos_flip) and not all(mos):
        flipped = tuple(bit_flip(f) for f in family)
        kind, payload = _case2(flipped, _base_registry(flipped))
        if kind == "monotone":
            return PinningVerdict(
                PinningTag.FLIPPED_MONOTONE_FAMILY, 3, family, witness_index=payload
            )
        up_p, up_p_formula, down_p, down_p_formula = payload
        return PinningVerdict(
            PinningTag.BOTH_UNARIES,
            3,
            family,
            up=bit_flip(down_p),
            down=bit_flip(up_p),
            up_formula=_flip_deltas(down_p_formula),
            down_formula=_flip_deltas(up_p_formula),
        )
    if all(pure_value(f)[0] for f in family):
        return PinningVerdict(PinningTag.ALL_PURE, 4, family)
    gi, g = next((i, f) for i, f in enumerate(family) if not pure_value(f)[0])
    t = g.table
    pair = _first_pair(g, lambda a, b: 0 < t[a] < t[b])
    assert pair is not None
    a, b = bits_of(pair[0], g.arity), bits_of(pair[1], g.arity)
    h_formula = _pin_identify_formula(f"f{gi}", g, a, b)
    h = eval_pps(h_formula, registry)
    if h.table[0] != 0 or h.table[3] != 0 or not 0 < h.table[1] < h.table[2]:
        raise GadgetError(f"pure-gap gadget has unexpected shape {h.table}")
    up_builder = _Builder(1)
    y = up_builder.fresh_bound()
    up_builder.graft(h_formula, (0, y))
    up_builder.graft(h_formula, (0, y))
    up_builder.graft(h_formula, (y, 0))
    up_formula = up_builder.build()
    down_builder = _Builder(1)
    y = down_builder.fresh_bound()
    down_builder.graft(h_formula, (0, y))
    down_builder.graft(h_formula, (y, 0))
    down_builder.graft(h_formula, (y, 0))
    down_formula = down_builder.build()
    return PinningVerdict(
        PinningTag.BOTH_UNARIES,
        4,
        family,
        up=eval_pps(up_formula, registry),
        down=eval_pps(down_formula, registry),
        up_formula=up_formula,
        down_formula=down_formula,
    )
