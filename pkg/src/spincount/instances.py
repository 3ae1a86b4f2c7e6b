"""Constraint-system instances, text format, and exact partition functions.

An instance is a list of constraints over named Boolean variables, each
constraint applying a named table to a scope of variables (repeats allowed).
The partition function is the sum over all assignments of the product of
constraint values.

The text format is line oriented:

    # comment
    fun <name> <arity> <values...>     values MSB-first, integers or p/q
    con <name> <var> <var> ...

Variables are declared implicitly on first use.  Negative values in a ``fun``
line produce a signed table; signed registries are accepted only by
``z_exact`` and ``holographic_transform``.

Brute-force evaluators take an optional cap on the variable count; the
environment variable SPINCOUNT_BRUTE_CAP overrides the defaults (24 for
``z_exact``, 12 for ``near_assignment_total``).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

from .funcs import (
    EQ3,
    NEQ,
    CapacityError,
    PBFunction,
    SignedTable,
    product_form,
)

__all__ = [
    "BRUTE_CAP_ENV",
    "Z_EXACT_CAP",
    "NEAR_CAP",
    "InstanceError",
    "Table",
    "CspInstance",
    "HolantInstance",
    "parse",
    "serialize",
    "z_exact",
    "z_product_type",
    "HolantConversion",
    "to_holant",
    "holographic_transform",
    "near_assignment_total",
]

Table = Union[PBFunction, SignedTable]

BRUTE_CAP_ENV = "SPINCOUNT_BRUTE_CAP"
Z_EXACT_CAP = 24
NEAR_CAP = 12
# Conversion certificates are brute-force checked only below this size.
_CERT_CAP = 12


class InstanceError(ValueError):
    """Malformed instance text or an instance violating an operation's contract."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _resolve_cap(explicit: Optional[int], default: int) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get(BRUTE_CAP_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InstanceError(f"{BRUTE_CAP_ENV} must be an integer, got {raw!r}")


_NAME_OK = re.compile(r"^\S+$")


def _check_name(kind: str, name: str) -> None:
    if not _NAME_OK.match(name) or "#" in name:
        raise InstanceError(f"bad {kind} name {name!r}")


@dataclass(frozen=True)
class CspInstance:
    """Immutable constraint system: variables, named tables, constraints.

    ``registry`` is an ordered tuple of (name, table) pairs; ``constraints``
    is a tuple of (scope, function name) pairs where a scope is a tuple of
    variable names with repeats allowed.
    """

    variables: tuple[str, ...]
    registry: tuple[tuple[str, Table], ...]
    constraints: tuple[tuple[tuple[str, ...], str], ...]

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        registry = tuple((name, fn) for name, fn in self.registry)
        constraints = tuple((tuple(scope), name) for scope, name in self.constraints)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "registry", registry)
        object.__setattr__(self, "constraints", constraints)
        if len(set(variables)) != len(variables):
            raise InstanceError("duplicate variable names")
        for v in variables:
            _check_name("variable", v)
        seen: dict[str, Table] = {}
        for name, fn in registry:
            _check_name("function", name)
            if name in seen:
                raise InstanceError(f"duplicate function name {name!r}")
            if not isinstance(fn, (PBFunction, SignedTable)):
                raise InstanceError(f"registry entry {name!r} is not a table")
            seen[name] = fn
        var_set = set(variables)
        for scope, name in constraints:
            if name not in seen:
                raise InstanceError(f"unknown function name {name!r}")
            if len(scope) != seen[name].arity:
                raise InstanceError(
                    f"scope {scope!r} has {len(scope)} variables but {name!r} has arity {seen[name].arity}"
                )
            for v in scope:
                if v not in var_set:
                    raise InstanceError(f"undeclared variable {v!r} in scope")

    @classmethod
    def build(
        cls,
        registry: Mapping[str, Table] | Iterable[tuple[str, Table]],
        constraints: Iterable[tuple[Sequence[str], str]],
        variables: Optional[Sequence[str]] = None,
    ) -> "CspInstance":
        """Assemble an instance, inferring variables in first-use order."""
        reg_pairs = tuple(registry.items() if isinstance(registry, Mapping) else registry)
        cons = tuple((tuple(scope), name) for scope, name in constraints)
        if variables is None:
            ordered: list[str] = []
            for scope, _ in cons:
                for v in scope:
                    if v not in ordered:
                        ordered.append(v)
            variables = ordered
        return cls(tuple(variables), reg_pairs, cons)

    def registry_map(self) -> dict[str, Table]:
        return dict(self.registry)

    def degrees(self) -> dict[str, int]:
        out = {v: 0 for v in self.variables}
        for scope, _ in self.constraints:
            for v in scope:
                out[v] += 1
        return out

    def has_signed(self) -> bool:
        return any(isinstance(fn, SignedTable) for _, fn in self.registry)


@dataclass(frozen=True)
class HolantInstance:
    """A CspInstance in which every variable occurs in exactly two slots."""

    csp: CspInstance

    def __post_init__(self) -> None:
        bad = {v: d for v, d in self.csp.degrees().items() if d != 2}
        if bad:
            raise InstanceError(f"not a holant instance; occurrence counts off at {bad!r}")

    @classmethod
    def build(
        cls,
        registry: Mapping[str, Table] | Iterable[tuple[str, Table]],
        constraints: Iterable[tuple[Sequence[str], str]],
        variables: Optional[Sequence[str]] = None,
    ) -> "HolantInstance":
        return cls(CspInstance.build(registry, constraints, variables))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.csp.variables

    @property
    def registry(self) -> tuple[tuple[str, Table], ...]:
        return self.csp.registry

    @property
    def constraints(self) -> tuple[tuple[tuple[str, ...], str], ...]:
        return self.csp.constraints

    def registry_map(self) -> dict[str, Table]:
        return self.csp.registry_map()

    def has_signed(self) -> bool:
        return self.csp.has_signed()


Instance = Union[CspInstance, HolantInstance]


def _as_csp(inst: Instance) -> CspInstance:
    return inst.csp if isinstance(inst, HolantInstance) else inst


# ---------------------------------------------------------------------------
# Text format


_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _parse_value(token: str, line: int) -> Fraction:
    if not _RATIONAL.match(token):
        raise InstanceError(f"malformed rational {token!r}", line)
    return Fraction(token)


def parse(text: str) -> CspInstance:
    """Parse the line format; errors carry the offending line number."""
    registry: list[tuple[str, Table]] = []
    names: dict[str, Table] = {}
    constraints: list[tuple[tuple[str, ...], str]] = []
    variables: list[str] = []
    seen_vars: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "fun":
            if len(tokens) < 3:
                raise InstanceError("fun needs a name and an arity", lineno)
            name = tokens[1]
            if name in names:
                raise InstanceError(f"duplicate function name {name!r}", lineno)
            try:
                arity = int(tokens[2])
            except ValueError:
                raise InstanceError(f"bad arity {tokens[2]!r}", lineno)
            if arity < 1:
                raise InstanceError(f"bad arity {arity}", lineno)
            values = [_parse_value(t, lineno) for t in tokens[3:]]
            if len(values) != 1 << arity:
                raise InstanceError(
                    f"function {name!r} of arity {arity} needs {1 << arity} values, got {len(values)}",
                    lineno,
                )
            fn: Table
            if any(v < 0 for v in values):
                fn = SignedTable(arity, tuple(values))
            else:
                fn = PBFunction(arity, tuple(values))
            registry.append((name, fn))
            names[name] = fn
        elif kind == "con":
            if len(tokens) < 2:
                raise InstanceError("con needs a function name", lineno)
            name = tokens[1]
            if name not in names:
                raise InstanceError(f"unknown function name {name!r}", lineno)
            scope = tuple(tokens[2:])
            if len(scope) != names[name].arity:
                raise InstanceError(
                    f"scope has {len(scope)} variables but {name!r} has arity {names[name].arity}",
                    lineno,
                )
            for v in scope:
                if v not in seen_vars:
                    seen_vars.add(v)
                    variables.append(v)
            constraints.append((scope, name))
        else:
            raise InstanceError(f"unknown directive {kind!r}", lineno)
    return CspInstance(tuple(variables), tuple(registry), tuple(constraints))


def serialize(inst: Instance) -> str:
    """Emit the line format; parse(serialize(x)) reproduces x for x without unused variables."""
    csp = _as_csp(inst)
    lines = []
    for name, fn in csp.registry:
        values = " ".join(str(v) for v in fn.table)
        lines.append(f"fun {name} {fn.arity} {values}")
    for scope, name in csp.constraints:
        lines.append(f"con {name} {' '.join(scope)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Exact evaluation


def z_exact(inst: Instance, cap: Optional[int] = None) -> Fraction:
    """Brute-force partition function; exact, signed registries allowed."""
    csp = _as_csp(inst)
    limit = _resolve_cap(cap, Z_EXACT_CAP)
    n = len(csp.variables)
    if n > limit:
        raise CapacityError(f"{n} variables exceeds the brute-force cap {limit}")
    position = {v: n - 1 - i for i, v in enumerate(csp.variables)}
    names = csp.registry_map()
    compiled: list[tuple[tuple[int, ...], list[int]]] = []
    denominator = 1
    for scope, name in csp.constraints:
        fn = names[name]
        scale = lcm(*(v.denominator for v in fn.table))
        denominator *= scale
        int_table = [int(v * scale) for v in fn.table]
        positions = tuple(position[v] for v in scope)
        compiled.append((positions, int_table))
    total = 0
    for mask in range(1 << n):
        prod = 1
        for positions, int_table in compiled:
            idx = 0
            for p in positions:
                idx = (idx << 1) | ((mask >> p) & 1)
            prod *= int_table[idx]
            if not prod:
                break
        total += prod
    return Fraction(total, denominator)


class _ParityUnion:
    """Union-find over variable indices with edge parities (0 equal, 1 unequal)."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        p = 0
        for node in reversed(path):
            p ^= self.parity[node]
            self.parent[node] = root
            self.parity[node] = p
        return root, self.parity[path[0]] if path else 0

    def union(self, x: int, y: int, rel: int) -> bool:
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        return True


def z_product_type(inst: Instance) -> Fraction:
    """Polynomial-time partition function for product-type registries.

    Factors every constraint into a constant, unary weights, and equality or
    disequality couplings, then sums each coupled component in two terms.
    """
    csp = _as_csp(inst)
    if csp.has_signed():
        raise InstanceError("signed tables are not product-type inputs")
    names = csp.registry_map()
    forms = {}
    for name in {name for _, name in csp.constraints}:
        form = product_form(names[name])
        if form is None:
            raise InstanceError(f"function {name!r} is not product-type")
        forms[name] = form
    n = len(csp.variables)
    index = {v: i for i, v in enumerate(csp.variables)}
    weights: list[tuple[Fraction, Fraction]] = [(Fraction(1), Fraction(1))] * n
    union = _ParityUnion(n)
    constant = Fraction(1)
    feasible = True
    for scope, name in csp.constraints:
        form = forms[name]
        constant *= form.constant
        for coord, u in form.unaries:
            i = index[scope[coord]]
            w0, w1 = weights[i]
            weights[i] = (w0 * u.table[0], w1 * u.table[1])
        for a, b in form.eq_pairs:
            feasible &= union.union(index[scope[a]], index[scope[b]], 0)
        for a, b in form.neq_pairs:
            feasible &= union.union(index[scope[a]], index[scope[b]], 1)
    if constant == 0 or not feasible:
        return Fraction(0)
    components: dict[int, list[int]] = {}
    for i in range(n):
        root, _ = union.find(i)
        components.setdefault(root, []).append(i)
    total = Fraction(1)
    for members in components.values():
        term0 = Fraction(1)
        term1 = Fraction(1)
        for i in members:
            _, p = union.find(i)
            w0, w1 = weights[i]
            term0 *= w0 if p == 0 else w1
            term1 *= w1 if p == 0 else w0
        total *= term0 + term1
    return constant * total


# ---------------------------------------------------------------------------
# Holant conversion


def _fresh_prefix(base: str, taken: Iterable[str], tag: str = "eq") -> str:
    """A generated-name prefix that cannot collide with existing names."""
    taken = set(taken)
    prefix = f"{base}.{tag}."
    while any(t.startswith(prefix) for t in taken):
        prefix = prefix[:-1] + "q."
    return prefix


def _fresh_fn_name(base: str, registry: Mapping[str, Table], table: PBFunction) -> str:
    if base not in registry or registry[base] == table:
        return base
    i = 2
    while f"{base}.{i}" in registry:
        i += 1
    return f"{base}.{i}"


@dataclass(frozen=True)
class HolantConversion:
    """A holant form of an instance plus a brute-force equality certificate.

    The certificate is populated only at desk scale (both sides within the
    certificate cap); ``verified`` reports whether it was checked.
    """

    holant: HolantInstance
    z_source: Optional[Fraction]
    z_holant: Optional[Fraction]
    verified: bool


def to_holant(inst: Instance, cap: Optional[int] = None) -> HolantConversion:
    """Rewire every variable to occur exactly twice, preserving the partition function.

    Degree-2 variables pass through.  A degree-d variable with d >= 3 is
    renamed per occurrence and joined by a left-leaning chain of d-2
    three-way equality junctions; degree 1 gets one junction with a folded
    free end; degree 0 gets two folded junctions (value 2, matching the free
    variable's sum).
    """
    csp = _as_csp(inst)
    if csp.has_signed():
        raise InstanceError("signed registries cannot be converted")
    degrees = csp.degrees()
    if all(d == 2 for d in degrees.values()):
        holant = HolantInstance(csp)
        return _certify(csp, holant, cap)
    eq_name = _fresh_fn_name("eq3", csp.registry_map(), EQ3)
    registry = list(csp.registry)
    if eq_name not in csp.registry_map():
        registry.append((eq_name, EQ3))
    slot_names: dict[tuple[int, int], str] = {}
    extra: list[tuple[tuple[str, ...], str]] = []
    all_names = list(csp.variables)
    for v in csp.variables:
        slots = [
            (ci, pos)
            for ci, (scope, _) in enumerate(csp.constraints)
            for pos, w in enumerate(scope)
            if w == v
        ]
        d = len(slots)
        if d == 2:
            continue
        prefix = _fresh_prefix(v, all_names)
        if d == 0:
            extra.append(((v, f"{prefix}1", f"{prefix}1"), eq_name))
            extra.append(((v, f"{prefix}2", f"{prefix}2"), eq_name))
            all_names += [f"{prefix}1", f"{prefix}2"]
        elif d == 1:
            extra.append(((v, f"{prefix}1", f"{prefix}1"), eq_name))
            all_names.append(f"{prefix}1")
        else:
            ends = [f"{prefix}{i + 1}" for i in range(d)]
            link = [f"{prefix}{d + i}" for i in range(1, d - 2)]
            for i, slot in enumerate(slots):
                slot_names[slot] = ends[i]
            for i in range(1, d - 1):
                first = ends[0] if i == 1 else link[i - 2]
                third = ends[d - 1] if i == d - 2 else link[i - 1]
                extra.append(((first, ends[i], third), eq_name))
            all_names += ends + link
    constraints = []
    for ci, (scope, name) in enumerate(csp.constraints):
        new_scope = tuple(slot_names.get((ci, pos), v) for pos, v in enumerate(scope))
        constraints.append((new_scope, name))
    constraints += extra
    holant = HolantInstance(CspInstance.build(tuple(registry), constraints))
    return _certify(csp, holant, cap)


def _certify(csp: CspInstance, holant: HolantInstance, cap: Optional[int]) -> HolantConversion:
    limit = min(_resolve_cap(cap, Z_EXACT_CAP), _CERT_CAP)
    if len(csp.variables) <= limit and len(holant.variables) <= limit:
        z_src = z_exact(csp, limit)
        z_hol = z_exact(holant.csp, limit)
        assert z_src == z_hol, f"conversion changed the partition function: {z_src} != {z_hol}"
        return HolantConversion(holant, z_src, z_hol, True)
    return HolantConversion(holant, None, None, False)


# ---------------------------------------------------------------------------
# Holographic transformation


def _transform_table(fn: Table, m: Sequence[Sequence[Fraction]]) -> SignedTable:
    k = fn.arity
    table = list(fn.table)
    for axis in range(k):
        stride = 1 << (k - 1 - axis)
        out = table[:]
        for i in range(1 << k):
            if i & stride:
                continue
            lo, hi = table[i], table[i | stride]
            out[i] = m[0][0] * lo + m[0][1] * hi
            out[i | stride] = m[1][0] * lo + m[1][1] * hi
        table = out
    return SignedTable(k, tuple(table))


def holographic_transform(
    inst: HolantInstance, matrix: Sequence[Sequence[object]]
) -> HolantInstance:
    """Replace every table by its image under the matrix applied to each axis.

    Requires matrix * matrix^T to be a nonzero scalar multiple of the
    identity; the partition function then changes by scalar**n for an
    n-variable instance.
    """
    m = [[Fraction(matrix[i][j]) for j in range(2)] for i in range(2)]
    c = m[0][0] ** 2 + m[0][1] ** 2
    off = m[0][0] * m[1][0] + m[0][1] * m[1][1]
    c2 = m[1][0] ** 2 + m[1][1] ** 2
    if off != 0 or c != c2 or c == 0:
        raise InstanceError("matrix times its transpose is not a nonzero scalar identity")
    registry = tuple((name, _transform_table(fn, m)) for name, fn in inst.registry)
    return HolantInstance(CspInstance(inst.variables, registry, inst.constraints))


# ---------------------------------------------------------------------------
# Near-assignments


def near_assignment_total(inst: HolantInstance, cap: Optional[int] = None) -> Fraction:
    """Sum, over unordered variable pairs, of the split-and-flip partition functions.

    Each pair {u, v} is evaluated on the instance with u's two occurrences
    split into fresh variables joined by a disequality, and likewise v.
    """
    if inst.has_signed():
        raise InstanceError("signed registries have no near-assignment total")
    csp = inst.csp
    limit = _resolve_cap(cap, NEAR_CAP)
    n = len(csp.variables)
    if n > limit:
        raise CapacityError(f"{n} variables exceeds the near-assignment cap {limit}")
    if n < 2:
        return Fraction(0)
    neq_name = _fresh_fn_name("neq", csp.registry_map(), NEQ)
    registry = list(csp.registry)
    if neq_name not in csp.registry_map():
        registry.append((neq_name, NEQ))
    total = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            split = _split_pair(csp, csp.variables[i], csp.variables[j], neq_name, registry)
            total += z_exact(split, n + 2)
    return total


def _split_pair(
    csp: CspInstance, u: str, v: str, neq_name: str, registry: list[tuple[str, Table]]
) -> CspInstance:
    names = set(csp.variables)
    constraints = []
    seen: dict[str, int] = {u: 0, v: 0}
    renames: dict[str, list[str]] = {}
    for w in (u, v):
        prefix = _fresh_prefix(w, names, "split")
        renames[w] = [f"{prefix}1", f"{prefix}2"]
    for scope, name in csp.constraints:
        new_scope = []
        for w in scope:
            if w in seen:
                new_scope.append(renames[w][seen[w]])
                seen[w] += 1
            else:
                new_scope.append(w)
        constraints.append((tuple(new_scope), name))
    for w in (u, v):
        constraints.append(((renames[w][0], renames[w][1]), neq_name))
    return CspInstance.build(tuple(registry), constraints)
