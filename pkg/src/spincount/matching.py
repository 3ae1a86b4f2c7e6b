"""Perfect-matching reduction and estimators for nonnegative-Fourier binary counting.

The pipeline: lift a binary function to arity 3 along a shared auxiliary
variable, rewrite the instance over normalized Fourier tables (unit value at
the all-zero input, zero on odd-weight inputs), build a weighted multigraph
with one triangle per constraint whose perfect matchings sum exactly to the
partition function, clear denominators into parallel unit edges, and count
perfect matchings either exactly (vertex-elimination with memoization) or by
a seeded insert/delete/slide Markov chain telescoped over vertex removals.

All counts and estimates are exact rationals; randomness enters only through
the chain, and a fixed config seed fixes the estimate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import networkx as nx

from .funcs import (
    XOR3,
    CapacityError,
    PBFunction,
    SignedTable,
    bits_of,
    fourier,
    frac,
    in_cp,
    in_sdp3,
)
from .instances import (
    CspInstance,
    HolantInstance,
    Instance,
    InstanceError,
    to_holant,
)

__all__ = [
    "EDGE_LABELS",
    "EXACT_CAP",
    "Edge",
    "WeightedMultigraph",
    "serialize_graph",
    "EstimatorConfig",
    "EstimateError",
    "sdp3_lift",
    "lift_instance",
    "FourierNormalForm",
    "holant_fourier_form",
    "build_triangle_graph",
    "count_pm_exact",
    "count_npm_exact",
    "integerize",
    "estimate_pm",
    "estimate_z_fpras",
]

EDGE_LABELS = ("within_triangle", "between_triangles", "plain")
EXACT_CAP = 30

_ZERO = Fraction(0)
_ONE = Fraction(1)


class EstimateError(Exception):
    """The chain failed to produce usable samples."""


@dataclass(frozen=True)
class Edge:
    """One multigraph edge; self-loops allowed, weight an exact nonnegative rational."""

    u: str
    v: str
    weight: Fraction
    label: str = "plain"

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", frac(self.weight))
        if self.weight < 0:
            raise ValueError(f"negative edge weight {self.weight}")
        if self.label not in EDGE_LABELS:
            raise ValueError(f"unknown edge label {self.label!r}")


@dataclass(frozen=True)
class WeightedMultigraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        edges = tuple(self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        known = set(vertices)
        for e in edges:
            if e.u not in known or e.v not in known:
                raise ValueError(f"edge {e.u}-{e.v} has an unknown endpoint")


def serialize_graph(g: WeightedMultigraph) -> str:
    lines = [f"v {name}" for name in g.vertices]
    lines += [f"e {e.u} {e.v} {e.weight} {e.label}" for e in g.edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EstimatorConfig:
    """Accuracy target, failure budget, seed, and chain schedule knobs.

    ``exact_cap`` is both the pipeline's crossover to exact counting and the
    telescoping base size.  ``steps_coeff`` scales the chain steps between
    retained samples (about coeff * n * ln n); ``sample_coeff`` scales the
    number of perfect samples kept per telescoping level.
    """

    epsilon: Fraction = Fraction(1, 10)
    delta: Fraction = Fraction(1, 4)
    seed: int = 0
    exact_cap: int = EXACT_CAP
    steps_coeff: int = 2
    sample_coeff: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", frac(self.epsilon))
        object.__setattr__(self, "delta", frac(self.delta))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie strictly between 0 and 1")
        if self.exact_cap < 0 or self.steps_coeff < 1 or self.sample_coeff < 1:
            raise ValueError("bad schedule parameters")


# ---------------------------------------------------------------------------
# Lifting


def sdp3_lift(f: PBFunction) -> PBFunction:
    """Return f'(x, y, z) = f(x xor z, y xor z).

    The Fourier table of f' equals the Fourier table of f at (x, y) gated by
    the even-parity indicator of (x, y, z); this factorization is asserted.
    Both coordinates of f nonnegative in Fourier makes f' zero on odd-weight
    Fourier inputs with nonnegative even-weight coefficients.
    """
    if f.arity != 2:
        raise ValueError(f"lift needs a binary function, got arity {f.arity}")
    table = []
    for i in range(8):
        x, y, z = bits_of(i, 3)
        table.append(f.table[((x ^ z) << 1) | (y ^ z)])
    lifted = PBFunction(3, tuple(table))
    fh = fourier(f).table
    lh = fourier(lifted).table
    for i in range(8):
        x, y, z = bits_of(i, 3)
        assert lh[i] == fh[(x << 1) | y] * XOR3.table[i]
    return lifted


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}.{i}" in taken:
        i += 1
    return f"{base}.{i}"


def _as_csp(inst: Instance) -> CspInstance:
    return inst.csp if isinstance(inst, HolantInstance) else inst


def lift_instance(inst: Instance) -> CspInstance:
    """Rewrite a single-binary-function instance over the lifted ternary function.

    One fresh variable is appended and shared by every constraint; the
    partition function exactly doubles.
    """
    csp = _as_csp(inst)
    used = sorted({name for _, name in csp.constraints})
    if len(used) > 1:
        raise InstanceError(f"lift needs a single constraint function, got {used}")
    names = csp.registry_map()
    registry = list(csp.registry)
    aux = _fresh_name("y", set(csp.variables))
    constraints: list[tuple[tuple[str, ...], str]] = []
    if used:
        fn = names[used[0]]
        if isinstance(fn, SignedTable):
            raise InstanceError("signed registries cannot be lifted")
        if fn.arity != 2:
            raise InstanceError(f"lift needs a binary function, {used[0]!r} has arity {fn.arity}")
        lifted_name = _fresh_name(f"{used[0]}.lift", set(names))
        registry.append((lifted_name, sdp3_lift(fn)))
        for scope, _ in csp.constraints:
            constraints.append(((scope[0], scope[1], aux), lifted_name))
    return CspInstance(csp.variables + (aux,), tuple(registry), tuple(constraints))


# ---------------------------------------------------------------------------
# Fourier normal form


@dataclass(frozen=True)
class FourierNormalForm:
    """Holant instance over normalized Fourier tables plus the tracked constant.

    The source partition function equals ``kappa`` times the holant one;
    ``is_zero`` short-circuits instances that use an all-zero function.
    """

    holant: Optional[HolantInstance]
    kappa: Fraction
    is_zero: bool


def holant_fourier_form(inst: Instance) -> FourierNormalForm:
    """Convert an arity-3 instance to a holant one over normalized Fourier tables.

    Every used function must have nonnegative Fourier coefficients vanishing
    on odd-weight inputs.  Equality junctions introduced by the holant
    conversion are transformed along with everything else (their image is the
    even-parity indicator).
    """
    csp = _as_csp(inst)
    names = csp.registry_map()
    for name in sorted({name for _, name in csp.constraints}):
        fn = names[name]
        if isinstance(fn, SignedTable):
            raise InstanceError("signed registries have no Fourier normal form")
        if fn.arity != 3:
            raise InstanceError(f"function {name!r} has arity {fn.arity}, need 3")
        if fn.is_zero():
            return FourierNormalForm(None, _ZERO, True)
        if not in_sdp3(fn):
            raise InstanceError(
                f"function {name!r} has Fourier mass on odd-weight inputs or negative coefficients"
            )
    hol = to_holant(csp).holant
    used_counts: dict[str, int] = {}
    for _, name in hol.constraints:
        used_counts[name] = used_counts.get(name, 0) + 1
    registry: list[tuple[str, PBFunction]] = []
    constant = _ONE
    for name, fn in hol.registry:
        count = used_counts.get(name)
        if count is None:
            continue
        assert isinstance(fn, PBFunction)
        coeffs = fourier(fn).table
        c = coeffs[0]
        normalized = PBFunction(3, tuple(v / c for v in coeffs))
        assert normalized.table[0] == 1
        assert all(normalized.table[i] == 0 for i in (1, 2, 4, 7))
        registry.append((name, normalized))
        constant *= c ** count
    n_h = len(hol.variables)
    m_h = len(hol.constraints)
    kappa = Fraction(2) ** (3 * m_h - n_h) * constant
    out = HolantInstance(CspInstance(hol.variables, tuple(registry), hol.constraints))
    return FourierNormalForm(out, kappa, False)


# ---------------------------------------------------------------------------
# Triangle gadget


def build_triangle_graph(inst: HolantInstance) -> WeightedMultigraph:
    """Three vertices per constraint; perfect matchings sum to the partition function.

    Within-triangle edges carry the table values at the three even-weight
    inputs with two ones; every variable contributes one unit edge between
    the two slots it occupies (a parallel in-triangle edge when both slots
    belong to the same constraint).
    """
    if inst.has_signed():
        raise InstanceError("signed registries have no triangle graph")
    names = inst.registry_map()
    vertices: list[str] = []
    edges: list[Edge] = []
    for ci, (scope, name) in enumerate(inst.constraints):
        fn = names[name]
        if fn.arity != 3 or fn.table[0] != 1 or any(fn.table[i] != 0 for i in (1, 2, 4, 7)):
            raise InstanceError(
                f"constraint {ci} uses {name!r}, which is not unit-at-zero and zero on odd weight"
            )
        corners = [f"c{ci}.1", f"c{ci}.2", f"c{ci}.3"]
        vertices += corners
        edges.append(Edge(corners[0], corners[1], fn.table[0b110], "within_triangle"))
        edges.append(Edge(corners[0], corners[2], fn.table[0b101], "within_triangle"))
        edges.append(Edge(corners[1], corners[2], fn.table[0b011], "within_triangle"))
    slots: dict[str, list[str]] = {}
    for ci, (scope, _) in enumerate(inst.constraints):
        for pos, v in enumerate(scope):
            slots.setdefault(v, []).append(f"c{ci}.{pos + 1}")
    for v in inst.variables:
        a, b = slots[v]
        edges.append(Edge(a, b, _ONE, "between_triangles"))
    return WeightedMultigraph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# Exact matching counts


def _adjacency(g: WeightedMultigraph) -> list[list[tuple[int, Fraction]]]:
    index = {v: i for i, v in enumerate(g.vertices)}
    acc: dict[tuple[int, int], Fraction] = {}
    for e in g.edges:
        a, b = index[e.u], index[e.v]
        if a == b or e.weight == 0:
            continue
        key = (a, b) if a < b else (b, a)
        acc[key] = acc.get(key, _ZERO) + e.weight
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in g.vertices]
    for (a, b), w in sorted(acc.items()):
        adj[a].append((b, w))
        adj[b].append((a, w))
    return adj


def _count_with_holes(g: WeightedMultigraph, holes: int, cap: int) -> Fraction:
    n = len(g.vertices)
    if n > cap:
        raise CapacityError(f"{n} vertices exceeds the matching-count cap {cap}")
    adj = _adjacency(g)
    memo: dict[tuple[int, int], Fraction] = {}

    def visit(mask: int, k: int) -> Fraction:
        if mask == 0:
            return _ONE if k == 0 else _ZERO
        key = (mask, k)
        cached = memo.get(key)
        if cached is not None:
            return cached
        u = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << u)
        total = visit(rest, k - 1) if k else _ZERO
        for v, w in adj[u]:
            if rest >> v & 1:
                total += w * visit(rest & ~(1 << v), k)
        memo[key] = total
        return total

    return visit((1 << n) - 1, holes)


def count_pm_exact(g: WeightedMultigraph, cap: int = EXACT_CAP) -> Fraction:
    """Total weight of perfect matchings; self-loops never participate."""
    return _count_with_holes(g, 0, cap)


def count_npm_exact(g: WeightedMultigraph, cap: int = EXACT_CAP) -> Fraction:
    """Total weight of matchings leaving exactly two vertices unmatched."""
    return _count_with_holes(g, 2, cap)


# ---------------------------------------------------------------------------
# Integerization


def integerize(g: WeightedMultigraph) -> tuple[WeightedMultigraph, int]:
    """Replace weight-w edges by d*w unit parallel edges, d the weight denominators' lcm.

    Perfect-matching weight scales by d**(n/2) and near-perfect by
    d**(n/2 - 1); both laws are asserted here at desk scale.
    """
    positive = [e.weight.denominator for e in g.edges if e.weight > 0]
    d = lcm(*positive) if positive else 1
    edges: list[Edge] = []
    for e in g.edges:
        copies = e.weight * d
        assert copies.denominator == 1
        edges.extend(Edge(e.u, e.v, _ONE, e.label) for _ in range(int(copies)))
    out = WeightedMultigraph(g.vertices, tuple(edges))
    n = len(g.vertices)
    if n <= 12 and n % 2 == 0:
        assert count_pm_exact(out) == Fraction(d) ** (n // 2) * count_pm_exact(g)
        if n >= 2:
            assert count_npm_exact(out) == Fraction(d) ** (n // 2 - 1) * count_npm_exact(g)
    return out, d


# ---------------------------------------------------------------------------
# Markov chain estimator


class _Chain:
    """Insert/delete/slide walk over perfect and one-hole-pair matchings.

    States are bundle-level matchings weighted by the product of bundle
    multiplicities, with near-perfect states damped by a penalty factor; the
    conditional distribution over perfect states is penalty-free.
    """

    __slots__ = ("ends_a", "ends_b", "mult", "pick", "npick", "match", "holes", "rng", "remove_p")

    def __init__(
        self,
        keys: Sequence[tuple[int, int]],
        multiplicities: Sequence[int],
        pick: Sequence[int],
        match: list[int],
        rng: random.Random,
    ) -> None:
        self.ends_a = [k[0] for k in keys]
        self.ends_b = [k[1] for k in keys]
        self.mult = list(multiplicities)
        self.pick = list(pick)
        self.npick = len(self.pick)
        self.match = match
        self.holes = match.count(-1)
        self.rng = rng
        self.set_penalty(1.0)

    def set_penalty(self, penalty: float) -> None:
        self.remove_p = [penalty / m for m in self.mult]

    def advance(self, steps: int) -> None:
        rand = self.rng.random
        pick = self.pick
        npick = self.npick
        ends_a = self.ends_a
        ends_b = self.ends_b
        remove_p = self.remove_p
        match = self.match
        holes = self.holes
        for _ in range(steps):
            i = int(rand() * npick)
            if i >= npick:
                i = npick - 1
            bi = pick[i]
            a = ends_a[bi]
            b = ends_b[bi]
            ma = match[a]
            mb = match[b]
            if holes:
                if ma < 0:
                    if mb < 0:
                        match[a] = b
                        match[b] = a
                        holes = 0
                    else:
                        match[mb] = -1
                        match[a] = b
                        match[b] = a
                elif mb < 0:
                    match[ma] = -1
                    match[b] = a
                    match[a] = b
            elif ma == b and rand() < remove_p[bi]:
                match[a] = -1
                match[b] = -1
                holes = 2
        self.holes = holes


def _unit_bundles(g: WeightedMultigraph) -> dict[tuple[int, int], int]:
    index = {v: i for i, v in enumerate(g.vertices)}
    bundles: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.weight != 1:
            raise InstanceError("estimator input must be a unit-weight multigraph; integerize first")
        a, b = index[e.u], index[e.v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        bundles[key] = bundles.get(key, 0) + 1
    return bundles


def _maximum_matching(n: int, bundles: dict[tuple[int, int], int]) -> Optional[list[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(sorted(bundles))
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(matching) < n:
        return None
    arr = [-1] * n
    for a, b in matching:
        arr[a] = b
        arr[b] = a
    return arr


def _graph_from_bundles(names: Sequence[str], bundles: dict[tuple[int, int], int]) -> WeightedMultigraph:
    edges = tuple(
        Edge(names[a], names[b], Fraction(m), "plain") for (a, b), m in sorted(bundles.items())
    )
    return WeightedMultigraph(tuple(names), edges)


def _condition_level(
    names: list[str],
    bundles: dict[tuple[int, int], int],
    start: list[int],
    cfg: EstimatorConfig,
    level: int,
    levels_total: int,
) -> tuple[Fraction, list[str], dict[tuple[int, int], int], list[int]]:
    """Estimate how often perfect matchings pair vertex 0 with its likeliest partner.

    Returns the telescoping factor multiplicity/q and the graph with the
    conditioned pair removed, warm-started from a sampled witness.
    """
    n = len(names)
    bundle_keys = sorted(bundles)
    multiplicities = [bundles[k] for k in bundle_keys]
    pick: list[int] = []
    for bi, m in enumerate(multiplicities):
        pick.extend([bi] * m)
    spacing = max(1, int(cfg.steps_coeff * n * max(1.0, math.log(n))))
    eps = float(cfg.epsilon)
    confidence = max(1.0, math.log2(2.0 / float(cfg.delta)))
    target = math.ceil(cfg.sample_coeff * (levels_total + 1) * confidence / (eps * eps))
    burn = 10 * spacing
    counts: dict[int, int] = {}
    witness: dict[int, list[int]] = {}
    perfect = 0
    for attempt in range(3):
        rng = random.Random((cfg.seed * 2654435761 + level * 65537 + attempt * 257 + 1) % (1 << 63))
        chain = _Chain(bundle_keys, multiplicities, pick, list(start), rng)
        chain.advance(burn)
        pilot = max(100, target // 10)
        hits = 0
        for _ in range(pilot):
            chain.advance(spacing)
            if chain.holes == 0:
                hits += 1
        beta = (hits + 1.0) / (pilot + 2.0)
        chain.set_penalty(min(1.0, max(beta / (1.0 - beta), 1e-4)))
        chain.advance(burn)
        counts.clear()
        witness.clear()
        perfect = 0
        budget = 50 * target
        while perfect < target and budget > 0:
            chain.advance(spacing)
            budget -= 1
            if chain.holes == 0:
                perfect += 1
                x = chain.match[0]
                counts[x] = counts.get(x, 0) + 1
                if x not in witness:
                    witness[x] = list(chain.match)
        if counts:
            break
    else:
        raise EstimateError(f"no perfect matchings sampled at telescoping level {level}")
    x_star = min(counts, key=lambda x: (-counts[x], -bundles[(0, x)], x))
    factor = Fraction(bundles[(0, x_star)] * perfect, counts[x_star])
    keep = [i for i in range(n) if i not in (0, x_star)]
    remap = {old: new for new, old in enumerate(keep)}
    names2 = [names[i] for i in keep]
    bundles2 = {
        (remap[a], remap[b]): m for (a, b), m in bundles.items() if a in remap and b in remap
    }
    wit = witness[x_star]
    start2 = [-1] * len(keep)
    for old in keep:
        start2[remap[old]] = remap[wit[old]]
    return factor, names2, bundles2, start2


def estimate_pm(g: WeightedMultigraph, cfg: EstimatorConfig) -> Fraction:
    """Seeded randomized perfect-matching weight for a unit-weight multigraph.

    Telescopes vertex-pair removals down to ``cfg.exact_cap`` vertices, each
    level estimated by the matching chain; the remainder is counted exactly.
    Odd orders, empty graphs, and graphs without perfect matchings are
    answered exactly without sampling.
    """
    bundles = _unit_bundles(g)
    names = list(g.vertices)
    n = len(names)
    if n == 0:
        return _ONE
    if n % 2:
        return _ZERO
    start = _maximum_matching(n, bundles)
    if start is None:
        return _ZERO
    cap = cfg.exact_cap
    levels_total = max(0, (n - cap + 1) // 2)
    result = _ONE
    level = 0
    while n > cap:
        factor, names, bundles, start = _condition_level(
            names, bundles, start, cfg, level, levels_total
        )
        result *= factor
        n = len(names)
        level += 1
    base = _graph_from_bundles(names, bundles)
    return result * count_pm_exact(base, cap=max(n, 1))


# ---------------------------------------------------------------------------
# End-to-end pipeline


def estimate_z_fpras(f: PBFunction, inst: Instance, cfg: EstimatorConfig) -> Fraction:
    """Partition-function estimate for an instance over one nonnegative-Fourier binary f.

    Exact (and equal to brute force) whenever the triangle graph fits under
    ``cfg.exact_cap``; otherwise the matching chain supplies the estimate and
    all tracked constants are multiplied back exactly.
    """
    if f.arity != 2:
        raise InstanceError(f"pipeline needs a binary function, got arity {f.arity}")
    if not in_cp(f):
        raise InstanceError(
            "function has a negative Fourier coefficient; classify_two_spin reports which "
            "regime applies instead"
        )
    csp = _as_csp(inst)
    names = csp.registry_map()
    for _, name in csp.constraints:
        fn = names[name]
        if isinstance(fn, SignedTable) or fn.table != f.table:
            raise InstanceError(f"constraint function {name!r} differs from the pipeline function")
    lifted = lift_instance(csp)
    form = holant_fourier_form(lifted)
    if form.is_zero:
        return _ZERO
    assert form.holant is not None
    graph = build_triangle_graph(form.holant)
    scale = form.kappa / 2
    n = len(graph.vertices)
    if n <= cfg.exact_cap:
        return scale * count_pm_exact(graph, cap=max(n, 1))
    unit, d = integerize(graph)
    estimate = estimate_pm(unit, cfg)
    return scale * estimate / Fraction(d) ** (n // 2)
