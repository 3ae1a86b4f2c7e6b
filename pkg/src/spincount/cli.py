"""Command-line front door for classifiers, evaluators, gadgets, and the estimator.

Function literals accept the file-format value order `<arity> <values...>`;
a bare power-of-two run of values is also accepted and its arity inferred.
Output is line-oriented; ``--machine`` switches to one ``key=value`` record
per result with values quoted when they contain whitespace.

Exit codes: 0 on success, 2 on input errors, 3 on capacity errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence, Union

from .classify import classify_two_spin
from .funcs import (
    ARITY_CAP,
    CapacityError,
    PBFunction,
    SignedTable,
    fourier,
    inverse_fourier,
    property_report,
)
from .gadgets import (
    GadgetError,
    approx_pin,
    extract_nonlsm_binary,
    make_up_down,
    normalize_unary,
    pinning_analysis,
    serialize_pps,
    symmetrize,
)
from .instances import HolantInstance, InstanceError, parse, z_exact
from .matching import EstimatorConfig, build_triangle_graph, estimate_z_fpras, serialize_graph

_RATIONAL = re.compile(r"[+-]?\d+(?:/[1-9]\d*)?")


def _rational(token: str) -> Fraction:
    if not _RATIONAL.fullmatch(token):
        raise ValueError(f"bad rational literal {token!r}")
    return Fraction(token)


def parse_function_literal(text: str) -> Union[PBFunction, SignedTable]:
    """Read `<arity> <values...>`, falling back to a bare power-of-two table."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty function literal")
    first = tokens[0]
    if first.isdigit() and int(first) <= ARITY_CAP and len(tokens) - 1 == 1 << int(first):
        arity = int(first)
        values = [_rational(t) for t in tokens[1:]]
    elif len(tokens) & (len(tokens) - 1) == 0:
        arity = len(tokens).bit_length() - 1
        values = [_rational(t) for t in tokens]
    else:
        raise ValueError(
            f"cannot read function literal {text!r}: want `<arity> <values...>` "
            "or a bare power-of-two table"
        )
    if any(v < 0 for v in values):
        return SignedTable.from_values(arity, values)
    return PBFunction.from_values(arity, values)


def _table_str(table: Sequence[Fraction]) -> str:
    return " ".join(str(v) for v in table)


def _emit(record: list[tuple[str, str]], machine: bool) -> None:
    if machine:
        parts = []
        for key, value in record:
            if re.search(r"\s", value):
                value = f'"{value}"'
            parts.append(f"{key}={value}")
        print(" ".join(parts))
    else:
        for key, value in record:
            print(f"{key}: {value}")


def _read_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse(text)


def _require_function(value: Union[PBFunction, SignedTable], what: str) -> PBFunction:
    if isinstance(value, SignedTable):
        raise ValueError(f"{what} must be nonnegative, got a signed table")
    return value


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_classify(args: argparse.Namespace) -> int:
    f = _require_function(parse_function_literal(args.fun), "classify input")
    _emit(classify_two_spin(f).record(), args.machine)
    return 0


def _cmd_props(args: argparse.Namespace) -> int:
    f = _require_function(parse_function_literal(args.fun), "props input")
    _emit(property_report(f).record(), args.machine)
    return 0


def _cmd_fourier(args: argparse.Namespace) -> int:
    fn = parse_function_literal(args.fun)
    if args.inverse:
        signed = fn.as_signed() if isinstance(fn, PBFunction) else fn
        out = inverse_fourier(signed)
    else:
        out = fourier(fn)
    record = [("arity", str(out.arity)), ("table", _table_str(out.table))]
    _emit(record, args.machine)
    return 0


def _cmd_gadget(args: argparse.Namespace) -> int:
    f = _require_function(parse_function_literal(args.fun), "gadget input")
    if args.construction == "updown":
        pair = make_up_down(f)
        record = [
            ("up", _table_str(pair.up.table)),
            ("down", _table_str(pair.down.table)),
            ("swapped", "true" if pair.swapped else "false"),
            ("up_formula", serialize_pps(pair.up_formula)),
            ("down_formula", serialize_pps(pair.down_formula)),
        ]
    elif args.construction == "symmetrize":
        if args.mode is None:
            raise ValueError("symmetrize needs --mode 1, 2, or 3")
        up = None
        if args.up is not None:
            up = _require_function(parse_function_literal(args.up), "--up")
        sym, report = symmetrize(f, args.mode, up)
        record = [("table", _table_str(sym.table))] + report.record()
    elif args.construction == "extract":
        if args.fun2 is None:
            raise ValueError("extract needs --fun2")
        g = _require_function(parse_function_literal(args.fun2), "--fun2")
        got = extract_nonlsm_binary(f, g)
        record = [
            ("table", _table_str(got.function.table)),
            ("route", got.route),
            ("formula", serialize_pps(got.formula)),
        ]
    else:
        if args.eps is None:
            raise ValueError("pin needs --eps")
        normalized, scale = normalize_unary(f, args.direction)
        pinned, power = approx_pin(normalized, _rational(args.eps))
        record = [
            ("table", _table_str(pinned.table)),
            ("power", str(power)),
            ("scale", str(scale)),
        ]
    _emit(record, args.machine)
    return 0


def _cmd_pinning(args: argparse.Namespace) -> int:
    family = [_require_function(parse_function_literal(text), "pinning input") for text in args.fun]
    verdict = pinning_analysis(family)
    record = [("tag", verdict.tag.value), ("case", str(verdict.case))]
    if verdict.up is not None:
        record.append(("up", _table_str(verdict.up.table)))
    if verdict.down is not None:
        record.append(("down", _table_str(verdict.down.table)))
    if verdict.up_formula is not None:
        record.append(("up_formula", serialize_pps(verdict.up_formula)))
    if verdict.down_formula is not None:
        record.append(("down_formula", serialize_pps(verdict.down_formula)))
    if verdict.witness_index is not None:
        record.append(("witness", str(verdict.witness_index)))
    _emit(record, args.machine)
    return 0


def _cmd_z_exact(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    z = z_exact(inst, cap=args.cap)
    if args.machine:
        _emit([("z", str(z))], True)
    else:
        print(z)
    return 0


def _cmd_z_estimate(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    used = sorted({name for _, name in inst.constraints})
    if len(used) != 1:
        raise InstanceError(f"estimator needs a single constraint function, got {used}")
    f = inst.registry_map()[used[0]]
    if isinstance(f, SignedTable):
        raise InstanceError("estimator needs a nonnegative function")
    cfg = EstimatorConfig(
        epsilon=_rational(args.epsilon), seed=args.seed, exact_cap=args.exact_cap
    )
    z = estimate_z_fpras(f, inst, cfg)
    if args.machine:
        _emit([("z", str(z))], True)
    else:
        print(z)
    return 0


def _cmd_holant_check(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    try:
        HolantInstance(inst)
        holant = True
    except InstanceError:
        holant = False
    _emit([("holant", "true" if holant else "false")], args.machine)
    return 0


def _cmd_triangle_graph(args: argparse.Namespace) -> int:
    inst = _read_instance(args.file)
    graph = build_triangle_graph(HolantInstance(inst))
    sys.stdout.write(serialize_graph(graph))
    return 0


# ---------------------------------------------------------------------------
# Parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spincount",
        description="Classifiers, exact evaluators, gadget constructions, and the "
        "matching-based estimator for weighted Boolean counting.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str, handler) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--machine", action="store_true", help="emit key=value records")
        p.set_defaults(handler=handler)
        return p

    p = add("classify", "two-spin hardness verdict for a binary function", _cmd_classify)
    p.add_argument("--fun", required=True, help="function literal")

    p = add("props", "structural property report for a function", _cmd_props)
    p.add_argument("--fun", required=True, help="function literal")

    p = add("fourier", "Fourier table of a function (or the inverse)", _cmd_fourier)
    p.add_argument("--fun", required=True, help="function literal")
    p.add_argument("--inverse", action="store_true", help="invert a coefficient table")

    p = add("gadget", "run a gadget construction", _cmd_gadget)
    p.add_argument("construction", choices=["updown", "symmetrize", "extract", "pin"])
    p.add_argument("--fun", required=True, help="function literal")
    p.add_argument("--fun2", help="second function literal (extract)")
    p.add_argument("--mode", type=int, help="symmetrize mode 1, 2, or 3")
    p.add_argument("--up", help="strictly increasing permissive unary (symmetrize mode 3)")
    p.add_argument("--eps", help="target off-pin mass (pin)")
    p.add_argument(
        "--direction", choices=["up", "down"], default="up", help="pinning direction (pin)"
    )

    p = add("pinning", "pinning analysis of a finite function family", _cmd_pinning)
    p.add_argument("--fun", action="append", required=True, help="family member (repeatable)")

    p = add("z-exact", "brute-force partition function of an instance file", _cmd_z_exact)
    p.add_argument("file")
    p.add_argument("--cap", type=int, help="variable-count cap override")

    p = add("z-estimate", "randomized partition-function estimate", _cmd_z_estimate)
    p.add_argument("file")
    p.add_argument("--epsilon", default="1/10", help="accuracy target, a rational")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-cap", type=int, default=30, help="exact-counting crossover size")

    p = add("holant-check", "report whether every variable occurs exactly twice", _cmd_holant_check)
    p.add_argument("file")

    p = add("triangle-graph", "emit the triangle multigraph of a holant instance", _cmd_triangle_graph)
    p.add_argument("file")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, GadgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
