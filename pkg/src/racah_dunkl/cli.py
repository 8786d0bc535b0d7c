"""Batch command-line interface for the verification suites and exports.

Rationals cross this boundary as "p/q" strings; there is no floating
point anywhere.  Identical configurations produce byte-identical output
files.  Exit codes: 0 when every verified identity holds, 1 when some
identity fails (the report names the first violated one and carries a
polynomial witness), 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .connection import connection_matrix, tridiagonal_check
from .graph import build_graph
from .harmonics import (
    basis_to_json_obj,
    build_basis_tower,
    casimir_eigenvalue,
    dimension_table,
    verify_closed_form,
    verify_extension_restrictions,
    verify_power_action_sweep,
    verify_spectral_action,
    verify_tower,
)
from .operators import casimir
from .poly import ParameterSet
from .racah import module_dimension, module_tridiagonal_data, recurrence_table_json
from .relations import (
    default_degree_bound,
    verify_casimir_laplacian_commute,
    verify_drinfeld_kohno,
    verify_embedding,
    verify_nested_disjoint_commute,
    verify_racah_relations,
    verify_su11,
)
from .report import Report

VERIFY_SUITES = (
    "su11",
    "racah",
    "lemma1",
    "lemma2",
    "drinfeld-kohno",
    "embedding",
    "ck",
    "lemma3",
    "eigen",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int
    mu: tuple[str, ...] | None
    kmax: int | None
    order: tuple[int, ...] | None
    out: str | None
    fmt: str

    def parameters(self) -> ParameterSet:
        try:
            if self.mu is None:
                return ParameterSet.default(self.n)
            return ParameterSet(self.n, tuple(Fraction(m) for m in self.mu))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from exc

    def bound(self, default: int) -> int:
        return self.kmax if self.kmax is not None else default


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_order(text: str | None, n: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    order = _parse_ints(text)
    if sorted(order) != list(range(1, n + 1)):
        raise ConfigError(f"order {order} is not a permutation of 1..{n}")
    return order


def _parse_blocks(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(_parse_ints(part) for part in text.split(";"))
    if len(blocks) != 3:
        raise ConfigError("blocks must be three ';'-separated index lists")
    seen: set[int] = set()
    for block in blocks:
        for i in block:
            if not 1 <= i <= n:
                raise ConfigError(f"block index {i} out of range 1..{n}")
            if i in seen:
                raise ConfigError(f"block index {i} repeated")
            seen.add(i)
    return blocks


def _emit(obj, cfg: RunConfig) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        n=args.n,
        mu=tuple(args.mu.split(",")) if args.mu else None,
        kmax=args.kmax,
        order=getattr(args, "order", None),
        out=args.out,
        fmt=getattr(args, "format", "json"),
    )


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    params = cfg.parameters()
    suite = args.suite
    n = params.n
    if suite == "su11":
        report = verify_su11(params, cfg.bound(6))
    elif suite == "racah":
        if n < 3:
            raise ConfigError("the relation suite needs n >= 3")
        report = verify_racah_relations(params, cfg.bound(default_degree_bound(n)))
    elif suite == "lemma1":
        report = verify_casimir_laplacian_commute(params, cfg.bound(4))
    elif suite == "lemma2":
        report = verify_nested_disjoint_commute(params, cfg.bound(4))
    elif suite == "drinfeld-kohno":
        if n < 3:
            raise ConfigError("the commutativity suite needs n >= 3")
        report = verify_drinfeld_kohno(params, cfg.bound(4))
    elif suite == "embedding":
        if args.blocks:
            blocks = _parse_blocks(args.blocks, n)
        elif n >= 4:
            blocks = ((1, 2), (3,), (4,))
        elif n == 3:
            blocks = ((1,), (2,), (3,))
        else:
            raise ConfigError("the embedding suite needs n >= 3")
        report = verify_embedding(params, *blocks, cfg.bound(3))
    elif suite == "ck":
        report = Report()
        report.extend(verify_tower(params, cfg.bound(4)))
        report.extend(verify_extension_restrictions(params, cfg.bound(4)))
        report.extend(verify_closed_form(params, cfg.bound(4)))
    elif suite == "lemma3":
        report = verify_power_action_sweep(params, 2, cfg.bound(3))
    elif suite == "eigen":
        order = _parse_order(args.order, n) if args.order else None
        report = verify_spectral_action(params, cfg.bound(4), order)
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown suite {suite!r}")
    _emit(report.to_json_obj(), cfg)
    return 0 if report.ok else 1


def cmd_basis(args) -> int:
    cfg = _config_from_args(args)
    params = cfg.parameters()
    order = _parse_order(args.order, params.n)
    if cfg.fmt == "csv":
        rows = dimension_table(params.n, args.k)
        text = "n,k,dim\n" + "".join(f"{a},{b},{c}\n" for a, b, c in rows)
        _emit_text(text, cfg)
        return 0
    elements = build_basis_tower(params, args.k, order)
    _emit(basis_to_json_obj(elements), cfg)
    return 0


def cmd_connect(args) -> int:
    cfg = _config_from_args(args)
    params = cfg.parameters()
    n = params.n
    from_order = _parse_order(args.from_order, n)
    to_order = _parse_order(args.to_order, n)
    if from_order is None or to_order is None:
        raise ConfigError("--from and --to variable orders are required")
    source = build_basis_tower(params, args.k, from_order)
    target = build_basis_tower(params, args.k, to_order)
    w = connection_matrix(params, source, target)
    if cfg.fmt == "csv":
        text = "".join(",".join(str(x) for x in row) + "\n" for row in w.entries)
        _emit_text(text, cfg)
        return 0
    payload = {"connection": w.to_json_obj()}
    report = Report()
    if n == 3:
        pair = tuple(sorted(to_order[:2]))
        shared = set(from_order[:2]) & set(pair)
        if pair != tuple(sorted(from_order[:2])) and len(shared) == 1 and source:
            frame = (
                next(i for i in from_order[:2] if i not in pair),
                next(iter(shared)),
                next(i for i in pair if i not in from_order[:2]),
            )
            eff_params = ParameterSet(3, tuple(params.mu_of(o) for o in frame))
            expected = {}
            for parities in {el.label.variable_parities() for el in source}:
                eff_eps = [parities[o - 1] for o in frame]
                expected[parities] = module_tridiagonal_data(eff_params, eff_eps, args.k)
            data = tridiagonal_check(params, casimir(params, pair), source, expected)
            report.extend(data.report)
            payload["tridiagonal"] = report.to_json_obj()
    _emit(payload, cfg)
    return 0 if report.ok else 1


def cmd_graph(args) -> int:
    cfg = _config_from_args(args)
    if args.n < 3:
        raise ConfigError("the recoupling graph needs n >= 3")
    graph = build_graph(args.n)
    if cfg.fmt == "dot":
        _emit_text(graph.to_dot(), cfg)
    else:
        _emit(graph.to_json_obj(), cfg)
    return 0


def cmd_racah(args) -> int:
    cfg = _config_from_args(args)
    params = cfg.parameters()
    if params.n != 3:
        raise ConfigError("recurrence tables are three-variable objects")
    epsilon = _parse_ints(args.epsilon)
    if len(epsilon) != 3 or any(e not in (0, 1) for e in epsilon):
        raise ConfigError(f"epsilon {epsilon} must be three parity bits")
    if module_dimension(epsilon, args.degree) == 0:
        raise ConfigError(
            f"no module with parities {epsilon} at total degree {args.degree}"
        )
    _emit(recurrence_table_json(params, epsilon, args.degree), cfg)
    return 0


def cmd_spectrum(args) -> int:
    cfg = _config_from_args(args)
    params = cfg.parameters()
    order = _parse_order(args.order, params.n) or tuple(range(1, params.n + 1))
    rows = []
    for el in build_basis_tower(params, args.k, order):
        values = {}
        for m in range(2, params.n + 1):
            name = "C" + "".join(str(i) for i in sorted(order[:m]))
            values[name] = str(casimir_eigenvalue(params, el.label, m))
        rows.append(
            {"label": el.label.to_json_obj(), "degree": args.k, "eigenvalues": values}
        )
    _emit(rows, cfg)
    return 0


def _add_common(parser: argparse.ArgumentParser, need_k: bool = False) -> None:
    parser.add_argument("--n", type=int, default=3, help="ambient dimension")
    parser.add_argument(
        "--mu", help="comma-separated positive rationals, e.g. 1/2,1/3,1/4"
    )
    parser.add_argument("--kmax", type=int, default=None, help="degree bound")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", default="json", choices=("json", "csv", "dot"))
    if need_k:
        parser.add_argument("--k", type=int, required=True, help="homogeneous degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racah-dunkl",
        description="exact verification and export tool for the deformed-Laplacian symmetry algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run an identity-verification suite")
    p.add_argument("suite", choices=VERIFY_SUITES)
    _add_common(p)
    p.add_argument("--order", help="variable order for the eigen suite")
    p.add_argument("--blocks", help="embedding blocks, e.g. 1,2;3;4")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("basis", help="export a harmonic basis (json) or dimension table (csv)")
    _add_common(p, need_k=True)
    p.add_argument("--order", help="variable order, e.g. 1,2,3")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("connect", help="connection matrix between two chain bases")
    _add_common(p, need_k=True)
    p.add_argument("--from", dest="from_order", required=True, help="source variable order")
    p.add_argument("--to", dest="to_order", required=True, help="target variable order")
    p.set_defaults(fn=cmd_connect)

    p = sub.add_parser("graph", help="export the recoupling graph")
    _add_common(p)
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("racah", help="export recurrence data of a fixed-parity module")
    _add_common(p)
    p.add_argument("--epsilon", required=True, help="three parity bits, e.g. 0,0,0")
    p.add_argument("--degree", type=int, required=True, help="total degree of the module")
    p.set_defaults(fn=cmd_racah)

    p = sub.add_parser("spectrum", help="eigenvalue table of the chain invariants")
    _add_common(p, need_k=True)
    p.add_argument("--order", help="variable order, e.g. 1,2,3")
    p.set_defaults(fn=cmd_spectrum)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
