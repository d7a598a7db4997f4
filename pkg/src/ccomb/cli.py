"""Command-line front door.

    ccomb product KIND G1 G2 [--out DIR]
    ccomb moments GRAPH [--at e|f] [--order N] [--out FILE]
    ccomb convolve FAMILY KIND INPUT... [--order N] [--out FILE]
    ccomb word-moment G1 G2 WORD [--out FILE]
    ccomb verify SUITE [--seed S] [--order N] [--max-word W]
                       [--graphs K] [--models M] [--out FILE]

Product kinds: star, comb, orthogonal, comb-at, c-comb, comb-loop,
c-comb-loop. Convolve families: additive (moment tables) and multiplicative
(eta tables); kinds: monotone, boolean, orthogonal, c-monotone. Inputs are
graph files (see the io module for the format) or coefficient CSV tables;
the c-monotone kinds read nu2 from the second root of a birooted second
graph, or from a third table. When inputs are graphs, the emitted table
carries the matching product-graph walk column with an equality flag.

`word-moment` takes two birooted graph files and a word in index:name
syntax such as `1:a 2:a 1:a` (index 1 letters act as the first operator of
the c-comb decomposition, index 2 as the second; the single element of each
algebra is named `a`). It prints the realized mixed moment at both roots
next to the defining-recursion oracle values.

Outputs are deterministic: the same config and seed give byte-identical
files. Default output directory is $CCOMB_OUT, falling back to the current
directory. Exit code is 0 only if every requested check passes.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io as gio
from .graphs import BirootedGraph, adjacency_matrix, root_moments
from .independence import (
    AlgebraModel,
    ModelFunctional,
    Realization,
    oracle_cmonotone,
    parse_word,
)
from .linalg import state_moments
from .products import (
    c_comb_decomposition,
    c_comb_loop_product,
    c_comb_product,
    comb_at_product,
    comb_loop_product,
    comb_product,
    orthogonal_product,
    star_product,
)
from .series import (
    DivisorVanishes,
    additive_convolve,
    eta_from_moments,
    moment_series,
    multiplicative_convolve,
    series_csv_rows,
)
from .verify import VerifyConfig, format_report, run_suite

PRODUCT_KINDS = {
    "star": star_product,
    "comb": comb_product,
    "orthogonal": orthogonal_product,
    "comb-at": comb_at_product,
    "c-comb": c_comb_product,
    "comb-loop": comb_loop_product,
    "c-comb-loop": c_comb_loop_product,
}

BIROOTED_SECOND = ("comb-at", "c-comb", "c-comb-loop")
BIROOTED_FIRST = ("c-comb", "c-comb-loop")


@dataclass
class RunConfig:
    command: str
    inputs: tuple
    order: int = 12
    max_word: int = 8
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.max_word < 1:
            raise ValueError("word cap must be positive")


def _out_dir(arg) -> Path:
    if arg:
        return Path(arg)
    return Path(os.environ.get("CCOMB_OUT", "."))


class _CliError(Exception):
    """Input problem reported as a clean exit code 2."""


def _load_graph_or_fail(path):
    try:
        return gio.load_graph(path)
    except (OSError, gio.GraphFormatError) as exc:
        raise _CliError(f"cannot read graph {path}: {exc}") from exc


def _write_or_print(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_product(args) -> int:
    build = PRODUCT_KINDS[args.kind]
    g1 = _load_graph_or_fail(args.g1)
    g2 = _load_graph_or_fail(args.g2)
    if args.kind in BIROOTED_SECOND and not isinstance(g2, BirootedGraph):
        print(
            f"error: product {args.kind} needs a birooted second factor",
            file=sys.stderr,
        )
        return 2
    if args.kind in BIROOTED_FIRST and not isinstance(g1, BirootedGraph):
        print(
            f"error: product {args.kind} needs a birooted first factor",
            file=sys.stderr,
        )
        return 2
    prod = build(g1, g2)
    outdir = _out_dir(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = args.kind.replace("-", "_")
    gio.save_graph(outdir / f"{stem}.graph", prod.graph, prod.vertex_labels)
    (outdir / f"{stem}.dot").write_text(
        gio.to_dot(prod.graph, prod.vertex_labels), encoding="utf-8"
    )
    edges = (
        prod.graph.colored_edges
        if hasattr(prod.graph, "colored_edges")
        else prod.graph.edges
    )
    print(f"kind={args.kind} vertices={prod.vertex_count} edges={len(edges)}")
    print(f"root_e={prod.graph.root} label_e={prod.vertex_labels[prod.graph.root]}")
    second = getattr(prod.graph, "second_root", None)
    if second is not None:
        print(f"root_f={second} label_f={prod.vertex_labels[second]}")
    print(f"wrote {outdir / (stem + '.graph')} and {outdir / (stem + '.dot')}")
    return 0


def _cmd_moments(args) -> int:
    g = _load_graph_or_fail(args.graph)
    if args.at == "f":
        second = getattr(g, "second_root", None)
        if second is None:
            print("error: selector f needs a birooted graph", file=sys.stderr)
            return 2
        at = second
    else:
        at = g.root
    moments = root_moments(g, args.order, at=at)
    rows = series_csv_rows(moments.coeffs, first_index=0)
    _write_or_print("\n".join(rows) + "\n", args.out)
    return 0


def _load_additive_input(path, order):
    if str(path).endswith(".graph"):
        g = _load_graph_or_fail(path)
        mu = root_moments(g, order)
        nu = (
            root_moments(g, order, at=g.second_root)
            if isinstance(g, BirootedGraph)
            else None
        )
        return g, mu, nu
    try:
        values = gio.load_moment_table(path)
    except (OSError, ValueError) as exc:
        raise _CliError(f"cannot read table {path}: {exc}") from exc
    if len(values) < order + 1:
        raise _CliError(f"table {path} is shorter than order {order}")
    return None, moment_series(values[: order + 1]), None


def _walk_column_additive(kind, g1, g2, order):
    if g1 is None or g2 is None:
        return None
    if kind == "monotone":
        prod = comb_product(g1, g2)
    elif kind == "boolean":
        prod = star_product(g1, g2)
    elif kind == "orthogonal":
        prod = orthogonal_product(g1, g2)
    else:
        prod = comb_at_product(g1, g2)
    return root_moments(prod.graph, order).coeffs


def _walk_column_multiplicative(kind, g1, g2, order):
    if g1 is None or g2 is None or kind not in ("monotone", "c-monotone"):
        return None
    if kind == "monotone":
        prod = comb_loop_product(g1, g2)
        at = prod.graph.root
    else:
        prod = c_comb_loop_product(g1, g2)
        at = prod.graph.root
    z = adjacency_matrix(prod.graph, 2) * adjacency_matrix(prod.graph, 1)
    return eta_from_moments(moment_series(state_moments(z, order, at))).coeffs


def _cmd_convolve(args) -> int:
    order = args.order
    kind = args.kind
    try:
        if args.family == "additive":
            g1, mu1, _ = _load_additive_input(args.inputs[0], order)
            g2, mu2, nu2 = _load_additive_input(args.inputs[1], order)
            if kind == "c-monotone" and nu2 is None:
                if len(args.inputs) < 3:
                    print(
                        "error: c-monotone needs a birooted second graph "
                        "or a third table for nu2",
                        file=sys.stderr,
                    )
                    return 2
                _, nu2, _ = _load_additive_input(args.inputs[2], order)
            result = additive_convolve(kind, mu1, mu2, nu2 if kind == "c-monotone" else None)
            values = result.coeffs
            first = 0
            walks = _walk_column_additive(kind, g1, g2, order)
        else:
            g1, mu1, nu1 = _load_additive_input(args.inputs[0], order)
            g2, mu2, nu2 = _load_additive_input(args.inputs[1], order)
            eta1 = eta_from_moments(mu1)
            eta2 = eta_from_moments(mu2)
            eta_nu = eta_from_moments(nu2) if nu2 is not None else None
            if kind == "c-monotone" and eta_nu is None:
                if len(args.inputs) < 3:
                    print(
                        "error: c-monotone needs a birooted second graph "
                        "or a third table for nu2",
                        file=sys.stderr,
                    )
                    return 2
                _, nu_m, _ = _load_additive_input(args.inputs[2], order)
                eta_nu = eta_from_moments(nu_m)
            result = multiplicative_convolve(
                kind, eta1, eta2, eta_nu if kind == "c-monotone" else None
            )
            values = result.coeffs
            first = 1
            walks = _walk_column_multiplicative(kind, g1, g2, order)
    except DivisorVanishes as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    rows = series_csv_rows(values, first_index=first)
    if walks is not None:
        header = rows[0] + ",walk_count,equal"
        body = [
            f"{row},{w},{'yes' if v == w else 'no'}"
            for row, v, w in zip(rows[1:], values, walks)
        ]
        rows = [header, *body]
    _write_or_print("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_word_moment(args) -> int:
    g1 = _load_graph_or_fail(args.g1)
    g2 = _load_graph_or_fail(args.g2)
    if not isinstance(g1, BirootedGraph) or not isinstance(g2, BirootedGraph):
        print("error: word moments need two birooted graphs", file=sys.stderr)
        return 2
    try:
        word = parse_word(args.word)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if any(j not in (1, 2) or name != "a" for j, name in word):
        print(
            "error: letters must be 1:a or 2:a (one element per algebra)",
            file=sys.stderr,
        )
        return 2
    dec = c_comb_decomposition(g1, g2)
    realization = Realization(
        {(1, "a"): dec.s1, (2, "a"): dec.s2},
        dec.ambient_dim,
        dec.phi_index,
        dec.psi_index,
    )
    m1 = AlgebraModel({"a": adjacency_matrix(g1.underlying)}, g1.root, g1.second_root)
    m2 = AlgebraModel({"a": adjacency_matrix(g2.underlying)}, g2.root, g2.second_root)
    pairs = {
        1: (ModelFunctional(m1, m1.xi), ModelFunctional(m1, m1.eta)),
        2: (ModelFunctional(m2, m2.xi), ModelFunctional(m2, m2.eta)),
    }
    phi_oracle, psi_oracle = oracle_cmonotone(word, pairs)
    rows = ["state,realized,oracle,equal"]
    for state, oracle in (("phi", phi_oracle), ("psi", psi_oracle)):
        realized = realization.moment(word, state)
        rows.append(
            f"{state},{realized},{oracle},{'yes' if realized == oracle else 'no'}"
        )
    _write_or_print("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    cfg = VerifyConfig(
        order=args.order,
        max_word=args.max_word,
        graph_samples=args.graphs,
        model_samples=args.models,
        seed=args.seed,
    )
    checks = run_suite(args.suite, cfg)
    report = format_report(checks, cfg)
    _write_or_print(report, args.out)
    if args.out:
        print(report.splitlines()[-1])
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccomb",
        description=(
            "Exact products of (bi)rooted graphs, walk counting, and the "
            "matching convolution transforms"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="build a product graph, emit .graph and .dot")
    p.add_argument("kind", choices=sorted(PRODUCT_KINDS))
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("moments", help="exact closed-walk moment table")
    p.add_argument("graph")
    p.add_argument("--at", choices=("e", "f"), default="e")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("convolve", help="convolve graphs or coefficient tables")
    p.add_argument("family", choices=("additive", "multiplicative"))
    p.add_argument("kind", choices=("monotone", "boolean", "orthogonal", "c-monotone"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_convolve)

    p = sub.add_parser(
        "word-moment", help="mixed word moment of a c-comb operator pair"
    )
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("word", help="index:name letters, e.g. '1:a 2:a 1:a'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_word_moment)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("products", "transforms", "independence", "all"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--max-word", type=int, default=8)
    p.add_argument("--graphs", type=int, default=20)
    p.add_argument("--models", type=int, default=50)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = tuple(
        getattr(args, name) for name in ("g1", "g2", "graph") if hasattr(args, name)
    ) + tuple(getattr(args, "inputs", ()))
    try:
        RunConfig(
            command=args.command,
            inputs=inputs,
            order=getattr(args, "order", 12),
            max_word=getattr(args, "max_word", 8),
            seed=getattr(args, "seed", 0),
            out=getattr(args, "out", None),
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
