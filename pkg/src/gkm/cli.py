"""Command-line front end.

Exit status: 0 when every check passes, 1 on a failed check (a JSON
witness goes to stderr), 2 on a configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .coxeter import CartanMatrix
from .graph import GkmGraph, GraphError, build_graph, build_graph_explicit, export, validate
from .ring import (
    GkmClass,
    LiftError,
    SpanError,
    canonical_generators_H,
    expand_in_basis,
    is_member,
    lift_generators_to_K,
    specialize,
)


class ConfigError(ValueError):
    pass


class CheckFailed(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class RunConfig:
    command: str
    cartan: str | None = None
    graph: str | None = None
    parabolic: tuple[int, ...] = ()
    max_length: int | None = None
    theory: str = "H"
    degree: int | None = None
    emit: str = "table"
    variables: tuple[str, ...] | None = None
    rotate_basis: bool = False
    stability_recheck: bool = False


# graph loading ---------------------------------------------------------------


def load_graph(cfg: RunConfig, max_length: int | None = None) -> GkmGraph:
    if (cfg.cartan is None) == (cfg.graph is None):
        raise ConfigError("give exactly one of --cartan and --graph")
    L = cfg.max_length if max_length is None else max_length
    if cfg.cartan is not None:
        try:
            cartan = CartanMatrix.parse(cfg.cartan)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        bad = [i for i in cfg.parabolic if not 1 <= i <= cartan.n]
        if bad:
            raise ConfigError(f"parabolic indices {bad} out of range 1..{cartan.n}")
        if cartan.kind() != "finite" and L is None:
            raise ConfigError(f"{cartan.kind()} Cartan matrix needs --max-length")
        g = build_graph(cartan, cfg.parabolic, L)
    else:
        try:
            text = Path(cfg.graph).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read graph file: {exc}") from exc
        try:
            g = build_graph_explicit(text)
        except (json.JSONDecodeError, GraphError) as exc:
            raise ConfigError(f"bad graph file: {exc}") from exc
    if cfg.variables:
        if len(cfg.variables) != g.rank:
            raise ConfigError(f"--vars needs {g.rank} names")
        g = GkmGraph(g.rank, g.vertices, g.edges, g.truncation, cfg.variables, g.origin)
    return g


def _render(x, g):
    return x.render(g.variables)


def _class_table(g: GkmGraph, c: GkmClass) -> list[str]:
    return [f"  {v} : {_render(c[v], g)}" for v in g.ids()]


# subcommands ---------------------------------------------------------------


def cmd_graph(cfg: RunConfig, out) -> None:
    g = load_graph(cfg)
    rep = validate(g, cfg.theory)
    out.write(export(g, cfg.emit, rotate=cfg.rotate_basis).decode())
    if not rep.ok:
        raise CheckFailed("graph fails the standing hypotheses", rep.to_dict())


def _generators(cfg: RunConfig, g: GkmGraph) -> list[GkmClass]:
    gens = canonical_generators_H(g, cfg.degree)
    if cfg.theory == "K":
        gens = lift_generators_to_K(g, gens)
    return gens


def cmd_gens(cfg: RunConfig, out) -> None:
    g = load_graph(cfg)
    rep = validate(g, cfg.theory)
    if not rep.ok:
        raise CheckFailed("graph fails the standing hypotheses", rep.to_dict())
    gens = _generators(cfg, g)
    if cfg.emit == "json":
        data = [{"anchor": x.anchor, "flags": sorted(x.flags), **x.to_json()} for x in gens]
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    elif cfg.emit == "table":
        for x in gens:
            flags = f" [{','.join(sorted(x.flags))}]" if x.flags else ""
            out.write(f"x_{x.anchor} (length {g.length(x.anchor)}){flags}\n")
            out.write("\n".join(_class_table(g, x)) + "\n")
    else:
        for x in gens:
            labels = {v: _render(x[v], g) for v in g.ids() if not x[v].is_zero()}
            out.write(export(g, cfg.emit, labels=labels, rotate=cfg.rotate_basis).decode())
    bad = [x.anchor for x in gens if "non-integral" in x.flags]
    if bad:
        raise CheckFailed("non-integral generators", {"anchors": bad})


def _expand_product(cfg: RunConfig, g: GkmGraph, factors: list[str]):
    gens = _generators(cfg, g)
    by = {x.anchor: x for x in gens}
    missing = [f for f in factors if f not in by]
    if missing:
        raise ConfigError(f"no generator anchored at {missing}")
    prod = by[factors[0]]
    for f in factors[1:]:
        prod = prod * by[f]
    return gens, prod, expand_in_basis(g, prod, gens)


def cmd_mul(cfg: RunConfig, out, factors: list[str], do_specialize: bool) -> None:
    g = load_graph(cfg)
    gens, prod, exp = _expand_product(cfg, g, factors)
    ok, bad = is_member(g, prod)
    if not ok:
        raise CheckFailed("product is not a member", {"edge": [bad[0][0].source, bad[0][0].target]})
    stable = dict(exp.stable)
    if cfg.stability_recheck and g.truncation is not None:
        g2 = load_graph(cfg, g.truncation + 2)
        _, _, exp2 = _expand_product(cfg, g2, factors)
        for v, k in exp.coefficients.items():
            if not stable[v] and exp2.coefficients.get(v) == k:
                stable[v] = True
    out.write(f"product {'*'.join(factors)} ({cfg.theory})\n")
    for v, k in exp.coefficients.items():
        if not stable[v]:
            out.write(f"{v} : provisional (rerun with --stability-recheck)\n")
            continue
        if k.is_zero():
            continue
        if do_specialize:
            val = specialize(cfg.theory, k)
            if val:
                out.write(f"{v} : {val}\n")
        else:
            out.write(f"{v} : {_render(k, g)}\n")
    if exp.remainder:
        out.write("remainder: nonzero beyond the computed generators\n")


def cmd_verify(cfg: RunConfig, out, class_file: str) -> None:
    g = load_graph(cfg)
    try:
        data = json.loads(Path(class_file).read_text())
        c = GkmClass.from_json(g, data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad class file: {exc}") from exc
    ok, bad = is_member(g, c)
    out.write(f"membership: {'pass' if ok else 'fail'} ({len(g.edges)} edges checked)\n")
    if not ok:
        e, diff = bad[0]
        raise CheckFailed(
            "class fails the edge conditions",
            {"edge": [e.source, e.target], "weight": list(e.weight), "difference": diff.to_json(),
             "violations": len(bad)},
        )


def cmd_examples(cfg: RunConfig, out, name: str) -> None:
    from .examples import SUITES

    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if name == "twisted-a1":
        if cfg.theory != "H":
            raise ConfigError("twisted-a1 runs in H only")
        res = SUITES[name](cfg.max_length or 8)
    elif name == "omega-su2":
        res = SUITES[name](cfg.theory, cfg.max_length or 8)
    else:
        res = SUITES[name](cfg.theory)
    if cfg.emit == "json":
        out.write(json.dumps({"suite": res.name, "lines": res.lines, "checks": res.checks}, indent=2) + "\n")
    else:
        out.write("\n".join(res.lines) + "\n")
    if not res.ok:
        raise CheckFailed(f"suite {res.name} failed", {"failed": res.failures()})


def cmd_qcheck(cfg: RunConfig, out, M: int, L: int) -> None:
    from .qcomb import check_symmetry, check_omega_closed

    if M < 1 or L < 0:
        raise ConfigError("need --M >= 1 and --L >= 0")
    sym = check_symmetry(M, L)
    closed = [check_omega_closed(M, M, l) for l in range(L + 1)]
    report = {
        "pairs_checked": sym.pairs_checked + sum(c.squares_checked for c in closed),
        "failures": sym.failures + [f for c in closed for f in c.failures],
    }
    if cfg.emit == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(f"symmetry a_mnl = a_nml, 1<=m,n<={M}, 0<=l<={L}: {sym.pairs_checked} pairs, "
                  f"{'pass' if sym.ok else 'FAIL'} (max degree {sym.max_degree})\n")
        for l, c in enumerate(closed):
            out.write(f"closedness l={l} on [0,{M}]^2: {c.squares_checked} squares, "
                      f"{len(c.boundary)} boundaries, {'pass' if c.ok else 'FAIL'}\n")
    if report["failures"]:
        raise CheckFailed("q-identity check failed", report)


# parsing ---------------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _names(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cartan", help='generalized Cartan matrix, rows split by ";", e.g. "2,-1;-3,2"')
    common.add_argument("--graph", help="explicit graph JSON file")
    common.add_argument("--parabolic", type=_int_list, default=(), help="simple reflections generating P, e.g. 1 or 1,3")
    common.add_argument("--max-length", type=int, help="truncation L (required for non-finite types)")
    common.add_argument("--theory", choices=("H", "K"), default="H")
    common.add_argument("--degree", type=int, help="compute generators up to this length")
    common.add_argument("--emit", choices=("table", "json", "dot", "svg"), default="table")
    common.add_argument("--vars", type=_names, help="variable names, comma-separated")
    common.add_argument("--rotate-basis", action="store_true", help="swap drawing axes in dot/svg output")
    common.add_argument("--stability-recheck", action="store_true", help="re-run at L+2 to certify tail coefficients")

    p = argparse.ArgumentParser(prog="gkm", description="GKM graphs and equivariant Schubert-type generators")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("graph", parents=[common], help="build, validate and export a graph")
    sub.add_parser("gens", parents=[common], help="canonical module generators")
    m = sub.add_parser("mul", parents=[common], help="expand a product of generators")
    m.add_argument("factors", nargs="+", help="generator anchors (vertex ids); repeat for powers")
    m.add_argument("--specialize", action="store_true", help="print non-equivariant coefficients")
    v = sub.add_parser("verify", parents=[common], help="membership check of a class file")
    v.add_argument("class_file")
    e = sub.add_parser("examples", parents=[common], help="named example suites")
    e.add_argument("suite", help="g2, omega-su2 or twisted-a1")
    q = sub.add_parser("qcheck", parents=[common], help="q-binomial symmetry and closedness sweep")
    q.add_argument("--M", type=int, default=6)
    q.add_argument("--L", type=int, default=4)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        cartan=args.cartan,
        graph=args.graph,
        parabolic=args.parabolic,
        max_length=args.max_length,
        theory=args.theory,
        degree=args.degree,
        emit=args.emit,
        variables=args.vars,
        rotate_basis=args.rotate_basis,
        stability_recheck=args.stability_recheck,
    )
    try:
        if cfg.command == "graph":
            cmd_graph(cfg, out)
        elif cfg.command == "gens":
            cmd_gens(cfg, out)
        elif cfg.command == "mul":
            cmd_mul(cfg, out, args.factors, args.specialize)
        elif cfg.command == "verify":
            cmd_verify(cfg, out, args.class_file)
        elif cfg.command == "examples":
            cmd_examples(cfg, out, args.suite)
        elif cfg.command == "qcheck":
            cmd_qcheck(cfg, out, args.M, args.L)
    except ConfigError as exc:
        err.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    except CheckFailed as exc:
        err.write(json.dumps({"error": str(exc), "witness": exc.witness}, default=str) + "\n")
        return 1
    except (LiftError, SpanError) as exc:
        err.write(json.dumps({"error": str(exc), "witness": exc.witness}, default=str) + "\n")
        return 1
    except GraphError as exc:
        err.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
