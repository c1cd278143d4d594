"""``holant`` command line: classify, eval, transform, gadget, selfcheck.

Exit codes::

    0  success (tractable verdict, value computed, all checks passed)
    1  usage or parse error
    2  hard verdict
    3  refused: hard grid larger than the brute-force bound
    4  selfcheck failure, or a gadget disagreeing with its closed form
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import selfcheck
from .classify import classify_set
from .cyclo import CycloParseError, Cyclo, format_cyclo, parse_cyclo, to_float
from .formats import FormatError, format_matrix, format_sig, parse_grid_file, parse_matrix, parse_sig_file, parse_sig_literal
from .grid import (
    BoundExceeded,
    GridError,
    approx_a,
    approx_sequence,
    binary_chain,
    brute_bound,
    compressed,
    decorated_tetrahedron,
    decorated_tetrahedron_closed_form,
    tetrahedron,
    tetrahedron_closed_form,
    unary_chain,
)
from .linalg import det
from .sigalg import sig
from .tracteval import METHODS, PreconditionError, eval_method
from .xform import SingularMatrixError, apply_co, apply_contra

__all__ = ["RunConfig", "main", "EXIT_OK", "EXIT_USAGE", "EXIT_HARD", "EXIT_REFUSED", "EXIT_SELFCHECK"]

EXIT_OK, EXIT_USAGE, EXIT_HARD, EXIT_REFUSED, EXIT_SELFCHECK = 0, 1, 2, 3, 4

OUTPUT_MODES = ("exact", "float", "report")


@dataclass
class RunConfig:
    verb: str
    paths: list = field(default_factory=list)
    method: str = "auto"
    bound: int | None = None
    seed: int = 0
    output: str = "exact"

    def edge_bound(self) -> int:
        return brute_bound() if self.bound is None else self.bound


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(z: Cyclo, mode: str) -> str:
    if mode == "float":
        c = to_float(z)
        return f"{c.real:.12g}" if abs(c.imag) < 1e-12 else f"{c.real:.12g}{c.imag:+.12g}j"
    return format_cyclo(z)


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


# --- classify ----------------------------------------------------------------

def cmd_classify(cfg: RunConfig, out) -> int:
    sigs = parse_sig_file(_read(cfg.paths[0]))
    if not sigs:
        raise UsageError("signature file declares no signatures")
    names = list(sigs)
    verdict = classify_set(list(sigs.values()))
    by_sig = {}
    for name, s in sigs.items():
        by_sig.setdefault(s, name)

    def label(s):
        return by_sig.get(s, format_sig(s)) if s is not None else "-"

    print(f"verdict: {verdict.outcome}", file=out)
    if verdict.tractable:
        print(f"case: {verdict.case}", file=out)
        if verdict.sigma is not None:
            print(f"sigma: {'+' if verdict.sigma > 0 else '-'}", file=out)
        w = verdict.witness
        if w is not None:
            print(f"witness.target: {w.target}", file=out)
            print(f"witness.T: {format_matrix(w.T) if w.T is not None else '-'}", file=out)
            if w.mu_power is not None:
                e, val = w.mu_power
                print(f"witness.mu: mu^{e} = {format_cyclo(val)}", file=out)
            if len(w.tags) == len(names):
                for name, tag in zip(names, w.tags):
                    print(f"witness.class.{name}: {tag}", file=out)
    for k, (rule, s) in enumerate(verdict.chain, 1):
        print(f"rule.{k}: {rule} {label(s)}", file=out)
    print(f"confidence: {verdict.confidence}", file=out)
    return EXIT_OK if verdict.tractable else EXIT_HARD


# --- eval --------------------------------------------------------------------

def cmd_eval(cfg: RunConfig, out) -> int:
    grid = parse_grid_file(_read(cfg.paths[0]))
    if grid.dangling:
        raise UsageError("eval needs a closed grid (no dangle lines)")
    bound = cfg.edge_bound()
    try:
        res = eval_method(grid, cfg.method, bound=bound)
    except BoundExceeded as exc:
        print(f"refused: {exc}", file=out)
        print(f"hint: raise --bound or HOLANT_BRUTE_BOUND (now {bound})", file=out)
        return EXIT_REFUSED
    if cfg.output == "report":
        print(f"value: {format_cyclo(res.value)}", file=out)
        print(f"float: {_num(res.value, 'float')}", file=out)
        print(f"method: {res.method}", file=out)
        if res.verdict is not None:
            print(f"verdict: {res.verdict.outcome}", file=out)
            if res.verdict.case:
                print(f"case: {res.verdict.case}", file=out)
    else:
        print(f"{_num(res.value, cfg.output)} ({res.method})", file=out)
    return EXIT_OK


# --- transform ---------------------------------------------------------------

def cmd_transform(cfg: RunConfig, out, side: str) -> int:
    T = parse_matrix(cfg.paths[0])
    f = parse_sig_literal(cfg.paths[1])
    g = apply_contra(T, f) if side == "contra" else apply_co(f, T)
    print(format_sig(g) if cfg.output != "float" else "[" + ", ".join(_num(x, "float") for x in g.entries) + "]", file=out)
    return EXIT_OK


# --- gadget ------------------------------------------------------------------

GADGETS = {
    "tetrahedron": ("t",),
    "decorated-tetrahedron": ("c", "t"),
    "chain": ("x", "s"),
    "binary-chain": ("v", "a", "b"),
    "approx": ("k",),
}


def _gadget_params(name: str, raw: list) -> dict:
    if name not in GADGETS:
        raise UsageError(f"unknown gadget {name!r}; choose from {', '.join(GADGETS)}")
    params = {}
    for item in raw:
        key, sep, val = item.partition("=")
        if not sep or key not in GADGETS[name]:
            raise UsageError(f"gadget {name} takes {', '.join(k + '=' for k in GADGETS[name])}; got {item!r}")
        params[key] = val
    missing = [k for k in GADGETS[name] if k not in params]
    if missing:
        raise UsageError(f"gadget {name} is missing {', '.join(missing)}")
    return params


def _int_param(params, key, lo):
    try:
        v = int(params[key])
    except ValueError as exc:
        raise UsageError(f"{key} must be an integer") from exc
    if v < lo:
        raise UsageError(f"{key} must be >= {lo}")
    return v


def cmd_gadget(name: str, raw: list, out) -> int:
    p = _gadget_params(name, raw)
    if name == "approx":
        k = _int_param(p, "k", 0)
        _, a = approx_sequence(k)
        closed = approx_a(k)
        print(f"a_{k}: {format_cyclo(a)}", file=out)
        print(f"closed-form: {format_cyclo(closed)}", file=out)
        print(f"match: {'yes' if a == closed else 'no'}", file=out)
        return EXIT_OK if a == closed else EXIT_SELFCHECK
    if name == "chain":
        x, s = parse_cyclo(p["x"]), _int_param(p, "s", 1)
        got, closed = unary_chain(x, s), sig(s * x, 1, 0)
    else:
        vals = {k: parse_cyclo(v) for k, v in p.items()}
        if name == "tetrahedron":
            got, closed = tetrahedron(vals["t"]), tetrahedron_closed_form(vals["t"])
        elif name == "decorated-tetrahedron":
            got = decorated_tetrahedron(vals["c"], vals["t"])
            closed = decorated_tetrahedron_closed_form(vals["c"], vals["t"])
        else:
            v, a, b = vals["v"], vals["a"], vals["b"]
            got, closed = binary_chain(v, a, b), sig(v * v + 2 * b * v + a, v + b, 1)
    print(f"signature: {format_sig(got)}", file=out)
    print(f"closed-form: {format_sig(closed)}", file=out)
    print(f"match: {'yes' if got == closed else 'no'}", file=out)
    if got.arity == 4:
        print(f"det-compressed: {format_cyclo(det(compressed(got)))}", file=out)
    return EXIT_OK if got == closed else EXIT_SELFCHECK


# --- selfcheck ---------------------------------------------------------------

def cmd_selfcheck(cfg: RunConfig, mutate: str | None, out) -> int:
    if mutate is not None and mutate not in selfcheck.MUTATIONS:
        raise UsageError(f"unknown mutation {mutate!r}; choose from {', '.join(selfcheck.MUTATIONS)}")
    results = selfcheck.run_checks(cfg.seed, mutate)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.check_id}"
        print(line + (f" ({r.detail})" if r.detail else ""), file=out)
    failed = [r.check_id for r in results if not r.passed]
    print(f"seed: {cfg.seed}", file=out)
    print(f"summary: {len(results) - len(failed)}/{len(results)} passed", file=out)
    if failed:
        print(f"violated: {', '.join(failed)}", file=out)
        return EXIT_SELFCHECK
    return EXIT_OK


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=OUTPUT_MODES, default="exact", help="exact literals, floats, or key:value report")

    ap = _Parser(prog="holant", description="Exact Holant classification and evaluation.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify the signature set in FILE")
    c.add_argument("file")

    e = sub.add_parser("eval", parents=[common], help="evaluate the Holant of the grid in FILE")
    e.add_argument("file")
    e.add_argument("--method", choices=METHODS, default="auto")
    e.add_argument("--bound", type=int, default=None, help="edge bound for brute force (default: $HOLANT_BRUTE_BOUND or 24)")

    t = sub.add_parser("transform", parents=[common], help="apply a 2x2 matrix to a signature")
    t.add_argument("matrix", help="[[a,b],[c,d]] or Z, Zinv, H2, D, X, I")
    t.add_argument("signature", help="[f0, f1, ...]")
    t.add_argument("--side", choices=("contra", "co"), default="contra", help="contra: T^(x n) f; co: f T^(x n)")

    g = sub.add_parser("gadget", help="compute a named gadget next to its closed form")
    g.add_argument("name", help=", ".join(GADGETS))
    g.add_argument("params", nargs="*", help="key=value")

    s = sub.add_parser("selfcheck", help="run the seeded invariant suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mutate", default=None, help="tamper with a constant: " + ", ".join(selfcheck.MUTATIONS))
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        verb=args.verb,
        paths=[p for p in (getattr(args, "file", None), getattr(args, "matrix", None), getattr(args, "signature", None)) if p is not None],
        method=getattr(args, "method", "auto"),
        bound=getattr(args, "bound", None),
        seed=getattr(args, "seed", 0),
        output=getattr(args, "output", "exact"),
    )
    try:
        if cfg.verb == "classify":
            return cmd_classify(cfg, out)
        if cfg.verb == "eval":
            return cmd_eval(cfg, out)
        if cfg.verb == "transform":
            return cmd_transform(cfg, out, args.side)
        if cfg.verb == "gadget":
            return cmd_gadget(args.name, args.params, out)
        return cmd_selfcheck(cfg, args.mutate, out)
    except (UsageError, FormatError, CycloParseError, SingularMatrixError, PreconditionError) as exc:
        print(f"holant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridError as exc:
        print(f"holant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
