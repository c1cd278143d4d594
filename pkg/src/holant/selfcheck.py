"""Seeded invariant suites run by ``holant selfcheck``.

Each check takes a ``random.Random`` and a constants table; mutation mode
tampers with one constant so the corresponding check must fail.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bridges import EO_SIG, eulerian_grid, matching_grid, vertex_cover_grid
from .classify import classify_set, classify_single, verify_verdict
from .cyclo import I, ONE, Cyclo, zeta
from .grid import (
    approx_sequence,
    compressed,
    holant_brute,
    tetrahedron,
    tetrahedron_closed_form,
    transform_grid,
)
from .linalg import det
from .oracles import (
    count_eulerian_orientations,
    count_matchings,
    count_vertex_covers,
    random_regular_multigraph,
    random_simple_graph,
)
from .randgen import rand_bipartite_grid, rand_cyclo, rand_grid, rand_nonsingular, rand_nonzero, rand_sym, rand_vanishing
from .sigalg import SymSig, rd, sig, tensor_power, vd
from .tracteval import eval_auto
from .xform import Mat2, apply_co, apply_contra, named

__all__ = ["CHECKS", "MUTATIONS", "run_checks", "CheckResult"]


def default_constants() -> dict:
    return {
        "Zinv": named("Zinv"),
        "eo_sig": EO_SIG,
        "approx": lambda k: Fraction(1, 3) - Fraction(1, 3) * Fraction(-1, 2) ** k,
        "tetra_det": Cyclo(4),
    }


MUTATIONS: dict[str, Callable[[dict], None]] = {
    "zinv": lambda c: c.__setitem__("Zinv", Mat2(c["Zinv"].t00, c["Zinv"].t01, c["Zinv"].t10, -c["Zinv"].t11)),
    "eo-signature": lambda c: c.__setitem__("eo_sig", sig(3, 0, 1, 0, 2)),
    "approx": lambda c: c.__setitem__("approx", lambda k: Fraction(1, 3) + Fraction(1, 3) * Fraction(-1, 2) ** k),
    "tetra-det": lambda c: c.__setitem__("tetra_det", Cyclo(8)),
}


def _field(rng, c) -> bool:
    for _ in range(30):
        x, y = rand_cyclo(rng, 8), rand_nonzero(rng, conductor=12)
        if (x * y) / y != x or x * (y + x) != x * y + x * x:
            return False
    return True


def _z_identity(rng, c) -> bool:
    return apply_contra(c["Zinv"], sig(3, 0, 1, 0, 3)) == sig(0, 0, 2, 0, 0) and apply_co(
        sig(1, 0, 1), named("Z")
    ) == sig(0, 1, 0)


def _valiant(rng, c) -> bool:
    left = [rand_sym(rng, a) for a in (1, 2, 3)]
    right = [rand_sym(rng, a) for a in (1, 2, 3)]
    for _ in range(8):
        g = rand_bipartite_grid(rng, left, right, max_edges=7)
        T = rand_nonsingular(rng)
        if holant_brute(g) != holant_brute(transform_grid(g, T)):
            return False
    return True


def _rd_vd(rng, c) -> bool:
    for _ in range(50):
        f = rand_sym(rng, rng.randint(1, 6))
        if f.is_zero():
            continue
        for s in (1, -1):
            if rd(f, s) + vd(f, s) != f.arity:
                return False
    return True


def _vanishing(rng, c) -> bool:
    for _ in range(5):
        sigma = rng.choice((1, -1))
        f = rand_vanishing(rng, rng.randint(2, 4), sigma)
        g = rand_grid(rng, [f], max_edges=6)
        if holant_brute(g):
            return False
    return True


def _eo_bridge(rng, c) -> bool:
    for _ in range(3):
        n = rng.randint(3, 5)
        g = random_regular_multigraph(rng, n, 4)
        if holant_brute(eulerian_grid(g, c["eo_sig"])) != 2**n * count_eulerian_orientations(g):
            return False
    return True


def _vc_matching(rng, c) -> bool:
    for _ in range(4):
        g = random_simple_graph(rng, rng.randint(2, 6), 0.5)
        lam = rng.choice([ONE, Cyclo(2), I])
        if holant_brute(vertex_cover_grid(g, lam)) != count_vertex_covers(g, lam):
            return False
        if holant_brute(matching_grid(g, lam)) != count_matchings(g, lam):
            return False
    return True


def _tetrahedron(rng, c) -> bool:
    for t in range(-2, 3):
        f = tetrahedron(t)
        if f != tetrahedron_closed_form(t) or det(compressed(f)) != c["tetra_det"]:
            return False
    return True


def _approx(rng, c) -> bool:
    return all(approx_sequence(k)[1] == Cyclo(c["approx"](k)) for k in range(8))


def _classifier(rng, c) -> bool:
    a = zeta(8)
    hard = [sig(3, 0, 1, 0, 3), sig(0, 1, 0, 0), sig(1, 1, 0, 0)]
    easy = [sig(1, 0, 0, 1), sig(2, 0, 2, 0, 2), SymSig([I**k * (5 - 2 * k) for k in range(6)])]
    easy.append(tensor_power((1, a), 3) + tensor_power((1, -a), 3).scale(I))
    if any(classify_single(f).tractable for f in hard):
        return False
    for f in easy:
        v = classify_single(f)
        if not v.tractable or not verify_verdict(v, [f]):
            return False
    return True


def _dispatch(rng, c) -> bool:
    F = [sig(1, 0, 0, -1), sig(1, 0, 1), sig(1, I)]
    for _ in range(4):
        g = rand_grid(rng, F, max_edges=8)
        if eval_auto(g).value != holant_brute(g):
            return False
    return verify_verdict(classify_set(F), F)


CHECKS: dict[str, Callable] = {
    "cyclo.field-axioms": _field,
    "xform.z-identity": _z_identity,
    "grid.valiant-invariance": _valiant,
    "sigalg.rd-plus-vd": _rd_vd,
    "sigalg.vanishing-holant-zero": _vanishing,
    "oracles.eulerian-bridge": _eo_bridge,
    "oracles.cover-matching-bridge": _vc_matching,
    "grid.tetrahedron-closed-form": _tetrahedron,
    "grid.approximation-sequence": _approx,
    "classify.named-instances": _classifier,
    "tracteval.dispatch-equals-brute": _dispatch,
}


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    detail: str = ""


def run_checks(seed: int = 0, mutate: str | None = None) -> list[CheckResult]:
    consts = default_constants()
    if mutate is not None:
        if mutate not in MUTATIONS:
            raise KeyError(f"unknown mutation {mutate!r}")
        MUTATIONS[mutate](consts)
    out = []
    for cid, fn in CHECKS.items():
        rng = random.Random(f"{seed}:{cid}")
        try:
            ok = bool(fn(rng, consts))
            out.append(CheckResult(cid, ok))
        except Exception as exc:  # a crash is a failure of that invariant
            out.append(CheckResult(cid, False, f"{type(exc).__name__}: {exc}"))
    return out
