"""Executable consistency checks behind ``pcnil verify``."""
from __future__ import annotations

import random

from .commutators import maltsev_basis, standard_commutators, tree_to_text, weight
from .graph import CommutationGraph
from .group import (NormalForm, collector, magnus, random_word, reconstruct,
                    tree_word)
from .lie import images_independent, lie_expand, rank_of_degree
from .words import generate_als


def degree_records(g: CommutationGraph, m: int) -> list[dict]:
    """Basis size against the rank oracle for every degree up to ``m``."""
    basis = maltsev_basis(g, m)
    als = generate_als(g, m)
    out = []
    for k in range(1, m + 1):
        basis_k = basis.of_weight(k)
        oracle = rank_of_degree(g, k)
        independent = images_independent(g, basis_k, k)
        out.append({
            "degree": k,
            "als_count": len(als[k]),
            "standard_count": len(standard_commutators(g, k)),
            "basis_count": len(basis_k),
            "oracle_rank": oracle,
            "independent": independent,
            "pass": len(basis_k) == oracle and independent,
        })
    return out


def alpha_failures(g: CommutationGraph, m: int) -> list[str]:
    """Basis elements whose expansion does not start with their Lie image."""
    bad = []
    for c in maltsev_basis(g, m):
        k = weight(c)
        s = magnus(g, tree_word(c), m) - 1
        if any(len(w) < k for w in s.terms) or s.degree_part(k) != lie_expand(g, c, m).series:
            bad.append(tree_to_text(c))
    return bad


def random_vector(rng: random.Random, size: int, spread: int = 2) -> tuple[int, ...]:
    return tuple(rng.randint(-spread, spread) for _ in range(size))


def run_trials(g: CommutationGraph, m: int, trials: int, seed: int = 0) -> dict:
    """Seeded round trips: word -> normal form -> word, vector -> word ->
    vector, and multiplicativity of collection."""
    rng = random.Random(seed)
    col = collector(g, m)
    letters = list(g.vertices)
    counts = {"round_trips_run": 0, "failures": 0, "failed": []}

    def record(ok: bool, what: str):
        counts["round_trips_run"] += 1
        if not ok:
            counts["failures"] += 1
            if len(counts["failed"]) < 10:
                counts["failed"].append(what)

    for _ in range(trials):
        u = random_word(rng, letters, 8, 3)
        v = random_word(rng, letters, 8, 3)
        nu = col.collect(u)
        record(magnus(g, reconstruct(nu), m) == magnus(g, u, m), f"expansion round trip of {u.to_text()!r}")
        record(col.collect(u * v) == col.mul(nu, col.collect(v)),
               f"homomorphism on {u.to_text()!r}, {v.to_text()!r}")
        vec = NormalForm(col.basis, random_vector(rng, len(col.basis), 1))
        record(col.collect(reconstruct(vec)) == vec, f"vector round trip {vec.exponents}")
    return counts


def verify_report(g: CommutationGraph, m: int, trials: int = 200, seed: int = 0) -> dict:
    records = degree_records(g, m)
    alpha = alpha_failures(g, m)
    tallies = run_trials(g, m, trials, seed)
    ok = all(r["pass"] for r in records) and not alpha and tallies["failures"] == 0
    return {
        "schema": "pcnil/1",
        "graph": g.to_json(),
        "class": m,
        "degrees": records,
        "oracle_ranks": [r["oracle_rank"] for r in records],
        "alpha_failures": alpha,
        "trials": trials,
        "seed": seed,
        "round_trips_run": tallies["round_trips_run"],
        "failures": tallies["failures"] + len(alpha) + sum(not r["pass"] for r in records),
        "failed": tallies["failed"],
        "pass": ok,
    }
