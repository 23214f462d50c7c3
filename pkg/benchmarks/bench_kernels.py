"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times trace normalization, truncated series products, dense word expansion,
and end-to-end collection round trips (edgeless 3-vertex graph, class 4).
"""
import argparse
import random
import time

from pcnil._kernels import _fallback
from pcnil.graph import edgeless_graph, example_graph
from pcnil.group import Collector, random_word, reconstruct
from pcnil.trace_algebra import TruncatedSeries, _binom, monomial_table

try:
    from pcnil._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(kernels, rng):
    g = edgeless_graph(["a", "b", "c", "d"])
    m = 5
    words = [tuple(rng.randrange(4) for _ in range(rng.randint(2, 8))) for _ in range(20000)]
    masks = example_graph().masks + (0,)

    def norm():
        for w in words:
            kernels.normalize(tuple(x % 3 for x in w), masks[:3])

    one = TruncatedSeries.one(g, m)
    s = one
    for x in "abcdab":
        s = s * TruncatedSeries.letter_power(g, x, 2, m)

    def mul():
        for _ in range(5):
            kernels.series_mul(s.terms, s.terms, m, g.masks, {})

    t = monomial_table(g, m)
    syl = [(rng.randrange(4), [_binom(e, j) for j in range(m + 1)])
           for e in (rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(400))]

    def expand():
        kernels.expand_word(syl, t.right, t.degree, 4, m, len(t))

    return {"normalize (20k words)": norm, "series_mul (5 products)": mul,
            "expand_word (400 syllables)": expand}


def end_to_end(repeat):
    from pcnil import _kernels
    rng = random.Random(1)
    g = edgeless_graph(["a", "b", "c"])
    words = [random_word(rng, list(g.vertices), 8, 2) for _ in range(5)]

    def run():
        col = Collector(g, 4)
        for w in words:
            col.collect(reconstruct(col.collect(w)))

    out = {}
    saved = (_kernels.normalize, _kernels.series_mul, _kernels.expand_word)
    for name, mod in (("python", _fallback), ("cython", _ckernels)):
        if mod is None:
            continue
        _kernels.normalize, _kernels.series_mul, _kernels.expand_word = mod.normalize, mod.series_mul, mod.expand_word
        from pcnil import trace_algebra
        trace_algebra._CACHES.clear()
        trace_algebra._TABLES.clear()
        out[name] = best_of(run, repeat)
    _kernels.normalize, _kernels.series_mul, _kernels.expand_word = saved
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is available")
    rows = []
    for name in workloads(_fallback, random.Random(0)):
        py = best_of(workloads(_fallback, random.Random(0))[name], args.repeat)
        cy = best_of(workloads(_ckernels, random.Random(0))[name], args.repeat) if _ckernels else float("nan")
        rows.append((name, py, cy))
    e2e = end_to_end(args.repeat)
    rows.append(("collect round trips (5 words)", e2e["python"], e2e.get("cython", float("nan"))))
    print(f"{'workload':34} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, py, cy in rows:
        print(f"{name:34} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
