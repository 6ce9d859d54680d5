"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs on both backends and the results are compared, so the
benchmark doubles as a parity check.
"""
import argparse
import time

from wdrd import _backend
from wdrd import constructions as C
from wdrd.search import build_plan


def _label_matrix(g):
    from wdrd.graph import two_way_distance
    return two_way_distance(g).label_matrix()


def case_distances(mod, g):
    return mod.distance_matrix(g.adj.view("uint8")).tolist()


def case_tensor(mod, g):
    labels, lab = _label_matrix(g)
    p, bad = mod.count_tensor(lab, len(labels))
    return p.tolist(), bad


def case_search(mod, base, prune):
    kern = mod.SearchKernel(build_plan(base, prune))
    found = kern.run(0, -1, None)
    return kern.visited, list(kern.pruned), sorted(found)


CASES = [
    ("distances doob(1,1)", case_distances, (C.doob(1, 1),)),
    ("tensor T x T x T", case_tensor, (C.product_all([C.cayley((3,), [1])] * 3),)),
    ("tensor Cay(Z4xZ4)", case_tensor, (C.cayley((4, 4), C.DOOB_ORIENTED_CONNECTION),)),
    ("search K4 unpruned", case_search, (C.complete_graph(4), ())),
    ("search H(3,2) unpruned", case_search, (C.hamming(3, 2), ())),
    ("search folded_cube(4) regular", case_search, (C.folded_cube(4), ("regular-degrees",))),
    ("search H(2,3) line-local", case_search, (C.hamming(2, 3), ("line-local",))),
]


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = _backend.get("python")
    try:
        nat = _backend.get("native")
    except RuntimeError:
        raise SystemExit("native kernels not built; run pip install -e . first")
    print(f"{'case':34s} {'native s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn, cargs in CASES:
        tn, rn = best_of(fn, (nat,) + cargs, args.repeat)
        tp, rp = best_of(fn, (py,) + cargs, 1)
        if rn != rp:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:34s} {tn:10.4f} {tp:10.4f} {tp / max(tn, 1e-9):8.1f}x")


if __name__ == "__main__":
    main()
