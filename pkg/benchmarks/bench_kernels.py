"""Compare the compiled and pure-Python BFS kernels on a few known orbits.

    python benchmarks/bench_kernels.py [--repeat 3] [--large] [--json out.json]

``--large`` adds the 3072-orbit reconstructed from catalog row 9:101 (368,640
labeled states).

Both kernels run on identical inputs; the script fails if their answers differ.
"""

from __future__ import annotations

import argparse
import json
import statistics
import time
from fractions import Fraction

import numpy as np

from finorbits.orbits import ClassGraph, kernels
from finorbits.orbits import constructors as C
from finorbits.orbits.bfs import _rank0, permutation_table

CASES = {
    "F (16)": C.tuple_f,
    "one-letter-9 (9)": lambda: C.one_letter_9(Fraction(1, 3)),
    "one-letter-12 (12)": lambda: C.one_letter_12(Fraction(1, 3)),
    "three-letter-4 (4)": lambda: C.three_letter_4(Fraction(1, 3), Fraction(1, 4), Fraction(1, 5)),
}


def _best(fn, repeat: int) -> tuple[float, object]:
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def _class_walk(t, impl):
    saved = kernels.class_bfs
    kernels.class_bfs = impl
    try:
        return len(ClassGraph(t))
    finally:
        kernels.class_bfs = saved


def _row_9_101():
    from finorbits.orbits import load_catalog
    from finorbits.signatures import reconstruct_tuple

    return reconstruct_tuple(load_catalog().row(9, "101").signature()).tuple


def bench(repeat: int, large: bool = False) -> list[dict]:
    compiled_labeled = kernels.compiled_labeled_bfs()
    if compiled_labeled is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
    from finorbits.orbits import _core  # noqa: F401  (built above)

    cases = dict(CASES)
    if large:
        cases["row 9:101 (3072)"] = _row_9_101
    rows = []
    for name, build in cases.items():
        t = build()
        graph = ClassGraph(t)
        perms, ptab = permutation_table(t.n)
        pidx = {p: i for i, p in enumerate(perms)}
        args = (
            graph.trans,
            np.asarray(ptab, dtype=np.int64),
            0,
            pidx[tuple(_rank0(t.labels, t.n))],
            pidx[tuple(range(t.n))],
            10_000_000,
        )
        tc, rc = _best(lambda: compiled_labeled(*args), repeat)
        tp, rp = _best(lambda: kernels.python_labeled_bfs(*args), repeat)
        if tuple(rc) != tuple(rp):
            raise SystemExit(f"{name}: kernels disagree {rc} vs {rp}")
        row = {"case": name, "classes": len(graph), "labeled_states": int(rc[0]),
               "labeled_cython_s": tc, "labeled_python_s": tp}
        if graph.group is not None and not name.startswith("row"):
            cc, nc = _best(lambda: _class_walk(t, _core.class_bfs), repeat)
            cp, np_ = _best(lambda: _class_walk(t, kernels.python_class_bfs), repeat)
            if nc != np_:
                raise SystemExit(f"{name}: class walks disagree {nc} vs {np_}")
            row.update(class_cython_s=cc, class_python_s=cp)
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="include the 368,640-state orbit")
    ap.add_argument("--json", default=None, help="also write results here")
    args = ap.parse_args()
    rows = bench(args.repeat, args.large)
    print(f"{'case':22} {'states':>8} {'labeled cy':>11} {'labeled py':>11} {'speedup':>8}"
          f" {'class cy':>9} {'class py':>9}")
    for r in rows:
        sp = r["labeled_python_s"] / max(r["labeled_cython_s"], 1e-9)
        cls = (f" {r['class_cython_s']:9.3f} {r['class_python_s']:9.3f}"
               if "class_cython_s" in r else f" {'-':>9} {'-':>9}")
        print(f"{r['case']:22} {r['labeled_states']:8d} {r['labeled_cython_s']:11.4f}"
              f" {r['labeled_python_s']:11.4f} {sp:7.1f}x{cls}")
    print("median labeled speedup:",
          f"{statistics.median(r['labeled_python_s'] / max(r['labeled_cython_s'], 1e-9) for r in rows):.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
