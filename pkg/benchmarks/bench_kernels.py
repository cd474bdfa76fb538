"""Compare the compiled kernels against the pure-numpy fallback.

The backend is chosen at import time from ALMOSTCOVER_PURE_NUMPY, so each
backend runs in its own subprocess and reports timings for the trace scan
and the deficiency search; the parent checks both backends agree bit for
bit before printing the table.

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time

CASES_SCAN = [3, 4, 5]
CASES_G = [(4, 3, 1), (4, 4, 2), (3, 2, 1)]


def run_backend():
    from almostcover import _kernels, ilp

    out = {"backend": _kernels.backend_name(), "scan": {}, "g": {}}
    # warm-up so jit compilation is not billed to the first case
    _kernels.hyperplane_trace_scan(2)
    for n in CASES_SCAN:
        t0 = time.perf_counter()
        traces = _kernels.hyperplane_trace_scan(n)
        dt = time.perf_counter() - t0
        digest = sorted(traces)
        out["scan"][str(n)] = {"time": dt, "count": len(traces), "first": digest[0], "last": digest[-1]}
    for n, m, k in CASES_G:
        cc = ilp._coverage_matrix(n, ilp.maximal_trace_columns(n))
        _kernels.g_search(cc, 1, 1, 1 << n)  # warm-up
        t0 = time.perf_counter()
        best, wit, nodes, done = _kernels.g_search(cc, m, k, 1 << n)
        dt = time.perf_counter() - t0
        out["g"]["%d,%d,%d" % (n, m, k)] = {
            "time": dt,
            "best": int(best),
            "nodes": int(nodes),
            "completed": bool(done),
        }
    json.dump(out, sys.stdout)


def main():
    results = {}
    for pure in ("", "1"):  # nonempty value forces the numpy fallback
        env = dict(os.environ, ALMOSTCOVER_PURE_NUMPY=pure)
        proc = subprocess.run(
            [sys.executable, __file__, "--child"], env=env, capture_output=True, text=True
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            sys.exit(1)
        data = json.loads(proc.stdout)
        results[data["backend"]] = data
    if set(results) != {"numba", "numpy"}:
        print("warning: numba backend unavailable; got %s" % sorted(results))
    ref, alt = results.get("numba"), results.get("numpy")
    if ref and alt:
        for sec in ("scan", "g"):
            for key in ref[sec]:
                a = {k: v for k, v in ref[sec][key].items() if k != "time"}
                b = {k: v for k, v in alt[sec][key].items() if k != "time"}
                assert a == b, "backend mismatch at %s %s: %s vs %s" % (sec, key, a, b)
        print("backends agree on all results\n")
    print("%-28s %12s %12s %8s" % ("case", "numba (s)", "numpy (s)", "speedup"))
    for sec, label in (("scan", "trace scan n="), ("g", "g search ")):
        keys = ref[sec] if ref else alt[sec]
        for key in keys:
            t1 = results["numba"][sec][key]["time"] if ref else float("nan")
            t2 = results["numpy"][sec][key]["time"] if alt else float("nan")
            sp = t2 / t1 if ref and alt and t1 > 0 else float("nan")
            print("%-28s %12.4f %12.4f %7.1fx" % (label + key, t1, t2, sp))


if __name__ == "__main__":
    if "--child" in sys.argv:
        run_backend()
    else:
        main()
