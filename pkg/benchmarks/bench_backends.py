"""Compare the numba and numpy empty-ball scan kernels.

The backend is fixed at import time by ``MESHVORONOI_BACKEND``, so each
backend runs in its own interpreter.  Both must classify every triangle the
same way; the script prints timings and exits nonzero on a mismatch.

    python benchmarks/bench_backends.py --sizes 40,80,120 --repeat 3
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from meshvoronoi import _accel
from meshvoronoi.generators import generate

sizes, repeat = json.loads(sys.argv[1])
out = {"backend": _accel.backend(), "rows": []}
for n in sizes:
    pts = np.array(generate("uniform", n, 0))
    w = np.zeros(n)
    w[: n // 2] = 0.01
    _accel.scan_empty_balls(pts[:, 0], pts[:, 1], w)  # compile / warm up
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        tris, flags = _accel.scan_empty_balls(pts[:, 0], pts[:, 1], w)
        best = min(best, time.perf_counter() - t0)
    order = np.lexsort(tris.T[::-1])
    key = np.concatenate([tris[order].ravel(), flags[order].astype(np.int64)])
    out["rows"].append({"n": n, "seconds": best, "count": int(len(tris)), "digest": key.tobytes().hex()})
print(json.dumps(out))
"""


def run_backend(name: str, sizes, repeat: int) -> dict:
    env = dict(os.environ, MESHVORONOI_BACKEND=name)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([sizes, repeat])],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="40,80,120")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    results = {name: run_backend(name, sizes, args.repeat) for name in ("numba", "numpy")}
    if results["numba"]["backend"] != "numba":
        print("numba is not importable; only the numpy backend ran")
    print(f"{'n':>6} {'triangles':>10} {'numba s':>10} {'numpy s':>10} {'speedup':>8}  match")
    ok = True
    for a, b in zip(results["numba"]["rows"], results["numpy"]["rows"]):
        same = a["digest"] == b["digest"]
        ok &= same
        digest = hashlib.sha1(a["digest"].encode()).hexdigest()[:8]
        print(
            f"{a['n']:>6} {a['count']:>10} {a['seconds']:>10.4f} {b['seconds']:>10.4f} "
            f"{b['seconds'] / a['seconds']:>8.1f}  {'yes' if same else 'NO'} {digest}"
        )
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
