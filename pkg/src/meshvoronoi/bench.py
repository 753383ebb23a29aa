"""Benchmark rows: one bound report per (family, size, seed)."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .generators import TWO_SCALE_K, generate
from .pipeline import PipelineConfig, compute

COLUMNS = (
    "family",
    "n",
    "seed",
    "m",
    "steiner_count",
    "f",
    "spread",
    "flips",
    "potential_flips",
    "ratio_flip",
    "ratio_potential",
    "ratio_size",
    "scaffolding_ratio",
    "heap_peak",
    "wall_time",
)


def bench_one(family: str, n: int, seed: int, cfg: PipelineConfig = PipelineConfig(), k: int = TWO_SCALE_K) -> dict:
    pts = generate(family, n, seed, k)
    res = compute(pts, cfg)
    row = {"family": family, "seed": seed}
    row.update(res.report.as_dict())
    row["m"] = res.stats.m
    row["heap_peak"] = res.stats.heap_peak
    row["flips_22"] = res.stats.flips_22
    row["flips_31"] = res.stats.flips_31
    return row


def _job(args):
    return bench_one(*args)


def run_bench(families, sizes, seeds, cfg: PipelineConfig = PipelineConfig(), jobs: int = 1, k: int = TWO_SCALE_K) -> list[dict]:
    """Rows in (family, size, seed) order whatever the completion order."""
    tasks = [(fam, n, s, cfg, k) for fam, n, s in product(families, sizes, seeds)]
    if jobs <= 1:
        return [_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_job, tasks))


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    return str(v)


def format_table(rows: list[dict], columns=COLUMNS) -> str:
    cells = [list(columns)] + [[_cell(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def format_rows(rows: list[dict]) -> str:
    """One JSON object per line, keys sorted."""
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
