"""Full pipeline: refine, seed, run the kinetic loop, strip scaffolding."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .complex import InvariantViolation, Triangulation
from .kernel import WeightClass
from .kinetic import KineticState, RunStats, StepOutcome, postprocess, run, seed
from .mesher import MesherConfig, MeshResult, refine
from .oracle import BoundReport, bound_report, brute_weighted_delaunay, spread, verify_equal
from .simplices import SimplexSet

# mid-run oracle checks are only affordable on small meshes
AGREEMENT_CAP = 60


@dataclass(frozen=True)
class PipelineConfig:
    tau: float = 3.0
    box_scale: float = 3.0
    max_points: int = 2_000_000
    seed: int = 0
    check_invariants: bool = False

    def __post_init__(self):
        self.mesher()  # validates tau, box_scale and max_points

    def mesher(self) -> MesherConfig:
        return MesherConfig(self.tau, self.box_scale, self.max_points)

    def echo(self) -> dict:
        return {
            "tau": self.tau,
            "box_scale": self.box_scale,
            "max_points": self.max_points,
            "seed": self.seed,
            "check_invariants": self.check_invariants,
        }


@dataclass
class PipelineResult:
    points: list[tuple[float, float]]
    config: PipelineConfig
    mesh: MeshResult
    state: KineticState
    final: SimplexSet
    agreement_checks: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def stats(self) -> RunStats:
        return self.state.stats

    @property
    def triangulation(self) -> Triangulation:
        """The complex left by the kinetic loop (postprocessing does not modify it)."""
        return self.state.tri

    @property
    def report(self) -> BoundReport:
        return bound_report(self.stats)


class AgreementError(AssertionError):
    def __init__(self, t: Fraction, summary: str):
        super().__init__(f"maintained complex differs from the weighted oracle at t={t}: {summary}")
        self.t = t


def labeled_vertices(tri: Triangulation) -> list[tuple[tuple[float, float], WeightClass]]:
    """Every vertex ever created (removed ones included), as ``(point, kind)`` by id."""
    return [((tri.x[v], tri.y[v]), WeightClass(tri.kind[v])) for v in range(tri.n_vertices)]


def run_with_agreement(
    state: KineticState, sample: float = 1.0, rng: random.Random | None = None
) -> int:
    """Run the kinetic loop, comparing the complex to the weighted oracle between events.

    Between consecutive processed events at distinct times ``t0 < t1`` the
    complex is checked at ``(t0 + t1) / 2`` (with probability ``sample``), and
    once more after the last event.  Returns the number of checks made.
    """
    if not state.seeded:
        seed(state)
    tri = state.tri
    labeled = labeled_vertices(tri)
    rng = rng or random.Random(0)
    checks = 0
    prev = state.t_now
    snapshot = tri.simplices()

    def check(t: Fraction, complex_: SimplexSet) -> None:
        nonlocal checks
        diff = verify_equal(complex_, brute_weighted_delaunay(labeled, t))
        checks += 1
        if not diff.ok:
            raise AgreementError(t, diff.summary())

    def on_step(st: KineticState, outcome: StepOutcome) -> None:
        nonlocal prev, snapshot
        if outcome in (StepOutcome.FLIP22, StepOutcome.FLIP31, StepOutcome.FLIP42):
            if st.t_now > prev and rng.random() < sample:
                check((prev + st.t_now) / 2, snapshot)
            prev = st.t_now
            snapshot = tri.simplices()
        elif outcome is StepOutcome.EXHAUSTED:
            check(prev + 1, snapshot)

    run(state, on_step)
    return checks


def compute(
    points,
    cfg: PipelineConfig | None = None,
    trace: Callable[[dict], None] | None = None,
    on_mesh: Callable[[MeshResult], None] | None = None,
) -> PipelineResult:
    """Delaunay complex of ``points`` over their indices, with run statistics.

    ``on_mesh`` sees the refined mesh before the kinetic phase modifies it.
    """
    cfg = cfg or PipelineConfig()
    pts = [(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise ValueError("no input points")
    started = time.perf_counter()
    mesh = refine(pts, cfg.mesher())
    tri = mesh.triangulation
    if cfg.check_invariants:
        tri.validate(seed=cfg.seed)
    if on_mesh is not None:
        on_mesh(mesh)
    state = KineticState(tri, trace)
    seed(state)
    checks = 0
    if cfg.check_invariants and tri.n_vertices <= AGREEMENT_CAP:
        checks = run_with_agreement(state, rng=random.Random(cfg.seed))
    else:
        run(state)
    if cfg.check_invariants:
        tri.validate(seed=cfg.seed)
    out = postprocess(state)
    index = {v: i for i, v in enumerate(mesh.input_ids)}
    final = out.relabel(index)
    stats = state.stats
    stats.n = len(pts)
    stats.m = tri.n_vertices
    stats.steiner_count = mesh.steiner_count
    stats.spread = spread(pts) if len(pts) >= 2 else 1.0
    stats.wall_time = time.perf_counter() - started
    if len(final.vertices) != len(pts):
        raise InvariantViolation("output", "vertices", f"{len(final.vertices)} of {len(pts)} inputs in the output")
    return PipelineResult(pts, cfg, mesh, state, final, checks)
