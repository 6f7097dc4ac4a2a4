"""Print a one-line summary per built-in fixture across a parameter grid.

    python3 scripts/run_fixtures.py --traces 3 4 5 --coshk 1.5 2 2.5
"""

import argparse
import math
from dataclasses import dataclass, field

from folia.diagnostics import scale_invariance_check, tautness_report
from folia.document import InputDocument, carriere, heisenberg, hrw7
from folia.lie_frame import validate_algebra
from folia.transverse import compute_geometry


@dataclass
class FixtureGrid:
    traces: list[int] = field(default_factory=lambda: [3, 4, 5])
    coshk: list[float] = field(default_factory=lambda: [1.5, 2.0, 2.5])
    factors: list[float] = field(default_factory=lambda: [0.25, 0.5, 2.0, 4.0])


def documents(grid: FixtureGrid):
    for t in grid.traces:
        yield f"carriere(trace={t})", carriere(t)
    for c in grid.coshk:
        yield f"hrw7(coshk={c})", hrw7(c)
    yield "heisenberg", heisenberg()


def summarize(label: str, doc: InputDocument, factors) -> str:
    alg = validate_algebra(doc.to_algebra())
    fol = doc.to_foliation()
    geom = compute_geometry(alg, fol)
    rep = tautness_report(geom)
    drift = max(abs(a - b) for a, b in (scale_invariance_check(alg, fol, f) for f in factors))
    mu = "-" if rep.jacobi_eigenvalue is None else f"{rep.jacobi_eigenvalue:.6f}"
    worst = max(rep.identity_residuals.values())
    return (
        f"{label:22s} {rep.verdict:8s} |kappa|={rep.kappa_norm:.6f} S={geom.scalar_q:+.6f} "
        f"mu={mu} |crit|={rep.critical_residual_norm:.6f} scale_drift={drift:.1e} worst_identity={worst:.1e}"
    )


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--traces", type=int, nargs="+", default=FixtureGrid().traces)
    p.add_argument("--coshk", type=float, nargs="+", default=FixtureGrid().coshk)
    args = p.parse_args(argv)
    grid = FixtureGrid(args.traces, args.coshk)
    for label, doc in documents(grid):
        print(summarize(label, doc, grid.factors))
    # closed forms for comparison
    for t in grid.traces:
        lr = math.log((t + math.sqrt(t * t - 4)) / 2)
        print(f"carriere(trace={t}) closed form: |kappa|={lr:.6f} S={-2 * lr * lr:+.6f} mu={2 * lr * lr:.6f}")


if __name__ == "__main__":
    main()
