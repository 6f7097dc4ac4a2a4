"""Sweep random foliated Lie algebras and tabulate worst identity residuals.

    python3 scripts/random_identity_sweep.py --samples 2000 --seed 7
"""

import argparse
import json
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass

import numpy as np

from folia.diagnostics import tautness_report
from folia.lie_frame import validate_algebra
from folia.random_algebras import FAMILIES, random_foliated_algebra
from folia.transverse import compute_geometry


@dataclass
class SweepConfig:
    samples: int = 1000
    seed: int = 0
    family: str | None = None
    tolerance: float = 1e-9


def run(cfg: SweepConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    worst = defaultdict(float)
    verdicts, families = Counter(), Counter()
    for _ in range(cfg.samples):
        family = cfg.family or FAMILIES[int(rng.integers(len(FAMILIES)))]
        alg, fol = random_foliated_algebra(rng, family)
        rep = tautness_report(compute_geometry(validate_algebra(alg), fol, cfg.tolerance))
        families[family] += 1
        verdicts[rep.verdict] += 1
        for name, value in rep.identity_residuals.items():
            worst[name] = max(worst[name], value)
    return {"config": asdict(cfg), "families": dict(families), "verdicts": dict(verdicts), "worst": dict(worst)}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=SweepConfig.samples)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--tolerance", type=float, default=SweepConfig.tolerance)
    p.add_argument("--json", action="store_true", help="print the summary as JSON")
    args = p.parse_args(argv)
    out = run(SweepConfig(args.samples, args.seed, args.family, args.tolerance))
    if args.json:
        print(json.dumps(out, indent=2))
        return
    print(f"samples by family: {out['families']}")
    print(f"verdicts: {out['verdicts']}")
    for name, value in sorted(out["worst"].items(), key=lambda kv: -kv[1]):
        print(f"  {name:22s} {value:.3e}")


if __name__ == "__main__":
    main()
