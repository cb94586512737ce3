#!/usr/bin/env python3
"""Export symmetric-family profile tables and the mode-condition zero set.

Produces CSV artifacts for plotting: one profile table per domain and the
point cloud of cos y sin(xy) = x sin y cos(xy) over a rectangle.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from isoperim import perturbation as pert
from isoperim import profile as prof
from isoperim.geometry import SupportCurve


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=256)
    parser.add_argument("--outdir", default="profile_tables")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    domains = {
        "disk": SupportCurve.disk(),
        "ellipse_sqrt2": SupportCurve.ellipse(np.sqrt(2.0), 1.0 / np.sqrt(2.0)),
        "fourier_domain": SupportCurve((1.0, 0.0, 0.1, 0.0, 0.004))
        .normalized_to(np.pi),
    }
    for name, curve in domains.items():
        table = prof.symmetric_profile(curve, args.samples)
        path = outdir / f"profile_{name}.csv"
        path.write_text(table.to_csv(), encoding="utf-8")
        print(f"wrote {path} ({len(table.theta)} rows)")

    pts = pert.implicit_curve_sample((-8.0, 8.0), (0.01, 1.56), 500)
    lines = ["x,y"] + [f"{x:.17g},{y:.17g}" for x, y in pts]
    path = outdir / "mode_condition_zero_set.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(pts)} points)")


if __name__ == "__main__":
    main()
