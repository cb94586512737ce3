#!/usr/bin/env python3
"""Run the profile-comparison check over a family of test domains.

Writes one JSON report per domain plus a summary table to stdout. The
margin 1 − sup L/L* should shrink as the ellipse family approaches the
disk.
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from isoperim import profile as prof
from isoperim.geometry import SupportCurve


def build_suite():
    suite = {
        "ellipse_sqrt2": SupportCurve.ellipse(np.sqrt(2.0), 1.0 / np.sqrt(2.0)),
        "fourier_domain": SupportCurve((1.0, 0.0, 0.1, 0.0, 0.004))
        .normalized_to(np.pi),
    }
    for eps in (0.3, 0.1, 0.01):
        suite[f"ellipse_eps_{eps}"] = SupportCurve.ellipse(1.0 + eps,
                                                           1.0 / (1.0 + eps))
    return suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=256)
    parser.add_argument("--out", default="conjecture_suite.json")
    args = parser.parse_args()

    results = {}
    print(f"{'domain':<18} {'sup L/L*':>12} {'margin':>12} {'argmax A':>10} passed")
    for name, curve in build_suite().items():
        start = time.monotonic()
        report = prof.conjecture_check(curve, args.samples)
        results[name] = report.to_dict()
        results[name]["seconds"] = round(time.monotonic() - start, 2)
        print(f"{name:<18} {report.sup_ratio:>12.8f} {report.margin:>12.2e} "
              f"{report.argmax_area:>10.4f} {report.passed}")

    Path(args.out).write_text(json.dumps(results, indent=2, sort_keys=True),
                              encoding="utf-8")
    print(f"\nwrote {args.out}")
    if not all(r["passed"] for r in results.values()):
        sys.exit(1)


if __name__ == "__main__":
    main()
