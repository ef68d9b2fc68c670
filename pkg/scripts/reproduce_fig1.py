"""
vdw reference run

Runs the built-in 1D van der Waals recipe and compares the summary with
the reference densities, peak counts and period.
"""

import sys
import os
import argparse
import logging

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from gpsolid.cli.fig1 import FIG1_MU, run_fig1
from gpsolid.config import settings

# mu -> (rho, tolerance, peaks or None)
EXPECTED = {
    1.0: (0.47, 0.05, None),
    80.0: (39.0, 1.5, None),
    90.0: (44.0, 1.5, 25),
    150.0: (77.0, 2.0, 26),
}
PERIOD = (1.6, 0.1)


def check_row(row) -> bool:
    rho, tol, peaks = EXPECTED[row.mu]
    ok = abs(row.rho - rho) <= tol
    if peaks is not None:
        ok = ok and abs(row.peaks - peaks) <= 1
        ok = ok and row.period is not None and abs(row.period - PERIOD[0]) <= PERIOD[1]
    mark = "OK" if ok else "!!"
    period = f"{row.period:.3f}" if row.period is not None else "-"
    print(f"  [{mark}] mu={row.mu:g}: rho={row.rho:.3f} (expect {rho:g}±{tol:g}) peaks={row.peaks} period={period}")
    return ok


def main():
    parser = argparse.ArgumentParser(description="Reproduce the 1D vdw ground states on (0, 40)")
    parser.add_argument("--out", default=os.path.join(settings.OUTPUT_DIR, "fig1"))
    parser.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    args = parser.parse_args()

    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    print("\n=== vdw reference run ===\n")
    rows, paths = run_fig1(args.out, mu_list=FIG1_MU, jobs=min(args.jobs, len(FIG1_MU)))

    passed = sum(check_row(row) for row in rows)
    converged = all(row.converged for row in rows)
    print(f"\n  {passed}/{len(rows)} rows within tolerance, converged={converged}")
    print(f"  {len(paths)} file(s) in {args.out}\n")

    return 0 if passed == len(rows) and converged else 1


if __name__ == "__main__":
    sys.exit(main())
