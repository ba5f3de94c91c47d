"""Long-running solution-count sweep over a range of primes.

This is the full-scale experiment, not part of CI: against a complete curve
database (complete through conductor 350000, roughly a hundred megabytes) the
sweep for the unit equation with base primes {2, 3} covers every prime p with
2^8 * 3 * p below the completeness bound, i.e. p <= 449, and takes minutes to
hours depending on the machine.  With the committed desk-scale fixtures only
the handful of primes they cover will produce rows; everything else is
reported as db-insufficient.

Example:
    python scripts/run_stats_sweep.py --cubic 0,1,-1,0 --base-primes 2,3 \
        --vary-prime-range 5..449 --db /path/to/allcurves
"""
import sys

from thuemahler.cli import main

if __name__ == "__main__":
    sys.exit(main(["stats"] + sys.argv[1:]))
