"""Print every recorded identity whose stated form disagrees with the engine.

Run:  python demos/03_findings.py
Findings never change the exit status; asserted identities do.
"""

import sys

from eop import run_suite

failed = False
for rep in run_suite("all"):
    if rep.asserted:
        failed |= not rep.passed
        continue
    if rep.passed:
        print(f"agrees     {rep.identity_id}")
        continue
    first = rep.failures[0]
    print(f"disagrees  {rep.identity_id}: {rep.ratio_pattern()}; e.g. {first.state} "
          f"stated={first.expected} derived={first.measured}")
sys.exit(1 if failed else 0)
