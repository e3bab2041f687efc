"""Apply every ladder operator to one state and compare with the closed forms.

Run:  python demos/02_ladders.py
"""

from eop import ModelParams, ladder_match, make_state
from eop.model import SINGLE

P = ModelParams(1, 2, 3)
s = make_state(2, 5, 2, P)
print(f"state N=2 m=5 n=2 (mu={s.mu})\n")
print(f"{'op':10} {'derived':>14} {'stated':>14}  target")
for op in SINGLE:
    la = ladder_match(op, s)
    coeff = "annihilated" if la.annihilated else str(la.coefficient)
    stated = "-" if la.stated is None else str(la.stated)
    print(f"{op:10} {coeff:>14} {stated:>14}  {la.output}")
