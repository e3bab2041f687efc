"""Walk from separated eigenfunctions to the degenerate energy levels.

Run:  python demos/01_spectrum.py
"""

from eop import ModelParams, build_eigenfunction, energy_level, hamiltonian_residual, make_state, spectrum_table
from eop.spectrum import solve_constraints

P = ModelParams(1, 2, 3)

# A basis state is labelled by (N, m, n); m must reach mu = n + (gamma+delta-1)/2.
s = make_state(1, 4, 2, P)
psi = build_eigenfunction(s)
print(f"state N=1 m=4 n=2: rho={s.rho}, mu={s.mu}, E={s.E}")
for name, text in psi.format().items():
    print(f"  {name:9} {text}")
print("  residuals", [str(r) for r in hamiltonian_residual(s, psi)])

# The energy depends on N + m only, so each level collects several states.
print("\nlevels up to p = 9 (alpha = 1)")
for row in spectrum_table(9, 1):
    print(f"  p={row.p}  E={row.E}  states={list(row.states)}")

print("\nenergy_level(2, 1, 2) =", energy_level(2, 1, 2))

# The deformed-oscillator route reaches the same numbers from the boundary constraints.
for p in (1, 3, 5):
    sol = solve_constraints(p, 1)
    corner = sol.entry("Phi1(p+1,p+1)")
    print(f"p={p}: u1={sol.u1} u2={sol.u2} E={sol.E}  Phi1 corner = {corner.value.value}")
