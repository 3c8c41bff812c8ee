"""
Counting complex zeros
======================

Argument-principle counts for the kernels of J_nu^(n) when nu < n - 1.
At n = 0 these are the classical Hurwitz counts; for n >= 1 the scan only
collects evidence.
"""

from bsderiv.conjectures import conjecture1_scan, hurwitz_verify, monotonicity_scan

# %%
# J_nu has 2 nonreal zeros (both purely imaginary) for -2 < nu < -1 and 4
# (none imaginary) for -3 < nu < -2.
for nu in (-0.5, -1.5, -2.5, -3.5):
    r = hurwitz_verify(nu)
    print(f"nu={nu:5}: nonreal {r.total_nonreal}, imaginary {r.purely_imaginary}, stable {r.stabilized}")

# %%
# Derivatives: measured counts next to the conjectured ones.  Counts can
# change inside a strip, which the table shows as disagreements.
for row in conjecture1_scan(1, 1, samples_per_strip=2):
    rep = row.report
    print(f"n=1 nu={row.nu:6.2f} strip {row.strip} [{row.part}] "
          f"conjectured {row.conjectured:2d} measured {rep.total_nonreal:2d} imaginary {rep.purely_imaginary}")

# %%
# The first positive zero of J_nu^(4) along increasing nu.
sc = monotonicity_scan(4, 1, [3.2, 3.5, 4.0, 5.0, 7.0])
print(sc.zeros, sc.monotone)
