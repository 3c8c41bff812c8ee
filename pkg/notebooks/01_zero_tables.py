"""
Zero tables and interlacing
===========================

Positive zeros of J_nu^(n) and H_nu^(n), the classical chains
j'_1 < j_1 < j'_2 < ..., and the double zeros of H_{1/2}.
"""

import math

import numpy as np

from bsderiv import Params, check_interlacing, check_separation, combo_zero_table, zero_table

# %%
# The first zeros of J_0 and J_0'.  J_0' = -J_1 vanishes at the origin, so
# the origin counts as its first zero when checking the chain.
j = zero_table(Params.bessel(0, 0), 5)
jp = zero_table(Params.bessel(0, 1), 6)
print("j_0,m  ", np.round(j.zeros, 10))
print("j'_0,m ", np.round(jp.zeros, 10))
rep = check_interlacing(j, jp)
print("interlaced:", rep.ok, "origin used:", rep.origin_prepended, "min gap:", round(rep.min_margin, 6))

# %%
# Higher derivatives keep interlacing as long as nu >= n.
for nu, n in [(2, 2), (3.5, 3), (12, 5)]:
    lower, upper = zero_table(Params.bessel(nu, n), 10), zero_table(Params.bessel(nu, n + 1), 11)
    print(f"nu={nu:5} n={n}: {check_interlacing(lower, upper).ok}")

# %%
# The Laguerre combination (n - nu) J^(n) + x J^(n+1).  At n = 0 it is
# -x J_{nu+1}, so its zeros are those of the next order.
combo = combo_zero_table(Params.bessel(1.3, 0), 5)
print(np.max(np.abs(combo.zeros - zero_table(Params.bessel(2.3, 0), 5).zeros)))

# %%
# H_{1/2}(x) is proportional to (1 - cos x)/sqrt(x): every zero is a
# tangency.  The table marks them with multiplicity 2.
h = zero_table(Params.struve(0.5, 0), 4)
print(h.zeros / (2 * math.pi), h.multiplicity)
print("separated (non-strict):", check_separation(h, combo_zero_table(Params.struve(0.5, 0), 4), strict=False).ok)
