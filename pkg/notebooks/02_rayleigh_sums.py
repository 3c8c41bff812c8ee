"""
Rayleigh sums of Struve zeros
=============================

sigma_2k = sum z_m^(-2k) three ways: closed forms, Newton's identities on
the Maclaurin coefficients, and direct summation over 500 zeros.
"""

from bsderiv.rayleigh import closed_form_sums, lower_bounds, rayleigh_report, sums_from_coefficients
from bsderiv.specfun import EvenKernel, Params
from bsderiv.zerofinder import zero_table

# %%
# At nu = -1/2, H_{-1/2} = J_{1/2} has zeros m pi, so the sums are Basel sums.
print(closed_form_sums("h", -0.5), (1 / 6, 1 / 90))

# %%
# Newton's identities give every sigma_2k from the series coefficients.
c = EvenKernel(Params.struve(0.3, 1)).coefficients(6)
print(sums_from_coefficients(c, 5))
print(closed_form_sums("hprime", 0.3))

# %%
# Direct sums over 500 zeros converge slowly for sigma_2.  A zeta-function
# tail estimate plus one Richardson step recovers about ten digits.
r = rayleigh_report("hprime", 0.3, zeros=500)
print(f"closed   {r.sigma2:.15f}")
print(f"partial  {r.numeric_sigma2:.15f}  (tail bound {r.tail_bounds[0]:.1e})")
print(f"extrap.  {r.sigma2_extrapolated:.15f}")

# %%
# Every term is positive, so z_1 > 1/sqrt(sigma_2) and z_1^2 > 1/sqrt(sigma_4).
for nu in (-0.4, 0.0, 0.49):
    z1 = zero_table(Params.struve(nu, 0), 1).zeros[0]
    (_, b1), (_, b2) = lower_bounds("h", nu)
    print(f"nu={nu:5}: h_1 = {z1:.6f} > {b1:.6f},  h_1^2 = {z1 * z1:.4f} > {b2:.4f}")
