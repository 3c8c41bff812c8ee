"""
Jensen polynomials
==================

Degree-s Jensen polynomials of the even kernels are hypergeometric
polynomials.  Their roots are real and simple in the theorem ranges; the
check is an exact Sturm count on the stored coefficients.
"""

import numpy as np

from bsderiv.jensen import jensen_coeffs_bessel, jensen_coeffs_struve, real_rooted_check, scaled_value
from bsderiv.specfun import EvenKernel, Params

# %%
# nu = 0, n = 0, s = 2 is the Laguerre polynomial 1 - 2x + x^2/2.
p = jensen_coeffs_bessel(0, 0, 2)
print(p.coeffs, np.array(real_rooted_check(p).roots).real)

# %%
# A sweep over the Bessel range nu > n - 1.
bad = [
    (nu, n, s)
    for n in range(4)
    for nu in (n - 0.9, n, n + 5)
    for s in range(1, 31)
    if not real_rooted_check(jensen_coeffs_bessel(nu, n, s)).all_real
]
print("Bessel failures:", bad)

# %%
# Struve, n = 2 needs nu in (0, 1/2].
r = real_rooted_check(jensen_coeffs_struve(0.25, 2, 10))
print(r.all_real, r.all_simple, r.real_root_count)

# %%
# p_s(x/s) tends to the kernel at 2 sqrt(x) as s grows.
g = EvenKernel(Params.bessel(1.5, 1))(2 * np.sqrt(0.5))
for s in (5, 10, 30):
    print(s, scaled_value(jensen_coeffs_bessel(1.5, 1, s), 0.5) - g)
