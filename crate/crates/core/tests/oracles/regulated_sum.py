"""Reference values for regulated_cubic_sum.

S(eps) = sum_{n>=1} n^3 exp(-eps n) - 6/eps^4, via the closed form
(q^3 + 4q^2 + q) / (q - 1)^4 - 6/eps^4 with q = exp(eps), at 50 digits.
Inputs are the exact binary values of the f64 regulators.
"""
import mpmath as mp

mp.mp.dps = 50

for eps in [0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 3.0, 10.0]:
    e = mp.mpf(eps)
    q = mp.e ** e
    s = (q**3 + 4 * q**2 + q) / (q - 1) ** 4 - 6 / e**4
    print(f"({eps!r}, {mp.nstr(s, 28)}),")
