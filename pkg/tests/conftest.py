import cmath
import math
import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BASELINES = os.path.join(os.path.dirname(__file__), "baselines")


def root(j, m):
    return cmath.exp(2j * math.pi * j / m)


def brute_value(chi, n):
    """Character value as a complex number straight from the generator exponents.

    Independent of the cached table: solves the discrete log per component by
    trying every exponent vector.
    """
    total = 0.0
    if math.gcd(n, chi.q) != 1:
        return 0j
    for comp, exps in zip(chi.components, chi.exponents):
        M = comp.p**comp.a
        r = n % M
        gens = comp.generators
        found = None
        if not gens:
            found = ()
        elif len(gens) == 1:
            g, s = gens[0]
            found = next((k,) for k in range(s) if pow(g, k, M) == r)
        else:
            (g1, s1), (g2, s2) = gens
            found = next((k1, k2) for k1 in range(s1) for k2 in range(s2)
                         if pow(g1, k1, M) * pow(g2, k2, M) % M == r)
        for (_, s), e, k in zip(gens, exps, found):
            total += e * k / s
    return cmath.exp(2j * math.pi * total)
