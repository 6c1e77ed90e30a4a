"""Shared independent oracles used by both the unit tests and the acceptance
gate.  These deliberately avoid the code paths they certify."""

import cmath
import math
import random

from lerchsum import PrecisionPolicy, hurwitz_zeta

EULER_GAMMA_REF = 0.57721566490153286
LN2 = math.log(2.0)


def alternating_series_limit(term, count=200, rounds=40):
    """Limit of sum_n term(n) for alternating slowly-varying terms, by
    repeated pairwise averaging of the partial sums."""
    partials = []
    total = 0.0 + 0j
    for n in range(count):
        total += term(n)
        partials.append(total)
    for _ in range(rounds):
        if len(partials) < 2:
            break
        partials = [(partials[i] + partials[i + 1]) / 2.0
                    for i in range(len(partials) - 1)]
    return partials[0]


def zeta_at_zero_by_limit(a, policy=PrecisionPolicy()):
    """zeta(0, a) from symmetric evaluations at s = +-h, Richardson in h^2."""
    def symmetric(h):
        return (hurwitz_zeta(h, a, policy) + hurwitz_zeta(-h, a, policy)) / 2.0
    coarse = symmetric(0.01)
    fine = symmetric(0.005)
    return (4.0 * fine - coarse) / 3.0


def stieltjes1_fd_oracle(a, policy=PrecisionPolicy()):
    """gamma_1(a) by central differences of the regularized zeta map,
    steps 1e-2 / 5e-3 / 2.5e-3, two Richardson levels (independent
    transcription of the published schedule)."""
    def reg(s):
        return hurwitz_zeta(s, a, policy) - 1.0 / (s - 1.0)
    d = [(reg(1.0 + h) - reg(1.0 - h)) / (2.0 * h) for h in (1e-2, 5e-3, 2.5e-3)]
    first_a = (4.0 * d[1] - d[0]) / 3.0
    first_b = (4.0 * d[2] - d[1]) / 3.0
    return -(16.0 * first_b - first_a) / 15.0


def zeta2_direct_oracle(terms=10**6):
    """zeta(2, 1) by direct descending summation plus the integral-tail
    midpoint, which brackets the true tail between 1/(N+1) and 1/N."""
    total = 0.0
    for n in range(terms, 0, -1):
        total += 1.0 / (n * n)
    return total + 1.0 / terms - 1.0 / (2.0 * terms * terms)


def gamma_product_oracle(z, shift=8):
    """Gamma(z) from the asymptotic regime divided down by the recurrence
    product; independent of the log-space assembly being checked."""
    from lerchsum import log_gamma
    prod = 1.0 + 0j
    for j in range(shift):
        prod *= (z + j)
    return cmath.exp(log_gamma(z + shift)) / prod


def random_complex(rng, re_range, im_range):
    return complex(rng.uniform(*re_range), rng.uniform(*im_range))


def seeded(seed):
    return random.Random(seed)
