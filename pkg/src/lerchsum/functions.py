"""Special functions on the complex plane at double precision.

Provides the Hurwitz-Lerch transcendent Phi(z, s, v) (series and integral
routes), Hurwitz zeta, polylogarithm, the continuous-branch log-gamma,
digamma, generalized harmonic numbers, and the first generalized Stieltjes
constant.  Branch convention everywhere: principal, arg in (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .numerics import (
    CancellationMeter,
    ConvergenceError,
    DomainError,
    PoleError,
    PrecisionPolicy,
    principal_log,
    principal_pow,
)

__all__ = [
    "EULER_GAMMA",
    "LerchParams",
    "lerch_phi",
    "lerch_phi_integral",
    "hurwitz_zeta",
    "polylog",
    "log_gamma",
    "digamma",
    "harmonic",
    "stieltjes_gamma1",
]

EULER_GAMMA = 0.57721566490153286
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k}/(2k)! for k = 1..5 (Euler-Maclaurin corrections through B10)
_ZETA_BERNOULLI = (1 / 12, -1 / 720, 1 / 30240, -1 / 1209600, 1 / 47900160)
# B_{2k}/((2k)(2k-1)) for k = 1..7 (Stirling series through B14)
_LOGGAMMA_BERNOULLI = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188,
                       -691 / 360360, 1 / 156)
# B_{2k}/(2k) for k = 1..7 (digamma asymptotic series through B14)
_DIGAMMA_BERNOULLI = (1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132,
                      -691 / 32760, 1 / 12)

_ASYMPTOTIC_REAL = 10.0  # shift recurrences until Re(z) reaches this line
_MAX_RECURRENCE_LIFT = 10**5  # recurrence steps, not accuracy: refuse absurd shifts


def _near_nonpositive_integer(z: complex, eps: float = 1e-12) -> bool:
    if abs(z.imag) > eps:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= eps


def _check_liftable(z: complex, target: float, what: str) -> None:
    if target - z.real > _MAX_RECURRENCE_LIFT:
        raise DomainError(
            f"{what}: Re(z)={z.real:.3g} is too far left of the recurrence "
            f"target {target:g} (over {_MAX_RECURRENCE_LIFT} lift steps)"
        )


@dataclass(frozen=True)
class LerchParams:
    """Arguments of Phi(z, s, v) = sum_{n>=0} (v+n)^(-s) z^n.

    The series route needs |z| < 1 (or |z| = 1 with z != 1 and Re(s) > 1)
    and v off the nonpositive integers, where the terms have poles.
    """

    z: complex
    s: complex
    v: complex

    def validate_series(self) -> None:
        z, s, v = complex(self.z), complex(self.s), complex(self.v)
        if _near_nonpositive_integer(v):
            raise PoleError(f"Phi series: v={v!r} is a nonpositive integer")
        az = abs(z)
        if az < 1.0:
            return
        if az == 1.0 and z != 1 and s.real > 1:
            return
        raise DomainError(
            f"Phi series needs |z| < 1, or |z| = 1 with z != 1 and Re(s) > 1; "
            f"got z={z!r}, s={s!r}"
        )


def lerch_phi(
    params: LerchParams,
    policy: PrecisionPolicy = PrecisionPolicy(),
    meter: Optional[CancellationMeter] = None,
) -> complex:
    """Phi via direct compensated summation of the defining series.

    Truncates at the first N whose geometric tail bound
    |z|^(N+1)/(1-|z|) * |(v+N)^(-s)| * C_s * G falls below
    rel_tol * |partial sum|, where C_s = exp(|Im s| pi/2 + |Re s| max(0, -ln|v+N|))
    guards the arg/modulus swing of the power factor and G bounds the modulus
    growth of later terms when Re(s) < 0.  Raises ConvergenceError if
    policy.max_terms is exhausted first.
    """
    params.validate_series()
    z, s, v = complex(params.z), complex(params.s), complex(params.v)
    if z == 0:
        return principal_pow(v, -s)

    az = abs(z)
    on_circle = az >= 1.0
    acc = CancellationMeter()
    rs, is_ = s.real, s.imag
    cs_arg = abs(is_) * math.pi / 2.0
    # modulus-growth lookahead: later terms exceed |t_N| by at most
    # (1 + d*/|v+N|)^{|Re s|} at the geometric horizon d* ~ |Re s| / -ln|z|
    d_star = 1.0 if on_circle else max(1.0, abs(rs) / max(1e-300, -math.log(az)))

    zpow = 1.0 + 0j
    n = 0
    while n < policy.max_terms:
        w = v + n
        powfac = cmath.exp(-s * principal_log(w))
        acc.add(powfac * zpow)
        total = acc.value
        if n >= 4:
            aw = abs(w)
            c_s = math.exp(cs_arg + abs(rs) * max(0.0, -math.log(aw)))
            scale = max(abs(total), policy.abs_tol)
            if on_circle:
                # integral-test tail for |z| = 1, Re(s) > 1
                tail = abs(powfac) * aw / (rs - 1.0)
            else:
                growth = (1.0 + d_star / aw) ** abs(rs)
                tail = az ** (n + 1) / (1.0 - az) * abs(powfac) * growth
            if tail * c_s <= policy.rel_tol * scale:
                if meter is not None:
                    meter.note(acc.peak)
                return total
        zpow *= z
        n += 1
    raise ConvergenceError(
        f"Phi series did not converge within {policy.max_terms} terms "
        f"(|z|={az:.6g})"
    )


def _gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def lerch_phi_integral(
    params: LerchParams,
    policy: PrecisionPolicy = PrecisionPolicy(),
) -> complex:
    """Phi via (1/Gamma(s)) * integral_0^inf t^(s-1) e^(-vt) / (1 - z e^(-t)) dt.

    Valid for Re(v) > 0, Re(s) > 0 and z off the cut [1, inf).  The
    substitution t = e^u turns this into a trapezoid sum over u whose
    integrand decays exponentially on the left and doubly exponentially on
    the right; the mesh is halved until two successive refinements agree to
    policy.rel_tol.
    """
    z, s, v = complex(params.z), complex(params.s), complex(params.v)
    if v.real <= 0:
        raise DomainError(f"integral route needs Re(v) > 0, got v={v!r}")
    if s.real <= 0:
        raise DomainError(f"integral route needs Re(s) > 0, got s={s!r}")
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError(f"integral route excludes z on [1, inf), got z={z!r}")

    def integrand(u: float) -> complex:
        t = math.exp(u)
        if t > 700.0:
            return 0j
        return cmath.exp(s * u - v * t) / (1.0 - z * cmath.exp(-t))

    left = (math.log(1e16) + 8.0) / max(s.real, 0.05)
    right = math.log((40.0 + 5.0 * abs(s)) / v.real) + 2.0
    h = 0.5
    count = int(math.ceil((left + right) / h))
    nodes = [-left + i * h for i in range(count + 1)]
    total = sum(integrand(u) for u in nodes)
    total -= 0.5 * (integrand(nodes[0]) + integrand(nodes[-1]))
    span = nodes[-1] + left
    previous = total * h
    for level in range(14):
        h *= 0.5
        mids = int(round(span / (2.0 * h)))
        total += sum(integrand(-left + (2 * i + 1) * h) for i in range(mids))
        current = total * h
        if level >= 2 and abs(current - previous) <= policy.rel_tol * max(
            abs(current), policy.abs_tol
        ):
            return current / _gamma(s)
        previous = current
    raise ConvergenceError("Phi integral quadrature did not converge in 14 refinements")


def hurwitz_zeta(
    s: complex,
    a: complex,
    policy: PrecisionPolicy = PrecisionPolicy(),
) -> complex:
    """Hurwitz zeta(s, a) by Euler-Maclaurin with Bernoulli terms through B10.

    The split point is N = max(10, ceil|s| + 10 - floor(Re a)); arguments with
    Re(a) <= 0 are first lifted by the forward recurrence
    zeta(s, a) = a^(-s) + zeta(s, a+1).  Accuracy is ~rel_tol for |s - 1| >= 0.1
    and moderate Re(s); strongly negative Re(s) loses digits to the inherent
    cancellation between the direct sum and the tail corrections.
    """
    s, a = complex(s), complex(a)
    if s == 1 or abs(s - 1.0) < 1e-14:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if _near_nonpositive_integer(a):
        raise PoleError(f"hurwitz_zeta: a={a!r} is a nonpositive integer")
    _check_liftable(a, 1.0, "hurwitz_zeta")

    shifted = 0j
    while a.real <= 0:
        shifted += principal_pow(a, -s)
        a += 1

    split = max(10, math.ceil(abs(s)) + 10 - math.floor(a.real))
    acc = CancellationMeter()
    acc.add(shifted)
    for n in range(split):
        acc.add(cmath.exp(-s * principal_log(a + n)))
    w = a + split
    acc.add(principal_pow(w, 1 - s) / (s - 1))
    acc.add(0.5 * principal_pow(w, -s))
    rising = s
    w2 = w * w
    wpow = principal_pow(w, -s - 1)
    for k, coeff in enumerate(_ZETA_BERNOULLI, start=1):
        acc.add(coeff * rising * wpow)
        rising *= (s + (2 * k - 1)) * (s + 2 * k)
        wpow /= w2
    return acc.value


def polylog(
    s: complex,
    z: complex,
    policy: PrecisionPolicy = PrecisionPolicy(),
    meter: Optional[CancellationMeter] = None,
) -> complex:
    """Li_s(z) = z * Phi(z, s, 1) on the open unit disk."""
    s, z = complex(s), complex(z)
    if z == 0:
        return 0j
    if abs(z) >= 1.0:
        raise DomainError(f"polylog needs |z| < 1, got |z|={abs(z):.6g}")
    return z * lerch_phi(LerchParams(z=z, s=s, v=1.0), policy, meter)


def log_gamma(z: complex) -> complex:
    """The continuous-branch log-gamma (not the principal log of Gamma).

    Shifts with logGamma(z) = logGamma(z+1) - log(z) until Re(z) >= 10, then
    applies Stirling's series through the B14 term.  Real and conventional on
    (0, inf); off the real axis it agrees with the branch that is analytic on
    the plane cut along the nonpositive reals.
    """
    z = complex(z)
    if _near_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at nonpositive integer {z!r}")
    _check_liftable(z, _ASYMPTOTIC_REAL, "log_gamma")
    shift = 0j
    while z.real < _ASYMPTOTIC_REAL:
        shift += principal_log(z)
        z += 1
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    term = inv
    for coeff in _LOGGAMMA_BERNOULLI:
        series += coeff * term
        term *= inv2
    return (z - 0.5) * principal_log(z) - z + _HALF_LN_2PI + series - shift


def digamma(z: complex) -> complex:
    """psi(z) via the recurrence psi(z) = psi(z+1) - 1/z and the asymptotic series."""
    z = complex(z)
    if _near_nonpositive_integer(z):
        raise PoleError(f"digamma pole at nonpositive integer {z!r}")
    _check_liftable(z, _ASYMPTOTIC_REAL, "digamma")
    shift = 0j
    while z.real < _ASYMPTOTIC_REAL:
        shift += 1.0 / z
        z += 1
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    term = inv2
    for coeff in _DIGAMMA_BERNOULLI:
        series += coeff * term
        term *= inv2
    return principal_log(z) - 0.5 * inv - series - shift


def harmonic(z: complex) -> complex:
    """Generalized harmonic number H_z = psi(z + 1) + gamma."""
    z = complex(z)
    if _near_nonpositive_integer(z + 1):
        raise PoleError(f"harmonic pole at negative integer {z!r}")
    return digamma(z + 1) + EULER_GAMMA


def stieltjes_gamma1(
    a: complex,
    policy: PrecisionPolicy = PrecisionPolicy(),
) -> complex:
    """First generalized Stieltjes constant gamma_1(a).

    Defined through the Laurent expansion of zeta(s, a) about s = 1 with the
    -gamma_1(a)(s-1) sign convention, so
    gamma_1(a) = -d/ds [zeta(s, a) - 1/(s-1)] at s = 1.  Computed by central
    differences of the regularized map at steps 1e-2, 5e-3, 2.5e-3 with two
    Richardson levels; absolute accuracy is comfortably below 1e-7.
    """
    a = complex(a)
    if _near_nonpositive_integer(a):
        raise PoleError(f"stieltjes_gamma1: a={a!r} is a nonpositive integer")

    def regularized(s: complex) -> complex:
        return hurwitz_zeta(s, a, policy) - 1.0 / (s - 1.0)

    diffs = []
    for h in (1e-2, 5e-3, 2.5e-3):
        diffs.append((regularized(1.0 + h) - regularized(1.0 - h)) / (2.0 * h))
    r1a = (4.0 * diffs[1] - diffs[0]) / 3.0
    r1b = (4.0 * diffs[2] - diffs[1]) / 3.0
    return -(16.0 * r1b - r1a) / 15.0
