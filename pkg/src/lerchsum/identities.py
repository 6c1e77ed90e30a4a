"""Registry of the sixteen verified finite-sum/product identities.

Each entry packages a left side and a right side as evaluable expressions
over a typed parameter point, together with the parameter schema, the
domain constraints (pole avoidance, series convergence), and the comparison
mode under which the two sides are checked.  Sides are decomposed into
top-level additive terms (or product factors) so that the verifier can both
track cancellation and apply sign-flip mutations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields
from typing import Callable, Iterator, Optional, Sequence

from .functions import (
    LerchParams,
    digamma,
    harmonic,
    lerch_phi,
    log_gamma,
    polylog,
    stieltjes_gamma1,
)
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
    "EvalPoint",
    "IdentitySpec",
    "SideExpr",
    "TrendGate",
    "SideEvaluationError",
    "UnknownIdentityError",
    "list_identities",
    "get_identity",
    "evaluate_sides",
    "evaluate_side",
    "prudnikov_original",
    "nielsen_partial_product",
    "nielsen_limit",
]

_I = 1j
_LN2 = math.log(2.0)
_MAX_N = 24  # 2**n argument scaling stays far from the double overflow range


class UnknownIdentityError(DomainError):
    """Identity id not present in the registry."""


class SideEvaluationError(RuntimeError):
    """A side hit a singularity or convergence failure; carries side + term."""

    def __init__(self, side: str, term_index: int, cause: BaseException):
        super().__init__(f"{side} term {term_index} failed: {cause}")
        self.side = side
        self.term_index = term_index
        self.cause = cause


@dataclass(frozen=True)
class EvalPoint:
    """One concrete assignment of an identity's free parameters."""

    a: Optional[complex] = None
    m: Optional[complex] = None
    k: Optional[complex] = None
    n: Optional[int] = None
    x: Optional[complex] = None
    r: Optional[complex] = None
    z: Optional[complex] = None
    s: Optional[complex] = None

    def __post_init__(self):
        if self.n is not None:
            if not isinstance(self.n, int) or self.n < 0:
                raise DomainError(f"n must be a nonnegative integer, got {self.n!r}")
            if self.n > _MAX_N:
                raise DomainError(f"n={self.n} exceeds the overflow guard cap {_MAX_N}")

    def present(self) -> frozenset:
        return frozenset(f.name for f in fields(self) if getattr(self, f.name) is not None)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)
                if getattr(self, f.name) is not None}


TermGen = Callable[[EvalPoint, PrecisionPolicy, CancellationMeter], Iterator[complex]]


@dataclass(frozen=True)
class SideExpr:
    """One side of an identity: either a sum of terms or a product of factors."""

    kind: str  # "sum" | "product"
    terms: TermGen

    def __post_init__(self):
        if self.kind not in ("sum", "product"):
            raise DomainError(f"unknown side kind {self.kind!r}")


@dataclass(frozen=True)
class TrendGate:
    """Convergence gate for the limit identity: errors over n in [n_lo, n_hi]
    must decrease monotonically and the final one must be below final_tol."""

    n_lo: int = 4
    n_hi: int = 12
    final_tol: float = 1e-6


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    title: str
    description: str
    schema: Sequence[str]
    compare_mode: str  # relative | absolute | exp_equality | mod_2pi_i
    lhs: SideExpr
    rhs: SideExpr
    constraints: Callable[[EvalPoint, float], bool]
    trend: Optional[TrendGate] = None


def _collect(side: str, expr: SideExpr, pt: EvalPoint, policy: PrecisionPolicy,
             meter: CancellationMeter) -> list:
    out = []
    gen = expr.terms(pt, policy, meter)
    index = 0
    while True:
        try:
            term = next(gen)
        except StopIteration:
            return out
        except (ZeroDivisionError, OverflowError, PoleError, ConvergenceError,
                DomainError, ValueError) as exc:
            raise SideEvaluationError(side, index, exc) from exc
        out.append(complex(term))
        index += 1


def evaluate_side(side: str, expr: SideExpr, pt: EvalPoint, policy: PrecisionPolicy,
                  meter: CancellationMeter) -> complex:
    """Combine the side's terms: compensated sum, or running product.

    The shared meter only collects peak magnitudes (for the conditioning
    estimate); each side is accumulated in its own fresh accumulator.
    """
    terms = _collect(side, expr, pt, policy, meter)
    if expr.kind == "sum":
        local = CancellationMeter()
        value = local.sum(terms)
        meter.note(local.peak)
        return value
    value = 1 + 0j
    for t in terms:
        value *= t
        meter.note(abs(value))
    return value


def side_terms(side: str, expr: SideExpr, pt: EvalPoint, policy: PrecisionPolicy,
               meter: CancellationMeter) -> list:
    """Expose the raw top-level terms (used by the mutation machinery)."""
    return _collect(side, expr, pt, policy, meter)


# --------------------------------------------------------------------------
# small trig/algebra helpers
# --------------------------------------------------------------------------

def _sec(w: complex) -> complex:
    return 1.0 / cmath.cos(w)


def _csc(w: complex) -> complex:
    return 1.0 / cmath.sin(w)


def _cot(w: complex) -> complex:
    return cmath.cos(w) / cmath.sin(w)


def _dist_cos_zero(w: complex, scale: float) -> float:
    """Distance from w to the zero set of cos(scale*w), measured in w units."""
    y = scale * complex(w)
    dx = (y.real - math.pi / 2.0) % math.pi
    dx = min(dx, math.pi - dx)
    return math.hypot(dx, y.imag) / abs(scale)


def _dist_sin_zero(w: complex, scale: float) -> float:
    y = scale * complex(w)
    dx = y.real % math.pi
    dx = min(dx, math.pi - dx)
    return math.hypot(dx, y.imag) / abs(scale)


def _dist_nonpositive_integer(v: complex) -> float:
    if v.real > 0.5:
        return math.hypot(v.real, v.imag)  # distance to 0 exceeds this anyway
    r = min(0.0, round(v.real))
    return math.hypot(v.real - r, v.imag)


def _is_real(w: Optional[complex]) -> bool:
    return w is not None and complex(w).imag == 0.0


# --------------------------------------------------------------------------
# ID-00: telescoped integrand identity
#   sum_{p=0}^n -2^-p tan(2^-p-1 u) sec(2^-p u) = 2^-n csc(2^-n u) - 2 csc(2u)
# --------------------------------------------------------------------------

def _id00_lhs(pt, policy, meter):
    u = complex(pt.m)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        yield -tp * cmath.tan(0.5 * tp * u) * _sec(tp * u)


def _id00_rhs(pt, policy, meter):
    u = complex(pt.m)
    tn = 2.0 ** -pt.n
    yield tn * _csc(tn * u)
    yield -2.0 * _csc(2.0 * u)


def _id00_constraints(pt, margin):
    if pt.m is None or pt.n is None:
        return False
    u = complex(pt.m)
    for p in range(pt.n + 1):
        if _dist_cos_zero(u, 2.0 ** -(p + 1)) < margin:
            return False
        if _dist_cos_zero(u, 2.0 ** -p) < margin:
            return False
    return (_dist_sin_zero(u, 2.0 ** -pt.n) >= margin
            and _dist_sin_zero(u, 2.0) >= margin)


# --------------------------------------------------------------------------
# ID-01: the main finite-sum identity for Phi
# --------------------------------------------------------------------------

def _id01_lhs(pt, policy, meter):
    a, m, k = complex(pt.a), complex(pt.m), complex(pt.k)
    la = principal_log(a)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        e1 = cmath.exp(_I * m * tp)
        c1 = tp * e1 * principal_pow(_I * tp, k) * e1
        c2 = tp * e1 * principal_pow(_I * tp * 0.5, k)
        local = CancellationMeter()
        phi1 = lerch_phi(LerchParams(-cmath.exp(_I * 2.0 * tp * m), -k,
                                     1.0 - _I * 2.0 ** (p - 1) * la), policy, local)
        phi2 = lerch_phi(LerchParams(-cmath.exp(_I * tp * m), -k,
                                     1.0 - _I * 2.0 ** p * la), policy, local)
        meter.note(local.peak * max(abs(c1), abs(c2)))
        yield c1 * phi1
        yield -c2 * phi2


def _id01_rhs(pt, policy, meter):
    a, m, k = complex(pt.a), complex(pt.m), complex(pt.k)
    la = principal_log(a)
    tn = 2.0 ** -pt.n
    local = CancellationMeter()
    phi1 = lerch_phi(LerchParams(cmath.exp(_I * 2.0 * tn * m), -k,
                                 0.5 * (1.0 - _I * 2.0 ** pt.n * la)), policy, local)
    phi2 = lerch_phi(LerchParams(cmath.exp(4.0 * _I * m), -k,
                                 0.5 - 0.25 * _I * la), policy, local)
    c1 = _I * principal_pow(_I * tn, k + 1) * cmath.exp(_I * m * tn)
    c2 = principal_pow(_I, k) * principal_pow(2.0, k + 1) * cmath.exp(2.0 * _I * m)
    meter.note(local.peak * max(abs(c1), abs(c2)))
    yield c1 * phi1
    yield c2 * phi2


def _id01_constraints(pt, margin):
    if pt.a is None or pt.m is None or pt.k is None or pt.n is None:
        return False
    m = complex(pt.m)
    if m.imag < max(margin, 1e-6):
        return False  # every Phi base must sit strictly inside the unit disk
    la = principal_log(complex(pt.a))
    if abs(la) > 2.0 ** -pt.n:
        return False
    for p in range(pt.n + 1):
        if _dist_nonpositive_integer(1.0 - _I * 2.0 ** (p - 1) * la) < margin:
            return False
        if _dist_nonpositive_integer(1.0 - _I * 2.0 ** p * la) < margin:
            return False
    if _dist_nonpositive_integer(0.5 * (1.0 - _I * 2.0 ** pt.n * la)) < margin:
        return False
    return _dist_nonpositive_integer(0.5 - 0.25 * _I * la) >= margin


# --------------------------------------------------------------------------
# ID-02: degenerate case
#   sum 2^-p-1 tan(m 2^-p-1) sec(m 2^-p) = csc(2m) - 2^-n-1 csc(m 2^-n)
# --------------------------------------------------------------------------

def _id02_lhs(pt, policy, meter):
    m = complex(pt.m)
    for p in range(pt.n + 1):
        tp = 2.0 ** -(p + 1)
        yield tp * cmath.tan(m * tp) * _sec(m * 2.0 ** -p)


def _id02_rhs(pt, policy, meter):
    m = complex(pt.m)
    yield _csc(2.0 * m)
    yield -(2.0 ** -(pt.n + 1)) * _csc(m * 2.0 ** -pt.n)


def _id02_rhs_prudnikov(pt, policy, meter):
    # RHS with the two terms deliberately swapped in sign: the uncorrected
    # tabulated form that the degenerate case supersedes
    m = complex(pt.m)
    yield (2.0 ** -(pt.n + 1)) * _csc(m * 2.0 ** -pt.n)
    yield -_csc(2.0 * m)


def _id02_constraints(pt, margin):
    if pt.m is None or pt.n is None:
        return False
    m = complex(pt.m)
    for p in range(pt.n + 1):
        if _dist_cos_zero(m, 2.0 ** -(p + 1)) < margin:
            return False
        if _dist_cos_zero(m, 2.0 ** -p) < margin:
            return False
    return (_dist_sin_zero(m, 2.0) >= margin
            and _dist_sin_zero(m, 2.0 ** -pt.n) >= margin)


# --------------------------------------------------------------------------
# ID-03: two-parameter cosine-ratio product
# --------------------------------------------------------------------------

def _id03_lhs(pt, policy, meter):
    m, r = complex(pt.m), complex(pt.r)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        yield ((cmath.cos(tp * m) / cmath.cos(tp * r))
               * (cmath.cos(0.5 * tp * r) / cmath.cos(0.5 * tp * m)) ** 2)


def _id03_rhs(pt, policy, meter):
    m, r = complex(pt.m), complex(pt.r)
    th = 2.0 ** -(pt.n + 1)
    yield (cmath.tan(th * m) * cmath.tan(r)) / (cmath.tan(m) * cmath.tan(th * r))


def _id03_constraints(pt, margin):
    if pt.m is None or pt.r is None or pt.n is None:
        return False
    th = 2.0 ** -(pt.n + 1)
    for w in (complex(pt.m), complex(pt.r)):
        for p in range(pt.n + 1):
            if _dist_cos_zero(w, 2.0 ** -p) < margin:
                return False
            if _dist_cos_zero(w, 2.0 ** -(p + 1)) < margin:
                return False
        for scale in (1.0, th):
            if _dist_cos_zero(w, scale) < margin or _dist_sin_zero(w, scale) < margin:
                return False
    return True


# --------------------------------------------------------------------------
# ID-04: functional equation for Phi(z, s, a)
# --------------------------------------------------------------------------

def _id04_lhs(pt, policy, meter):
    z, s, a = complex(pt.z), complex(pt.s), complex(pt.a)
    local = CancellationMeter()
    value = lerch_phi(LerchParams(z, s, a), policy, local)
    meter.note(local.peak)
    yield value


def _id04_rhs(pt, policy, meter):
    z, s, a = complex(pt.z), complex(pt.s), complex(pt.a)
    local = CancellationMeter()
    p8 = principal_pow(8.0, -s)
    p4 = principal_pow(4.0, s)
    p2 = principal_pow(2.0, s)
    phi1 = lerch_phi(LerchParams(-z * z, s, 0.5 * (a + 1.0)), policy, local)
    phi2 = lerch_phi(LerchParams(z * z, s, 0.5 * a), policy, local)
    z4 = z ** 4
    phi3 = lerch_phi(LerchParams(-z4, s, 0.25 * (a + 3.0)), policy, local)
    phi4 = lerch_phi(LerchParams(z4 * z4, s, 0.125 * (a + 3.0)), policy, local)
    z3 = z ** 3
    meter.note(local.peak * abs(p8) * max(abs(p4), 2.0 * abs(p2 * z3), 4.0 * abs(z3)))
    yield p8 * p4 * z * phi1
    yield p8 * p4 * phi2
    yield -2.0 * p8 * p2 * z3 * phi3
    yield 4.0 * p8 * z3 * phi4


def _id04_constraints(pt, margin):
    if pt.z is None or pt.s is None or pt.a is None:
        return False
    z, a = complex(pt.z), complex(pt.a)
    return abs(z) <= 0.8 and a.real >= max(margin, 1e-6)


# --------------------------------------------------------------------------
# ID-05: cosine-ratio product (cubic form)
# --------------------------------------------------------------------------

def _id05_lhs(pt, policy, meter):
    x = complex(pt.x)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        yield (cmath.cos(0.5 * tp * x) ** 3
               / (cmath.cos(0.25 * tp * x) ** 2 * cmath.cos(tp * x)))


def _id05_rhs(pt, policy, meter):
    x = complex(pt.x)
    t1 = 2.0 ** -(pt.n + 2)
    t2 = 2.0 ** -(pt.n + 1)
    yield (cmath.tan(x) * cmath.tan(t1 * x)) / (cmath.tan(0.5 * x) * cmath.tan(t2 * x))


def _id05_constraints(pt, margin):
    if pt.x is None or pt.n is None:
        return False
    x = complex(pt.x)
    for p in range(pt.n + 1):
        for scale in (2.0 ** -(p + 1), 2.0 ** -(p + 2), 2.0 ** -p):
            if _dist_cos_zero(x, scale) < margin:
                return False
    for scale in (1.0, 0.5, 2.0 ** -(pt.n + 2), 2.0 ** -(pt.n + 1)):
        if _dist_cos_zero(x, scale) < margin or _dist_sin_zero(x, scale) < margin:
            return False
    return True


# --------------------------------------------------------------------------
# ID-06: exponential-times-cosine-ratio product
# --------------------------------------------------------------------------

def _id06_lhs(pt, policy, meter):
    x = complex(pt.x)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        local = CancellationMeter()
        combo = local.sum([cmath.cos(0.5 * tp * x), cmath.cos(1.5 * tp * x),
                           -3.0 * cmath.cos(tp * x), 1.0 + 0j])
        csc2 = _csc(2.0 * tp * x)
        # the cosine combination collapses to O((tp*x)^2) and is then blown
        # back up by csc; record the absolute amplification of its roundoff
        meter.note(local.peak * abs(2.0 * tp * csc2))
        yield (cmath.cos(0.25 * tp * x) ** 2 * cmath.cos(tp * x) * _sec(0.5 * tp * x) ** 3
               * cmath.exp(-2.0 * tp * combo * csc2))


def _id06_rhs(pt, policy, meter):
    x = complex(pt.x)
    tn = 2.0 ** -pt.n
    local = CancellationMeter()
    expo = local.sum([tn * _csc(tn * x), -tn * _csc(0.5 * tn * x),
                      cmath.tan(0.5 * x), -cmath.tan(x), _cot(0.5 * x), -_cot(x)])
    meter.note(local.peak)
    yield (cmath.tan(0.5 * x) * _cot(x) * cmath.tan(0.5 * tn * x) * _cot(0.25 * tn * x)
           * cmath.exp(expo))


def _id06_constraints(pt, margin):
    if pt.x is None or pt.n is None:
        return False
    x = complex(pt.x)
    for p in range(pt.n + 1):
        for scale in (2.0 ** -(p + 2), 2.0 ** -(p + 1), 2.0 ** -p):
            if _dist_cos_zero(x, scale) < margin:
                return False
        if _dist_sin_zero(x, 2.0 ** (1 - p)) < margin:
            return False
    for scale in (0.5, 1.0, 2.0 ** -pt.n, 2.0 ** -(pt.n + 1), 2.0 ** -(pt.n + 2)):
        if _dist_sin_zero(x, scale) < margin:
            return False
    for scale in (0.5, 1.0, 2.0 ** -(pt.n + 1)):
        if _dist_cos_zero(x, scale) < margin:
            return False
    return True


# --------------------------------------------------------------------------
# ID-07: log-gamma sum with imaginary-axis arguments; equality mod 2 pi i
# --------------------------------------------------------------------------

def _id07_lhs(pt, policy, meter):
    la = principal_log(complex(pt.a))
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        sp = 2.0 ** p
        local = CancellationMeter()
        bracket = local.sum([
            2.0 * log_gamma(-_I * 0.25 * sp * la),
            -2.0 * log_gamma(-_I * 0.5 * sp * la),
            -2.0 * log_gamma(0.25 * (-_I * sp * la - 2.0)),
            2.0 * log_gamma(0.5 * (-_I * sp * la - 1.0)),
            principal_log(2.0 * (sp * la - _I) ** 2 / (sp * la - 2.0 * _I) ** 2),
        ])
        meter.note(local.peak * tp)
        yield tp * bracket


def _id07_rhs(pt, policy, meter):
    la = principal_log(complex(pt.a))
    n = pt.n
    tn = 2.0 ** -n
    sn = 2.0 ** n
    yield -4.0 * log_gamma(-0.25 * _I * la - 0.5)
    yield -0.5 * la * (2.0 * _I * principal_log(_I * tn) + math.pi - 2.0 * _I * _LN2)
    yield -4.0 * principal_log(-2.0 - _I * la)
    yield 2.0 * principal_log(32.0 * math.pi)
    yield (0.5 * tn) * 4.0 * log_gamma(0.5 * (-_I * sn * la - 1.0))
    yield (0.5 * tn) * 4.0 * principal_log(-1.0 - _I * sn * la)
    yield (0.5 * tn) * (-2.0 * math.log(math.pi))
    yield (0.5 * tn) * (-6.0 * _LN2)


def _real_a_constraints(lo: float, hi: float):
    def check(pt, margin):
        if pt.a is None or not _is_real(pt.a):
            return False
        a = complex(pt.a).real
        return lo <= a <= hi and a - 2.0 >= margin
    return check


# --------------------------------------------------------------------------
# ID-08: log-gamma sum, real-argument alternate form
# --------------------------------------------------------------------------

def _id08_lhs(pt, policy, meter):
    a = complex(pt.a)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        sp = 2.0 ** p
        local = CancellationMeter()
        bracket = local.sum([
            2.0 * log_gamma(0.25 * sp * a),
            -2.0 * log_gamma(0.5 * sp * a),
            -2.0 * log_gamma(0.25 * (sp * a - 2.0)),
            2.0 * log_gamma(0.5 * (sp * a - 1.0)),
            principal_log(2.0 * (a * sp - 1.0) ** 2 / (a * sp - 2.0) ** 2),
        ])
        meter.note(local.peak * tp)
        yield tp * bracket


def _id08_rhs(pt, policy, meter):
    a = complex(pt.a)
    n = pt.n
    tn = 2.0 ** -n
    sn = 2.0 ** n
    root = 2.0 * math.sqrt(2.0 * math.pi)
    yield tn * 2.0 * log_gamma(0.5 * (sn * a - 1.0))
    yield tn * 2.0 * principal_log((a * sn - 1.0) / root)
    yield -4.0 * log_gamma(0.25 * (a - 2.0))
    yield a * math.log(0.5 * tn)
    yield 4.0 * principal_log(2.0 * root / (a - 2.0))


# --------------------------------------------------------------------------
# ID-09: digamma sum
# --------------------------------------------------------------------------

def _id09_lhs(pt, policy, meter):
    a = complex(pt.a)
    for p in range(pt.n + 1):
        sp = 2.0 ** p
        local = CancellationMeter()
        bracket = local.sum([
            4.0 / (a * sp * (a * sp - 3.0) + 2.0),
            -digamma(0.25 * sp * a),
            2.0 * digamma(0.5 * sp * a),
            digamma(0.25 * (sp * a - 2.0)),
            -2.0 * digamma(0.5 * (sp * a - 1.0)),
        ])
        meter.note(local.peak)
        yield bracket


def _id09_rhs(pt, policy, meter):
    a = complex(pt.a)
    sn = 2.0 ** pt.n
    yield -4.0 / (a * sn - 1.0)
    yield -2.0 * digamma(0.5 * (sn * a - 1.0))
    yield 8.0 / (a - 2.0)
    yield 2.0 * digamma(0.25 * (a - 2.0))
    yield -2.0 * math.log(2.0 ** -(pt.n + 1))


# --------------------------------------------------------------------------
# ID-10: closed-form log-gamma transformation (single parameter)
# --------------------------------------------------------------------------

def _id10_lhs(pt, policy, meter):
    a = complex(pt.a)
    yield log_gamma(0.25 * a)
    g = (cmath.exp(log_gamma(0.25 * (a - 2.0)))
         * cmath.sqrt(cmath.exp(log_gamma(0.5 * (a - 1.0)))
                      / (cmath.exp(log_gamma(0.5 * a)) * cmath.exp(log_gamma(a)))))
    yield principal_log(g)


def _id10_rhs(pt, policy, meter):
    a = complex(pt.a)
    inner = (math.pi ** 0.375 * principal_pow(2.0, 2.0 - 0.5 * a)
             * principal_pow(a + 1.0 / (a - 1.0) - 3.0, 0.25) / (a - 2.0))
    yield 2.0 * principal_log(inner)


def _id10_constraints(pt, margin):
    if pt.a is None or not _is_real(pt.a):
        return False
    a = complex(pt.a).real
    return 2.0 < a <= 8.5 and a - 2.0 >= margin and a - 1.0 >= margin


# --------------------------------------------------------------------------
# ID-11: extended Nielsen product (factors assembled in log space to avoid
# overflow of Gamma at large 2^p x)
# --------------------------------------------------------------------------

def _nielsen_factor_exponent(x: complex, p: int) -> complex:
    sp = 2.0 ** p
    return (2.0 ** -p) * (-(0.5 * sp * x) * _LN2
                          + log_gamma(0.5 * (sp * x + 1.0))
                          - 2.0 * log_gamma(0.25 * (sp * x + 2.0)))


def _id11_lhs(pt, policy, meter):
    x = complex(pt.x)
    for p in range(1, pt.n + 1):
        e = _nielsen_factor_exponent(x, p)
        meter.note(abs(e))
        yield cmath.exp(e)


def _id11_rhs(pt, policy, meter):
    x = complex(pt.x)
    n = pt.n
    tn = 2.0 ** -n
    sn = 2.0 ** n
    value = (principal_pow(2.0, -0.5 * n * x - tn)
             * principal_pow(sn * x - 1.0, tn)
             * cmath.exp(tn * log_gamma(0.5 * (sn * x - 1.0)))
             / cmath.exp(log_gamma(0.5 * (x + 1.0))))
    yield value


def _id11_constraints(pt, margin):
    if pt.x is None or pt.n is None or not _is_real(pt.x):
        return False
    x = complex(pt.x).real
    if not 0.0 < x < 1.0:
        return False
    return abs(x - 2.0 ** -pt.n) >= margin


def nielsen_partial_product(x: complex, n: int, policy: PrecisionPolicy,
                            meter: Optional[CancellationMeter] = None) -> complex:
    """Product of the first n ratio factors (p = 1..n), in log space."""
    meter = meter if meter is not None else CancellationMeter()
    value = 1 + 0j
    for p in range(1, n + 1):
        value *= cmath.exp(_nielsen_factor_exponent(complex(x), p))
        meter.note(abs(value))
    return value


def nielsen_limit(x: complex) -> complex:
    """(2e)^(-x/2) x^(x/2) / Gamma((x+1)/2), the n -> infinity value."""
    x = complex(x)
    return (principal_pow(2.0 * math.e, -0.5 * x) * principal_pow(x, 0.5 * x)
            / cmath.exp(log_gamma(0.5 * (x + 1.0))))


# --------------------------------------------------------------------------
# ID-12: the infinite limiting case, checked as a convergence trend.
# The lhs evaluator reports the truncation at the gate's upper n.
# --------------------------------------------------------------------------

_ID12_GATE = TrendGate(n_lo=4, n_hi=12, final_tol=1e-6)


def _id12_lhs(pt, policy, meter):
    yield nielsen_partial_product(complex(pt.x), _ID12_GATE.n_hi, policy, meter)


def _id12_rhs(pt, policy, meter):
    yield nielsen_limit(complex(pt.x))


def _id12_constraints(pt, margin):
    if pt.x is None or not _is_real(pt.x):
        return False
    x = complex(pt.x).real
    return 0.0 < x < 1.0


# --------------------------------------------------------------------------
# ID-13: generalized Stieltjes constant sum
# --------------------------------------------------------------------------

def _id13_lhs(pt, policy, meter):
    a = complex(pt.a)
    for p in range(pt.n + 1):
        sp = 2.0 ** p
        local = CancellationMeter()
        bracket = local.sum([
            principal_log(_I * 2.0 ** (1 - p))
            * (harmonic(0.25 * sp * a) - harmonic(0.25 * (sp * a - 2.0))),
            2.0 * principal_log(_I * 2.0 ** -p)
            * (harmonic(0.5 * (sp * a - 1.0)) - harmonic(0.5 * sp * a)),
            -stieltjes_gamma1(0.25 * sp * a + 1.0, policy),
            2.0 * stieltjes_gamma1(0.5 * sp * a + 1.0, policy),
            -2.0 * stieltjes_gamma1(0.5 * (sp * a + 1.0), policy),
            stieltjes_gamma1(0.25 * (sp * a + 2.0), policy),
        ])
        meter.note(local.peak)
        yield bracket


def _id13_rhs(pt, policy, meter):
    a = complex(pt.a)
    tn = 2.0 ** -pt.n
    sn = 2.0 ** pt.n
    log_itn = principal_log(_I * tn)
    yield -2.0 * stieltjes_gamma1(0.5 * (sn * a + 1.0), policy)
    yield 2.0 * log_itn * digamma(0.5 * (sn * a + 1.0))
    yield 2.0 * stieltjes_gamma1(0.25 * (a + 2.0), policy)
    yield 0.25 * (-8.0 * _LN2 - 4.0 * _I * math.pi) * digamma(0.25 * (a + 2.0))
    yield log_itn * log_itn
    yield 0.25 * (math.pi - 2.0 * _I * _LN2) ** 2


# --------------------------------------------------------------------------
# ID-14: polylogarithm sum (the main identity at unit shift parameter)
# --------------------------------------------------------------------------

def _id14_lhs(pt, policy, meter):
    m, k = complex(pt.m), complex(pt.k)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        c1 = tp * principal_pow(0.5 * tp, k)
        c2 = tp * principal_pow(tp, k)
        local = CancellationMeter()
        li1 = polylog(-k, -cmath.exp(_I * tp * m), policy, local)
        li2 = polylog(-k, -cmath.exp(_I * 2.0 * tp * m), policy, local)
        meter.note(local.peak * max(abs(c1), abs(c2)))
        yield c1 * li1
        yield -c2 * li2


def _id14_rhs(pt, policy, meter):
    m, k = complex(pt.m), complex(pt.k)
    tn = 2.0 ** -pt.n
    local = CancellationMeter()
    phi1 = lerch_phi(LerchParams(cmath.exp(4.0 * _I * m), -k, 0.5), policy, local)
    phi2 = lerch_phi(LerchParams(cmath.exp(_I * 2.0 * tn * m), -k, 0.5), policy, local)
    c1 = principal_pow(2.0, k + 1) * cmath.exp(2.0 * _I * m)
    c2 = principal_pow(tn, k + 1) * cmath.exp(_I * m * tn)
    meter.note(local.peak * max(abs(c1), abs(c2)))
    yield c1 * phi1
    yield -c2 * phi2


def _id14_constraints(pt, margin):
    if pt.m is None or pt.k is None or pt.n is None:
        return False
    return complex(pt.m).imag >= max(margin, 1e-6)


# --------------------------------------------------------------------------
# ID-15: exponential of trigonometric functions, compared in log space:
# both sides are the exponent sums of the printed products.
# --------------------------------------------------------------------------

def _id15_lhs(pt, policy, meter):
    x = complex(pt.x)
    for p in range(pt.n + 1):
        tp = 2.0 ** -p
        local = CancellationMeter()
        combo = local.sum([_sec(0.25 * tp * x) ** 2,
                           -3.0 * _sec(0.5 * tp * x) ** 2,
                           2.0 * _sec(tp * x) ** 2])
        meter.note(local.peak * 4.0 ** (1 - p))
        yield 4.0 ** (1 - p) * combo


def _id15_rhs(pt, policy, meter):
    x = complex(pt.x)
    n = pt.n
    tn = 2.0 ** -n
    local = CancellationMeter()
    combo = local.sum([-_csc(0.25 * tn * x) ** 2, _csc(0.5 * tn * x) ** 2,
                       _sec(0.25 * tn * x) ** 2, -_sec(0.5 * tn * x) ** 2])
    scale = 2.0 ** (1 - 2 * n)
    meter.note(local.peak * scale)
    yield scale * combo
    yield 32.0 * _cot(x) * _csc(x)
    yield -32.0 * _cot(2.0 * x) * _csc(2.0 * x)


def _id15_constraints(pt, margin):
    if pt.x is None or pt.n is None:
        return False
    x = complex(pt.x)
    for p in range(pt.n + 1):
        for scale in (2.0 ** -(p + 2), 2.0 ** -(p + 1), 2.0 ** -p):
            if _dist_cos_zero(x, scale) < margin:
                return False
    for scale in (2.0 ** -(pt.n + 2), 2.0 ** -(pt.n + 1)):
        if _dist_sin_zero(x, scale) < margin or _dist_cos_zero(x, scale) < margin:
            return False
    for scale in (1.0, 2.0):
        if _dist_sin_zero(x, scale) < margin:
            return False
    return True


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

def _complex_field_constraints(*needed):
    def check(pt, margin):
        return all(getattr(pt, f) is not None for f in needed)
    return check


_REGISTRY = (
    IdentitySpec(
        id="ID-00", title="integrand-identity",
        description="telescoping tan*sec sum equals a csc difference",
        schema=("m", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id00_lhs), rhs=SideExpr("sum", _id00_rhs),
        constraints=_id00_constraints,
    ),
    IdentitySpec(
        id="ID-01", title="main-theorem",
        description="finite sum of Hurwitz-Lerch pairs collapses to two terms",
        schema=("a", "m", "k", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id01_lhs), rhs=SideExpr("sum", _id01_rhs),
        constraints=_id01_constraints,
    ),
    IdentitySpec(
        id="ID-02", title="degenerate",
        description="tan*sec telescoping sum, corrected tabulated form",
        schema=("m", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id02_lhs), rhs=SideExpr("sum", _id02_rhs),
        constraints=_id02_constraints,
    ),
    IdentitySpec(
        id="ID-03", title="cos-ratio-two-param",
        description="cosine-ratio product equals a tangent-ratio closed form",
        schema=("m", "r", "n"), compare_mode="relative",
        lhs=SideExpr("product", _id03_lhs), rhs=SideExpr("product", _id03_rhs),
        constraints=_id03_constraints,
    ),
    IdentitySpec(
        id="ID-04", title="functional-equation",
        description="Phi(z,s,a) decomposed over bases z^2, z^4, z^8",
        schema=("z", "s", "a"), compare_mode="relative",
        lhs=SideExpr("sum", _id04_lhs), rhs=SideExpr("sum", _id04_rhs),
        constraints=_id04_constraints,
    ),
    IdentitySpec(
        id="ID-05", title="cos-ratio-k1",
        description="cubic cosine-ratio product equals a tangent-ratio form",
        schema=("x", "n"), compare_mode="relative",
        lhs=SideExpr("product", _id05_lhs), rhs=SideExpr("product", _id05_rhs),
        constraints=_id05_constraints,
    ),
    IdentitySpec(
        id="ID-06", title="exp-cos-product",
        description="cosine ratios times exponentials of csc combinations",
        schema=("x", "n"), compare_mode="relative",
        lhs=SideExpr("product", _id06_lhs), rhs=SideExpr("product", _id06_rhs),
        constraints=_id06_constraints,
    ),
    IdentitySpec(
        id="ID-07", title="loggamma-sum",
        description="log-gamma sum at imaginary arguments, equal mod 2*pi*i",
        schema=("a", "n"), compare_mode="mod_2pi_i",
        lhs=SideExpr("sum", _id07_lhs), rhs=SideExpr("sum", _id07_rhs),
        constraints=_real_a_constraints(2.0, 8.5),
    ),
    IdentitySpec(
        id="ID-08", title="loggamma-sum-alt",
        description="log-gamma sum with real arguments",
        schema=("a", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id08_lhs), rhs=SideExpr("sum", _id08_rhs),
        constraints=_real_a_constraints(2.0, 8.5),
    ),
    IdentitySpec(
        id="ID-09", title="digamma-sum",
        description="digamma sum with rational correction terms",
        schema=("a", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id09_lhs), rhs=SideExpr("sum", _id09_rhs),
        constraints=_real_a_constraints(2.0, 8.5),
    ),
    IdentitySpec(
        id="ID-10", title="loggamma-transform",
        description="single-parameter gamma-product closed form",
        schema=("a",), compare_mode="relative",
        lhs=SideExpr("sum", _id10_lhs), rhs=SideExpr("sum", _id10_rhs),
        constraints=_id10_constraints,
    ),
    IdentitySpec(
        id="ID-11", title="nielsen-product",
        description="gamma-ratio product with dyadic exponents, closed form",
        schema=("x", "n"), compare_mode="relative",
        lhs=SideExpr("product", _id11_lhs), rhs=SideExpr("product", _id11_rhs),
        constraints=_id11_constraints,
    ),
    IdentitySpec(
        id="ID-12", title="nielsen-infinite",
        description="infinite gamma-ratio product converging to a closed form",
        schema=("x",), compare_mode="relative",
        lhs=SideExpr("product", _id12_lhs), rhs=SideExpr("product", _id12_rhs),
        constraints=_id12_constraints,
        trend=_ID12_GATE,
    ),
    IdentitySpec(
        id="ID-13", title="stieltjes-sum",
        description="generalized Stieltjes constants with harmonic weights",
        schema=("a", "n"), compare_mode="absolute",
        lhs=SideExpr("sum", _id13_lhs), rhs=SideExpr("sum", _id13_rhs),
        constraints=_real_a_constraints(2.0, 6.5),
    ),
    IdentitySpec(
        id="ID-14", title="polylog-sum",
        description="polylogarithm sum collapsing to two Phi terms",
        schema=("m", "k", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id14_lhs), rhs=SideExpr("sum", _id14_rhs),
        constraints=_id14_constraints,
    ),
    IdentitySpec(
        id="ID-15", title="exp-trig-product",
        description="exponent sums of sec^2/csc^2 products, log-space compare",
        schema=("x", "n"), compare_mode="relative",
        lhs=SideExpr("sum", _id15_lhs), rhs=SideExpr("sum", _id15_rhs),
        constraints=_id15_constraints,
    ),
)

_BY_ID = {spec.id: spec for spec in _REGISTRY}


def list_identities() -> tuple:
    """All registry entries, stable order, stable ids."""
    return _REGISTRY


def get_identity(identity_id: str) -> IdentitySpec:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity id {identity_id!r}") from None


def prudnikov_original() -> IdentitySpec:
    """The uncorrected tabulated variant of ID-02 (right side negated).

    Deliberately excluded from list_identities(): it exists so tests can
    confirm that the comparator rejects the erroneous printed form while the
    corrected one passes.
    """
    base = get_identity("ID-02")
    return IdentitySpec(
        id="ID-02-PRUDNIKOV-ORIGINAL", title="degenerate-uncorrected",
        description="ID-02 with the right side's terms sign-swapped",
        schema=base.schema, compare_mode=base.compare_mode,
        lhs=base.lhs, rhs=SideExpr("sum", _id02_rhs_prudnikov),
        constraints=base.constraints,
    )


def evaluate_sides(identity_id: str, point: EvalPoint,
                   policy: PrecisionPolicy = PrecisionPolicy()) -> tuple:
    """Evaluate both sides of a registry identity at one parameter point.

    The point must carry exactly the identity's schema fields and satisfy its
    domain constraints.  Raises SideEvaluationError (tagged with side and
    term index) if a singularity or convergence failure is hit mid-sum.
    """
    spec = get_identity(identity_id)
    declared = frozenset(spec.schema)
    if point.present() != declared:
        raise DomainError(
            f"{identity_id} needs exactly fields {sorted(declared)}, "
            f"got {sorted(point.present())}"
        )
    if not spec.constraints(point, 1e-9):
        raise DomainError(f"{identity_id}: point violates domain constraints")
    meter = CancellationMeter()
    lhs = evaluate_side("lhs", spec.lhs, point, policy, meter)
    rhs = evaluate_side("rhs", spec.rhs, point, policy, meter)
    return lhs, rhs
