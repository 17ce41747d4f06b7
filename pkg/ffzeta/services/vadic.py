"""
Zeta objects at a finite place P: the prime-to-P L-polynomials, the Euler
factor, evaluation with omega_P^delta <.>_P^y, the m_k interpolation
sequence and the interpolation gap.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

from ..exceptions import InvalidInputError, PrecisionError
from .fields import FieldSpec, ZpExp, lq_digit_sum
from .metrics_services import push_metric
from .mpoly import MPoly, PadicRing, PolyRing
from .padic import (PadicCtx, PadicElem, padic_one_unit_pow, teichmuller,
                    valuation_at)
from .parallel_services import chunked_sum
from .polyring import APoly, enumerate_monic
from .seriesinf import LaurentSeries, inverse_power
from .zeta import (_expand_symmetric, check_twist_count, exact_degree_bound,
                   exact_L, pellarin_L_series, power_sum,
                   symmetric_coefficient_sums, t_vars)

_logger = logging.getLogger(__name__)


def require_prime(P: APoly) -> APoly:
    if P.is_zero() or P.is_constant() or not P.is_monic() or not P.is_irreducible():
        raise InvalidInputError(detail={
            'message': 'P must be a monic irreducible polynomial', 'P': repr(P)})
    return P


def _prime_to(P: APoly):
    return lambda a: not (a % P).is_zero()


@dataclass(frozen=True)
class VadicPoint:
    """(y, delta) at P, with the digits of -y stored and an optional z-cutoff."""
    ctx: PadicCtx
    neg_y: ZpExp
    delta: int
    D: Optional[int] = None

    def __post_init__(self):
        Q = self.ctx.residue_order
        object.__setattr__(self, 'delta', self.delta % (Q - 1))
        if self.neg_y.p != self.ctx.spec.p:
            raise InvalidInputError(detail={
                'message': 'Exponent prime differs from the characteristic'})
        if self.ctx.spec.p ** self.neg_y.precision < self.ctx.k:
            raise PrecisionError(detail={
                'message': 'Need p^M >= k for the P-adic precision',
                'digits': self.neg_y.precision, 'k': self.ctx.k})
        if self.D is not None and self.D < 0:
            raise InvalidInputError(detail={
                'message': 'z-cutoff must be non-negative', 'D': self.D})


def vadic_exact_L(spec: FieldSpec, n: int, s: int, P: APoly, margin: int = 0) -> MPoly:
    """sum_d z^d sum over monic a of degree d prime to P of a(t_1)..a(t_s) a^(-n)."""
    if n > 0:
        raise InvalidInputError(detail={
            'message': 'vadic_exact_L needs n <= 0', 'n': n})
    check_twist_count(s)
    require_prime(P)
    top = P.degree + exact_degree_bound(spec.q, n, s) + margin
    keep = _prime_to(P)
    terms = {}
    for d in range(top + 1):
        sums = symmetric_coefficient_sums(spec, d, s, -n, keep=keep)
        terms.update(_expand_symmetric(sums, d))
    return MPoly(t_vars(s) + ('z',), terms, PolyRing(spec))


def euler_product(spec: FieldSpec, n: int, P: APoly) -> MPoly:
    """(1 - P^(-n) z^dP) Z(n; z) for n <= 0."""
    require_prime(P)
    ring = PolyRing(spec)
    factor = MPoly(('z',), {(0,): APoly.one(spec), (P.degree,): -(P ** (-n))}, ring)
    return factor * exact_L(spec, n, 0)


def prime_to_P_inverse_sum(spec: FieldSpec, d: int, n: int, P: APoly,
                           N: int) -> LaurentSeries:
    """sum over monic a of degree d prime to P of a^(-n), modulo pi^N."""
    keep = _prime_to(P)
    zero = LaurentSeries.zero(spec, N)

    def summarize(polys):
        acc = zero
        for a in polys:
            if keep(a):
                acc = acc + inverse_power(a, n, N)
        return acc

    return chunked_sum(spec, d, summarize, lambda x, y: x + y, zero)


def euler_coefficient_identity(spec: FieldSpec, n: int, P: APoly, D: int,
                               N: int) -> Tuple[LaurentSeries, LaurentSeries]:
    """Both sides of the coefficient of z^D in the Euler identity for n >= 1:
    the prime-to-P sum, and full(D) - P^(-n) full(D - dP)."""
    require_prime(P)
    lhs = prime_to_P_inverse_sum(spec, D, n, P, N)
    series = pellarin_L_series(spec, n, 0, D, N)
    rhs = series.coefficient((D,))
    if D >= P.degree:
        rhs = rhs - inverse_power(P, n, N) * series.coefficient((D - P.degree,))
    return lhs, rhs.truncate(N)


def vadic_level(q: int, d: int, dP: int, s: int) -> int:
    """Exponent l with v_P(c_d) >= q^l certified, 0 when nothing is."""
    level = ((d - dP - 1) * (q - 1) - 1 - s) // (q - 1)
    return max(level, 0)


def vadic_cutoff(ctx: PadicCtx, s: int = 0) -> int:
    """Largest degree that must be summed for an answer exact modulo P^k."""
    check_twist_count(s)
    q, dP = ctx.spec.q, ctx.dP
    d = dP + 2
    while True:
        level = vadic_level(q, d, dP, s)
        if level >= 1 and q ** level >= ctx.k:
            return d - 1
        d += 1


def vadic_coefficient(ctx: PadicCtx, d: int, neg_y: ZpExp, delta: int,
                      s: int = 0) -> Dict[Tuple[int, ...], PadicElem]:
    """For each multiset J of {0..d} of size s, the sum over monic a of
    degree d prime to P of c_J(a) omega(a)^delta <a>_P^(-y)."""
    check_twist_count(s)
    spec = ctx.spec
    multisets = list(itertools.combinations_with_replacement(range(d + 1), s))
    zero = ctx.element(0)

    def summarize(polys):
        acc = {J: zero for J in multisets}
        for a in polys:
            x = ctx.element(a)
            if not x.is_unit():
                continue
            w = teichmuller(x, ctx)
            value = (w ** delta) * padic_one_unit_pow(x * w.inverse(), neg_y, ctx)
            for J in multisets:
                c = 1
                for j in J:
                    c = spec.mul(c, a.coefficient(j))
                    if not c:
                        break
                if c:
                    acc[J] = acc[J] + value * APoly.constant(spec, c)
        return acc

    return chunked_sum(spec, d, summarize,
                       lambda u, v: {J: u[J] + v[J] for J in u},
                       {J: zero for J in multisets})


def vadic_zeta_eval(ptv: VadicPoint, s: int = 0) -> MPoly:
    """sum_{d <= D} z^d sum_{P not dividing a} a(t) omega(a)^delta <a>^(-y)
    in A/(P^k)[t, z]."""
    check_twist_count(s)
    ctx = ptv.ctx
    D = ptv.D if ptv.D is not None else vadic_cutoff(ctx, s)
    push_metric({"event": "VadicCutoff", "q": ctx.spec.q, "dP": ctx.dP,
                 "k": ctx.k, "D": D, "certified": ptv.D is None})
    terms = {}
    for d in range(D + 1):
        terms.update(_expand_symmetric(
            vadic_coefficient(ctx, d, ptv.neg_y, ptv.delta, s), d))
    return MPoly(t_vars(s) + ('z',), terms, PadicRing(ctx))


# the m_k sequence

@dataclass(frozen=True)
class MkResult:
    m_k: int
    delta_k: int
    k: int
    dP: int
    q: int
    checks: Dict[str, bool] = field(default_factory=dict)
    # l_q(-m_k) <= (k + dP)(q - 1), one digit block tighter than digit_sum
    narrow_digit_bound: bool = True


def mk_sequence(n1: Union[int, ZpExp], k: int, dP: int, q: int,
                delta: Optional[int] = None) -> MkResult:
    """m_k <= 0 with -m_k = (-n1 mod q^(k+1)) + delta_k q^((k+1) dP).

    A ZpExp argument holds the digits of -n1; ``delta`` fixes the class of
    -m_k modulo q^dP - 1 and defaults to that of -n1.
    """
    if k < 0 or dP < 1:
        raise InvalidInputError(detail={
            'message': 'Need k >= 0 and deg P >= 1', 'k': k, 'dP': dP})
    modulus = q ** (k + 1)
    if isinstance(n1, ZpExp):
        if n1.p ** n1.precision < modulus:
            raise PrecisionError(detail={
                'message': 'Not enough digits of -n1 for this k',
                'digits': n1.precision, 'k': k})
        neg_n1 = n1.value
    else:
        neg_n1 = -n1
    Q1 = q ** dP - 1
    target = neg_n1 % Q1 if delta is None else delta % Q1
    low = neg_n1 % modulus
    delta_k = (target - low - 1) % Q1 + 1
    value = low + delta_k * q ** ((k + 1) * dP)
    digits = lq_digit_sum(value, q)
    checks = {
        'residue_q_power': (value - neg_n1) % modulus == 0,
        'residue_unit_group': (value - target) % Q1 == 0,
        'digit_sum': digits <= (k + 1 + dP) * (q - 1),
        'size': value >= modulus,
    }
    if not all(checks.values()):
        _logger.error("m_k construction failed its checks: %s", checks)
    return MkResult(-value, delta_k, k, dP, q, checks,
                    digits <= (k + dP) * (q - 1))


# interpolation gap

@dataclass(frozen=True)
class GapResult:
    measured: int
    bound: int
    at_cap: bool
    m_k: int
    cap: int
    chains: int

    @property
    def holds(self) -> bool:
        return self.measured >= self.bound


def _chains(top: int, r: int, strict: bool):
    """Degree vectors d_1 (>|>=) d_2 ... d_r >= 0 with d_1 <= top."""
    if r == 1:
        for d in range(top + 1):
            yield (d,)
        return
    for d in range(top + 1):
        for rest in _chains(d - 1 if strict else d, r - 1, strict):
            yield (d,) + rest


def _split_p_power(a: APoly, P: APoly) -> Tuple[int, APoly]:
    e = 0
    while True:
        quot, rem = divmod(a, P)
        if not rem.is_zero():
            return e, a
        a, e = quot, e + 1


def power_sum_valuation(spec: FieldSpec, d: int, n: int, P: APoly, cap: int) -> Optional[int]:
    """v_P(sum over monic a of degree d of a^(-n)), None for an exact zero.

    For n > 0 the sum is scaled by P^(n floor(d/dP)) so every term is
    integral at P. Results at or above ``cap`` are reported as ``cap``.
    """
    if n <= 0:
        S = power_sum(spec, d, -n)
        return None if S.is_zero() else valuation_at(P, S, cap)
    e_max = d // P.degree
    shift = n * e_max
    ctx = PadicCtx(P, cap + shift)
    total = ctx.element(0)
    for a in enumerate_monic(spec, d):
        e, b = _split_p_power(a, P)
        term = ctx.element(b).inverse() ** n
        if e < e_max:
            term = term * P ** (n * (e_max - e))
        total = total + term
    if total.is_zero():
        return cap
    return min(total.vP() - shift, cap)


def interpolation_gap(spec: FieldSpec, n_vec: Sequence[int], P: APoly, k: int,
                      mode: str = 'strict') -> GapResult:
    """min over chains of v_P of the coefficients of
    Z(m_k, n_2..n_r; z) - Z_P(n_1, n_2..n_r; z) truncated at deg z_1 <= k+1+dP."""
    require_prime(P)
    if not n_vec:
        raise InvalidInputError(detail={'message': 'Need at least one index'})
    if mode not in ('strict', 'weak'):
        raise InvalidInputError(detail={'message': 'mode must be strict or weak'})
    q, dP = spec.q, P.degree
    n1, rest = n_vec[0], list(n_vec[1:])
    mk = mk_sequence(n1, k, dP, q)
    neg_mk = -mk.m_k
    cap = q ** (k + 1) + 1
    ctx = PadicCtx(P, cap)
    top = max(k + 1 + dP, lq_digit_sum(neg_mk, q) // (q - 1))
    keep = _prime_to(P)

    first = {}
    for d in range(top + 1):
        acc = ctx.element(0)
        for a in enumerate_monic(spec, d):
            x = ctx.element(a)
            acc = acc + x ** neg_mk
            if d <= k + 1 + dP and keep(a):
                acc = acc - (x ** (-n1) if n1 <= 0 else x.inverse() ** n1)
        first[d] = acc.vP()

    other_cache: Dict[Tuple[int, int], Optional[int]] = {}

    def other(d, n):
        if (d, n) not in other_cache:
            other_cache[(d, n)] = power_sum_valuation(spec, d, n, P, cap)
        return other_cache[(d, n)]

    best = None
    at_cap = True
    chains = 0
    for chain in _chains(top, len(n_vec), mode == 'strict'):
        v1 = first[chain[0]]
        total = v1
        capped = v1 >= cap
        skip = False
        for dj, nj in zip(chain[1:], rest):
            vj = other(dj, nj)
            if vj is None:
                skip = True
                break
            total += vj
        if skip:
            continue
        chains += 1
        if not capped:
            at_cap = False
        if best is None or total < best:
            best = total
    bound = q ** (k + 1) - sum(abs(n) for n in rest) * (dP + k)
    measured = best if best is not None else cap
    push_metric({"event": "InterpolationGap", "q": q, "dP": dP, "k": k,
                 "indices": list(n_vec), "measured": measured, "bound": bound})
    return GapResult(measured, bound, at_cap, mk.m_k, cap, chains)

