"""
Multiple zeta objects: chain sums over tuples of monic polynomials with
strictly (``strict``) or weakly (``weak``) decreasing degrees.

Given the degrees, the inner sums over each a_i are independent, so every
chain sum is a sum over degree vectors of products of per-degree sums.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..exceptions import InvalidInputError, UnsupportedFeatureError
from .fields import FieldSpec, lq_digit_sum
from .metrics_services import push_metric
from .mpoly import MPoly, PolyRing
from .parallel_services import chunked_sum
from .polyring import APoly
from .seriesinf import LaurentSeries, inverse_power
from .vadic import require_prime
from .zeta import power_sum

_logger = logging.getLogger(__name__)

MODES = ('strict', 'weak')


@dataclass(frozen=True)
class MzvIndex:
    n: Tuple[int, ...]
    mode: str = 'strict'
    P: Optional[APoly] = None

    def __post_init__(self):
        object.__setattr__(self, 'n', tuple(int(x) for x in self.n))
        if not self.n:
            raise InvalidInputError(detail={'message': 'Need at least one index'})
        if self.mode not in MODES:
            raise InvalidInputError(detail={
                'message': 'mode must be strict or weak', 'mode': self.mode})
        if self.P is not None:
            require_prime(self.P)

    @property
    def r(self) -> int:
        return len(self.n)

    @property
    def strict(self) -> bool:
        return self.mode == 'strict'

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(f'z{i + 1}' for i in range(self.r))

    def require_non_positive(self):
        if all(x <= 0 for x in self.n):
            return
        if all(x > 0 for x in self.n):
            raise InvalidInputError(detail={
                'message': 'Positive indices have no exact polynomial; use mzv_eval_inf',
                'indices': list(self.n)})
        raise UnsupportedFeatureError(detail={
            'message': 'Mixed-sign indices need rational coefficients; '
                       'evaluate numerically instead',
            'indices': list(self.n)})


def _walk(r: int, tops: Sequence[int], strict: bool,
          factor: Callable[[int, int], object]):
    """Yield (degrees, product of factors) over every chain, skipping zero
    factors. ``factor(i, d)`` returns None for an exact zero."""
    def step(i, limit, degrees, acc):
        if i == r:
            yield degrees, acc
            return
        for d in range(min(limit, tops[i]) + 1):
            f = factor(i, d)
            if f is None:
                continue
            yield from step(i + 1, d - 1 if strict else d, degrees + (d,),
                            f if acc is None else acc * f)
    yield from step(0, tops[0], (), None)


def _exact_chain_sum(spec: FieldSpec, idx: MzvIndex,
                     first: Callable[[int], APoly], first_top: int) -> MPoly:
    q = spec.q
    tops = [first_top] + [lq_digit_sum(-n, q) // (q - 1) for n in idx.n[1:]]

    @lru_cache(maxsize=None)
    def factor(i, d):
        value = first(d) if i == 0 else power_sum(spec, d, -idx.n[i])
        return None if value.is_zero() else value

    terms = dict(_walk(idx.r, tops, idx.strict, factor))
    return MPoly(idx.vars, terms, PolyRing(spec))


def mzv_exact(spec: FieldSpec, idx: MzvIndex) -> MPoly:
    """sum over chains of prod_i a_i^(-n_i) z_i^(deg a_i), all n_i <= 0."""
    idx.require_non_positive()
    n1 = idx.n[0]
    top = lq_digit_sum(-n1, spec.q) // (spec.q - 1)
    return _exact_chain_sum(spec, idx, lambda d: power_sum(spec, d, -n1), top)


def mzv_vadic_exact(spec: FieldSpec, idx: MzvIndex, P: Optional[APoly] = None) -> MPoly:
    """As mzv_exact with the outermost a_1 restricted to be prime to P."""
    idx.require_non_positive()
    P = P if P is not None else idx.P
    if P is None:
        raise InvalidInputError(detail={'message': 'A prime P is required'})
    require_prime(P)
    n1, dP = idx.n[0], P.degree
    top = dP + lq_digit_sum(-n1, spec.q) // (spec.q - 1)
    scale = P ** (-n1)

    def first(d):
        # a = P b is a bijection onto the multiples of P of degree d
        value = power_sum(spec, d, -n1)
        if d >= dP:
            value = value - scale * power_sum(spec, d - dP, -n1)
        return value

    return _exact_chain_sum(spec, idx, first, top)


def inverse_power_sum(spec: FieldSpec, d: int, n: int, N: int) -> LaurentSeries:
    """sum over monic a of degree d of a^(-n), modulo pi^N."""
    zero = LaurentSeries.zero(spec, N)

    def summarize(polys):
        acc = zero
        for a in polys:
            acc = acc + inverse_power(a, n, N)
        return acc

    return chunked_sum(spec, d, summarize, lambda x, y: x + y, zero)


def mzv_cutoff(q: int, n1: int, N: int) -> int:
    """Chains with deg a_1 >= the returned value vanish modulo pi^N."""
    cutoff = -(-N // n1)
    d = 2
    while d < cutoff:
        if n1 * d + q ** (d - 2) >= N:
            return d
        d += 1
    return cutoff


def mzv_eval_inf(spec: FieldSpec, idx: MzvIndex, N: int,
                 z: Optional[Sequence[LaurentSeries]] = None) -> LaurentSeries:
    """Chain sum for positive indices at z-points of Gauss norm <= 1, modulo pi^N."""
    if any(x < 1 for x in idx.n):
        raise InvalidInputError(detail={
            'message': 'mzv_eval_inf needs every index >= 1', 'indices': list(idx.n)})
    if N < 1:
        raise InvalidInputError(detail={'message': 'Precision must be positive', 'N': N})
    points = list(z) if z is not None else [LaurentSeries.one(spec, N)] * idx.r
    if len(points) != idx.r:
        raise InvalidInputError(detail={
            'message': 'One z-point per index is required',
            'indices': list(idx.n), 'points': len(points)})
    for pt in points:
        if not pt.is_zero() and pt.val < 0:
            raise InvalidInputError(detail={
                'message': 'z-points must have Gauss norm <= 1', 'val': pt.val})
    D = mzv_cutoff(spec.q, idx.n[0], N)
    push_metric({"event": "MzvCutoff", "q": spec.q, "N": N, "D": D,
                 "indices": list(idx.n)})
    one = LaurentSeries.one(spec, N)
    zero = LaurentSeries.zero(spec, N)

    def weighted(i: int) -> List[LaurentSeries]:
        out = []
        power = one
        for d in range(D):
            out.append((inverse_power_sum(spec, d, idx.n[i], N) * power).truncate(N))
            power = (power * points[i]).truncate(N)
        return out

    # inner[d]: sum over chains of the remaining indices with first degree d
    inner = weighted(idx.r - 1)
    for i in range(idx.r - 2, -1, -1):
        below = []
        running = zero
        for d in range(D):
            if not idx.strict:
                running = running + inner[d]
            below.append(running)
            if idx.strict:
                running = running + inner[d]
        outer = weighted(i)
        inner = [(outer[d] * below[d]).truncate(N) for d in range(D)]
    total = zero
    for value in inner:
        total = total + value
    return total.truncate(N)


def diagonal_terms(spec: FieldSpec, n1: int, n2: int) -> MPoly:
    """sum_d S_d(-n1) S_d(-n2) (z1 z2)^d for n1, n2 <= 0."""
    q = spec.q
    top = min(lq_digit_sum(-n1, q), lq_digit_sum(-n2, q)) // (q - 1)
    terms: Dict[Tuple[int, int], APoly] = {}
    for d in range(top + 1):
        terms[(d, d)] = power_sum(spec, d, -n1) * power_sum(spec, d, -n2)
    return MPoly(('z1', 'z2'), terms, PolyRing(spec))


def congruence_difference(spec: FieldSpec, idx: MzvIndex, P: APoly) -> MPoly:
    """mzv_exact - mzv_vadic_exact; divisible by P^(-n_1) coefficientwise."""
    return mzv_exact(spec, idx) - mzv_vadic_exact(spec, idx, P)


def divisible_by(poly: MPoly, P: APoly, e: int) -> bool:
    modulus = P ** e
    return all((c % modulus).is_zero() for c in poly.terms.values())
