"""
Sums over monic polynomials at the infinite place.

Power sums S_d(n), twisted and character sums, the exact zeta and
L-polynomials at non-positive integers, truncated L-series at positive
integers, and evaluation of zeta and its twists at p-adic exponents.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..exceptions import InvalidInputError, PrecisionError
from .cache_services import cache_key, get_cache
from .fields import (FieldSpec, FqElem, ResidueChar, ZpExp, base_digits,
                     binom_mod_p, embedding, lq_digit_sum)
from .metrics_services import push_metric
from .mpoly import FqRing, LaurentRing, MPoly, PolyRing
from .parallel_services import chunked_sum
from .polyring import (APoly, add_codes, enumerate_monic, eval_poly,
                       frobenius_twist, hyperderivative, scale_codes)
from .seriesinf import LaurentSeries, bracket, inverse_power, one_unit_pow

_logger = logging.getLogger(__name__)

MAX_CUTOFF_DEGREE = 4096


@dataclass(frozen=True)
class TwistFactor:
    """One factor of a twisted sum.

    A finite factor contributes phi^frobenius(a^(order)) evaluated at
    ``point`` (a variable name or a Laurent series). An infinite factor
    contributes <phi^frobenius(a)(point)>^exponent and needs v(point) < 0.
    """
    kind: str
    point: Union[str, LaurentSeries]
    frobenius: int = 0
    order: int = 0
    exponent: Optional[ZpExp] = None

    def __post_init__(self):
        if self.kind not in ('finite', 'infinite'):
            raise InvalidInputError(detail={
                'message': 'Factor kind must be finite or infinite',
                'kind': self.kind})
        if self.frobenius < 0 or self.order < 0:
            raise InvalidInputError(detail={
                'message': 'Frobenius exponent and order must be non-negative'})
        if self.kind == 'infinite':
            if self.order:
                raise InvalidInputError(detail={
                    'message': 'Hyperderivatives apply to finite factors only'})
            if self.exponent is None:
                raise InvalidInputError(detail={
                    'message': 'Infinite factors need a p-adic exponent'})
            if not isinstance(self.point, LaurentSeries) or self.point.is_zero() \
                    or self.point.val >= 0:
                raise InvalidInputError(detail={
                    'message': 'Infinite factors need a point of negative valuation'})

    @classmethod
    def finite(cls, point, frobenius: int = 0, order: int = 0) -> 'TwistFactor':
        return cls('finite', point, frobenius, order)

    @classmethod
    def infinite(cls, point: LaurentSeries, exponent: ZpExp,
                 frobenius: int = 0) -> 'TwistFactor':
        return cls('infinite', point, frobenius, 0, exponent)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.point, str)


@dataclass(frozen=True)
class SInftyPoint:
    """(x; y) with the digits of -y stored."""
    x: LaurentSeries
    neg_y: ZpExp

    def __post_init__(self):
        if self.x.is_zero():
            raise InvalidInputError(detail={
                'message': 'x must be nonzero at its precision'})

    @classmethod
    def from_integer(cls, x: LaurentSeries, y: int, digits: int) -> 'SInftyPoint':
        return cls(x, ZpExp.from_int(-y, x.spec.p, digits))


# power sums

@lru_cache(maxsize=None)
def _partial_power_sum(p: int, q: int, d: int, k: int) -> Tuple[int, ...]:
    """Sum of b^k over all b of degree < d, coefficients in F_p."""
    if d == 0:
        return (1,) if k == 0 else ()
    acc: List[int] = []
    for m in range(q - 1, k + 1, q - 1):
        j = k - m
        c = binom_mod_p(k, j, p)
        if not c:
            continue
        sub = _partial_power_sum(p, q, d - 1, j)
        if not sub:
            continue
        shift = (d - 1) * m
        if len(acc) < shift + len(sub):
            acc.extend([0] * (shift + len(sub) - len(acc)))
        for i, x in enumerate(sub):
            acc[shift + i] -= c * x
    out = [x % p for x in acc]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _digit_submasks(n: int, p: int):
    digits = base_digits(n, p)
    for choice in itertools.product(*[range(x + 1) for x in digits]):
        yield sum(c * p ** i for i, c in enumerate(choice))


@lru_cache(maxsize=4096)
def _power_sum_codes(p: int, q: int, d: int, n: int) -> Tuple[int, ...]:
    acc: List[int] = []
    for k in _digit_submasks(n, p):
        c = binom_mod_p(n, k, p)
        part = _partial_power_sum(p, q, d, k)
        if not c or not part:
            continue
        shift = d * (n - k)
        if len(acc) < shift + len(part):
            acc.extend([0] * (shift + len(part) - len(acc)))
        for i, x in enumerate(part):
            acc[shift + i] += c * x
    out = [x % p for x in acc]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def power_sum(spec: FieldSpec, d: int, n: int) -> APoly:
    """S_d(n) = sum of a^n over monic a of degree d."""
    if d < 0 or n < 0:
        raise InvalidInputError(detail={
            'message': 'Power sums need d >= 0 and n >= 0', 'd': d, 'n': n})
    cache = get_cache()
    if cache is None:
        return APoly(spec, _power_sum_codes(spec.p, spec.q, d, n))
    key = cache_key(spec, d, n)
    with cache.lock(key):
        hit = cache.get(key)
        if hit is not None and all(isinstance(c, int) and 0 <= c < spec.p for c in hit):
            push_metric({"event": "PowerSumCacheHit", "d": d, "n": n})
            return APoly(spec, hit)
        coeffs = _power_sum_codes(spec.p, spec.q, d, n)
        cache.put(key, coeffs, d=d, n=n, q=spec.q)
        push_metric({"event": "PowerSumComputed", "d": d, "n": n,
                     "q": spec.q, "degree": len(coeffs) - 1})
        return APoly(spec, coeffs)


def power_sum_enumerated(spec: FieldSpec, d: int, n: int) -> APoly:
    """S_d(n) by summing over every monic polynomial."""
    return chunked_sum(spec, d,
                       lambda polys: sum((a ** n for a in polys), APoly.zero(spec)),
                       lambda x, y: x + y, APoly.zero(spec))


# twisted sums

def _roster(factors: Sequence[TwistFactor]) -> Tuple[str, ...]:
    names = []
    for f in factors:
        if f.symbolic and f.point not in names:
            names.append(f.point)
    return tuple(names)


def _finite_image(a: APoly, factor: TwistFactor) -> APoly:
    return frobenius_twist(hyperderivative(a, factor.order), factor.frobenius)


def twisted_power_sum(spec: FieldSpec, d: int, factors: Sequence[TwistFactor],
                      char: Optional[ResidueChar] = None) -> MPoly:
    """sum over monic a of degree d (P not dividing a when ``char`` is
    given) of char(a) * prod phi^e_i(a^(m_i))(t_i)."""
    for f in factors:
        if f.kind != 'finite' or not f.symbolic:
            raise InvalidInputError(detail={
                'message': 'Twisted power sums take finite factors at symbolic points'})
    names = _roster(factors)
    slot = [names.index(f.point) for f in factors]
    if char is not None:
        target, emb = char.residue_field, char.coefficient_embedding
    else:
        target, emb = spec, embedding(spec, spec)

    def summarize(polys):
        terms: Dict[Tuple[int, ...], int] = {}
        for a in polys:
            weight = 1
            if char is not None:
                weight = char(a)
                if weight == 0:
                    continue
            parts = []
            for f in factors:
                g = _finite_image(a, f)
                parts.append([(j, c) for j, c in enumerate(g.coeffs) if c])
            for combo in itertools.product(*parts):
                exp = [0] * len(names)
                c = weight
                for i, (j, code) in enumerate(combo):
                    exp[slot[i]] += j
                    c = target.mul(c, emb(code))
                key = tuple(exp)
                terms[key] = target.add(terms.get(key, 0), c)
        return terms

    def merge(x, y):
        out = dict(x)
        for key, c in y.items():
            out[key] = target.add(out.get(key, 0), c)
        return out

    terms = chunked_sum(spec, d, summarize, merge, {})
    return MPoly(names, {e: FqElem(target, c) for e, c in terms.items()},
                 FqRing(target, base=spec))


def char_power_sum(spec: FieldSpec, d: int, chi: ResidueChar, n: int):
    """sum over monic a of degree d, P not dividing a, of chi(a) a^n."""
    if n < 0:
        raise InvalidInputError(detail={
            'message': 'Character sums need n >= 0', 'n': n})
    big, emb = chi.residue_field, chi.coefficient_embedding
    if n == 0:
        total = chunked_sum(spec, d,
                            lambda polys: _field_sum(big, (chi(a) for a in polys)),
                            big.add, 0)
        return FqElem(big, total)

    def summarize(polys):
        acc: List[int] = []
        for a in polys:
            w = chi(a)
            if w:
                image = [emb(c) for c in (a ** n).coeffs]
                acc = add_codes(big, acc, scale_codes(big, image, w))
        return acc

    return APoly(big, chunked_sum(spec, d, summarize,
                                  lambda x, y: add_codes(big, x, y), []))


def _field_sum(spec: FieldSpec, codes) -> int:
    total = 0
    for c in codes:
        total = spec.add(total, c)
    return total


# exact polynomials

def check_twist_count(s: int) -> int:
    if s < 0:
        raise InvalidInputError(detail={'message': 's must be non-negative', 's': s})
    return s


def symmetric_coefficient_sums(spec: FieldSpec, d: int, s: int, power: int,
                               keep: Optional[Callable[[APoly], bool]] = None
                               ) -> Dict[Tuple[int, ...], APoly]:
    """For each multiset j_1 <= ... <= j_s of {0..d}, the sum over monic a of
    degree d of c_j1(a)...c_js(a) a^power."""
    check_twist_count(s)
    multisets = list(itertools.combinations_with_replacement(range(d + 1), s))

    def summarize(polys):
        acc = {J: [] for J in multisets}
        for a in polys:
            if keep is not None and not keep(a):
                continue
            image = (a ** power).coeffs
            for J in multisets:
                c = 1
                for j in J:
                    c = spec.mul(c, a.coefficient(j))
                    if not c:
                        break
                if c:
                    acc[J] = add_codes(spec, acc[J], scale_codes(spec, image, c))
        return acc

    def merge(x, y):
        return {J: add_codes(spec, x[J], y[J]) for J in x}

    sums = chunked_sum(spec, d, summarize, merge, {J: [] for J in multisets})
    return {J: APoly(spec, c) for J, c in sums.items()}


def _expand_symmetric(sums: Dict[Tuple[int, ...], object], d: int) -> Dict[Tuple[int, ...], object]:
    terms = {}
    for J, value in sums.items():
        for perm in set(itertools.permutations(J)):
            terms[perm + (d,)] = value
    return terms


def t_vars(s: int) -> Tuple[str, ...]:
    return tuple(f't{i + 1}' for i in range(s))


def exact_degree_bound(q: int, n: int, s: int) -> int:
    """(s + l_q(-n)) // (q - 1) for n <= 0."""
    return (s + lq_digit_sum(-n, q)) // (q - 1)


def exact_L(spec: FieldSpec, n: int, s: int, margin: int = 0) -> MPoly:
    """L(n; t_1..t_s; z) for n <= 0 as a polynomial over A.

    Degrees up to the vanishing bound plus ``margin`` are computed.
    """
    if n > 0:
        raise InvalidInputError(detail={
            'message': 'exact_L needs n <= 0; use pellarin_L_series for n >= 1',
            'n': n})
    check_twist_count(s)
    top = exact_degree_bound(spec.q, n, s) + margin
    ring = PolyRing(spec)
    terms = {}
    for d in range(top + 1):
        if s == 0:
            terms[(d,)] = power_sum(spec, d, -n)
        else:
            terms.update(_expand_symmetric(
                symmetric_coefficient_sums(spec, d, s, -n), d))
    return MPoly(t_vars(s) + ('z',), terms, ring)


def pellarin_L_series(spec: FieldSpec, n: int, s: int, D: int, N: int) -> MPoly:
    """L(n; t; z) for n >= 1 truncated at z^D, coefficients modulo pi^N."""
    if n < 1:
        raise InvalidInputError(detail={
            'message': 'pellarin_L_series needs n >= 1; use exact_L', 'n': n})
    if D < 0 or N < 1:
        raise InvalidInputError(detail={
            'message': 'Need D >= 0 and N >= 1', 'D': D, 'N': N})
    check_twist_count(s)
    multisets_by_d = {d: list(itertools.combinations_with_replacement(range(d + 1), s))
                      for d in range(D + 1)}
    zero = LaurentSeries.zero(spec, N)
    terms = {}
    for d in range(D + 1):
        multisets = multisets_by_d[d]

        def summarize(polys, multisets=multisets):
            acc = {J: zero for J in multisets}
            for a in polys:
                inv = inverse_power(a, n, N)
                for J in multisets:
                    c = 1
                    for j in J:
                        c = spec.mul(c, a.coefficient(j))
                        if not c:
                            break
                    if c:
                        acc[J] = acc[J] + inv.scale(c)
            return acc

        sums = chunked_sum(spec, d, summarize,
                           lambda x, y: {J: x[J] + y[J] for J in x},
                           {J: zero for J in multisets})
        terms.update(_expand_symmetric(sums, d))
    return MPoly(t_vars(s) + ('z',), terms, LaurentRing(spec, N))


# evaluation at p-adic exponents

def tail_cutoff(bound: Callable[[int], float], N: int, start: int = 0) -> int:
    """Smallest D >= start with bound(D) >= N and bound non-decreasing from D.

    ``bound`` must be a convex lower envelope of the valuations of the terms,
    so every term of index >= D vanishes modulo pi^N.
    """
    d = start
    while d <= MAX_CUTOFF_DEGREE:
        here = bound(d)
        if here >= N and bound(d + 1) >= here:
            return d
        d += 1
    raise PrecisionError(detail={
        'message': 'No tail cutoff found below the degree limit',
        'N': N, 'limit': MAX_CUTOFF_DEGREE})


def goss_cutoff(q: int, vx: int, N: int) -> int:
    """Terms of degree >= the returned value have v >= N, using
    v(c_d) >= q^(d-2) for d >= 2."""
    return tail_cutoff(lambda d: q ** (d - 2) - d * vx, N, start=2)


def goss_coefficient(spec: FieldSpec, d: int, neg_y: ZpExp, prec: int) -> LaurentSeries:
    """c_d = sum over monic a of degree d of <a>^(-y), modulo pi^prec."""
    zero = LaurentSeries.zero(spec, prec)

    def summarize(polys):
        acc = zero
        for a in polys:
            acc = acc + one_unit_pow(bracket(a, prec), neg_y)
        return acc

    return chunked_sum(spec, d, summarize, lambda x, y: x + y, zero)


def goss_zeta_eval(pt: SInftyPoint, N: int) -> LaurentSeries:
    """zeta_A(x; y) = sum_d c_d x^(-d) modulo pi^N."""
    spec = pt.x.spec
    vx = pt.x.val
    D = goss_cutoff(spec.q, vx, N)
    need = max(N + d * vx for d in range(D))
    if spec.p ** pt.neg_y.precision < need:
        raise PrecisionError(detail={
            'message': 'More exponent digits are needed for this precision',
            'digits': pt.neg_y.precision, 'needed_p_power': need, 'N': N})
    push_metric({"event": "GossZetaCutoff", "q": spec.q, "N": N, "D": D})
    xinv = pt.x.inverse()
    total = LaurentSeries.zero(spec, N)
    for d in range(D):
        prec_d = N + d * vx
        if prec_d <= 0:
            continue
        c = goss_coefficient(spec, d, pt.neg_y, prec_d)
        total = total + c * xinv ** d
    return total.truncate(N)


def zeta_poly_at(poly: MPoly, var: str, value: LaurentSeries, prec: int):
    """Evaluate a polynomial over A at var = value in F_q((pi))."""
    lifted = poly.map_coefficients(lambda a: LaurentSeries.from_apoly(a, prec),
                                   LaurentRing(value.spec, prec))
    return lifted.substitute(var, value)


def goss_zeta_from_polynomial(spec: FieldSpec, n: int, x: LaurentSeries, N: int) -> LaurentSeries:
    """zeta_A(x; -n) through Z(-n; z) at z = theta^(-n) / x."""
    poly = exact_L(spec, -n, 0)
    top = poly.degree('z')
    top = 0 if top == float('-inf') else top
    pi_n = LaurentSeries(spec, n, (1,), x.prec + n + 2 * abs(x.val))
    z = pi_n * x.inverse()
    slack = N + top * (n + abs(x.val)) + 1
    value = zeta_poly_at(poly, 'z', z, slack).coefficient(())
    return value.truncate(N)


def _infinite_unit(a: APoly, factor: TwistFactor, prec: int) -> LaurentSeries:
    """<phi^l(a)(y)> = sum_i b_i (1/y)^(d - i) for monic a of degree d."""
    b = frobenius_twist(a, factor.frobenius)
    nu = factor.point.inverse().truncate(prec)
    acc = LaurentSeries.constant(a.spec, b.coeffs[0], prec)
    for c in b.coeffs[1:]:
        acc = (acc * nu + LaurentSeries.constant(a.spec, c, prec)).truncate(prec)
    return acc


def twisted_cutoff(spec: FieldSpec, s: int, n_inf: int, nu: int, vx: int,
                   floor_per_degree: int, N: int) -> int:
    """Degree beyond which every inner sum of a twisted series vanishes
    modulo pi^N.

    With exponents truncated to L digits, the degree-d inner sum is a sum
    over an F_p-space of dimension d*e of products of s + n_inf*L*(p-1)
    affine factors, so it is 0 modulo pi^(p^L nu) once
    d*e*(p-1) > s + n_inf*L*(p-1).
    """
    p, e = spec.p, spec.e
    if n_inf == 0:
        return s // (e * (p - 1)) + 1

    def envelope(d):
        level = (d * e * (p - 1) - s - 1) / (n_inf * (p - 1)) - 1
        head = nu * p ** level if level > -1 else 0.0
        return head + d * floor_per_degree - d * vx

    return tail_cutoff(envelope, N)


def twisted_L_eval(spec: FieldSpec, finite: Sequence[TwistFactor],
                   infinite: Sequence[TwistFactor], x: LaurentSeries, N: int):
    """sum_d x^(-d) sum_a prod_finite phi^e(a^(m))(x_i) prod_infinite
    <phi^l(a)(y_j)>^(z_j), modulo pi^N.

    Returns a Laurent series, or a polynomial in the symbolic finite points
    with Laurent coefficients.
    """
    for f in finite:
        if f.kind != 'finite':
            raise InvalidInputError(detail={'message': 'Expected finite factors'})
    for g in infinite:
        if g.kind != 'infinite':
            raise InvalidInputError(detail={'message': 'Expected infinite factors'})
    if x.is_zero():
        raise InvalidInputError(detail={'message': 'x must be nonzero'})
    names = _roster(finite)
    symbolic = [f for f in finite if f.symbolic]
    slot = [names.index(f.point) for f in symbolic]
    laurent = [f for f in finite if not f.symbolic]
    floor = min([0] + [f.point.val for f in laurent if not f.point.is_zero()])
    s = len(finite)
    nu = min([-g.point.val for g in infinite], default=1)
    vx = x.val
    D = twisted_cutoff(spec, s, len(infinite), nu, vx, s * floor, N)
    push_metric({"event": "TwistedCutoff", "q": spec.q, "N": N, "D": D})

    xinv = x.inverse()
    ring = LaurentRing(spec, N)
    total = MPoly.zero(names, ring) if names else LaurentSeries.zero(spec, N)
    for d in range(D):
        prec_d = N + d * vx - d * s * floor
        if prec_d <= 0:
            continue
        for g in infinite:
            if spec.p ** g.exponent.precision * (-g.point.val) < prec_d:
                raise PrecisionError(detail={
                    'message': 'More exponent digits are needed for this precision',
                    'digits': g.exponent.precision, 'needed': prec_d, 'N': N})
        one = LaurentSeries.one(spec, prec_d)

        def summarize(polys, prec_d=prec_d, one=one):
            acc = {} if names else LaurentSeries.zero(spec, prec_d)
            for a in polys:
                scalar = one
                for f in laurent:
                    scalar = scalar * eval_poly(_finite_image(a, f), f.point)
                for g in infinite:
                    scalar = scalar * one_unit_pow(_infinite_unit(a, g, prec_d), g.exponent)
                if not names:
                    acc = acc + scalar
                    continue
                parts = [[(j, c) for j, c in enumerate(_finite_image(a, f).coeffs) if c]
                         for f in symbolic]
                for combo in itertools.product(*parts):
                    exp = [0] * len(names)
                    c = 1
                    for i, (j, code) in enumerate(combo):
                        exp[slot[i]] += j
                        c = spec.mul(c, code)
                    key = tuple(exp)
                    term = scalar.scale(c)
                    acc[key] = acc[key] + term if key in acc else term
            return acc

        def merge(u, v):
            if not names:
                return u + v
            out = dict(u)
            for key, c in v.items():
                out[key] = out[key] + c if key in out else c
            return out

        inner = chunked_sum(spec, d, summarize, merge,
                            {} if names else LaurentSeries.zero(spec, prec_d))
        weight = xinv ** d
        if names:
            total = total + MPoly(names, {k: (c * weight).truncate(N)
                                          for k, c in inner.items()}, ring)
        else:
            total = total + inner * weight
    if names:
        return total
    return total.truncate(N)


def hyperderivative_decay(spec: FieldSpec, s: int, max_order: int, N: int,
                          neg_y: Optional[ZpExp] = None,
                          points: Optional[Sequence[int]] = None) -> List[dict]:
    """Minimal valuation of S(m_1..m_s) over each shell m_1 + ... + m_s = M.

    S(m) = sum_d sum_a prod_i a^(m_i)(x_i) <a>^y with constant points x_i
    (codes in F_q, default 1), x = 1 and one infinite factor at theta.
    """
    if s < 1:
        raise InvalidInputError(detail={'message': 'Need at least one finite factor', 's': s})
    p = spec.p
    if neg_y is None:
        digits = 1
        while p ** digits < N:
            digits += 1
        neg_y = ZpExp.from_int(-1, p, digits)
    if p ** neg_y.precision < N:
        raise PrecisionError(detail={
            'message': 'More exponent digits are needed for this precision',
            'digits': neg_y.precision, 'N': N})
    points = list(points) if points is not None else [1] * s
    D = twisted_cutoff(spec, s, 1, 1, 0, 0, N)
    units = []
    hyper: List[Dict[Tuple[int, int], int]] = []
    for d in range(D):
        for a in enumerate_monic(spec, d):
            units.append(one_unit_pow(bracket(a, N), neg_y))
            hyper.append({(m, x): eval_poly(hyperderivative(a, m), FqElem(spec, x)).code
                          for m in range(min(d, max_order) + 1) for x in set(points)})

    rows = []
    for M in range(max_order + 1):
        best = None
        for m in _compositions(M, s):
            total = LaurentSeries.zero(spec, N)
            for u, table in zip(units, hyper):
                c = 1
                for mi, xi in zip(m, points):
                    c = spec.mul(c, table.get((mi, xi), 0))
                    if not c:
                        break
                if c:
                    total = total + u.scale(c)
            val = total.val
            if best is None or val < best[0]:
                best = (val, m)
        rows.append({'order': M, 'min_valuation': best[0], 'argmin': list(best[1])})
    return rows


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def trivial_zero_expected(q: int, n: int, s: int) -> bool:
    return (s - n) % (q - 1) == 0 and s - n >= 1


def vanishing_predicted(q: int, d: int, n: int) -> bool:
    return d * (q - 1) > lq_digit_sum(n, q)


def goss_certificate_holds(q: int, d: int, valuation: int) -> bool:
    return d < 2 or valuation >= q ** (d - 2)
