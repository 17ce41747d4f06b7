"""
Verification harnesses behind ``ffzeta verify``. Each returns a report dict
with the seed, the grid, a completeness flag, the number of trials, the
number of violations and one row per trial.
"""
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import factorint

from ..exceptions import InvalidInputError
from .fields import FieldSpec, ZpExp
from .metrics_services import push_metric
from .mzv import MzvIndex, congruence_difference, divisible_by
from .oracle import (ENUMERATION_BUDGET, TruncatedRing, charsum_trial,
                     is_zero_value, random_config, threshold_scan)
from .padic import PadicCtx
from .polyring import APoly, enumerate_monic_irreducible
from .seriesinf import LaurentSeries
from .vadic import (VadicPoint, euler_coefficient_identity, euler_product,
                    interpolation_gap, mk_sequence, vadic_coefficient, vadic_cutoff,
                    vadic_exact_L, vadic_level, vadic_zeta_eval)
from .zeta import (SInftyPoint, exact_degree_bound, exact_L,
                   goss_certificate_holds, goss_coefficient, goss_zeta_eval,
                   goss_zeta_from_polynomial, hyperderivative_decay, power_sum,
                   trivial_zero_expected)

_logger = logging.getLogger(__name__)

DEFAULT_FIELDS = ((2, 1), (3, 1))


def _report(check: str, seed: int, grid: dict, rows: List[dict],
            complete: bool = True) -> dict:
    violations = sum(1 for row in rows if not row.get('ok', True))
    push_metric({"event": "VerifyReport", "check": check, "seed": seed,
                 "trials": len(rows), "violations": violations,
                 "complete": complete})
    if violations:
        _logger.error("%s: %d violations", check, violations)
    return {'check': check, 'seed': seed, 'grid': grid, 'complete': complete,
            'trials': len(rows), 'violations': violations, 'rows': rows}


def _fields(fields) -> List[FieldSpec]:
    return [FieldSpec.default(p, e) for p, e in (fields or DEFAULT_FIELDS)]


def _digits(p: int, bound: int) -> int:
    """Smallest M with p^M >= bound."""
    M = 1
    while p ** M < bound:
        M += 1
    return M


def _primes(spec: FieldSpec, degrees: Sequence[int], per_degree: int = 2) -> List[APoly]:
    out = []
    for d in degrees:
        for i, P in enumerate(enumerate_monic_irreducible(spec, d)):
            if i >= per_degree:
                break
            out.append(P)
    return out


def verify_charsum(seed: int = 0, budget: int = ENUMERATION_BUDGET,
                   primes: Sequence[int] = (2, 3, 5), dim_max: int = 4,
                   trials: int = 50) -> dict:
    """Random affine configurations with dim (p-1) > r sum to exactly zero."""
    rng = random.Random(seed)
    rows = []
    spent = 0
    complete = True
    for p in primes:
        targets = [FieldSpec.default(p, 1), FieldSpec.default(p, 2), TruncatedRing(p, 3)]
        for dim in range(1, dim_max + 1):
            for r in range(0, dim * (p - 1)):
                for trial in range(trials):
                    spent += p ** dim
                    if spent > budget:
                        complete = False
                        break
                    target = rng.choice(targets)
                    cfg = random_config(rng, p, dim, r, target, window=2)
                    value = charsum_trial(cfg, budget)
                    rows.append({'p': p, 'dim': dim, 'r': r, 'trial': trial,
                                 'target': target.to_json() if isinstance(target, TruncatedRing)
                                 else {'kind': 'field', 'e': target.e},
                                 'ok': is_zero_value(value)})
    grid = {'primes': list(primes), 'dim_max': dim_max, 'trials': trials,
            'budget': budget}
    return _report('charsum', seed, grid, rows, complete)


def verify_thresholds(seed: int = 0, budget: int = ENUMERATION_BUDGET, fields=None,
                      d_max: int = 5, n_max: Optional[int] = 64, s_max: int = 4,
                      twisted_d_max: int = 4, char_n_max: int = 0) -> dict:
    """Power-sum, twisted and character-sum scans per field; a row fails when
    the bound predicts zero and the value is not zero.

    ``n_max=None`` scans n <= 3(q-1)q^3 for each field.
    """
    rows = []
    complete = True
    specs = _fields(fields)
    for spec in specs:
        q = spec.q
        n_top = n_max if n_max is not None else 3 * (q - 1) * q ** 3
        scans = [('powersum', {'d_max': d_max, 'n_max': n_top}),
                 ('twisted', {'d_max': min(d_max, twisted_d_max), 's_max': s_max}),
                 ('char', {'d_max': min(d_max, twisted_d_max),
                           'n_max': min(n_top, char_n_max), 'delta': 2,
                           'P': APoly.theta(spec)})]
        for kind, params in scans:
            report = threshold_scan(kind, spec, budget=budget, **params)
            complete = complete and report['complete']
            for row in report['rows']:
                rows.append({'kind': kind, 'q': q, **row['params'],
                             'zero': row['zero'], 'predicted_zero': row['predicted_zero'],
                             'ok': not row['violation']})
    grid = {'q': [spec.q for spec in specs], 'd_max': d_max, 'n_max': n_max,
            's_max': s_max, 'twisted_d_max': twisted_d_max, 'char_n_max': char_n_max,
            'budget': budget}
    return _report('thresholds', seed, grid, rows, complete)


def verify_trivial_zeros(seed: int = 0, fields=None, n_min: int = -12,
                         s_max: int = 2) -> dict:
    """Z(n; t; 1) vanishes in every predicted case and deg_z respects the bound."""
    rows = []
    for spec in _fields(fields):
        q = spec.q
        for s in range(s_max + 1):
            for n in range(0, n_min - 1, -1):
                poly = exact_L(spec, n, s, margin=1)
                bound = exact_degree_bound(q, n, s)
                degree = poly.degree('z')
                degree = -1 if degree == float('-inf') else degree
                predicted = trivial_zero_expected(q, n, s)
                at_one = poly.substitute('z', APoly.one(spec))
                ok = degree <= bound and (not predicted or at_one.is_zero())
                rows.append({'q': q, 'n': n, 's': s, 'degree': degree,
                             'bound': bound, 'predicted_zero': predicted,
                             'zero_at_one': at_one.is_zero(), 'ok': ok})
    return _report('trivial-zeros', seed,
                   {'n_min': n_min, 's_max': s_max, 'q': [f.q for f in _fields(fields)]},
                   rows)


def verify_euler(seed: int = 0, fields=None, n_min: int = -10, dP_max: int = 2,
                 n_pos: int = 2, D_max: int = 4, N: int = 40) -> dict:
    """Exact Euler identity for n <= 0; coefficientwise identity for n >= 1."""
    rows = []
    for spec in _fields(fields):
        for P in _primes(spec, range(1, dP_max + 1), per_degree=1):
            for n in range(0, n_min - 1, -1):
                ok = vadic_exact_L(spec, n, 0, P, margin=1) == euler_product(spec, n, P)
                rows.append({'q': spec.q, 'P': P.to_json(), 'n': n, 'ok': ok})
            for n in range(1, n_pos + 1):
                for D in range(D_max + 1):
                    lhs, rhs = euler_coefficient_identity(spec, n, P, D, N)
                    rows.append({'q': spec.q, 'P': P.to_json(), 'n': n, 'D': D,
                                 'ok': lhs.agrees_with(rhs, N)})
    grid = {'n_min': n_min, 'dP_max': dP_max, 'n_pos': n_pos, 'D_max': D_max, 'N': N}
    return _report('euler', seed, grid, rows)


def _limit_agrees(spec: FieldSpec, n1: int, P: APoly, k: int, m_k: int) -> bool:
    """vadic evaluation at -n1 matches the m_k power sums modulo P^k'."""
    Q = spec.q ** P.degree
    kk = min(spec.q ** (k + 1), 4)
    digits = _digits(spec.p, kk)
    ctx = PadicCtx(P, kk)
    top = k + 1 + P.degree
    ptv = VadicPoint(ctx, ZpExp.from_int(-n1, spec.p, digits), (-n1) % (Q - 1), top)
    value = vadic_zeta_eval(ptv)
    for d in range(top + 1):
        if value.coefficient((d,)) != ctx.element(power_sum(spec, d, -m_k)):
            return False
    return True


def verify_interp(seed: int = 0, fields=None, degrees: Sequence[int] = (1, 2),
                  k_max: int = 1, n_range: int = 3, r_max: int = 2) -> dict:
    """m_k checks, the interpolation-gap bound and the limit agreement."""
    rows = []
    for spec in _fields(fields):
        for P in _primes(spec, degrees, per_degree=1):
            for k in range(k_max + 1):
                for n1 in range(-n_range, n_range + 1):
                    mk = mk_sequence(n1, k, P.degree, spec.q)
                    limit = _limit_agrees(spec, n1, P, k, mk.m_k)
                    tails = [()] if r_max < 2 else [()] + [(n2,) for n2 in range(-n_range, n_range + 1)]
                    for tail in tails:
                        gap = interpolation_gap(spec, (n1,) + tail, P, k)
                        rows.append({'q': spec.q, 'P': P.to_json(), 'k': k,
                                     'indices': [n1, *tail], 'm_k': mk.m_k,
                                     'checks': mk.checks,
                                     'narrow_digit_bound': mk.narrow_digit_bound,
                                     'measured': gap.measured, 'bound': gap.bound,
                                     'at_cap': gap.at_cap, 'limit_agrees': limit,
                                     'ok': gap.holds and limit and all(mk.checks.values())})
    grid = {'degrees': list(degrees), 'k_max': k_max, 'n_range': n_range, 'r_max': r_max}
    return _report('interp', seed, grid, rows)


def verify_tails(seed: int = 0, fields=None, d_max: int = 5, exponents: int = 20) -> dict:
    """Brute-force valuations against the infinite and finite tail certificates."""
    rng = random.Random(seed)
    rows = []
    for spec in _fields(fields):
        q, p = spec.q, spec.p
        for _ in range(exponents):
            for d in range(2, d_max + 1):
                need = q ** (d - 2)
                digits = _digits(p, need + 1)
                y = ZpExp(p, tuple(rng.randrange(p) for _ in range(digits)))
                c = goss_coefficient(spec, d, y, need + 1)
                rows.append({'place': 'inf', 'q': q, 'd': d, 'digits': list(y.digits),
                             'valuation': c.val, 'bound': need,
                             'ok': goss_certificate_holds(q, d, c.val)})
            P = APoly.theta(spec)
            delta = rng.randrange(q - 1) if q > 2 else 0
            for d in range(P.degree + 2, d_max + 1):
                level = vadic_level(q, d, P.degree, 0)
                if level < 1:
                    continue
                k = q ** level
                digits = _digits(p, k)
                y = ZpExp(p, tuple(rng.randrange(p) for _ in range(digits)))
                coeff = vadic_coefficient(PadicCtx(P, k), d, y, delta)[()]
                rows.append({'place': 'P', 'q': q, 'd': d, 'digits': list(y.digits),
                             'delta': delta, 'valuation': coeff.vP(), 'bound': k,
                             'ok': coeff.is_zero()})
    return _report('tails', seed, {'d_max': d_max, 'exponents': exponents}, rows)


def verify_congruence(seed: int = 0, n_min: int = -4) -> dict:
    """Full minus prime-to-P multiple zeta polynomials is divisible by P^(-n_1)."""
    spec = FieldSpec.default(2, 1)
    primes = [APoly.theta(spec), APoly(spec, (1, 1, 1))]
    rows = []
    for P in primes:
        for mode in ('strict', 'weak'):
            for n1 in range(0, n_min - 1, -1):
                for n2 in range(0, n_min - 1, -1):
                    idx = MzvIndex((n1, n2), mode)
                    diff = congruence_difference(spec, idx, P)
                    rows.append({'P': P.to_json(), 'mode': mode, 'indices': [n1, n2],
                                 'ok': divisible_by(diff, P, -n1)})
    return _report('congruence', seed, {'n_min': n_min, 'q': 2}, rows)


def verify_decay(seed: int = 0, s_max: int = 2, max_order: int = 30, N: int = 20) -> dict:
    """The minimal valuation over the shells m_1 + .. + m_s = M reaches N."""
    spec = FieldSpec.default(2, 1)
    rows = []
    for s in range(1, s_max + 1):
        shells = hyperderivative_decay(spec, s, max_order, N)
        reached = next((row['order'] for row in shells if row['min_valuation'] >= N), None)
        rows.append({'s': s, 'shells': shells, 'reached_at': reached,
                     'ok': reached is not None})
    return _report('decay', seed, {'s_max': s_max, 'max_order': max_order, 'N': N}, rows)


def verify_cross_path(seed: int = 0, fields=None, n_max: int = 4, N: int = 30,
                      k_max: int = 3) -> dict:
    """The truncated-series evaluations against the exact polynomials at
    integer exponents.

    At infinity, zeta(theta; -n) from the digit expansion of -y = n against
    Z(-n; z) at z = theta^(-n)/x, agreeing modulo pi^N. At P = theta, the
    P-adic evaluation at (y, delta) = (n, -n) against the prime-to-P
    polynomial reduced modulo P^k.
    """
    rows = []
    for spec in _fields(fields):
        p, q = spec.p, spec.q
        x = LaurentSeries.theta(spec, N)
        for n in range(n_max + 1):
            pt = SInftyPoint.from_integer(x, -n, _digits(p, max(N, n + 1)))
            value = goss_zeta_eval(pt, N)
            exact = goss_zeta_from_polynomial(spec, n, x, N)
            rows.append({'place': 'inf', 'q': q, 'n': -n, 'N': N,
                         'ok': value.agrees_with(exact, N)})
        P = APoly.theta(spec)
        Q = q ** P.degree
        for k in range(1, k_max + 1):
            ctx = PadicCtx(P, k)
            for n in range(n_max + 1):
                ptv = VadicPoint(ctx, ZpExp.from_int(n, p, _digits(p, max(k, n + 1))),
                                 n % (Q - 1))
                value = vadic_zeta_eval(ptv)
                exact = vadic_exact_L(spec, -n, 0, P)
                top = max(vadic_cutoff(ctx), exact.degree('z'))
                ok = all(value.coefficient((d,)) == ctx.element(exact.coefficient((d,)))
                         for d in range(top + 1))
                rows.append({'place': 'P', 'q': q, 'n': -n, 'k': k, 'ok': ok})
    return _report('cross-path', seed, {'n_max': n_max, 'N': N, 'k_max': k_max,
                                        'q': [f.q for f in _fields(fields)]}, rows)


CHECKS = {
    'charsum': verify_charsum,
    'thresholds': verify_thresholds,
    'trivial-zeros': verify_trivial_zeros,
    'euler': verify_euler,
    'interp': verify_interp,
    'tails': verify_tails,
    'congruence': verify_congruence,
    'decay': verify_decay,
    'cross-path': verify_cross_path,
}

# the acceptance grids; the defaults above are quick subsets of these
FULL_GRIDS: Dict[str, dict] = {
    'charsum': {'primes': (2, 3, 5), 'dim_max': 8, 'trials': 1000},
    'thresholds': {'fields': ((2, 1), (3, 1), (2, 2)), 'd_max': 6, 'n_max': None,
                   's_max': 4, 'twisted_d_max': 4, 'char_n_max': 8},
    'trivial-zeros': {'fields': ((2, 1), (3, 1), (2, 2)), 'n_min': -30, 's_max': 4},
    'euler': {'n_min': -10, 'dP_max': 3, 'n_pos': 3, 'D_max': 6, 'N': 40},
    'interp': {'degrees': (1, 2), 'k_max': 3, 'n_range': 3, 'r_max': 2},
    'tails': {'d_max': 5, 'exponents': 20},
    'congruence': {'n_min': -4},
    'decay': {'s_max': 2, 'max_order': 30, 'N': 20},
    'cross-path': {'n_max': 10, 'N': 60, 'k_max': 4},
}

FIELD_CHECKS = ('thresholds', 'trivial-zeros', 'euler', 'interp', 'tails', 'cross-path')


def field_from_q(q: int) -> Tuple[int, int]:
    """(p, e) with p^e = q."""
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise InvalidInputError(detail={
            'message': 'Field size must be a prime power', 'q': q})
    p, e = next(iter(factors.items()))
    return int(p), int(e)


def run_check(name: str, seed: int = 0, budget: Optional[int] = None,
              full: bool = False, fields: Optional[Sequence[int]] = None) -> dict:
    """Dispatch one check; ``full`` selects its acceptance grid and ``fields``
    (a list of q) overrides the fields of the checks that take any."""
    if name not in CHECKS:
        raise InvalidInputError(detail={
            'message': 'Unknown verification', 'check': name,
            'checks': sorted(CHECKS)})
    kwargs: Dict[str, Any] = dict(FULL_GRIDS[name]) if full else {}
    kwargs['seed'] = seed
    if budget is not None:
        if name not in ('charsum', 'thresholds'):
            _logger.info("budget ignored by %s", name)
        else:
            kwargs['budget'] = budget
    if fields:
        if name not in FIELD_CHECKS:
            _logger.info("fields ignored by %s", name)
        else:
            kwargs['fields'] = tuple(field_from_q(q) for q in fields)
    return CHECKS[name](**kwargs)
