from ..exceptions import InvalidInputError
from ..schemas.poly_schema import MPolyModel
from ..schemas.report_schema import GapReport, MkReport
from ..services.mpoly import PadicRing
from ..services.padic import PadicCtx
from ..services.validation_services import (parse_apoly, parse_digits,
                                            parse_indices)
from ..services.vadic import (VadicPoint, interpolation_gap, mk_sequence,
                              require_prime, vadic_exact_L, vadic_zeta_eval)
from . import CommandRouter, arg

router = CommandRouter(tags=['Vadic'])

PRIME_HELP = 'monic irreducible APoly (JSON), e.g. {"coeffs": [0, 1]}'


@router.command('vadic',
                args=[arg('--P', required=True, help=PRIME_HELP),
                      arg('--n', type=int, required=True, help='n <= 0'),
                      arg('--s', type=int, default=0),
                      arg('--k', type=int, help='reduce coefficients modulo P^k')],
                response_model=MPolyModel)
def vadic(spec, args):
    """The prime-to-P zeta polynomial L_P(n; t; z) for n <= 0."""
    P = parse_apoly(spec, args.P)
    poly = vadic_exact_L(spec, args.n, args.s, P)
    if args.k is not None:
        ctx = PadicCtx(P, args.k)
        poly = poly.map_coefficients(ctx.element, PadicRing(ctx))
    return poly.to_json()


@router.command('vadic-eval',
                args=[arg('--P', required=True, help=PRIME_HELP),
                      arg('--k', type=int, required=True),
                      arg('--neg-y-digits', required=True,
                          help='base-p digits of -y, least significant first'),
                      arg('--delta', type=int, default=0),
                      arg('--s', type=int, default=0),
                      arg('--zdeg', type=int,
                          help='fixed z-cutoff instead of the certified one')],
                response_model=MPolyModel)
def vadic_eval(spec, args):
    """zeta_P(y, delta; t; z) in A/(P^k)[t, z]."""
    ctx = PadicCtx(parse_apoly(spec, args.P), args.k)
    ptv = VadicPoint(ctx, parse_digits(args.neg_y_digits, spec.p), args.delta,
                     args.zdeg)
    return vadic_zeta_eval(ptv, args.s).to_json()


@router.command('mk',
                args=[arg('--n1', type=int, help='integer target exponent'),
                      arg('--n1-digits', help='base-p digits of -n1 instead'),
                      arg('--k', type=int, required=True),
                      arg('--P', required=True, help=PRIME_HELP),
                      arg('--delta', type=int)],
                response_model=MkReport)
def mk(spec, args):
    """The exponent m_k approximating n1 at P."""
    P = require_prime(parse_apoly(spec, args.P))
    if (args.n1 is None) == (args.n1_digits is None):
        raise InvalidInputError(detail={
            'message': 'Give exactly one of --n1 and --n1-digits'})
    n1 = args.n1 if args.n1 is not None else parse_digits(args.n1_digits, spec.p)
    result = mk_sequence(n1, args.k, P.degree, spec.q, args.delta)
    return {'m_k': result.m_k, 'delta_k': result.delta_k, 'k': result.k,
            'dP': result.dP, 'q': result.q, 'checks': result.checks,
            'narrow_digit_bound': result.narrow_digit_bound}


@router.command('interp-gap',
                args=[arg('--indices', required=True,
                          help='e.g. --indices=-3,-1 (use "=" for negative values)'),
                      arg('--P', required=True, help=PRIME_HELP),
                      arg('--k', type=int, required=True),
                      arg('--mode', choices=['strict', 'weak'], default='strict')],
                response_model=GapReport)
def interp_gap(spec, args):
    """Measured v_P gap between Z(m_k, n_2..; z) and Z_P(n_1, n_2..; z)."""
    gap = interpolation_gap(spec, parse_indices(args.indices),
                            parse_apoly(spec, args.P), args.k, args.mode)
    return {'measured': gap.measured, 'bound': gap.bound, 'holds': gap.holds,
            'at_cap': gap.at_cap, 'm_k': gap.m_k, 'cap': gap.cap,
            'chains': gap.chains}
