from ..exceptions import InvalidInputError
from ..schemas.poly_schema import APolyListModel, APolyModel, MPolyModel
from ..services.fields import ResidueChar
from ..services.polyring import enumerate_monic_irreducible
from ..services.validation_services import parse_apoly, parse_int_list
from ..services.zeta import (TwistFactor, char_power_sum, power_sum,
                             power_sum_enumerated, twisted_power_sum)
from . import CommandRouter, arg

router = CommandRouter(tags=['Polynomials'])


@router.command('powersum',
                args=[arg('--d', type=int, required=True),
                      arg('--n', type=int, required=True),
                      arg('--enumerate', action='store_true',
                          help='sum over every monic polynomial instead')],
                response_model=APolyModel)
def powersum(spec, args):
    """S_d(n), the sum of a^n over monic a of degree d."""
    if args.enumerate:
        return power_sum_enumerated(spec, args.d, args.n).to_json()
    return power_sum(spec, args.d, args.n).to_json()


@router.command('irreducibles',
                args=[arg('--d', type=int, required=True)],
                response_model=APolyListModel)
def irreducibles(spec, args):
    """Monic irreducible polynomials of degree d."""
    if args.d < 1:
        raise InvalidInputError(detail={
            'message': 'Irreducibles need degree >= 1', 'd': args.d})
    polys = [P.to_json() for P in enumerate_monic_irreducible(spec, args.d)]
    return {'degree': args.d, 'count': len(polys), 'polys': polys}


def _per_factor(text, name, s):
    if text is None:
        return (0,) * s
    values = parse_int_list(text, name)
    if len(values) != s:
        raise InvalidInputError(detail={
            'message': f'--{name} needs one entry per factor', 's': s,
            'given': len(values)})
    return values


@router.command('twisted-sum',
                args=[arg('--d', type=int, required=True),
                      arg('--s', type=int, required=True),
                      arg('--orders', help='hyperderivative order per factor, e.g. "0,1"'),
                      arg('--frobenius', help='Frobenius exponent per factor'),
                      arg('--P', help='add the residue character at P (JSON)'),
                      arg('--delta', type=int, default=1)],
                response_model=MPolyModel)
def twisted_sum(spec, args):
    """sum over monic a of degree d of a^(m_1)(t_1)...a^(m_s)(t_s)."""
    if args.s < 0:
        raise InvalidInputError(detail={'message': 's must be non-negative', 's': args.s})
    orders = _per_factor(args.orders, 'orders', args.s)
    twists = _per_factor(args.frobenius, 'frobenius', args.s)
    factors = [TwistFactor.finite(f't{i + 1}', twists[i], orders[i])
               for i in range(args.s)]
    chi = ResidueChar(parse_apoly(spec, args.P), args.delta) if args.P else None
    return twisted_power_sum(spec, args.d, factors, chi).to_json()


@router.command('char-sum',
                args=[arg('--d', type=int, required=True),
                      arg('--n', type=int, default=0),
                      arg('--P', required=True, help='monic irreducible APoly (JSON)'),
                      arg('--delta', type=int, default=1)],
                response_model=APolyModel)
def char_sum(spec, args):
    """sum over monic a of degree d of chi_P(a) a^n, over F_{q^deg P}."""
    chi = ResidueChar(parse_apoly(spec, args.P), args.delta)
    value = char_power_sum(spec, args.d, chi, args.n)
    if args.n == 0:
        return {'coeffs': [value.coords] if value.code else []}
    return value.to_json()
