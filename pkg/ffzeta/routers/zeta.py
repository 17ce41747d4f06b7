from ..exceptions import InvalidInputError
from ..schemas.poly_schema import MPolyModel
from ..schemas.report_schema import DecayReport
from ..schemas.series_schema import LaurentSeriesModel, TwistedPointModel
from ..services.fields import ZpExp
from ..services.seriesinf import LaurentSeries
from ..services.validation_services import (parse_digits, parse_json_arg,
                                            parse_laurent)
from ..services.zeta import (SInftyPoint, TwistFactor, exact_L,
                             goss_zeta_eval, hyperderivative_decay,
                             pellarin_L_series, twisted_L_eval)
from . import CommandRouter, arg

router = CommandRouter(tags=['Zeta'])

DEFAULT_PREC = 40


def _x_or_theta(spec, text, prec):
    if text is None:
        return LaurentSeries.theta(spec, prec)
    return parse_laurent(spec, text)


@router.command('zeta-poly',
                args=[arg('--n', type=int, required=True, help='n <= 0'),
                      arg('--s', type=int, default=0),
                      arg('--margin', type=int, default=0,
                          help='extra z-degrees, all expected to vanish')],
                response_model=MPolyModel)
def zeta_poly(spec, args):
    """The polynomial L(n; t_1..t_s; z) over A for n <= 0."""
    return exact_L(spec, args.n, args.s, args.margin).to_json()


@router.command('pellarin',
                args=[arg('--n', type=int, required=True, help='n >= 1'),
                      arg('--s', type=int, default=1),
                      arg('--zdeg', type=int, required=True),
                      arg('--prec', type=int, default=DEFAULT_PREC)],
                response_model=MPolyModel)
def pellarin(spec, args):
    """L(n; t; z) truncated at z^zdeg, coefficients modulo pi^prec."""
    return pellarin_L_series(spec, args.n, args.s, args.zdeg, args.prec).to_json()


@router.command('zeta-eval',
                args=[arg('--x', help='LaurentSeries (JSON); defaults to theta'),
                      arg('--neg-y-digits', required=True,
                          help='base-p digits of -y, least significant first'),
                      arg('--prec', type=int, default=DEFAULT_PREC)],
                response_model=LaurentSeriesModel)
def zeta_eval(spec, args):
    """zeta_A(x; y) in F_q((pi)) modulo pi^prec."""
    x = _x_or_theta(spec, args.x, args.prec)
    pt = SInftyPoint(x, parse_digits(args.neg_y_digits, spec.p))
    return goss_zeta_eval(pt, args.prec).to_json()


def _factors(spec, model: TwistedPointModel):
    finite = []
    for f in model.finite:
        point = f.point if isinstance(f.point, str) \
            else LaurentSeries.from_json(spec, f.point.model_dump())
        finite.append(TwistFactor.finite(point, f.frobenius, f.order))
    infinite = [TwistFactor.infinite(LaurentSeries.from_json(spec, g.point.model_dump()),
                                     ZpExp(spec.p, g.neg_y_digits), g.frobenius)
                for g in model.infinite]
    return finite, infinite


@router.command('twisted-eval',
                args=[arg('--point', required=True,
                          help='{"finite": [...], "infinite": [...], "x": ...} (JSON)'),
                      arg('--prec', type=int, default=DEFAULT_PREC)])
def twisted_eval(spec, args):
    """The twisted series at the given points, modulo pi^prec."""
    model = parse_json_arg(args.point, TwistedPointModel, 'point')
    finite, infinite = _factors(spec, model)
    x = LaurentSeries.from_json(spec, model.x.model_dump()) if model.x is not None \
        else LaurentSeries.theta(spec, args.prec)
    return twisted_L_eval(spec, finite, infinite, x, args.prec).to_json()


@router.command('decay',
                args=[arg('--s', type=int, default=1),
                      arg('--max-order', type=int, default=30),
                      arg('--prec', type=int, default=20),
                      arg('--neg-y-digits')],
                response_model=DecayReport)
def decay(spec, args):
    """Minimal valuation of the hyperderivative sums on each shell."""
    if args.max_order < 0:
        raise InvalidInputError(detail={
            'message': 'max-order must be non-negative', 'max_order': args.max_order})
    neg_y = parse_digits(args.neg_y_digits, spec.p) if args.neg_y_digits else None
    shells = hyperderivative_decay(spec, args.s, args.max_order, args.prec, neg_y)
    return {'s': args.s, 'N': args.prec, 'shells': shells}
