from ..exceptions import UnsupportedFeatureError
from ..services.mzv import MzvIndex, mzv_eval_inf, mzv_exact, mzv_vadic_exact
from ..services.validation_services import (parse_apoly, parse_indices,
                                            parse_points)
from . import CommandRouter, arg

router = CommandRouter(tags=['MZV'])


@router.command('mzv',
                args=[arg('--indices', required=True,
                          help='e.g. --indices=-1,-1 (use "=" for negative values)'),
                      arg('--mode', choices=['strict', 'weak'], default='strict'),
                      arg('--P', help='restrict a_1 to be prime to P (JSON); '
                                      'non-positive indices only'),
                      arg('--prec', type=int, default=40,
                          help='precision for positive indices'),
                      arg('--z', help='z-points: F_q codes, e.g. "1,1", or a JSON '
                                      'list of LaurentSeries')])
def mzv(spec, args):
    """Multiple zeta polynomial for non-positive indices, or its value in
    F_q((pi)) for positive ones."""
    P = parse_apoly(spec, args.P) if args.P else None
    idx = MzvIndex(parse_indices(args.indices), args.mode, P)
    if all(n > 0 for n in idx.n):
        if P is not None:
            raise UnsupportedFeatureError(detail={
                'message': 'P-adic values at positive indices are not computed; '
                           'use non-positive indices with --P',
                'indices': list(idx.n)})
        points = parse_points(spec, args.z, args.prec) if args.z is not None else None
        return mzv_eval_inf(spec, idx, args.prec, points).to_json()
    return (mzv_vadic_exact(spec, idx) if P is not None else mzv_exact(spec, idx)).to_json()
