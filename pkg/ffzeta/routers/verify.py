from ..exceptions import InvalidInputError
from ..schemas.report_schema import (CharsumConfigModel, CharsumReport,
                                     ScanReport, VerifyReport)
from ..services.fields import FieldSpec, FqElem
from ..services.oracle import (ENUMERATION_BUDGET, CharsumConfig, TruncatedRing,
                               charsum_trial, threshold_scan)
from ..services.validation_services import (build_field, parse_apoly, parse_int_list,
                                            parse_json_arg, validate_budget)
from ..services.verify_services import CHECKS, run_check
from . import CommandRouter, arg

router = CommandRouter(tags=['Verify'])


@router.command('verify',
                args=[arg('check', choices=sorted(CHECKS)),
                      arg('--full', action='store_true',
                          help='run the acceptance grid instead of the quick one'),
                      arg('--fields', help='field sizes q, e.g. "2,3,4"')],
                response_model=VerifyReport)
def verify(spec, args):
    """Run one verification harness over its quick or full grid."""
    fields = parse_int_list(args.fields, 'fields') if args.fields else None
    return run_check(args.check, args.seed, validate_budget(args.budget),
                     args.full, fields)


@router.command('scan',
                args=[arg('--kind', choices=['powersum', 'twisted', 'char'],
                          required=True),
                      arg('--d-max', type=int, required=True),
                      arg('--n-max', type=int, default=0),
                      arg('--s-max', type=int, default=0),
                      arg('--P', help='prime for char scans (JSON)'),
                      arg('--delta', type=int, default=1)],
                response_model=ScanReport)
def scan(spec, args):
    """Threshold scan of one vanishing bound over the current field."""
    P = parse_apoly(spec, args.P) if args.P else None
    budget = validate_budget(args.budget) or ENUMERATION_BUDGET
    return threshold_scan(args.kind, spec, args.d_max, args.n_max, args.s_max,
                          P, args.delta, budget)


def _target(model: CharsumConfigModel):
    target = model.target
    if target.kind == 'field':
        if target.modulus is None:
            return FieldSpec.default(model.p, target.e)
        return build_field(model.p, target.e, target.modulus)
    if target.kind == 'truncated':
        return TruncatedRing(model.p, target.length)
    raise InvalidInputError(detail={
        'message': 'Target kind must be field or truncated', 'kind': target.kind})


@router.command('charsum',
                args=[arg('--config', required=True,
                          help='{"p", "dim", "maps", "offsets", "target"} (JSON)')],
                response_model=CharsumReport)
def charsum(spec, args):
    """Exact value of a sum of products of affine maps over F_p^dim."""
    model = parse_json_arg(args.config, CharsumConfigModel, 'config')
    cfg = CharsumConfig(model.p, model.dim, model.maps, model.offsets, _target(model))
    value = charsum_trial(cfg, validate_budget(args.budget) or ENUMERATION_BUDGET)
    coords = value.coords if isinstance(value, FqElem) else list(value)
    return {'p': cfg.p, 'dim': cfg.dim, 'r': cfg.r,
            'predicted_zero': cfg.predicted_zero, 'value': coords}
