from typing import List, Optional, Tuple

from pydantic import TypeAdapter, ValidationError

from ..exceptions import InvalidInputError
from ..schemas.poly_schema import APolyModel
from ..schemas.series_schema import LaurentSeriesModel
from .fields import FieldSpec, ZpExp
from .polyring import APoly
from .seriesinf import LaurentSeries

_int_list = TypeAdapter(List[int])


def _errors(err: ValidationError):
    return [{'loc': list(e['loc']), 'msg': e['msg']} for e in err.errors()]


def parse_json_arg(text, model, name):
    """Parses a JSON flag into ``model``; positions go into the error detail."""
    try:
        if isinstance(model, TypeAdapter):
            return model.validate_json(text)
        return model.model_validate_json(text)
    except ValidationError as err:
        raise InvalidInputError(detail={
            'message': f'Invalid value for --{name}',
            'errors': _errors(err)})


def build_field(p, e=1, modulus=None) -> FieldSpec:
    if modulus is None:
        return FieldSpec.default(p, e)
    coeffs = parse_json_arg(modulus, _int_list, 'modulus') \
        if isinstance(modulus, str) else list(modulus)
    return FieldSpec(p, e, tuple(coeffs))


def parse_int_list(text, name) -> Tuple[int, ...]:
    """Comma separated integers, e.g. "-3,-1"."""
    out = []
    for position, part in enumerate(text.split(',')):
        try:
            out.append(int(part.strip()))
        except ValueError:
            raise InvalidInputError(detail={
                'message': f'Invalid integer in --{name}',
                'position': position, 'value': part})
    return tuple(out)


def parse_indices(text) -> Tuple[int, ...]:
    indices = parse_int_list(text, 'indices')
    if not indices:
        raise InvalidInputError(detail={'message': 'Need at least one index'})
    return indices


def parse_digits(text, p) -> ZpExp:
    return ZpExp(p, parse_int_list(text, 'neg-y-digits'))


def parse_apoly(spec, text, name='P') -> APoly:
    model = parse_json_arg(text, APolyModel, name)
    return APoly.from_json(spec, model.model_dump())


def parse_laurent(spec, text, name='x') -> LaurentSeries:
    model = parse_json_arg(text, LaurentSeriesModel, name)
    return LaurentSeries.from_json(spec, model.model_dump())


def validate_budget(budget: Optional[int]) -> Optional[int]:
    if budget is not None and budget < 1:
        raise InvalidInputError(detail={
            'message': 'Budget must be positive', 'budget': budget})
    return budget


_laurent_list = TypeAdapter(List[LaurentSeriesModel])


def parse_points(spec, text, prec, name='z') -> List[LaurentSeries]:
    """Either comma separated F_q codes or a JSON list of LaurentSeries."""
    text = text.strip()
    if text.startswith('['):
        return [LaurentSeries.from_json(spec, model.model_dump())
                for model in parse_json_arg(text, _laurent_list, name)]
    return [LaurentSeries.constant(spec, spec.element(c).code, prec)
            for c in parse_int_list(text, name)]
