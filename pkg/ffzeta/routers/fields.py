from ..exceptions import InvalidInputError
from ..schemas.field_schema import FieldInfoModel, FqElemModel
from ..services.fields import ResidueChar, char_eval, extension
from ..services.validation_services import parse_apoly
from . import CommandRouter, arg

router = CommandRouter(tags=['Fields'])


@router.command('field',
                args=[arg('--extension', type=int, default=1,
                          help='also describe F_{q^m} and the embedding of F_q')],
                response_model=FieldInfoModel)
def describe_field(spec, args):
    """Parameters of F_q and a primitive element."""
    info = {'p': spec.p, 'e': spec.e, 'q': spec.q,
            'modulus': list(spec.modulus),
            'generator': spec.coords(spec.tables.generator)}
    if args.extension < 1:
        raise InvalidInputError(detail={
            'message': 'Extension degree must be at least 1',
            'extension': args.extension})
    if args.extension > 1:
        big, emb = extension(spec, args.extension)
        info['extension'] = {'e': big.e, 'modulus': list(big.modulus),
                             'image_of_xi': big.coords(emb.image_of_xi)}
    return info


@router.command('residue',
                args=[arg('--P', required=True, help='monic irreducible APoly (JSON)'),
                      arg('--delta', type=int, default=1),
                      arg('--a', required=True, help='APoly (JSON)')],
                response_model=FqElemModel)
def residue_character(spec, args):
    """(a mod P)^delta in the residue field F_{q^deg P}."""
    chi = ResidueChar(parse_apoly(spec, args.P), args.delta)
    value = char_eval(chi, parse_apoly(spec, args.a, 'a'))
    return {'coords': value.coords}
