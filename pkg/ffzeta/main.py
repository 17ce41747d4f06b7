import argparse
import csv
import io
import json
import logging
import os
import sys

from dotenv import load_dotenv
from pydantic import ValidationError

from .exceptions import FFZetaError, InvalidInputError
from .routers import fields, mzv, polys, vadic, verify, zeta
from .schemas.field_schema import FieldSpecModel
from .schemas.run_schema import OutputFormat, RunConfig
from .services.validation_services import build_field, parse_int_list

load_dotenv()
LOG_LEVEL = os.getenv("FFZETA_LOG_LEVEL", "WARNING")

_logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Usage errors raise InvalidInputError instead of exiting."""

    def error(self, message):
        raise InvalidInputError(detail={'message': message,
                                        'usage': self.format_usage().strip()})


class App:
    """Collects the commands of every included router."""

    def __init__(self, prog):
        self.prog = prog
        self.commands = {}

    def include_router(self, router):
        for command in router.commands:
            if command.name in self.commands:
                raise ValueError(f"duplicate command {command.name}")
            self.commands[command.name] = command

    def parser(self):
        common = CommandParser(add_help=False, allow_abbrev=False)
        common.add_argument('--p', type=int, default=2, help='characteristic')
        common.add_argument('--e', type=int, default=1, help='q = p^e')
        common.add_argument('--modulus', help='coefficients of the F_q modulus, '
                                              'constant term first, e.g. "1,1,1"')
        common.add_argument('--format', choices=[f.value for f in OutputFormat],
                            default=OutputFormat.JSON.value)
        common.add_argument('--describe', action='store_true',
                            help='print the JSON schema of the result and exit')
        common.add_argument('--seed', type=int, default=0)
        common.add_argument('--budget', type=int)
        parser = CommandParser(
            prog=self.prog, allow_abbrev=False,
            description='Power sums, zeta polynomials and their interpolations '
                        'over F_q[theta].')
        sub = parser.add_subparsers(dest='command', required=True)
        for name, command in self.commands.items():
            sp = sub.add_parser(name, parents=[common], help=command.help,
                                description=command.help, allow_abbrev=False)
            for flags, kwargs in command.args:
                sp.add_argument(*flags, **kwargs)
        return parser


app = App('ffzeta')

app.include_router(fields.router)
app.include_router(polys.router)
app.include_router(zeta.router)
app.include_router(vadic.router)
app.include_router(mzv.router)
app.include_router(verify.router)


def describe(name):
    command = app.commands[name]
    if command.response_model is None:
        return {'command': name, 'schema': None}
    return {'command': name, 'schema': command.response_model.model_json_schema()}


def _csv_rows(doc):
    """exp,coeff rows for polynomials and series; one row per entry for reports."""
    if isinstance(doc, dict) and 'terms' in doc:
        return ['exp', 'coeff'], [[json.dumps(t['exp']), json.dumps(t['coeff'])]
                                  for t in doc['terms']]
    if isinstance(doc, dict) and 'coeffs' in doc:
        start = doc.get('val', 0)
        return ['exp', 'coeff'], [[start + i, json.dumps(c)]
                                  for i, c in enumerate(doc['coeffs'])]
    if isinstance(doc, dict) and isinstance(doc.get('rows'), list) and doc['rows']:
        header = sorted({key for row in doc['rows'] for key in row})
        return header, [[json.dumps(row.get(key)) if isinstance(row.get(key), (dict, list))
                         else row.get(key) for key in header] for row in doc['rows']]
    if isinstance(doc, dict) and isinstance(doc.get('shells'), list):
        return ['order', 'min_valuation', 'argmin'], [
            [row['order'], row['min_valuation'], json.dumps(row['argmin'])]
            for row in doc['shells']]
    return ['key', 'value'], [[key, json.dumps(value)] for key, value in doc.items()]


def render(doc, fmt):
    if fmt == OutputFormat.JSON:
        return json.dumps(doc) + '\n'
    header, rows = _csv_rows(doc)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _modulus(text):
    if text is None:
        return None
    text = text.strip()
    if text.startswith('['):
        return text
    return list(parse_int_list(text, 'modulus'))


def _config(args):
    spec = build_field(args.p, args.e, _modulus(args.modulus))
    extra = {k: v for k, v in vars(args).items()
             if k not in ('p', 'e', 'modulus', 'format', 'describe', 'seed',
                          'budget', 'command')}
    config = RunConfig(field=FieldSpecModel(p=spec.p, e=spec.e, modulus=list(spec.modulus)),
                       command=args.command, args=extra,
                       format=OutputFormat(args.format),
                       cache=os.getenv("FFZETA_CACHE"), seed=args.seed,
                       budget=args.budget)
    return config, spec


def _fail(err, stderr):
    stderr.write(json.dumps({'detail': err.detail,
                             'status_code': err.status_code}) + '\n')
    return err.status_code


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run one command and write its result; returns the
    exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=LOG_LEVEL.upper(), stream=stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    argv = list(sys.argv[1:] if argv is None else argv)

    if '--describe' in argv:
        name = next((a for a in argv if a in app.commands), None)
        if name is None:
            return _fail(InvalidInputError(detail={
                'message': '--describe needs a command',
                'commands': sorted(app.commands)}), stderr)
        stdout.write(json.dumps(describe(name), indent=2) + '\n')
        return 0

    try:
        args = app.parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    except FFZetaError as err:
        return _fail(err, stderr)

    try:
        config, spec = _config(args)
        command = app.commands[config.command]
        _logger.info("running %s over %r", config.command, spec)
        doc = command.handler(spec, args)
        if command.response_model is not None:
            doc = command.response_model.model_validate(doc).model_dump(mode='json')
        stdout.write(render(doc, config.format))
    except FFZetaError as err:
        return _fail(err, stderr)
    except ValidationError as err:
        return _fail(InvalidInputError(detail={
            'message': 'Invalid arguments',
            'errors': [{'loc': list(e['loc']), 'msg': e['msg']} for e in err.errors()]}),
            stderr)
    return 0


def main():
    sys.exit(run())
