"""
Sparse multivariate polynomials over a declared coefficient ring.

The ring objects below know how to produce constants from codes of the
base field F_q, how to serialize coefficients and, when there is one, the
valuation used for Gauss valuations.
"""
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exceptions import FieldMismatchError, InvalidInputError
from .fields import FieldEmbedding, FieldSpec, FqElem, embedding
from .polyring import NEG_INF, APoly

_VAR_PATTERN = re.compile(r'^(t[1-9][0-9]*|z|z[1-9][0-9]*|x)$')


class FqRing:
    """F_Q, receiving constants from the base field F_q."""
    name = 'fq'

    def __init__(self, spec: FieldSpec, base: Optional[FieldSpec] = None):
        self.spec = spec
        self.base = base or spec
        self._emb: FieldEmbedding = embedding(self.base, spec)

    def zero(self):
        return FqElem(self.spec, 0)

    def one(self):
        return FqElem(self.spec, 1)

    def lift(self, code: int):
        return FqElem(self.spec, self._emb(code))

    def is_zero(self, x) -> bool:
        return x.code == 0

    def to_json(self, x):
        return x.coords

    def from_json(self, data):
        return self.spec.element(data)

    def valuation(self, x):
        return None

    def __eq__(self, other):
        return isinstance(other, FqRing) and (self.spec, self.base) == (other.spec, other.base)

    def __hash__(self):
        return hash((self.name, self.spec, self.base))


class PolyRing:
    """A = F_q[theta]."""
    name = 'poly'

    def __init__(self, spec: FieldSpec):
        self.spec = spec

    def zero(self):
        return APoly.zero(self.spec)

    def one(self):
        return APoly.one(self.spec)

    def lift(self, code: int):
        return APoly.constant(self.spec, code)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def to_json(self, x):
        return x.to_json()

    def from_json(self, data):
        return APoly.from_json(self.spec, data)

    def valuation(self, x):
        return None

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.spec == other.spec

    def __hash__(self):
        return hash((self.name, self.spec))


class LaurentRing:
    """F_q((pi)) truncated at pi^prec."""
    name = 'laurent'

    def __init__(self, spec: FieldSpec, prec: int):
        self.spec = spec
        self.prec = prec

    def zero(self):
        from .seriesinf import LaurentSeries
        return LaurentSeries.zero(self.spec, self.prec)

    def one(self):
        from .seriesinf import LaurentSeries
        return LaurentSeries.one(self.spec, self.prec)

    def lift(self, code: int):
        from .seriesinf import LaurentSeries
        return LaurentSeries.constant(self.spec, code, self.prec)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def to_json(self, x):
        return x.to_json()

    def from_json(self, data):
        from .seriesinf import LaurentSeries
        return LaurentSeries.from_json(self.spec, data)

    def valuation(self, x):
        return x.val

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and (self.spec, self.prec) == (other.spec, other.prec)

    def __hash__(self):
        return hash((self.name, self.spec, self.prec))


class PadicRing:
    """A / (P^k)."""
    name = 'padic'

    def __init__(self, ctx):
        self.ctx = ctx
        self.spec = ctx.P.spec

    def zero(self):
        return self.ctx.element(APoly.zero(self.spec))

    def one(self):
        return self.ctx.element(APoly.one(self.spec))

    def lift(self, code: int):
        return self.ctx.element(APoly.constant(self.spec, code))

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def to_json(self, x):
        return x.to_json()

    def from_json(self, data):
        return self.ctx.element(APoly.from_json(self.spec, data))

    def valuation(self, x):
        return x.vP()

    def __eq__(self, other):
        return isinstance(other, PadicRing) and self.ctx == other.ctx

    def __hash__(self):
        return hash((self.name, self.ctx))


def check_vars(names: Sequence[str]) -> Tuple[str, ...]:
    names = tuple(names)
    for name in names:
        if not _VAR_PATTERN.match(name):
            raise InvalidInputError(detail={
                'message': 'Unknown variable name', 'var': name})
    if len(set(names)) != len(names):
        raise InvalidInputError(detail={
            'message': 'Repeated variable name', 'vars': list(names)})
    return names


class MPoly:
    __slots__ = ('vars', 'terms', 'ring')

    def __init__(self, vars: Sequence[str], terms: Dict[Tuple[int, ...], object], ring):
        self.vars = check_vars(vars)
        self.ring = ring
        arity = len(self.vars)
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != arity:
                raise InvalidInputError(detail={
                    'message': 'Exponent vector does not match the variables',
                    'exp': list(exp), 'vars': list(self.vars)})
            if not ring.is_zero(coeff):
                clean[exp] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, vars, ring) -> 'MPoly':
        return cls(vars, {}, ring)

    @classmethod
    def constant(cls, vars, ring, coeff) -> 'MPoly':
        return cls(vars, {(0,) * len(vars): coeff}, ring)

    @classmethod
    def variable(cls, vars, ring, name: str) -> 'MPoly':
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise InvalidInputError(detail={
                'message': 'Variable not in roster', 'var': name})
        return cls(vars, {exp: ring.one()}, ring)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), self.ring.zero())

    def degree(self, var: str):
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def sorted_terms(self) -> List[Tuple[Tuple[int, ...], object]]:
        return sorted(self.terms.items())

    def gauss_valuation(self):
        vals = [self.ring.valuation(c) for c in self.terms.values()]
        if not vals:
            return None
        if any(v is None for v in vals):
            raise InvalidInputError(detail={
                'message': 'Coefficient ring carries no valuation',
                'ring': self.ring.name})
        return min(vals)

    def _check(self, other: 'MPoly'):
        if other.vars != self.vars or other.ring != self.ring:
            raise FieldMismatchError(detail={
                'message': 'Polynomials over different variables or rings',
                'left': list(self.vars), 'right': list(other.vars)})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MPoly.constant(self.vars, self.ring,
                                  self.ring.lift(self.ring.spec.scalar(other)))
        return MPoly.constant(self.vars, self.ring, other)

    def __add__(self, other):
        b = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in b.terms.items():
            terms[exp] = terms[exp] + c if exp in terms else c
        return MPoly(self.vars, terms, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in b.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                terms[exp] = terms[exp] + prod if exp in terms else prod
        return MPoly(self.vars, terms, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'MPoly':
        result = MPoly.constant(self.vars, self.ring, self.ring.one())
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return (self.vars == other.vars and self.ring == other.ring
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return 'MPoly(0)'
        parts = []
        for exp, c in self.sorted_terms():
            mono = '*'.join(v if k == 1 else f'{v}^{k}'
                            for v, k in zip(self.vars, exp) if k)
            parts.append(f'({c!r})' + (f'*{mono}' if mono else ''))
        return 'MPoly(' + ' + '.join(parts) + ')'

    def constant_like(self, code: int) -> 'MPoly':
        return MPoly.constant(self.vars, self.ring, self.ring.lift(code))

    def map_coefficients(self, fn, ring) -> 'MPoly':
        return MPoly(self.vars, {e: fn(c) for e, c in self.terms.items()}, ring)

    def substitute(self, var: str, value) -> 'MPoly':
        """Set ``var`` to a coefficient-ring value; the variable is removed."""
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        powers = {}
        terms = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k not in powers:
                powers[k] = _ring_pow(self.ring, value, k)
            coeff = c * powers[k]
            key = exp[:i] + exp[i + 1:]
            terms[key] = terms[key] + coeff if key in terms else coeff
        return MPoly(rest, terms, self.ring)

    def eval(self, values: Dict[str, object]):
        """Evaluate every variable; returns a coefficient-ring element."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise InvalidInputError(detail={
                'message': 'Missing values for variables', 'vars': missing})
        result = self
        for v in self.vars:
            result = result.substitute(v, values[v])
        return result.coefficient(())

    def to_json(self) -> dict:
        return {'vars': list(self.vars), 'ring': self.ring.name,
                'terms': [{'exp': list(e), 'coeff': self.ring.to_json(c)}
                          for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict, ring) -> 'MPoly':
        terms = {}
        for term in data['terms']:
            exp = tuple(int(k) for k in term['exp'])
            if exp in terms:
                raise InvalidInputError(detail={
                    'message': 'Repeated exponent vector', 'exp': list(exp)})
            terms[exp] = ring.from_json(term['coeff'])
        return cls(data['vars'], terms, ring)


def _ring_pow(ring, value, k: int):
    result = ring.one()
    for _ in range(k):
        result = result * value
    return result


def univariate(var: str, coeffs: Iterable, ring) -> MPoly:
    """sum coeffs[d] var^d."""
    return MPoly((var,), {(d,): c for d, c in enumerate(coeffs)}, ring)
