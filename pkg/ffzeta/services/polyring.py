"""
The ring A = F_q[theta].

Polynomials are ascending tuples of field codes (see ``fields``). The
module-level ``*_codes`` helpers work on bare code lists and are shared with
the Laurent series code; ``APoly`` wraps them as a value type.
"""
import itertools
import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import (DivisionByZeroError, FieldMismatchError,
                          InvalidInputError)
from .fields import FieldSpec, FqElem, binom_mod_p

_logger = logging.getLogger(__name__)

NEG_INF = float('-inf')
NUMPY_MUL_THRESHOLD = 48
_INT64_SAFE = 1 << 62


def _trim(coeffs) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


# code-list arithmetic

def add_codes(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if spec.p == 2:
        for i, y in enumerate(b):
            out[i] ^= y
    elif spec.e == 1:
        p = spec.p
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
    else:
        add = spec.add
        for i, y in enumerate(b):
            if y:
                out[i] = add(out[i], y)
    return out


def neg_codes(spec: FieldSpec, a: Sequence[int]) -> List[int]:
    if spec.p == 2:
        return list(a)
    neg = spec.tables.neg
    return [neg[c] for c in a]


def sub_codes(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    return add_codes(spec, a, neg_codes(spec, b))


def scale_codes(spec: FieldSpec, a: Sequence[int], c: int) -> List[int]:
    if c == 0:
        return []
    if c == 1:
        return list(a)
    if spec.e == 1:
        p = spec.p
        return [x * c % p for x in a]
    t = spec.tables
    exp, log = t.exp, t.log
    lc = log[c]
    return [exp[lc + log[x]] if x else 0 for x in a]


def _xi_reduction(spec: FieldSpec) -> np.ndarray:
    """Rows are the coordinates of xi^m, 0 <= m <= 2e-2."""
    xi = spec.p
    rows = [spec.coords(spec.pow(xi, m)) for m in range(2 * spec.e - 1)]
    return np.array(rows, dtype=np.int64)


def _mul_numpy(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    p, e = spec.p, spec.e
    if e == 1:
        out = np.convolve(np.array(a, dtype=np.int64),
                          np.array(b, dtype=np.int64)) % p
        return out.tolist()
    ca = np.array([spec.coords(x) for x in a], dtype=np.int64).T
    cb = np.array([spec.coords(y) for y in b], dtype=np.int64).T
    n = len(a) + len(b) - 1
    partial = np.zeros((2 * e - 1, n), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            partial[i + j] += np.convolve(ca[i], cb[j])
    partial %= p
    coords = (_xi_reduction(spec).T @ partial) % p
    weights = np.array([p ** i for i in range(e)], dtype=np.int64)
    return (weights @ coords).tolist()


def _numpy_ok(spec: FieldSpec, shortest: int) -> bool:
    return 2 * spec.e * spec.e * spec.p ** 3 * shortest < _INT64_SAFE


def mul_codes(spec: FieldSpec, a: Sequence[int], b: Sequence[int],
              limit: Optional[int] = None) -> List[int]:
    """Product of two code lists, truncated to ``limit`` coefficients."""
    if limit is not None:
        a, b = a[:limit], b[:limit]
    if not a or not b:
        return []
    shortest = min(len(a), len(b))
    if shortest >= NUMPY_MUL_THRESHOLD and _numpy_ok(spec, shortest):
        out = _mul_numpy(spec, a, b)
        return out[:limit] if limit is not None else out
    n = len(a) + len(b) - 1
    if limit is not None:
        n = min(n, limit)
    out = [0] * n
    if spec.e == 1:
        p = spec.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[:n - i]):
                    if y:
                        out[i + j] += x * y
        return [c % p for c in out]
    t = spec.tables
    exp, log = t.exp, t.log
    xor = spec.p == 2
    add = spec.add
    for i, x in enumerate(a):
        if not x:
            continue
        lx = log[x]
        for j, y in enumerate(b[:n - i]):
            if y:
                term = exp[lx + log[y]]
                if xor:
                    out[i + j] ^= term
                else:
                    out[i + j] = add(out[i + j], term)
    return out


def divmod_codes(spec: FieldSpec, a: Sequence[int],
                 b: Sequence[int]) -> Tuple[List[int], List[int]]:
    b = _trim(tuple(b))
    if not b:
        raise DivisionByZeroError(detail={
            'message': 'Polynomial division by zero'})
    rem = list(_trim(tuple(a)))
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv_lead = spec.inv(b[-1])
    neg_b = neg_codes(spec, b)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        f = spec.mul(c, inv_lead)
        quot[k - db] = f
        shift = k - db
        for j, y in enumerate(scale_codes(spec, neg_b, f)):
            if y:
                rem[shift + j] = spec.add(rem[shift + j], y)
    return list(_trim(quot)), list(_trim(rem[:db]))


class APoly:
    """An element of A = F_q[theta]; ``coeffs[i]`` is the code of the
    coefficient of theta^i."""
    __slots__ = ('spec', 'coeffs')

    def __init__(self, spec: FieldSpec, coeffs: Sequence[int] = ()):
        self.spec = spec
        self.coeffs = _trim(tuple(coeffs))

    @classmethod
    def zero(cls, spec: FieldSpec) -> 'APoly':
        return cls(spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> 'APoly':
        return cls(spec, (1,))

    @classmethod
    def constant(cls, spec: FieldSpec, code: int) -> 'APoly':
        return cls(spec, (code,))

    @classmethod
    def theta(cls, spec: FieldSpec) -> 'APoly':
        return cls(spec, (0, 1))

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, code: int = 1) -> 'APoly':
        return cls(spec, (0,) * k + (code,))

    @classmethod
    def from_json(cls, spec: FieldSpec, data) -> 'APoly':
        coeffs = data['coeffs'] if isinstance(data, dict) else data
        return cls(spec, [spec.from_coords(c) if isinstance(c, (list, tuple))
                          else spec.element(c).code for c in coeffs])

    def to_json(self) -> dict:
        return {'coeffs': [self.spec.coords(c) for c in self.coeffs]}

    # predicates

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_irreducible(self) -> bool:
        return is_irreducible(self)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == _trim((self.spec.scalar(other),))
        if not isinstance(other, APoly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return 'APoly(0)'
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if self.spec.e == 1 else str(self.spec.coords(c))
            if i == 0:
                parts.append(cs)
            else:
                mono = 'θ' if i == 1 else f'θ^{i}'
                parts.append(mono if c == 1 else f'{cs}{mono}')
        return 'APoly(' + ' + '.join(parts) + ')'

    # arithmetic

    def _coerce(self, other) -> Optional['APoly']:
        if isinstance(other, APoly):
            if other.spec != self.spec:
                raise FieldMismatchError(detail={
                    'message': 'Polynomials over different fields',
                    'left': repr(self.spec), 'right': repr(other.spec)})
            return other
        if isinstance(other, int):
            return APoly(self.spec, (self.spec.scalar(other),))
        if isinstance(other, FqElem):
            if other.spec != self.spec:
                raise FieldMismatchError(detail={
                    'message': 'Scalar from a different field',
                    'left': repr(self.spec), 'right': repr(other.spec)})
            return APoly(self.spec, (other.code,))
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return APoly(self.spec, add_codes(self.spec, self.coeffs, b.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return APoly(self.spec, neg_codes(self.spec, self.coeffs))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return APoly(self.spec, sub_codes(self.spec, self.coeffs, b.coeffs))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b - self

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if len(b.coeffs) == 1:
            return self.scale(b.coeffs[0])
        return APoly(self.spec, mul_codes(self.spec, self.coeffs, b.coeffs))

    __rmul__ = __mul__

    def scale(self, code: int) -> 'APoly':
        return APoly(self.spec, scale_codes(self.spec, self.coeffs, code))

    def __pow__(self, n: int) -> 'APoly':
        if n < 0:
            raise InvalidInputError(detail={
                'message': 'Negative powers leave A; use inverse_power',
                'n': n})
        result = APoly.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        q, r = divmod_codes(self.spec, self.coeffs, b.coeffs)
        return APoly(self.spec, q), APoly(self.spec, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> 'APoly':
        if not self.coeffs:
            return self
        return self.scale(self.spec.inv(self.leading))

    def gcd(self, other: 'APoly') -> 'APoly':
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: 'APoly') -> Tuple['APoly', 'APoly', 'APoly']:
        """(g, s, t) with s*self + t*other = g, g monic (or zero)."""
        spec = self.spec
        r0, r1 = self, self._coerce(other)
        s0, s1 = APoly.one(spec), APoly.zero(spec)
        t0, t1 = APoly.zero(spec), APoly.one(spec)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = spec.inv(r0.leading)
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def pow_mod(self, n: int, modulus: 'APoly') -> 'APoly':
        result = APoly.one(self.spec) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    def constant_like(self, code: int) -> 'APoly':
        return APoly(self.spec, (code,))

    def __call__(self, point, emb=None):
        return eval_poly(self, point, emb)


# enumeration

def count_monic(spec: FieldSpec, d: int) -> int:
    return spec.q ** d


def enumerate_monic(spec: FieldSpec, d: int,
                    chunk: Optional[int] = None) -> Iterator[APoly]:
    """All monic polynomials of degree d, lexicographic in (c_0, ..., c_{d-1}).

    With ``chunk`` only those whose theta^(d-1) coefficient has that code are
    produced; the q chunks partition the full stream.
    """
    if d < 0:
        raise InvalidInputError(detail={
            'message': 'Degree must be non-negative', 'd': d})
    if d == 0:
        if chunk in (None, 0):
            yield APoly.one(spec)
        return
    q = spec.q
    ranges = [range(q)] * d
    if chunk is not None:
        if not 0 <= chunk < q:
            raise InvalidInputError(detail={
                'message': 'Chunk index out of range', 'chunk': chunk, 'q': q})
        ranges[-1] = (chunk,)
    for tail in itertools.product(*ranges):
        yield APoly(spec, tail + (1,))


def enumerate_monic_irreducible(spec: FieldSpec, d: int) -> Iterator[APoly]:
    if d < 1:
        return
    for a in enumerate_monic(spec, d):
        if is_irreducible(a):
            yield a


def frobenius_twist(a: APoly, j: int) -> APoly:
    spec = a.spec
    if j % spec.e == 0:
        return a
    return APoly(spec, [spec.frobenius(c, j) for c in a.coeffs])


def hyperderivative(a: APoly, m: int) -> APoly:
    if m < 0:
        raise InvalidInputError(detail={
            'message': 'Hyperderivative order must be non-negative', 'm': m})
    if m == 0:
        return a
    spec = a.spec
    p = spec.p
    out = []
    for i in range(m, len(a.coeffs)):
        c = a.coeffs[i]
        b = binom_mod_p(i, m, p) if c else 0
        out.append(spec.mul(c, b) if b else 0)
    return APoly(spec, out)


def eval_poly(a: APoly, point, emb: Optional[Callable[[int], int]] = None):
    """theta -> point, coefficients mapped through ``emb`` when the point's
    ring sits over a different constant field."""
    spec = a.spec
    if isinstance(point, FqElem):
        target = point.spec
        if target != spec and emb is None:
            raise FieldMismatchError(detail={
                'message': 'Evaluation point in another field needs an embedding',
                'field': repr(spec), 'point_field': repr(target)})
        lift = emb or (lambda c: c)
        acc, x = 0, point.code
        for c in reversed(a.coeffs):
            acc = target.add(target.mul(acc, x), lift(c))
        return FqElem(target, acc)

    point_spec = getattr(point, 'spec', None)
    if point_spec is not None and point_spec != spec and emb is None:
        raise FieldMismatchError(detail={
            'message': 'Evaluation point in another field needs an embedding',
            'field': repr(spec), 'point_field': repr(point_spec)})
    if not hasattr(point, 'constant_like'):
        raise InvalidInputError(detail={
            'message': 'Unsupported evaluation point',
            'type': type(point).__name__})
    lift = emb or (lambda c: c)
    acc = point.constant_like(0)
    for c in reversed(a.coeffs):
        acc = acc * point + point.constant_like(lift(c))
    return acc


def is_irreducible(a: APoly) -> bool:
    if a.degree == NEG_INF or a.degree < 1:
        raise InvalidInputError(detail={
            'message': 'Irreducibility test needs a non-constant polynomial',
            'a': repr(a)})
    if a.degree == 1:
        return True
    f = a.monic()
    theta = APoly.theta(a.spec)
    h = theta
    for _ in range(f.degree // 2):
        h = h.pow_mod(a.spec.q, f)
        if (h - theta).gcd(f).degree >= 1:
            return False
    return True
