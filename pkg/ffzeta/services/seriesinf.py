"""
Laurent series in pi = 1/theta over F_q, known modulo pi^prec.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..exceptions import (DivisionByZeroError, FieldMismatchError,
                          InvalidInputError, UnsupportedFeatureError)
from .fields import FieldSpec, FqElem, ZpExp
from .polyring import APoly, add_codes, mul_codes, neg_codes, scale_codes


def series_inverse_codes(spec: FieldSpec, coeffs: Sequence[int],
                         length: int) -> List[int]:
    """First ``length`` coefficients of 1/f for a power series f with f(0) != 0."""
    inv0 = spec.inv(coeffs[0])
    out = [inv0]
    for k in range(1, length):
        acc = 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            c = coeffs[i]
            if c and out[k - i]:
                acc = spec.add(acc, spec.mul(c, out[k - i]))
        out.append(spec.neg(spec.mul(inv0, acc)))
    return out


class LaurentSeries:
    """sum coeffs[i] pi^(val+i), known modulo pi^prec.

    A nonzero value has coeffs[0] != 0 and exactly prec - val stored
    coefficients. The value zero at precision N has val == N and no
    coefficients.
    """
    __slots__ = ('spec', 'val', 'coeffs', 'prec')

    def __init__(self, spec: FieldSpec, val: int, coeffs: Sequence[int], prec: int):
        coeffs = list(coeffs[:max(prec - val, 0)])
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        if lead == len(coeffs):
            self.spec, self.val, self.coeffs, self.prec = spec, prec, (), prec
            return
        val += lead
        coeffs = coeffs[lead:]
        coeffs += [0] * (prec - val - len(coeffs))
        self.spec, self.val, self.coeffs, self.prec = spec, val, tuple(coeffs), prec

    # constructors

    @classmethod
    def zero(cls, spec: FieldSpec, prec: int) -> 'LaurentSeries':
        return cls(spec, prec, (), prec)

    @classmethod
    def constant(cls, spec: FieldSpec, code: int, prec: int) -> 'LaurentSeries':
        return cls(spec, 0, (code,), prec)

    @classmethod
    def one(cls, spec: FieldSpec, prec: int) -> 'LaurentSeries':
        return cls(spec, 0, (1,), prec)

    @classmethod
    def pi(cls, spec: FieldSpec, prec: int) -> 'LaurentSeries':
        return cls(spec, 1, (1,), prec)

    @classmethod
    def theta(cls, spec: FieldSpec, prec: int) -> 'LaurentSeries':
        return cls(spec, -1, (1,), prec)

    @classmethod
    def pi_power(cls, spec: FieldSpec, exponent, prec: int) -> 'LaurentSeries':
        exponent = Fraction(exponent)
        if exponent.denominator != 1:
            raise UnsupportedFeatureError(detail={
                'message': 'Fractional powers of pi are not available',
                'exponent': str(exponent)})
        return cls(spec, int(exponent), (1,), prec)

    @classmethod
    def from_apoly(cls, a: APoly, prec: int) -> 'LaurentSeries':
        if a.is_zero():
            return cls.zero(a.spec, prec)
        return cls(a.spec, -a.degree, tuple(reversed(a.coeffs)), prec)

    @classmethod
    def from_json(cls, spec: FieldSpec, data: dict) -> 'LaurentSeries':
        coeffs = [spec.from_coords(c) if isinstance(c, (list, tuple))
                  else spec.element(c).code for c in data['coeffs']]
        return cls(spec, int(data['val']), coeffs, int(data['prec']))

    def to_json(self) -> dict:
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return {'val': self.val, 'prec': self.prec,
                'coeffs': [self.spec.coords(c) for c in coeffs]}

    # inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        """Coefficient of pi^k (k < prec)."""
        if k >= self.prec:
            raise InvalidInputError(detail={
                'message': 'Coefficient beyond known precision',
                'k': k, 'prec': self.prec})
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def truncate(self, prec: int) -> 'LaurentSeries':
        if prec >= self.prec:
            return self
        return LaurentSeries(self.spec, self.val, self.coeffs, prec)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.spec == other.spec and self.prec == other.prec
                and self.val == other.val and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.val, self.coeffs, self.prec))

    def agrees_with(self, other: 'LaurentSeries', prec: Optional[int] = None) -> bool:
        """Equality modulo pi^prec (default: the smaller precision)."""
        n = min(self.prec, other.prec) if prec is None else prec
        return self.truncate(n) == other.truncate(n)

    def __repr__(self):
        if self.is_zero():
            return f'LaurentSeries(O(π^{self.prec}))'
        terms = [f'{c if self.spec.e == 1 else self.spec.coords(c)}π^{self.val + i}'
                 for i, c in enumerate(self.coeffs) if c]
        return 'LaurentSeries(' + ' + '.join(terms) + f' + O(π^{self.prec}))'

    # arithmetic

    def _check(self, other: 'LaurentSeries'):
        if other.spec != self.spec:
            raise FieldMismatchError(detail={
                'message': 'Series over different fields',
                'left': repr(self.spec), 'right': repr(other.spec)})

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(self.spec, self.spec.scalar(other), self.prec)
        if isinstance(other, FqElem):
            if other.spec != self.spec:
                raise FieldMismatchError(detail={
                    'message': 'Scalar from a different field'})
            return LaurentSeries.constant(self.spec, other.code, self.prec)
        if isinstance(other, APoly):
            if other.spec != self.spec:
                raise FieldMismatchError(detail={
                    'message': 'Polynomial over a different field'})
            return LaurentSeries.from_apoly(other, self.prec)
        return None

    def _dense(self, start: int, stop: int) -> List[int]:
        out = [0] * (stop - start)
        for i, c in enumerate(self.coeffs):
            k = self.val + i - start
            if 0 <= k < len(out):
                out[k] = c
        return out

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        prec = min(self.prec, b.prec)
        val = min(self.val, b.val, prec)
        total = add_codes(self.spec, self._dense(val, prec), b._dense(val, prec))
        return LaurentSeries(self.spec, val, total, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.spec, self.val, neg_codes(self.spec, self.coeffs),
                             self.prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        prec = min(self.val + b.prec, b.val + self.prec)
        val = self.val + b.val
        if self.is_zero() or b.is_zero() or val >= prec:
            return LaurentSeries.zero(self.spec, prec)
        prod = mul_codes(self.spec, self.coeffs, b.coeffs, limit=prec - val)
        return LaurentSeries(self.spec, val, prod, prec)

    __rmul__ = __mul__

    def scale(self, code: int) -> 'LaurentSeries':
        return LaurentSeries(self.spec, self.val,
                             scale_codes(self.spec, self.coeffs, code), self.prec)

    def inverse(self) -> 'LaurentSeries':
        if self.is_zero():
            raise DivisionByZeroError(detail={
                'message': 'Inverse of a series that vanishes at its precision',
                'prec': self.prec})
        length = self.prec - self.val
        inv = series_inverse_codes(self.spec, self.coeffs, length)
        return LaurentSeries(self.spec, -self.val, inv, self.prec - 2 * self.val)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __pow__(self, n: int) -> 'LaurentSeries':
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.one(self.spec, max(self.prec - self.val, 1))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, j: int) -> 'LaurentSeries':
        """Coefficientwise x -> x^(p^j)."""
        spec = self.spec
        return LaurentSeries(spec, self.val, [spec.frobenius(c, j) for c in self.coeffs],
                             self.prec)

    def power_p(self, i: int) -> 'LaurentSeries':
        """self^(p^i), by Frobenius on coefficients and stretching exponents."""
        if i == 0:
            return self
        spec = self.spec
        step = spec.p ** i
        prec = self.prec * step
        if self.is_zero():
            return LaurentSeries.zero(spec, prec)
        val = self.val * step
        out = [0] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            if c:
                out[k * step] = spec.frobenius(c, i)
        return LaurentSeries(spec, val, out, prec)

    def map_coefficients(self, fn, spec: FieldSpec) -> 'LaurentSeries':
        """Move the series into another field along a coefficient map."""
        return LaurentSeries(spec, self.val, [fn(c) for c in self.coeffs], self.prec)

    def constant_like(self, code: int) -> 'LaurentSeries':
        return LaurentSeries.constant(self.spec, code, self.prec)

    @property
    def valuation(self) -> int:
        return self.val


def decompose(x: LaurentSeries) -> Tuple[int, FqElem, LaurentSeries]:
    """x = sgn * theta^deg * one_unit."""
    if x.is_zero():
        raise InvalidInputError(detail={
            'message': 'Cannot decompose a series that vanishes at its precision',
            'prec': x.prec})
    spec = x.spec
    sgn = x.coeffs[0]
    unit = scale_codes(spec, x.coeffs, spec.inv(sgn))
    return -x.val, FqElem(spec, sgn), LaurentSeries(spec, 0, unit, x.prec - x.val)


def bracket(a: APoly, prec: int) -> LaurentSeries:
    """<a> = a / (sgn(a) theta^deg a) as a one-unit, known modulo pi^prec."""
    if a.is_zero():
        raise InvalidInputError(detail={'message': 'Bracket of zero'})
    spec = a.spec
    unit = scale_codes(spec, tuple(reversed(a.coeffs)), spec.inv(a.leading))
    return LaurentSeries(spec, 0, unit, prec)


def is_one_unit(u: LaurentSeries) -> bool:
    return not u.is_zero() and u.val == 0 and u.coeffs[0] == 1


def one_unit_pow(u: LaurentSeries, y: ZpExp) -> LaurentSeries:
    """u^y for a one-unit u, through the digits of y.

    The result is known modulo pi^min(prec(u), p^M * v(u - 1)).
    """
    if not is_one_unit(u):
        raise InvalidInputError(detail={
            'message': 'Exponentiation by p-adic integers needs a one-unit',
            'u': repr(u)})
    spec = u.spec
    if y.p != spec.p:
        raise InvalidInputError(detail={
            'message': 'Exponent prime differs from the characteristic',
            'p': spec.p, 'exponent_p': y.p})
    w = u - LaurentSeries.one(spec, u.prec)
    if w.is_zero():
        return LaurentSeries.one(spec, u.prec)
    prec = min(u.prec, spec.p ** y.precision * w.val)
    w = w.truncate(prec)
    result = LaurentSeries.one(spec, prec)
    for i, d in enumerate(y.digits):
        if d == 0:
            continue
        if w.val * spec.p ** i >= prec:
            break
        factor = (LaurentSeries.one(spec, prec) + w.power_p(i)).truncate(prec)
        for _ in range(d):
            result = result * factor
    return result.truncate(prec)


def inverse_power(a: APoly, n: int, prec: int) -> LaurentSeries:
    """a^(-n) modulo pi^prec for nonzero a."""
    spec = a.spec
    if a.is_zero():
        raise DivisionByZeroError(detail={'message': 'Inverse power of zero'})
    if n <= 0:
        return LaurentSeries.from_apoly(a ** (-n), prec)
    d = a.degree
    val = n * d
    if val >= prec:
        return LaurentSeries.zero(spec, prec)
    length = prec - val
    unit = scale_codes(spec, tuple(reversed(a.coeffs)), spec.inv(a.leading))
    inv = series_inverse_codes(spec, unit, length)
    acc = [1]
    base = inv
    k = n
    while k:
        if k & 1:
            acc = mul_codes(spec, acc, base, limit=length)
        k >>= 1
        if k:
            base = mul_codes(spec, base, base, limit=length)
    sgn = spec.pow(a.leading, -n)
    return LaurentSeries(spec, val, scale_codes(spec, acc, sgn), prec)
