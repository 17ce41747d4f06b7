"""
Arithmetic in A / (P^k): valuations, Teichmueller representatives, the
one-unit part <a>_P and p-adic powers of one-units.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List

from ..exceptions import DivisionByZeroError, InvalidInputError, PrecisionError
from .fields import ZpExp, base_digits
from .polyring import APoly

_logger = logging.getLogger(__name__)

# below this exponent plain square-and-multiply is used
_FROBENIUS_POW_THRESHOLD = 1 << 12


@dataclass(frozen=True)
class PadicCtx:
    P: APoly
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError(detail={
                'message': 'Precision exponent must be at least 1', 'k': self.k})
        if self.P.is_zero() or self.P.is_constant():
            raise InvalidInputError(detail={
                'message': 'P must be a non-constant polynomial', 'P': repr(self.P)})
        if not self.P.is_monic():
            raise InvalidInputError(detail={
                'message': 'P must be monic', 'P': repr(self.P)})
        if not self.P.is_irreducible():
            raise InvalidInputError(detail={
                'message': 'P must be irreducible', 'P': repr(self.P)})

    @property
    def spec(self):
        return self.P.spec

    @property
    def dP(self) -> int:
        return self.P.degree

    @cached_property
    def modulus(self) -> APoly:
        return self.P ** self.k

    @cached_property
    def residue_order(self) -> int:
        return self.spec.q ** self.dP

    @cached_property
    def unit_group_order(self) -> int:
        """Order of (A/P^k)^x."""
        Q = self.residue_order
        return (Q - 1) * Q ** (self.k - 1)

    @cached_property
    def _theta_frobenius(self) -> List[APoly]:
        return [APoly.theta(self.spec) % self.modulus]

    def theta_frobenius(self, i: int) -> APoly:
        """theta^(q^i) mod P^k."""
        cache = self._theta_frobenius
        while len(cache) <= i:
            cache.append(cache[-1].pow_mod(self.spec.q, self.modulus))
        return cache[i]

    def element(self, a) -> 'PadicElem':
        if isinstance(a, PadicElem):
            a = a.rep
        if isinstance(a, int):
            a = APoly.constant(self.spec, self.spec.scalar(a))
        return PadicElem(self, a % self.modulus)

    def to_json(self) -> dict:
        return {'P': self.P.to_json(), 'k': self.k}

    @classmethod
    def from_json(cls, spec, data: dict) -> 'PadicCtx':
        return cls(APoly.from_json(spec, data['P']), int(data['k']))


def valuation_at(P: APoly, a: APoly, cap: int) -> int:
    """min(cap, v_P(a)) by trial division."""
    v = 0
    while v < cap and not a.is_zero():
        quot, rem = divmod(a, P)
        if not rem.is_zero():
            return v
        a = quot
        v += 1
    return cap if a.is_zero() else v


class PadicElem:
    __slots__ = ('ctx', 'rep')

    def __init__(self, ctx: PadicCtx, rep: APoly):
        self.ctx = ctx
        self.rep = rep

    @property
    def spec(self):
        return self.ctx.spec

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def vP(self) -> int:
        return valuation_at(self.ctx.P, self.rep, self.ctx.k)

    def is_unit(self) -> bool:
        return not (self.rep % self.ctx.P).is_zero()

    def _coerce(self, other):
        if isinstance(other, PadicElem):
            if other.ctx != self.ctx:
                raise InvalidInputError(detail={
                    'message': 'Operands in different residue rings'})
            return other
        if isinstance(other, (int, APoly)):
            return self.ctx.element(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return PadicElem(self.ctx, (self.rep + b.rep) % self.ctx.modulus)

    __radd__ = __add__

    def __neg__(self):
        return PadicElem(self.ctx, -self.rep)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return PadicElem(self.ctx, (self.rep - b.rep) % self.ctx.modulus)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b - self

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return PadicElem(self.ctx, (self.rep * b.rep) % self.ctx.modulus)

    __rmul__ = __mul__

    def inverse(self) -> 'PadicElem':
        g, s, _ = self.rep.xgcd(self.ctx.modulus)
        if g.degree != 0:
            raise DivisionByZeroError(detail={
                'message': 'Inverse of a non-unit modulo P^k',
                'value': repr(self.rep), 'k': self.ctx.k})
        return PadicElem(self.ctx, s % self.ctx.modulus)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def frobenius(self, i: int = 1) -> 'PadicElem':
        """x -> x^(q^i); coefficients are fixed, theta goes to theta^(q^i)."""
        if i == 0:
            return self
        image = self.ctx.theta_frobenius(i)
        acc = APoly.zero(self.spec)
        modulus = self.ctx.modulus
        for c in reversed(self.rep.coeffs):
            acc = (acc * image + APoly.constant(self.spec, c)) % modulus
        return PadicElem(self.ctx, acc)

    def __pow__(self, n: int) -> 'PadicElem':
        ctx = self.ctx
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ctx.element(1)
        if not self.is_unit():
            if n * self.vP() >= ctx.k:
                return ctx.element(0)
            return PadicElem(ctx, self.rep.pow_mod(n, ctx.modulus))
        n %= ctx.unit_group_order
        if n < _FROBENIUS_POW_THRESHOLD:
            return PadicElem(ctx, self.rep.pow_mod(n, ctx.modulus))
        return self.digit_pow(n)

    def digit_pow(self, n: int) -> 'PadicElem':
        """x^n as the product over base-q digits n_i of frob_i(x)^n_i."""
        ctx = self.ctx
        result = ctx.element(1)
        conj = self
        for i, d in enumerate(base_digits(n, ctx.spec.q)):
            if i:
                conj = conj.frobenius(1)
            if d:
                result = result * PadicElem(ctx, conj.rep.pow_mod(d, ctx.modulus))
        return result

    def __eq__(self, other):
        if isinstance(other, (int, APoly)):
            other = self.ctx.element(other)
        if not isinstance(other, PadicElem):
            return NotImplemented
        return self.ctx == other.ctx and self.rep == other.rep

    def __hash__(self):
        return hash((self.ctx, self.rep))

    def __repr__(self):
        return f'PadicElem({self.rep!r} mod P^{self.ctx.k})'

    def constant_like(self, code: int) -> 'PadicElem':
        return PadicElem(self.ctx, APoly.constant(self.spec, code))

    def to_json(self) -> dict:
        return self.rep.to_json()


def _require_unit(a, ctx: PadicCtx) -> PadicElem:
    x = ctx.element(a)
    if not x.is_unit():
        raise InvalidInputError(detail={
            'message': 'P divides the argument', 'P': repr(ctx.P),
            'a': repr(x.rep)})
    return x


def teichmuller(a, ctx: PadicCtx) -> PadicElem:
    """The root of unity omega with omega = a mod P."""
    x = _require_unit(a, ctx)
    for _ in range(ctx.k + 1):
        nxt = x.frobenius(ctx.dP)
        if nxt == x:
            return x
        x = nxt
    return x


def padic_bracket(a, ctx: PadicCtx) -> PadicElem:
    """<a>_P = a / omega_P(a)."""
    x = _require_unit(a, ctx)
    return x * teichmuller(x, ctx).inverse()


def padic_one_unit_pow(u, y: ZpExp, ctx: PadicCtx) -> PadicElem:
    """u^y for u = 1 mod P; exact in A/P^k when p^M >= k."""
    x = ctx.element(u)
    w = x - ctx.element(1)
    if w.vP() < 1:
        raise InvalidInputError(detail={
            'message': 'Argument is not a one-unit at P', 'u': repr(x.rep)})
    p = ctx.spec.p
    if y.p != p:
        raise InvalidInputError(detail={
            'message': 'Exponent prime differs from the characteristic'})
    if p ** y.precision < ctx.k:
        raise PrecisionError(detail={
            'message': 'Not enough exponent digits for this P-adic precision',
            'digits': y.precision, 'k': ctx.k,
            'needed': _digits_needed(p, ctx.k)})
    result = ctx.element(1)
    one = ctx.element(1)
    wi = w
    vw = w.vP()
    for i, d in enumerate(y.digits):
        if i:
            if vw * p ** i >= ctx.k:
                break
            wi = PadicElem(ctx, wi.rep.pow_mod(p, ctx.modulus))
        if wi.is_zero():
            break
        if d:
            factor = one + wi
            for _ in range(d):
                result = result * factor
    return result


def _digits_needed(p: int, k: int) -> int:
    m = 0
    while p ** m < k:
        m += 1
    return m
