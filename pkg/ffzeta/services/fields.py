"""
Finite fields F_q = F_p[xi]/(modulus), their elements, Frobenius, digit
utilities, p-adic exponents and residue characters.

Elements are encoded as integer codes: the coordinate vector (c_0, ..., c_{e-1})
in the basis 1, xi, ..., xi^{e-1} is read as the base-p number sum c_i p^i.
So the code of the prime-field element n is n itself, and polynomial
arithmetic in ``polyring`` works on plain tuples of codes. Multiplication
goes through log/antilog tables built once per field.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Sequence, Tuple

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from ..exceptions import (DivisionByZeroError, FieldMismatchError,
                          InvalidInputError, UnsupportedFeatureError)

MAX_FIELD_SIZE = 1 << 20
ADD_TABLE_LIMIT = 1024
EXHAUSTIVE_IRREDUCIBILITY_DEGREE = 8

# ascending coefficients, monic
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (3, 3): (1, 2, 0, 1),
}


def _to_gf(coeffs: Sequence[int]) -> List[int]:
    out = list(reversed([int(c) for c in coeffs]))
    while out and out[0] == 0:
        out.pop(0)
    return out


def _from_gf(poly: Sequence[int], length: int) -> List[int]:
    out = [int(c) for c in reversed(poly)]
    return out + [0] * (length - len(out))


def is_irreducible_over_fp(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of an ascending coefficient list over F_p.

    Degrees up to 8 are decided by trial division by every monic polynomial
    of degree at most half the degree; larger ones by sympy's test.
    """
    f = _to_gf(modulus)
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if e > EXHAUSTIVE_IRREDUCIBILITY_DEGREE:
        return bool(gf_irreducible_p(f, p, ZZ))
    for deg in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not gf_rem(f, [1] + list(tail), p, ZZ):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> Tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        candidate = tuple(reversed(tail)) + (1,)
        if candidate[0] == 0:
            continue
        if is_irreducible_over_fp(candidate, p):
            return candidate
    raise InvalidInputError(detail={
        'message': 'No irreducible polynomial found', 'p': p, 'e': e})


class _FieldTables:
    __slots__ = ('exp', 'log', 'add', 'neg', 'generator')

    def __init__(self, exp, log, add, neg, generator):
        self.exp = exp
        self.log = log
        self.add = add
        self.neg = neg
        self.generator = generator


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'modulus', tuple(int(c) for c in self.modulus))
        if not isprime(self.p):
            raise InvalidInputError(detail={
                'message': 'Characteristic must be prime', 'p': self.p})
        if self.e < 1:
            raise InvalidInputError(detail={
                'message': 'Extension degree must be at least 1', 'e': self.e})
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise InvalidInputError(detail={
                'message': 'Modulus must be monic of degree e',
                'modulus': list(self.modulus), 'e': self.e})
        if any(not 0 <= c < self.p for c in self.modulus):
            raise InvalidInputError(detail={
                'message': 'Modulus coefficients must lie in [0, p)',
                'modulus': list(self.modulus)})
        if self.p ** self.e > MAX_FIELD_SIZE:
            raise UnsupportedFeatureError(detail={
                'message': 'Field too large', 'q': self.p ** self.e})
        if not is_irreducible_over_fp(self.modulus, self.p):
            raise InvalidInputError(detail={
                'message': 'Modulus is reducible over F_p',
                'modulus': list(self.modulus), 'p': self.p})

    @classmethod
    def default(cls, p: int, e: int = 1) -> 'FieldSpec':
        return _default_field(p, e)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    # coordinates

    def coords(self, code: int) -> List[int]:
        out = []
        for _ in range(self.e):
            code, c = divmod(code, self.p)
            out.append(c)
        return out

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) > self.e:
            raise InvalidInputError(detail={
                'message': 'Too many coordinates for field element',
                'coords': list(coords), 'e': self.e})
        code = 0
        for c in reversed(coords):
            if not 0 <= c < self.p:
                raise InvalidInputError(detail={
                    'message': 'Coordinate out of range [0, p)',
                    'coords': list(coords)})
            code = code * self.p + c
        return code

    def _coord_mul(self, a: int, b: int) -> int:
        prod = gf_mul(_to_gf(self.coords(a)), _to_gf(self.coords(b)), self.p, ZZ)
        rem = gf_rem(prod, _to_gf(self.modulus), self.p, ZZ)
        return self.from_coords(_from_gf(rem, self.e))

    @cached_property
    def tables(self) -> _FieldTables:
        q, p = self.q, self.p
        order = q - 1

        def coord_pow(x, n):
            result, base = 1, x
            while n:
                if n & 1:
                    result = self._coord_mul(result, base)
                base = self._coord_mul(base, base)
                n >>= 1
            return result

        cofactors = [order // ell for ell in factorint(order)]
        generator = next(g for g in range(1, q)
                         if all(coord_pow(g, c) != 1 for c in cofactors))
        exp = [0] * (2 * order)
        log = [-1] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._coord_mul(x, generator)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]

        neg = [self._digitwise(0, a, -1) for a in range(q)]
        add = None
        if p != 2 and q <= ADD_TABLE_LIMIT:
            add = [[self._digitwise(a, b, 1) for b in range(q)] for a in range(q)]
        return _FieldTables(exp, log, add, neg, generator)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        code, scale = 0, 1
        for _ in range(self.e):
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            code += ((ca + sign * cb) % p) * scale
            scale *= p
        return code

    # arithmetic on codes

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        table = self.tables.add
        if table is not None:
            return table[a][b]
        return self._digitwise(a, b, 1)

    def neg(self, a: int) -> int:
        return self.tables.neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.tables.neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self.tables
        return t.exp[t.log[a] + t.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError(detail={
                'message': 'Inverse of zero in F_q', 'q': self.q})
        t = self.tables
        return t.exp[(-t.log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise DivisionByZeroError(detail={
                    'message': 'Negative power of zero in F_q', 'q': self.q})
            return 0
        t = self.tables
        return t.exp[(t.log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, j: int = 1) -> int:
        """a^(p^j)."""
        if a == 0 or j % self.e == 0:
            return a
        return self.pow(a, pow(self.p, j % self.e))

    def scalar(self, n: int) -> int:
        """Code of the image of the integer n in the prime field."""
        return n % self.p

    def element(self, code) -> 'FqElem':
        if isinstance(code, (list, tuple)):
            code = self.from_coords(code)
        if not 0 <= code < self.q:
            raise InvalidInputError(detail={
                'message': 'Element code out of range', 'code': code})
        return FqElem(self, code)

    def zero(self) -> 'FqElem':
        return FqElem(self, 0)

    def one(self) -> 'FqElem':
        return FqElem(self, 1)

    def elements(self) -> Iterator['FqElem']:
        for code in range(self.q):
            yield FqElem(self, code)

    def is_subfield_of(self, other: 'FieldSpec') -> bool:
        return self.p == other.p and other.e % self.e == 0


@lru_cache(maxsize=None)
def _default_field(p: int, e: int) -> FieldSpec:
    modulus = DEFAULT_MODULI.get((p, e))
    if modulus is None:
        if not isprime(p):
            raise InvalidInputError(detail={
                'message': 'Characteristic must be prime', 'p': p})
        modulus = smallest_irreducible(p, e)
    return FieldSpec(p, e, modulus)


@dataclass(frozen=True)
class FqElem:
    spec: FieldSpec
    code: int

    def _other(self, other) -> int:
        if isinstance(other, int):
            return self.spec.scalar(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatchError(detail={
                'message': 'Operands belong to different fields',
                'left': repr(self.spec), 'right': repr(other.spec)})
        return other.code

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.spec, self.spec.sub(b, self.code))

    def __neg__(self):
        return FqElem(self.spec, self.spec.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def inverse(self) -> 'FqElem':
        return FqElem(self.spec, self.spec.inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.spec, self.spec.mul(self.code, self.spec.inv(b)))

    def __pow__(self, n: int):
        return FqElem(self.spec, self.spec.pow(self.code, n))

    def __bool__(self):
        return self.code != 0

    def frobenius(self, j: int = 1) -> 'FqElem':
        return FqElem(self.spec, self.spec.frobenius(self.code, j))

    @property
    def coords(self) -> List[int]:
        return self.spec.coords(self.code)

    def __repr__(self):
        return f"FqElem({self.coords})"


def frobenius(x: FqElem, j: int) -> FqElem:
    if j < 0:
        raise InvalidInputError(detail={
            'message': 'Frobenius exponent must be non-negative', 'j': j})
    return x.frobenius(j)


@dataclass(frozen=True)
class FieldEmbedding:
    """F_q -> F_{q^m}, sending xi to the root ``image_of_xi`` of the source
    modulus in the target field."""
    source: FieldSpec
    target: FieldSpec
    image_of_xi: int

    @cached_property
    def _images(self) -> List[int]:
        src, tgt = self.source, self.target
        powers = [1]
        for _ in range(src.e - 1):
            powers.append(tgt.mul(powers[-1], self.image_of_xi))
        images = []
        for code in range(src.q):
            acc = 0
            for c, power in zip(src.coords(code), powers):
                if c:
                    acc = tgt.add(acc, tgt.mul(tgt.scalar(c), power))
            images.append(acc)
        return images

    def __call__(self, code: int) -> int:
        return self._images[code]

    def element(self, x: FqElem) -> FqElem:
        return FqElem(self.target, self(x.code))


@lru_cache(maxsize=None)
def embedding(source: FieldSpec, target: FieldSpec) -> FieldEmbedding:
    if not source.is_subfield_of(target):
        raise FieldMismatchError(detail={
            'message': 'No embedding between these fields',
            'source': repr(source), 'target': repr(target)})
    if source == target:
        return FieldEmbedding(source, target, source.from_coords([0, 1])
                              if source.e > 1 else 0)
    for beta in range(target.q):
        acc = 0
        for c in reversed(source.modulus):
            acc = target.add(target.mul(acc, beta), target.scalar(c))
        if acc == 0:
            return FieldEmbedding(source, target, beta)
    raise FieldMismatchError(detail={
        'message': 'Source modulus has no root in target field',
        'source': repr(source), 'target': repr(target)})


def extension(spec: FieldSpec, m: int) -> Tuple[FieldSpec, FieldEmbedding]:
    """F_{q^m} with its embedding of F_q."""
    big = spec if m == 1 else FieldSpec.default(spec.p, spec.e * m)
    return big, embedding(spec, big)


# digits

def base_digits(n: int, b: int) -> List[int]:
    if n < 0:
        raise InvalidInputError(detail={
            'message': 'Digit expansion needs a non-negative integer', 'n': n})
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return out


def lq_digit_sum(n: int, q: int) -> int:
    return sum(base_digits(n, q))


def binom_mod_p(k: int, m: int, p: int) -> int:
    """Binomial coefficient mod p by Lucas' theorem (0 when k < m)."""
    if m < 0 or k < m:
        return 0
    result = 1
    while m:
        k, kd = divmod(k, p)
        m, md = divmod(m, p)
        if md > kd:
            return 0
        num = den = 1
        for i in range(md):
            num = num * (kd - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, -1, p) % p
    return result


@dataclass(frozen=True)
class ZpExp:
    """A p-adic integer known modulo p^M through its digits d_0..d_{M-1}."""
    p: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'digits', tuple(int(d) for d in self.digits))
        if not self.digits:
            raise InvalidInputError(detail={
                'message': 'A p-adic exponent needs at least one digit'})
        if any(not 0 <= d < self.p for d in self.digits):
            raise InvalidInputError(detail={
                'message': 'Digits must lie in [0, p)',
                'digits': list(self.digits), 'p': self.p})

    @classmethod
    def from_int(cls, n: int, p: int, precision: int) -> 'ZpExp':
        value = n % p ** precision
        digits = base_digits(value, p)
        return cls(p, tuple(digits + [0] * (precision - len(digits))))

    @property
    def precision(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        """The non-negative integer sum d_i p^i < p^M."""
        return sum(d * self.p ** i for i, d in enumerate(self.digits))

    def __neg__(self) -> 'ZpExp':
        return ZpExp.from_int(-self.value, self.p, self.precision)

    def __add__(self, other: 'ZpExp') -> 'ZpExp':
        if other.p != self.p:
            raise InvalidInputError(detail={
                'message': 'p-adic exponents with different primes'})
        precision = min(self.precision, other.precision)
        return ZpExp.from_int(self.value + other.value, self.p, precision)

    def base_q_digits(self, q: int) -> List[int]:
        """The base-q digits fully determined by the known p-adic digits."""
        e = 0
        power = 1
        while power < q:
            power *= self.p
            e += 1
        if power != q:
            raise InvalidInputError(detail={
                'message': 'q must be a power of p', 'q': q, 'p': self.p})
        known = self.precision // e
        return [sum(self.digits[i * e + j] * self.p ** j for j in range(e))
                for i in range(known)]


@dataclass(frozen=True)
class ResidueChar:
    """a -> (a mod P)^delta in F_{q^dP}; zero on multiples of P.

    The residue map is a -> a(beta) for the smallest-code root beta of P in
    the default field of degree dP over F_q.
    """
    P: object
    delta: int

    def __post_init__(self):
        if not self.P.is_monic() or not self.P.is_irreducible():
            raise InvalidInputError(detail={
                'message': 'Residue characters need a monic irreducible P',
                'P': repr(self.P)})
        order = self.P.spec.q ** self.P.degree - 1
        object.__setattr__(self, 'delta', self.delta % order)

    @cached_property
    def residue_field(self) -> FieldSpec:
        return extension(self.P.spec, self.P.degree)[0]

    @cached_property
    def coefficient_embedding(self) -> FieldEmbedding:
        return embedding(self.P.spec, self.residue_field)

    @cached_property
    def root(self) -> int:
        big, emb = self.residue_field, self.coefficient_embedding
        for beta in range(big.q):
            if _horner(big, [emb(c) for c in self.P.coeffs], beta) == 0:
                return beta
        raise InvalidInputError(detail={
            'message': 'P has no root in its residue field', 'P': repr(self.P)})

    def residue(self, a) -> int:
        emb = self.coefficient_embedding
        return _horner(self.residue_field, [emb(c) for c in a.coeffs], self.root)

    def __call__(self, a) -> int:
        r = self.residue(a)
        if r == 0:
            return 0
        return self.residue_field.pow(r, self.delta)


def _horner(spec: FieldSpec, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = spec.add(spec.mul(acc, x), c)
    return acc


def char_eval(chi: ResidueChar, a) -> FqElem:
    return FqElem(chi.residue_field, chi(a))
