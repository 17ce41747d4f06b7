"""
Brute-force verifiers: the vanishing lemma for sums of products of affine
maps over F_p-spaces, and threshold scans of every vanishing bound.
"""
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from ..exceptions import BudgetExceededError, InvalidInputError
from .fields import FieldSpec, FqElem, ResidueChar, lq_digit_sum
from .metrics_services import push_metric
from .polyring import APoly
from .zeta import TwistFactor, char_power_sum, power_sum, twisted_power_sum

_logger = logging.getLogger(__name__)

ENUMERATION_BUDGET = 10 ** 7
BATCH = 1 << 15


@dataclass(frozen=True)
class TruncatedRing:
    """F_p[x] / (x^length), a commutative F_p-algebra of polynomial offsets."""
    p: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise InvalidInputError(detail={
                'message': 'Truncated ring needs length >= 1', 'length': self.length})

    @property
    def rows(self) -> int:
        return self.length

    def to_json(self) -> dict:
        return {'kind': 'truncated', 'p': self.p, 'length': self.length}


Target = Union[FieldSpec, TruncatedRing]


def target_rows(target: Target) -> int:
    return target.e if isinstance(target, FieldSpec) else target.rows


@dataclass(frozen=True)
class CharsumConfig:
    """sum over w in F_p^dim of prod_i (offsets[i] + maps[i] w).

    Each map is a rows x dim matrix over F_p and each offset a vector of
    coordinates in the target (rows = dimension of the target over F_p).
    """
    p: int
    dim: int
    maps: Tuple[Tuple[Tuple[int, ...], ...], ...]
    offsets: Tuple[Tuple[int, ...], ...]
    target: Target

    def __post_init__(self):
        object.__setattr__(self, 'maps', tuple(
            tuple(tuple(int(x) for x in row) for row in m) for m in self.maps))
        object.__setattr__(self, 'offsets', tuple(
            tuple(int(x) for x in v) for v in self.offsets))
        if self.target.p != self.p:
            raise InvalidInputError(detail={
                'message': 'Target ring has a different characteristic',
                'p': self.p, 'target_p': self.target.p})
        if self.dim < 0:
            raise InvalidInputError(detail={'message': 'dim must be non-negative'})
        if len(self.maps) != len(self.offsets):
            raise InvalidInputError(detail={
                'message': 'One offset per map is required',
                'maps': len(self.maps), 'offsets': len(self.offsets)})
        rows = target_rows(self.target)
        for i, (m, v) in enumerate(zip(self.maps, self.offsets)):
            if len(m) != rows or any(len(row) != self.dim for row in m):
                raise InvalidInputError(detail={
                    'message': 'Map has the wrong shape', 'map': i,
                    'expected': [rows, self.dim]})
            if len(v) != rows:
                raise InvalidInputError(detail={
                    'message': 'Offset has the wrong length', 'offset': i,
                    'expected': rows})
            if any(not 0 <= x < self.p for row in m for x in row) or \
                    any(not 0 <= x < self.p for x in v):
                raise InvalidInputError(detail={
                    'message': 'Entries must lie in [0, p)', 'map': i})

    @property
    def r(self) -> int:
        return len(self.maps)

    @property
    def predicted_zero(self) -> bool:
        return self.dim * (self.p - 1) > self.r


def _points(p: int, dim: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return np.stack([(idx // p ** j) % p for j in range(dim)], axis=1) \
        if dim else np.zeros((stop - start, 0), dtype=np.int64)


def _field_product(spec: FieldSpec, factors: List[np.ndarray]) -> np.ndarray:
    """Elementwise product of coordinate arrays, returned as codes."""
    tables = spec.tables
    exp = np.asarray(tables.exp, dtype=np.int64)
    log = np.asarray(tables.log, dtype=np.int64)
    weights = np.array([spec.p ** j for j in range(spec.e)], dtype=np.int64)
    acc = None
    for coords in factors:
        codes = coords @ weights
        if acc is None:
            acc = codes
            continue
        zero = (acc == 0) | (codes == 0)
        acc = np.where(zero, 0, exp[np.where(zero, 0, log[acc] + log[codes])])
    return acc


def _truncated_product(ring: TruncatedRing, factors: List[np.ndarray]) -> np.ndarray:
    acc = None
    for coeffs in factors:
        if acc is None:
            acc = coeffs
            continue
        out = np.zeros_like(acc)
        for k in range(ring.length):
            for j in range(k + 1):
                out[:, k] += acc[:, j] * coeffs[:, k - j]
            out[:, k] %= ring.p
        acc = out
    return acc


def charsum_trial(cfg: CharsumConfig, budget: int = ENUMERATION_BUDGET):
    """The exact value of the sum, by enumerating all p^dim points.

    Returns an FqElem for a field target and a coefficient tuple for a
    truncated polynomial target.
    """
    p, target = cfg.p, cfg.target
    size = p ** cfg.dim
    if size > budget:
        raise BudgetExceededError(detail={
            'message': 'Enumeration exceeds the budget',
            'points': size, 'budget': budget})
    rows = target_rows(target)
    total = np.zeros(rows, dtype=np.int64)
    maps = [np.asarray(m, dtype=np.int64).reshape(rows, cfg.dim) for m in cfg.maps]
    offsets = [np.asarray(v, dtype=np.int64) for v in cfg.offsets]
    for start in range(0, size, BATCH):
        stop = min(size, start + BATCH)
        if cfg.r == 0:
            total[0] = (total[0] + stop - start) % p
            continue
        w = _points(p, cfg.dim, start, stop)
        factors = [(w @ m.T + v) % p for m, v in zip(maps, offsets)]
        if isinstance(target, FieldSpec):
            codes = _field_product(target, factors)
            digits = np.stack([(codes // p ** j) % p for j in range(rows)], axis=1)
            total = (total + digits.sum(axis=0)) % p
        else:
            total = (total + _truncated_product(target, factors).sum(axis=0)) % p
    coords = [int(x) for x in total]
    if isinstance(target, FieldSpec):
        return FqElem(target, target.from_coords(coords))
    return tuple(coords)


def is_zero_value(value) -> bool:
    if isinstance(value, FqElem):
        return value.code == 0
    return not any(value)


def random_config(rng: random.Random, p: int, dim: int, r: int,
                  target: Optional[Target] = None,
                  window: Optional[int] = None) -> CharsumConfig:
    """Uniform maps; offsets uniform, supported on the first ``window``
    coefficients when the target is a truncated polynomial ring."""
    target = target if target is not None else FieldSpec.default(p, 1)
    rows = target_rows(target)
    support = rows if window is None else min(window, rows)
    maps = tuple(tuple(tuple(rng.randrange(p) for _ in range(dim)) for _ in range(rows))
                 for _ in range(r))
    offsets = tuple(tuple(rng.randrange(p) if j < support else 0 for j in range(rows))
                    for _ in range(r))
    return CharsumConfig(p, dim, maps, offsets, target)


# threshold scans

def _sharp(rows: List[dict], key: str) -> dict:
    """Per value of ``key``, the smallest d from which every scanned degree
    gives zero, next to the predicted threshold."""
    groups = {}
    for row in rows:
        groups.setdefault(row['params'][key], []).append(row)
    out = {}
    for value, group in sorted(groups.items()):
        group.sort(key=lambda row: row['params']['d'])
        observed = None
        for row in reversed(group):
            if not row['zero']:
                break
            observed = row['params']['d']
        predicted = next((row['params']['d'] for row in group
                          if row['predicted_zero']), None)
        out[str(value)] = {'observed': observed, 'predicted': predicted}
    return out


def _row(params: dict, zero: bool, predicted: bool) -> dict:
    return {'params': params, 'zero': zero, 'predicted_zero': predicted,
            'violation': predicted and not zero}


def threshold_scan(kind: str, spec: FieldSpec, d_max: int, n_max: int = 0,
                   s_max: int = 0, P: Optional[APoly] = None, delta: int = 0,
                   budget: int = ENUMERATION_BUDGET) -> dict:
    """Scan a vanishing bound over a grid.

    kind ``powersum``: S_d(n) for d <= d_max, n <= n_max against
    d(q-1) > l_q(n). kind ``twisted``: the sum of a(t_1)..a(t_s) for
    s <= s_max against d(q-1) > s. kind ``char``: the residue-character sum
    of a^n for n <= n_max against (d - dP)(q-1) > l_q(n).
    """
    if min(d_max, n_max, s_max) < 0:
        raise InvalidInputError(detail={
            'message': 'Scan bounds must be non-negative',
            'd_max': d_max, 'n_max': n_max, 's_max': s_max})
    q = spec.q
    rows: List[dict] = []
    spent = 0
    complete = True
    if kind == 'powersum':
        for n in range(n_max + 1):
            for d in range(d_max + 1):
                rows.append(_row({'d': d, 'n': n}, power_sum(spec, d, n).is_zero(),
                                 d * (q - 1) > lq_digit_sum(n, q)))
        sharp = _sharp(rows, 'n')
    elif kind == 'twisted':
        for s in range(s_max + 1):
            factors = [TwistFactor.finite(f't{i + 1}') for i in range(s)]
            for d in range(d_max + 1):
                spent += q ** d
                if spent > budget:
                    complete = False
                    break
                value = twisted_power_sum(spec, d, factors)
                rows.append(_row({'d': d, 's': s}, value.is_zero(), d * (q - 1) > s))
        sharp = _sharp(rows, 's')
    elif kind == 'char':
        if P is None:
            raise InvalidInputError(detail={'message': 'char scans need a prime P'})
        chi = ResidueChar(P, delta)
        for n in range(n_max + 1):
            for d in range(d_max + 1):
                spent += q ** d
                if spent > budget:
                    complete = False
                    break
                value = char_power_sum(spec, d, chi, n)
                zero = value.code == 0 if isinstance(value, FqElem) else value.is_zero()
                rows.append(_row({'d': d, 'n': n, 'delta': chi.delta}, zero,
                                 (d - P.degree) * (q - 1) > lq_digit_sum(n, q)))
        sharp = _sharp(rows, 'n')
    else:
        raise InvalidInputError(detail={
            'message': 'Unknown scan kind', 'kind': kind,
            'kinds': ['powersum', 'twisted', 'char']})
    violations = sum(1 for row in rows if row['violation'])
    if violations:
        _logger.error("%d rows violate the %s bound", violations, kind)
    push_metric({"event": "ThresholdScan", "kind": kind, "q": q,
                 "rows": len(rows), "violations": violations, "complete": complete})
    return {'kind': kind, 'rows': rows, 'complete': complete,
            'violations': violations, 'sharp': sharp}
