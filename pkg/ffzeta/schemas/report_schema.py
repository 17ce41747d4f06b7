from pydantic import BaseModel
from typing import Any, Dict, List, Optional


class ScanRow(BaseModel):
    params: Dict[str, int]
    zero: bool
    predicted_zero: bool
    violation: bool


class SharpThreshold(BaseModel):
    observed: Optional[int] = None
    predicted: Optional[int] = None


class ScanReport(BaseModel):
    kind: str
    rows: List[ScanRow]
    complete: bool
    violations: int
    sharp: Dict[str, SharpThreshold]


class VerifyReport(BaseModel):
    check: str
    seed: int
    grid: Dict[str, Any]
    complete: bool
    trials: int
    violations: int
    rows: List[Dict[str, Any]]


class MkReport(BaseModel):
    m_k: int
    delta_k: int
    k: int
    dP: int
    q: int
    checks: Dict[str, bool]
    narrow_digit_bound: bool


class GapReport(BaseModel):
    measured: int
    bound: int
    holds: bool
    at_cap: bool
    m_k: int
    cap: int
    chains: int


class DecayRow(BaseModel):
    order: int
    min_valuation: int
    argmin: List[int]


class DecayReport(BaseModel):
    s: int
    N: int
    shells: List[DecayRow]


class CharsumReport(BaseModel):
    p: int
    dim: int
    r: int
    predicted_zero: bool
    value: List[int]


class TargetModel(BaseModel):
    kind: str = "field"
    e: int = 1
    modulus: Optional[List[int]] = None
    length: int = 1


class CharsumConfigModel(BaseModel):
    p: int
    dim: int
    maps: List[List[List[int]]]
    offsets: List[List[int]]
    target: TargetModel = TargetModel()
