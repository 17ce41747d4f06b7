from pydantic import BaseModel
from typing import Any, List, Union


class APolyModel(BaseModel):
    coeffs: List[Union[List[int], int]]


class TermModel(BaseModel):
    exp: List[int]
    coeff: Any


class MPolyModel(BaseModel):
    vars: List[str]
    ring: str
    terms: List[TermModel]


class APolyListModel(BaseModel):
    degree: int
    count: int
    polys: List[APolyModel]
