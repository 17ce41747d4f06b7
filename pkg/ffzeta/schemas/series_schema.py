from pydantic import BaseModel
from typing import List, Optional, Union


class LaurentSeriesModel(BaseModel):
    val: int
    prec: int
    coeffs: List[Union[List[int], int]]


class FiniteFactorModel(BaseModel):
    point: Union[str, LaurentSeriesModel]
    frobenius: int = 0
    order: int = 0


class InfiniteFactorModel(BaseModel):
    point: LaurentSeriesModel
    neg_y_digits: List[int]
    frobenius: int = 0


class TwistedPointModel(BaseModel):
    finite: List[FiniteFactorModel] = []
    infinite: List[InfiniteFactorModel] = []
    x: Optional[LaurentSeriesModel] = None
