from pydantic import BaseModel
from typing import List, Optional


class FieldSpecModel(BaseModel):
    p: int
    e: int = 1
    modulus: Optional[List[int]] = None


class FqElemModel(BaseModel):
    coords: List[int]


class ExtensionModel(BaseModel):
    e: int
    modulus: List[int]
    image_of_xi: List[int]


class FieldInfoModel(BaseModel):
    p: int
    e: int
    q: int
    modulus: List[int]
    generator: List[int]
    extension: Optional[ExtensionModel] = None
