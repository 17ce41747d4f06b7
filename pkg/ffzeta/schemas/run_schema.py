from pydantic import BaseModel
from typing import Any, Dict, Optional
from enum import Enum

from .field_schema import FieldSpecModel


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    field: FieldSpecModel
    command: str
    args: Dict[str, Any]
    format: OutputFormat = OutputFormat.JSON
    cache: Optional[str] = None
    seed: int = 0
    budget: Optional[int] = None
