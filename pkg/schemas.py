from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict


class ScenarioInfo(BaseModel):
    name: str
    description: str
    parameters: List[str]


class RunOut(BaseModel):
    id: int
    scenario: str
    source: Optional[str] = None
    parameters: Dict[str, Any] = {}
    summary: Dict[str, Any] = {}
    digits: Optional[int] = None
    started_at: Optional[datetime] = None
    duration_ms: Optional[int] = None
    status: str
    error: Optional[str] = None

    model_config = ConfigDict(from_attributes=True)


class ConditionOut(BaseModel):
    poly: str
    x: str
    log10_B: Optional[float] = None
    log10_A: Optional[float] = None
    log10_absolute: Optional[float] = None


class WitnessOut(BaseModel):
    poly: str
    re: str
    im: str
    log10_indicator: Optional[float] = None
    log10_relative_residual: Optional[float] = None
    delta_magnitudes_log10: List[Optional[float]] = []
