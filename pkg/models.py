from sqlalchemy import Column, Integer, String, DateTime, Text, JSON
from sqlalchemy.sql import func
from database import Base

class ScenarioRun(Base):
    __tablename__ = "scenario_runs"

    id = Column(Integer, primary_key=True, index=True)
    scenario = Column(String, index=True)  # runge-equi, wilkinson, pseudozeros...
    source = Column(String, default="cli")  # cli | api
    parameters = Column(JSON, default={})
    summary = Column(JSON, default={})  # Estadísticas del informe (sin curvas)
    digits = Column(Integer, nullable=True)
    started_at = Column(DateTime(timezone=True), server_default=func.now())
    duration_ms = Column(Integer, nullable=True)
    status = Column(String, default="ok")  # ok | error
    error = Column(Text, nullable=True)
