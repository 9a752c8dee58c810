import inspect

from fastapi import APIRouter, Depends, HTTPException, Request
from fastapi.responses import Response
from sqlalchemy.orm import Session
from typing import List, Optional
import models
from database import get_db
from scenarios import SCENARIOS
from schemas import RunOut, ScenarioInfo
import yaml

# Prefijo /api para diferenciarlo de los escenarios
router = APIRouter(prefix="/api", tags=["runs"])

@router.get("/runs", response_model=List[RunOut])
def get_runs(skip: int = 0, limit: int = 50, scenario: Optional[str] = None, db: Session = Depends(get_db)):
    """Obtener lista de ejecuciones recientes"""
    query = db.query(models.ScenarioRun)
    if scenario:
        query = query.filter(models.ScenarioRun.scenario == scenario)
    return query.order_by(models.ScenarioRun.id.desc()).offset(skip).limit(limit).all()

@router.get("/runs/{run_id}", response_model=RunOut)
def get_run_details(run_id: int, db: Session = Depends(get_db)):
    """Obtener detalles de una ejecución específica"""
    run = db.query(models.ScenarioRun).filter(models.ScenarioRun.id == run_id).first()
    if not run:
        raise HTTPException(status_code=404, detail="Ejecución no encontrada")
    return run

@router.get("/scenarios", response_model=List[ScenarioInfo])
def get_scenarios():
    """Vocabulario de escenarios con sus parámetros"""
    return [
        ScenarioInfo(
            name=name,
            description=(inspect.getdoc(runner) or "").split("\n")[0],
            parameters=list(inspect.signature(runner).parameters),
        )
        for name, runner in SCENARIOS.items()
    ]

@router.get("/openapi.yaml", tags=["Documentacion"])
def get_openapi_yaml(request: Request):
    """Descargar OpenAPI en YAML"""
    openapi_dict = request.app.openapi()
    yaml_str = yaml.safe_dump(openapi_dict, sort_keys=False, allow_unicode=True)
    headers = {"Content-Disposition": 'attachment; filename="openapi.yaml"'}
    return Response(content=yaml_str, media_type="application/x-yaml", headers=headers)
