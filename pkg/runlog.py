"""Registro persistente de cada escenario ejecutado (CLI o API)."""
import logging
import os
from typing import Optional

from dotenv import load_dotenv
from sqlalchemy.exc import SQLAlchemyError

import models
from database import SessionLocal, engine

load_dotenv()

logger = logging.getLogger("polycond.runlog")


def run_log_enabled() -> bool:
    return os.getenv("ENABLE_RUN_LOG", "true").lower() == "true"


def init_run_log() -> None:
    models.Base.metadata.create_all(bind=engine)


def record_run(
    scenario: str,
    parameters: dict,
    summary: Optional[dict] = None,
    digits: Optional[int] = None,
    duration_ms: Optional[int] = None,
    status: str = "ok",
    error: Optional[str] = None,
    source: str = "cli",
) -> Optional[int]:
    """Guarda la ejecución; un fallo de escritura sólo se avisa, nunca tumba el cálculo."""
    if not run_log_enabled():
        return None
    db = SessionLocal()
    try:
        init_run_log()
        run = models.ScenarioRun(
            scenario=scenario,
            source=source,
            parameters=parameters,
            summary=summary or {},
            digits=digits,
            duration_ms=duration_ms,
            status=status,
            error=error,
        )
        db.add(run)
        db.commit()
        db.refresh(run)
        logger.debug(f"💾 Ejecución {run.id} registrada ({scenario}, {status})")
        return run.id
    except SQLAlchemyError as e:
        db.rollback()
        logger.warning(f"⚠️ No se pudo registrar la ejecución de {scenario}: {e}")
        return None
    finally:
        db.close()
