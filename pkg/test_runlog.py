"""
Pruebas del registro de ejecuciones
"""
from unittest.mock import patch

from sqlalchemy.exc import OperationalError

import models
from database import SessionLocal
from inspect_db import ver_ejecuciones
from runlog import record_run


def test_record_run_persists_parameters_and_summary():
    run_id = record_run("wilkinson", {"n": 20}, {"argmax_root": 15, "ε": "1e-14"}, digits=60, duration_ms=12)
    assert run_id is not None
    db = SessionLocal()
    try:
        run = db.get(models.ScenarioRun, run_id)
        assert run.scenario == "wilkinson"
        assert run.parameters == {"n": 20}
        assert run.summary["argmax_root"] == 15
        assert run.status == "ok"
        assert run.source == "cli"
    finally:
        db.close()


def test_record_run_disabled(monkeypatch):
    monkeypatch.setenv("ENABLE_RUN_LOG", "false")
    assert record_run("wilkinson", {"n": 20}) is None


def test_record_run_failure_only_warns(caplog):
    with patch("runlog.init_run_log", side_effect=OperationalError("INSERT", {}, Exception("bloqueada"))):
        assert record_run("wilkinson", {"n": 20}) is None
    assert "No se pudo registrar" in caplog.text


def test_ver_ejecuciones(capsys):
    record_run("condition", {"poly": "wilkinson20", "x": 15}, status="error", error="Raíz múltiple")
    ver_ejecuciones(limite=1)
    out = capsys.readouterr().out
    assert "condition" in out
    assert "Raíz múltiple" in out
