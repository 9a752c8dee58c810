import asyncio
import logging
import os
import threading
import time
from collections import OrderedDict
from contextlib import asynccontextmanager
from fractions import Fraction
from typing import Optional

from dotenv import load_dotenv
from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from database import engine
import models
from emitters import report_to_dict, to_jsonable
from errors import ArgumentError, PolycondError, PrecisionError
from routers import api
from runlog import record_run
from scalar import DEFAULT_DIGITS, resolve_digits, working_digits
from scenarios import run_scenario
from schemas import ConditionOut, WitnessOut

# Crear tablas
models.Base.metadata.create_all(bind=engine)

load_dotenv()

logging.basicConfig(
    level=os.getenv("POLYCOND_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger("polycond.api")

# Informes ya calculados: (escenario, parámetros, dígitos) -> JSON del informe, el más antiguo sale primero
CACHE_SIZE = int(os.getenv("POLYCOND_CACHE_SIZE", "64"))
report_cache: "OrderedDict[str, dict]" = OrderedDict()
_cache_lock = threading.Lock()

# mpmath guarda la precisión en estado global: un cálculo a la vez
_compute_lock = threading.Lock()

# Informe caro que se pre-calcula al arrancar
PREWARM_SCENARIOS = [("wilkinson", {"n": 20})]


def _cache_key(name: str, params: dict, digits: int) -> str:
    return f"{name}:{digits}:{sorted(to_jsonable(params).items())}"


def _cache_get(key: str) -> Optional[dict]:
    with _cache_lock:
        report = report_cache.get(key)
        if report is not None:
            report_cache.move_to_end(key)
        return report


def _cache_put(key: str, report: dict) -> None:
    with _cache_lock:
        report_cache[key] = report
        report_cache.move_to_end(key)
        while len(report_cache) > CACHE_SIZE:
            report_cache.popitem(last=False)


def compute_report(name: str, params: dict, source: str = "api") -> dict:
    """Ejecuta (o recupera de cache) un escenario y registra la ejecución."""
    # Nunca se lee mp.dps aquí: otra petición puede tenerlo cambiado
    requested = params.get("digits")
    digits = DEFAULT_DIGITS if requested is None else resolve_digits(requested)
    key = _cache_key(name, params, digits)
    cached = _cache_get(key)
    if cached is not None:
        logger.info(f"✓ Informe desde cache: {key}")
        return cached

    logged = to_jsonable({k: v for k, v in params.items() if v is not None})
    start = time.perf_counter()
    try:
        with _compute_lock, working_digits(digits):
            report = report_to_dict(run_scenario(name, params))
    except PolycondError as e:
        record_run(name, logged, digits=digits, status="error", error=str(e), source=source)
        raise
    duration_ms = int((time.perf_counter() - start) * 1000)
    record_run(name, logged, report["summary"], digits, duration_ms, source=source)
    _cache_put(key, report)
    return report


def _http_error(e: PolycondError) -> HTTPException:
    if isinstance(e, PrecisionError):
        return HTTPException(status_code=422, detail=f"{e} {e.advice}")
    if isinstance(e, ArgumentError):
        return HTTPException(status_code=422, detail=str(e))
    return HTTPException(status_code=400, detail=str(e))


@asynccontextmanager
async def lifespan(app_instance: FastAPI):
    """Pre-calcular los informes caros al iniciar para respuesta instantánea"""

    async def prewarm():
        if os.getenv("POLYCOND_PREWARM", "true").lower() == "false":
            logger.info("⚠️ Pre-cálculo desactivado")
            return

        logger.info("⚡ Pre-calculando informes en background...")
        for name, params in PREWARM_SCENARIOS:
            try:
                await asyncio.to_thread(compute_report, name, params, "prewarm")
            except PolycondError as e:
                logger.warning(f"  ✗ Error: {name} {params} - {e}")
        logger.info("✅ Pre-cálculo completado")

    # Lanzar en background SIN esperar
    asyncio.create_task(prewarm())

    yield


app = FastAPI(title="polycond", lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=os.getenv("CORS_ORIGINS", "http://localhost:4200").split(","),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Incluir routers
app.include_router(api.router)


@app.get("/")
def root():
    return {"message": "Laboratorio de condicionamiento de polinomios 📈"}


@app.post("/scenarios/{name}")
async def scenario(name: str, params: dict = Body(default={})):
    """Ejecuta un escenario con los parámetros del cuerpo JSON; devuelve el mismo JSON que la CLI"""
    try:
        return await asyncio.to_thread(compute_report, name, params)
    except PolycondError as e:
        raise _http_error(e) from e


@app.get("/condition", response_model=ConditionOut)
def condition(poly: str = Query("wilkinson20"), x: str = Query(...)):
    """B(x) de un polinomio con nombre; A(r) y B(r)/|p'(r)| si x es una raíz"""
    try:
        summary = compute_report("condition", {"poly": poly, "x": Fraction(x)})["summary"]
    except (ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=422, detail=f"x inválido: {x}") from e
    except PolycondError as e:
        raise _http_error(e) from e
    return ConditionOut(poly=poly, x=x, **summary)


@app.get("/witness", response_model=WitnessOut)
def witness(poly: str = Query("wilkinson20"), re: str = Query(...), im: str = Query("0"),
            digits: Optional[int] = Query(None)):
    """Indicador |p(z)|/B(z) y perturbación testigo en z = re + i·im"""
    try:
        params = {"poly": poly, "re": Fraction(re), "im": Fraction(im), "digits": digits}
        summary = compute_report("witness", params)["summary"]
    except (ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=422, detail=f"z inválido: {re}+{im}i") from e
    except PolycondError as e:
        raise _http_error(e) from e
    return WitnessOut(poly=poly, re=re, im=im, **summary)
