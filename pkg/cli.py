"""
Línea de comandos de polycond.

    python cli.py wilkinson --n 20 --format json
    python cli.py runge-cheb --degrees 5
    python cli.py pseudozeros --poly wilkinson20 --levels 1e-14,1e-18 --format svg --out w20.svg

Códigos de salida: 0 éxito, 2 argumentos inválidos, 3 precisión insuficiente, 1 otros errores.
"""
import argparse
import logging
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from emitters import OutputFormat, RenderSpec, report_to_dict, to_jsonable, write_report
from errors import ArgumentError, PolycondError, PrecisionError
from polynomial import SCALED_TARGETS
from pseudozeros import parse_grid
from runlog import record_run
from scalar import exact, resolve_digits, working_digits
from scenarios import SCENARIOS, run_scenario

load_dotenv()

logger = logging.getLogger("polycond.cli")


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=(level or os.getenv("POLYCOND_LOG_LEVEL", "INFO")).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _comma_list(cast):
    def parse(text: str) -> list:
        try:
            return [cast(v.strip()) for v in text.split(",") if v.strip()]
        except (ValueError, ArgumentError) as e:
            raise argparse.ArgumentTypeError(f"lista inválida: {text!r}") from e
    return parse


def _grid(text: str) -> tuple:
    try:
        return parse_grid(text)
    except ArgumentError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _exact(text: str) -> Fraction:
    try:
        return exact(text)
    except ArgumentError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


_COMPLEX = re.compile(r"^\s*([+-]?[\d./eE]+)?\s*(?:([+-])\s*([\d./eE]*)\s*[ij])?\s*$")


def parse_complex(text: str) -> tuple:
    """'3-1.5i' -> (3, -3/2) como racionales exactos."""
    match = _COMPLEX.match(text)
    if not match or not text.strip():
        raise argparse.ArgumentTypeError(f"número complejo inválido: {text!r}")
    real, sign, imag = match.groups()
    try:
        re_part = exact(real) if real else Fraction(0)
        im_part = Fraction(0)
        if sign:
            im_part = exact(imag) if imag else Fraction(1)
            im_part = -im_part if sign == "-" else im_part
    except ArgumentError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    return re_part, im_part


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, help="dígitos decimales de trabajo (POLYCOND_DIGITS)")
    common.add_argument("--samples", type=int, help="muestras por curva (POLYCOND_SAMPLES)")
    common.add_argument("--grid", type=_grid, help="malla de pseudoceros NXxNY (POLYCOND_GRID)")
    common.add_argument("--levels", type=_comma_list(_exact), help="niveles ε separados por comas, decrecientes")
    common.add_argument("--region", type=_comma_list(_exact), help="re0,re1,im0,im1")
    common.add_argument("--degrees", type=_comma_list(int), help="grados separados por comas")
    common.add_argument("--out", type=Path, help="archivo de salida (stdout si se omite)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    common.add_argument("--seed", type=int, default=int(os.getenv("POLYCOND_SEED", "0")),
                        help="semilla de los sorteos aleatorios (condition --draws)")
    common.add_argument("--workers", type=int, help="procesos para curvas y mallas (POLYCOND_WORKERS)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="polycond", description="Laboratorio de condicionamiento de polinomios")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(SCENARIOS) + "}")

    sub.add_parser("runge-equi", parents=[common], help="Runge en nodos equiespaciados (racionales exactos)")
    sub.add_parser("runge-cheb", parents=[common], help="Runge en nodos de Chebyshev")
    p = sub.add_parser("wilkinson", parents=[common], help="W_N y la condición de sus raíces")
    p.add_argument("--n", type=int, default=20)
    p = sub.add_parser("wilkinson-scaled", parents=[common], help="W_N con raíces reescaladas")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--target", choices=SCALED_TARGETS, default="symmetric")
    p = sub.add_parser("second", parents=[common], help="C_N y S_N en bases monomial y Lagrange")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--no-fields", action="store_true", help="omitir los campos de pseudoceros")
    p = sub.add_parser("bernstein", parents=[common], help="C_N y S_N en monomial, Lagrange y Bernstein")
    p.add_argument("--n", type=int, default=20)
    p = sub.add_parser("pseudozeros", parents=[common], help="contornos de ε-pseudoceros")
    p.add_argument("--poly", default="wilkinson20")
    p = sub.add_parser("condition", parents=[common], help="B(x) (y A(r) en una raíz) en un punto")
    p.add_argument("--poly", default="wilkinson20")
    p.add_argument("--x", type=_exact, required=True)
    p.add_argument("--draws", type=int, default=0, help="perturbaciones aleatorias para comprobar |Δp(x)| <= B(x) ε")
    p.add_argument("--epsilon", type=_exact, default=Fraction(1, 10 ** 10))
    p = sub.add_parser("witness", parents=[common], help="indicador y perturbación testigo en z")
    p.add_argument("--poly", default="wilkinson20")
    p.add_argument("--z", type=parse_complex, required=True)
    return parser


def scenario_params(args: argparse.Namespace) -> dict:
    """Traduce las banderas de la CLI a los parámetros de cada escenario."""
    command = args.command
    params = {"samples": args.samples, "workers": args.workers}
    if command in ("runge-equi", "runge-cheb"):
        params["degrees"] = args.degrees
        if command == "runge-cheb":
            params["digits"] = args.precision
    elif command == "wilkinson":
        params["n"] = args.n
    elif command == "wilkinson-scaled":
        params.update(n=args.n, target=args.target)
    elif command == "second":
        params.update(n=args.n, resolution=args.grid, with_fields=not args.no_fields)
    elif command == "bernstein":
        params["n"] = args.n
    elif command == "pseudozeros":
        params = {"poly": args.poly, "levels": args.levels, "region": args.region,
                  "resolution": args.grid, "digits": args.precision, "workers": args.workers}
    elif command == "condition":
        params = {"poly": args.poly, "x": args.x, "draws": args.draws, "seed": args.seed, "epsilon": args.epsilon}
    elif command == "witness":
        re_part, im_part = args.z
        params = {"poly": args.poly, "re": re_part, "im": im_part, "digits": args.precision}
    return params


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging()

    params = scenario_params(args)
    logged = to_jsonable({k: v for k, v in params.items() if v is not None})
    start = time.perf_counter()
    try:
        digits = resolve_digits(args.precision)
        with working_digits(digits):
            report = run_scenario(args.command, params)
            spec = RenderSpec(format=OutputFormat(args.format), out=args.out)
            write_report(report, spec)
    except PrecisionError as e:
        print(f"❌ {e}\n{e.advice}", file=sys.stderr)
        record_run(args.command, logged, status="error", error=str(e))
        return e.exit_code
    except PolycondError as e:
        print(f"❌ {e}", file=sys.stderr)
        record_run(args.command, logged, status="error", error=str(e))
        return e.exit_code
    duration_ms = int((time.perf_counter() - start) * 1000)
    record_run(args.command, logged, report_to_dict(report)["summary"], digits, duration_ms)
    return 0


if __name__ == "__main__":
    sys.exit(cli_main())
