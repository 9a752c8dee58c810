"""
Salidas de los informes: CSV, JSON y SVG. Son funciones puras del informe:
el mismo informe produce exactamente los mismos bytes.
"""
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import mpmath  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from errors import ArgumentError, OutputError  # noqa: E402
from scalar import to_float  # noqa: E402
from scenarios import ScenarioReport  # noqa: E402

logger = logging.getLogger("polycond.emitters")

SCHEMA_VERSION = 1
CURVE_HEADER = ("series", "x", "log10_value")
CONTOUR_HEADER = ("series", "level", "vertex_index", "re", "im")
# Salida SVG estable: ids con sal fija y texto como <text>
SVG_RC = {"svg.hashsalt": "polycond", "svg.fonttype": "none"}


class OutputFormat(str, Enum):
    CSV = "csv"
    SVG = "svg"
    JSON = "json"


@dataclass(frozen=True)
class RenderSpec:
    format: OutputFormat = OutputFormat.CSV
    log_scale: bool = True
    width: int = 900
    height: int = 560
    out: Optional[Path] = None

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ArgumentError(f"Lienzo de tamaño nulo: {self.width}x{self.height}")


def _num(value) -> str:
    """17 cifras significativas: el CSV sobrevive a leer y volver a emitir."""
    v = to_float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def emit_csv(report: ScenarioReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for curve in sorted(report.curves, key=lambda c: c.label):
        for x, v in zip(curve.abscissae, curve.values_log10):
            writer.writerow((curve.label, _num(x), _num(v)))
    if report.fields:
        writer.writerow(CONTOUR_HEADER)
        for pz in report.fields:
            for level in pz.levels:
                for i, line in enumerate(pz.contours.get(level, ())):
                    series = f"{pz.label}#{i}"
                    for j, (re, im) in enumerate(line):
                        writer.writerow((series, _num(level), j, _num(re), _num(im)))
    return buffer.getvalue()


def to_jsonable(value):
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, type(None), str)):
        return value
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, mpmath.mpc):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    v = float(value)
    return v if math.isfinite(v) else None


def report_to_dict(report: ScenarioReport) -> dict:
    """Espejo 1:1 de ScenarioReport; -inf pasa a null."""
    return {
        "polycond_schema": SCHEMA_VERSION,
        "name": report.name,
        "parameters": to_jsonable(report.parameters),
        "summary": to_jsonable(report.summary),
        "curves": [
            {"label": c.label, "x": to_jsonable(c.abscissae), "log10_value": to_jsonable(c.values_log10)}
            for c in report.curves
        ],
        "fields": [
            {
                "label": pz.label,
                "region": to_jsonable(pz.region),
                "resolution": list(pz.resolution),
                "digits": pz.digits,
                "levels": [_num(level) for level in pz.levels],
                "contours": {_num(level): to_jsonable(lines) for level, lines in pz.contours.items()},
                "interior_points": int(pz.interior.sum()) if pz.interior is not None else 0,
            }
            for pz in report.fields
        ],
    }


def emit_json(report: ScenarioReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, ensure_ascii=False, indent=2, allow_nan=False) + "\n"


def emit_svg(report: ScenarioReport, spec: RenderSpec) -> str:
    """Curvas en un eje log10 y un panel por campo de pseudoceros con el interior relleno."""
    panels = (1 if report.curves else 0) + len(report.fields)
    if panels == 0:
        panels = 1
    with matplotlib.rc_context(SVG_RC):
        return _draw_svg(report, spec, panels)


def _draw_svg(report: ScenarioReport, spec: RenderSpec, panels: int) -> str:
    fig = Figure(figsize=(spec.width * panels / 100, spec.height / 100), dpi=100)
    axes = fig.subplots(1, panels, squeeze=False)[0]
    index = 0
    if report.curves:
        ax = axes[0]
        for curve in report.curves:
            xs = np.array([to_float(x) for x in curve.abscissae])
            ys = np.array(curve.values_log10, dtype=float)
            ys[np.isneginf(ys)] = np.nan
            if not spec.log_scale:
                with np.errstate(over="ignore"):
                    ys = np.power(10.0, ys)
            ax.plot(xs, ys, linewidth=1.0, label=curve.label)
        ax.set_xlabel("x")
        ax.set_ylabel("log10 B" if spec.log_scale else "B")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
        ax.set_title(report.name)
        index = 1
    for pz, ax in zip(report.fields, axes[index:]):
        re, im = pz.re_axis, pz.im_axis
        if pz.interior is not None and pz.interior.any():
            ax.contourf(re, im, pz.interior.astype(float), levels=[0.5, 1.5], colors="black")
        colors = matplotlib.colormaps["viridis"](np.linspace(0, 0.9, max(1, len(pz.levels))))
        for color, level in zip(colors, pz.levels):
            for k, line in enumerate(pz.contours.get(level, ())):
                ax.plot(line[:, 0], line[:, 1], color=color, linewidth=0.8,
                        label=f"ε = {_num(level)}" if k == 0 else None)
        ax.set_xlim(re[0], re[-1])
        ax.set_ylim(im[0], im[-1])
        ax.set_aspect("equal", adjustable="box")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.set_title(pz.label)
        ax.legend(fontsize="small", loc="upper right")
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def render(report: ScenarioReport, spec: RenderSpec) -> str:
    fmt = OutputFormat(spec.format)
    if fmt is OutputFormat.JSON:
        return emit_json(report)
    if fmt is OutputFormat.SVG:
        return emit_svg(report, spec)
    return emit_csv(report)


def write_report(report: ScenarioReport, spec: RenderSpec) -> Optional[Path]:
    """Escribe en ``spec.out`` o en stdout si no hay ruta."""
    text = render(report, spec)
    if spec.out is None:
        sys.stdout.write(text)
        return None
    try:
        path = Path(spec.out)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"No se pudo escribir {spec.out}: {e}") from e
    logger.info(f"✅ Informe {report.name} escrito en {path} ({OutputFormat(spec.format).value})")
    return path
