"""CSV/JSON serialization of sweep results.

Formats are pinned for byte-identical reproducibility: comma-separated CSV
with a header row, LF line endings, UTF-8, '.' decimals, floats at 17
significant digits (lossless round trip for float64); JSON objects are
emitted with sorted keys and two-space indentation.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path

from .metrics import MetricsSample
from .sweep import Curve, SweepConfig, SweepResult

__all__ = [
    "PANELS",
    "figure_file_names",
    "format_float",
    "manifest_object",
    "sweep_csv_text",
    "sweep_json_text",
    "write_figure_files",
]

BASE_COLUMNS = ("label", "xi1", "xi2", "xic", "temperature", "tau")
MAIN_COLUMNS = ("ergotropy", "power", "capacity", "coherence_l1")
ORACLE_COLUMNS = ("ergotropy_numeric", "power_fd", "capacity_definitional")

# panel letter -> (title metric column, oracle companion column)
PANELS = (
    ("a", "ergotropy", "ergotropy_numeric"),
    ("b", "power", "power_fd"),
    ("c", "capacity", "capacity_definitional"),
    ("d", "coherence_l1", None),
)


def format_float(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


def _main_values(curve: Curve, sample: MetricsSample, mode: str) -> dict:
    if mode == "oracle-only":
        return {
            "ergotropy": sample.ergotropy_numeric,
            "power": sample.power_fd,
            "capacity": None if sample.flag else curve.summary.capacity,
            "coherence_l1": sample.coherence_l1,
        }
    return {
        "ergotropy": sample.ergotropy_closed,
        "power": sample.power_closed,
        "capacity": sample.capacity_closed,
        "coherence_l1": sample.coherence_l1,
    }


def _row(curve: Curve, sample: MetricsSample, mode: str, columns) -> list[str]:
    p = curve.params
    named = {
        "label": curve.label,
        "xi1": format_float(p.xi1),
        "xi2": format_float(p.xi2),
        "xic": format_float(p.xic),
        "temperature": format_float(p.temperature),
        "tau": format_float(sample.tau),
        "flag": sample.flag,
    }
    main = _main_values(curve, sample, mode)
    for name in MAIN_COLUMNS:
        named[name] = format_float(main[name])
    for name in ORACLE_COLUMNS:
        named[name] = format_float(getattr(sample, name))
    return [named[c] for c in columns]


def _columns(metric_columns, include_oracle: bool, oracle_columns) -> tuple[str, ...]:
    cols = BASE_COLUMNS + tuple(metric_columns)
    if include_oracle:
        cols += tuple(oracle_columns)
    return cols + ("flag",)


def sweep_csv_text(result: SweepResult, include_oracle: bool = False) -> str:
    """Full sweep as one CSV document (all main metric columns)."""
    columns = _columns(MAIN_COLUMNS, include_oracle, ORACLE_COLUMNS)
    lines = [",".join(columns)]
    for curve in result.curves:
        for sample in curve.samples:
            lines.append(",".join(_row(curve, sample, result.config.mode, columns)))
    return "\n".join(lines) + "\n"


def panel_csv_text(result: SweepResult, metric: str, oracle: str | None,
                   include_oracle: bool) -> str:
    columns = _columns((metric,), include_oracle and oracle is not None,
                       (oracle,) if oracle else ())
    lines = [",".join(columns)]
    for curve in result.curves:
        for sample in curve.samples:
            lines.append(",".join(_row(curve, sample, result.config.mode, columns)))
    return "\n".join(lines) + "\n"


def _params_object(p) -> dict:
    return {k: v for k, v in dataclasses.asdict(p).items()}


def config_object(cfg: SweepConfig) -> dict:
    return {
        "base": _params_object(cfg.base),
        "varied": [[name, list(values)] for name, values in cfg.varied],
        "tau_start": cfg.tau_start,
        "tau_stop": cfg.tau_stop,
        "tau_count": cfg.tau_count,
        "metrics": list(cfg.metrics),
        "mode": cfg.mode,
    }


def _sample_object(curve: Curve, sample: MetricsSample, mode: str) -> dict:
    obj = {"tau": sample.tau, "flag": sample.flag}
    obj.update(_main_values(curve, sample, mode))
    for name in ORACLE_COLUMNS:
        obj[name] = getattr(sample, name)
    return obj


def sweep_json_object(result: SweepResult, include_samples: bool = True) -> dict:
    obj = {
        "config": config_object(result.config),
        "provenance": result.provenance,
        "curves": [],
    }
    for curve in result.curves:
        entry = {
            "label": curve.label,
            "params": _params_object(curve.params),
            "summary": dataclasses.asdict(curve.summary),
        }
        if include_samples:
            entry["samples"] = [
                _sample_object(curve, s, result.config.mode) for s in curve.samples
            ]
        obj["curves"].append(entry)
    return obj


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sweep_json_text(result: SweepResult) -> str:
    return json_text(sweep_json_object(result))


def manifest_object(result: SweepResult, files: list[str]) -> dict:
    return {
        "config": config_object(result.config),
        "provenance": result.provenance,
        "files": files,
        "curves": [
            {
                "label": c.label,
                "params": _params_object(c.params),
                "summary": dataclasses.asdict(c.summary),
            }
            for c in result.curves
        ],
    }


def figure_file_names(name: str, fmt: str) -> list[str]:
    ext = "csv" if fmt == "csv" else "json"
    files = [f"{name}_{letter}_{metric}.{ext}" for letter, metric, _ in PANELS]
    files.append(f"{name}_manifest.json")
    return files


def write_figure_files(
    result: SweepResult,
    name: str,
    out_dir: str | Path,
    fmt: str = "csv",
    include_oracle: bool = False,
) -> list[Path]:
    """Write one data file per panel plus a manifest; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    file_names = figure_file_names(name, fmt)
    for (letter, metric, oracle), fname in zip(PANELS, file_names):
        path = out / fname
        if fmt == "csv":
            text = panel_csv_text(result, metric, oracle, include_oracle)
        else:
            obj = sweep_json_object(result, include_samples=True)
            keep = {"tau", "flag", metric}
            if include_oracle and oracle:
                keep.add(oracle)
            for curve in obj["curves"]:
                curve["samples"] = [
                    {k: v for k, v in s.items() if k in keep}
                    for s in curve["samples"]
                ]
            text = json_text(obj)
        path.write_text(text, encoding="utf-8", newline="")
        paths.append(path)
    manifest = out / file_names[-1]
    manifest.write_text(
        json_text(manifest_object(result, file_names[:-1])),
        encoding="utf-8",
        newline="",
    )
    paths.append(manifest)
    return paths
