"""Command-line front end.

    phototopo --task models
    phototopo --task table1 --out out/
    phototopo --task figure --figure fig3 --out out/fig3
    phototopo --config run.json --out out/

A config file is JSON with the keys of :class:`ExperimentConfig`; command-line
flags override it.  Every run writes ``results.json`` (plus ``spectra.csv``,
``profiles.csv`` and a plot script when there are arrays to show).  The
``metadata.config`` block of ``results.json`` is a complete config: feeding it
back reproduces the run.

Exit codes: 0 success, 1 domain error, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import inspect
import json
import logging
import os
import sys
import traceback
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bloch import KGrid, band_structure, gap_check
from .errors import ConfigError, TopologyError
from .experiments import FIGURES, RunResult, auto_invariant, cplx, table1
from .mediator import EmitterLayout, deformation_gap_certificate, effective_bloch
from .models import CATALOG, build, theta_symmetries
from .realspace import (
    ATOMIC,
    OPEN,
    PERIODIC,
    PHOTONIC,
    attach_emitters,
    build_bath,
    localization_score,
    skin_profile,
    spectrum_with_sectors,
)
from .symmetry import classify, find_symmetries, predict_inherited_class, symmetry_residual

TASKS = ("invariant", "classify", "mediate", "figure", "table1", "models")

# reference energy used when a config gives no omega_e: on resonance for the
# Hermitian baths, inside the point gap for the non-Hermitian ones
DEFAULT_OMEGA = {"hn": -1j, "chiral_nh_2d": -1j, "stacked_hn": -1j}


def _strict(cls, data, where):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")
    return cls(**data)


def _complex(value, where) -> complex:
    if isinstance(value, dict):
        if set(value) - {"re", "im"}:
            raise ConfigError(f"{where}: complex values take keys re, im")
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ConfigError(f"{where}: expected a number or {{re, im}}")


@dataclass
class ModelConfig:
    name: str = ""
    params: dict = field(default_factory=dict)

    def validate(self):
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError("model.name must be a non-empty string")
        if self.name not in CATALOG:
            raise ConfigError(f"model.name: unknown model {self.name!r}; known: {sorted(CATALOG)}")
        unknown = sorted(set(self.params) - set(CATALOG[self.name][1]))
        if unknown:
            raise ConfigError(f"model.params: unknown parameters {unknown} for {self.name}")


@dataclass
class LayoutConfig:
    pi: list | None = None
    omega_e: object = None
    g: float = 0.1
    d: int = 0


@dataclass
class RealspaceConfig:
    n_cells: int = 30
    bc: str = PERIODIC

    def validate(self):
        if self.bc not in (OPEN, PERIODIC):
            raise ConfigError(f"realspace.bc must be {OPEN!r} or {PERIODIC!r}")
        if not isinstance(self.n_cells, int) or self.n_cells < 2:
            raise ConfigError("realspace.n_cells must be an integer >= 2")


@dataclass
class FigureConfig:
    name: str = ""
    params: dict = field(default_factory=dict)

    def validate(self):
        if self.name not in FIGURES:
            raise ConfigError(f"figure.name must be one of {sorted(FIGURES)}")
        accepted = set(inspect.signature(FIGURES[self.name]).parameters)
        unknown = sorted(set(self.params) - accepted)
        if unknown:
            raise ConfigError(f"figure.params: unknown parameters {unknown} for {self.name}")


@dataclass
class ExperimentConfig:
    task: str = "invariant"
    model: ModelConfig | None = None
    layout: LayoutConfig | None = None
    grid: int | None = None
    realspace: RealspaceConfig | None = None
    figure: FigureConfig | None = None
    seed: int = 0
    output: str = "out"

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        cfg = _strict(cls, data, "config")
        for key, sub in (("model", ModelConfig), ("layout", LayoutConfig), ("realspace", RealspaceConfig)):
            val = getattr(cfg, key)
            if val is not None and not isinstance(val, sub):
                setattr(cfg, key, _strict(sub, val, key))
        if isinstance(cfg.figure, str):
            cfg.figure = FigureConfig(cfg.figure)
        elif cfg.figure is not None and not isinstance(cfg.figure, FigureConfig):
            cfg.figure = _strict(FigureConfig, cfg.figure, "figure")
        cfg.validate()
        return cfg

    def validate(self):
        if self.task not in TASKS:
            raise ConfigError(f"task must be one of {TASKS}")
        if self.grid is not None and (not isinstance(self.grid, int) or self.grid < 8):
            raise ConfigError("grid must be an integer >= 8")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        if self.task in ("invariant", "classify", "mediate"):
            if self.model is None:
                raise ConfigError(f"task {self.task} needs a model")
            self.model.validate()
        if self.task == "figure":
            if self.figure is None:
                raise ConfigError("task figure needs figure.name")
            self.figure.validate()
        if self.realspace is not None:
            self.realspace.validate()

    def to_dict(self) -> dict:
        return _jsonable(dataclasses.asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return cplx(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


# -- task helpers -------------------------------------------------------------


def _model(cfg):
    return build(cfg.model.name, **cfg.model.params)


def _layout(cfg, model) -> EmitterLayout:
    lc = cfg.layout or LayoutConfig()
    pi = lc.pi if lc.pi is not None else model.meta.get("emitter_pi", (1,) * model.n_bands)
    w = DEFAULT_OMEGA.get(cfg.model.name, 0.0) if lc.omega_e is None else _complex(lc.omega_e, "layout.omega_e")
    try:
        return EmitterLayout(tuple(pi), w, float(lc.g), int(lc.d))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"layout: {exc}") from exc


def _grid(cfg, dim):
    return KGrid(cfg.grid, dim) if cfg.grid else KGrid.default(dim)


def _candidates(cfg):
    if cfg.model.name == "theta":
        return theta_symmetries(cfg.model.params.get("theta", 0.0))
    return ()


def _label_dict(label):
    ops = []
    for flavor, sign in sorted(label.present, key=lambda p: (p[0], p[1] or 0)):
        ops.append({"flavor": flavor, "square_sign": sign})
    return {"label": str(label), "variant": label.variant, "symmetries": ops}


def task_invariant(cfg) -> RunResult:
    bath = _model(cfg)
    layout = _layout(cfg, bath)
    grid = _grid(cfg, bath.dim)
    out = {"bath": auto_invariant(bath, layout.omega_e, grid).to_dict()}
    ha = effective_bloch(bath, layout, grid)
    out["mediated"] = auto_invariant(ha, layout.omega_e, grid).to_dict()
    out["weak_coupling"] = ha.meta["weak_coupling"]
    return RunResult("invariant", out)


def task_classify(cfg) -> RunResult:
    bath = _model(cfg)
    layout = _layout(cfg, bath)
    grid = KGrid(16, bath.dim)
    out = {}
    label = classify(bath, _candidates(cfg), grid=grid)
    found = find_symmetries(bath, label.variant, _candidates(cfg), bath.n_bands in (1, 2, 4), grid)
    out["bath"] = {
        **_label_dict(label),
        "residuals": [
            {"flavor": op.flavor, "unitary": op.unitary, "residual": symmetry_residual(bath, op, grid)}
            for op in found
        ],
    }
    ha = effective_bloch(bath, layout)
    if layout.is_identity:
        out["predicted"] = str(predict_inherited_class(label, layout.omega_e))
    # mediated class is judged in the bath's convention (AZ or AZ dagger)
    out["mediated"] = _label_dict(classify(ha, variant=label.variant, grid=grid))
    return RunResult("classify", out)


def task_mediate(cfg) -> RunResult:
    bath = _model(cfg)
    layout = _layout(cfg, bath)
    grid = _grid(cfg, bath.dim)
    ha = effective_bloch(bath, layout, grid)
    gap = gap_check(bath, grid, layout.omega_e, kind="point")
    out = {
        "omega_e": cplx(layout.omega_e),
        "g": layout.g,
        "bath_gap": gap.min_distance,
        "weak_coupling": ha.meta["weak_coupling"],
    }
    if layout.is_identity:
        cert = deformation_gap_certificate(bath, layout, raise_on_failure=False)
        out["certificate"] = {"passed": cert.passed, "worst_rel_error": cert.worst_rel_error}
    bs_grid = KGrid(cfg.grid or (128 if bath.dim == 1 else 32), bath.dim)
    E = band_structure(ha, bs_grid).energies.reshape(-1, ha.n_bands)
    ks = bs_grid.nodes
    spectra = []
    for i, (k, row) in enumerate(zip(ks, E)):
        for b, e in enumerate(row):
            spectra.append({"index": i, "k": " ".join(f"{x:.12g}" for x in k), "band": b, "re": e.real, "im": e.imag})
    profiles = []
    if cfg.realspace is not None:
        rs = cfg.realspace
        system = attach_emitters(build_bath(bath, rs.n_cells, rs.bc), layout)
        spec = spectrum_with_sectors(system)
        spectra = []
        pos = system.positions()
        for i, (e, s) in enumerate(zip(spec.energies, spec.sectors)):
            mask = system.sector_mask(s)
            wt = np.abs(spec.vectors[mask, i]) ** 2
            score = localization_score(wt, pos[mask]) if wt.sum() > 0 else 0.0
            spectra.append({"index": i, "re": e.real, "im": e.imag, "sector": s, "score": score})
        for sector in (PHOTONIC, ATOMIC):
            if not np.any(spec.sectors == sector):
                continue
            prof = skin_profile(system, sector, spec)
            profiles += [
                {"sector": sector, "site": float(x), "value": float(v)}
                for x, v in zip(prof.positions, prof.weights)
            ]
            out[f"{sector.lower()}_states"] = int(np.sum(spec.sectors == sector))
            out[f"{sector.lower()}_score"] = localization_score(prof.weights, prof.positions)
    return RunResult("mediate", out, spectra, profiles)


def task_figure(cfg) -> RunResult:
    return FIGURES[cfg.figure.name](**cfg.figure.params)


def task_table1(cfg) -> RunResult:
    return table1(grid_m=cfg.grid)


def list_models() -> dict:
    """The model catalog with default parameters."""
    return {name: dict(defaults) for name, (_, defaults) in CATALOG.items()}


# -- artifacts ----------------------------------------------------------------


def _write_csv(path, rows):
    fields = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v) for k, v in r.items()})


def write_artifacts(cfg: ExperimentConfig, result: RunResult, out_dir: str) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    doc = {
        "metadata": {"config": cfg.to_dict(), "package": "phototopo", "version": __version__},
        "task": cfg.task,
        "name": result.name,
        "results": _jsonable(result.summary),
    }
    with open(os.path.join(out_dir, "results.json"), "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if result.spectra:
        _write_csv(os.path.join(out_dir, "spectra.csv"), result.spectra)
    if result.profiles:
        _write_csv(os.path.join(out_dir, "profiles.csv"), result.profiles)
    if result.plot_script:
        with open(os.path.join(out_dir, f"plot_{result.name}.py"), "w") as fh:
            fh.write(result.plot_script)
    return doc


RUNNERS = {
    "invariant": task_invariant,
    "classify": task_classify,
    "mediate": task_mediate,
    "figure": task_figure,
    "table1": task_table1,
}


def run(cfg: ExperimentConfig, out_dir: str | None = None) -> dict:
    """Execute a validated config and write its artifacts; returns the results document."""
    np.random.seed(cfg.seed)
    result = RUNNERS[cfg.task](cfg)
    return write_artifacts(cfg, result, out_dir or cfg.output)


def _parser():
    p = argparse.ArgumentParser(prog="phototopo", description=__doc__.split("\n")[0])
    p.add_argument("--config", metavar="PATH", help="JSON experiment config")
    p.add_argument("--task", choices=TASKS)
    p.add_argument("--figure", choices=sorted(FIGURES), help="figure recipe for --task figure")
    p.add_argument("--model", help="catalog model name")
    p.add_argument("--out", metavar="DIR", help="output directory")
    p.add_argument("--grid", type=int, metavar="M", help="k points per axis")
    p.add_argument("--seed", type=int, metavar="N", help="reserved; recorded in the metadata")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _origin(exc) -> tuple:
    """Innermost package module and function on the traceback."""
    where = ("", "")
    for frame in traceback.extract_tb(exc.__traceback__):
        mod = os.path.splitext(os.path.basename(frame.filename))[0]
        if f"{os.sep}phototopo{os.sep}" in frame.filename and mod not in ("errors", "cli"):
            where = (f"phototopo.{mod}", frame.name)
    return where


def _error(kind, exc, code):
    module, function = _origin(exc)
    report = {
        "error": kind,
        "type": type(exc).__name__,
        "module": module,
        "function": function,
        "message": str(exc),
    }
    print(json.dumps(report, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        data = {}
        if args.config:
            with open(args.config) as fh:
                data = json.load(fh)
            if isinstance(data, dict) and "metadata" in data and "config" in data["metadata"]:
                data = data["metadata"]["config"]  # re-run from an emitted results.json
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        for key in ("task", "grid", "seed"):
            if getattr(args, key) is not None:
                data[key] = getattr(args, key)
        if args.out:
            data["output"] = args.out
        if args.figure:
            data["figure"] = {**(data.get("figure") or {}), "name": args.figure}
            data.setdefault("task", "figure")
        if args.model is not None:
            data["model"] = {**(data.get("model") or {}), "name": args.model}
        if data.get("task") == "models":
            print(json.dumps(list_models(), sort_keys=True, indent=2))
            return 0
        cfg = ExperimentConfig.from_dict(data)
    except (ConfigError, OSError, json.JSONDecodeError, TypeError) as exc:
        return _error("config", exc, 2)
    try:
        doc = run(cfg)
    except TopologyError as exc:
        return _error("domain", exc, 1)
    except (ValueError, KeyError) as exc:
        return _error("config", exc, 2)
    if cfg.task == "table1":
        for row in doc["results"]["rows"]:
            print(
                f"{row['model']:<14} D={row['dim']} h={int(row['hermitian'])} "
                f"nu_p={row['nu_p']['value']:+d} nu_a={row['nu_a']['value']:+d} "
                f"sign={row['predicted_sign']:+d} {'PASS' if row['pass'] else 'FAIL'}"
            )
    else:
        print(json.dumps(doc["results"], sort_keys=True, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
