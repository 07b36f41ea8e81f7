"""Declarative probability scans over momenta, angles and delays.

A scan spec is a JSON document::

    {
      "schema_version": 1,
      "preset": "fig3",
      "scenario": "angular_vs_delay",
      "model": "bo_exact",
      "parity": "ungerade",
      "geometry": {"e_pump": [0, 0, 1], "e_probe": [0, 0, 1], "direction": [0, 0, 1]},
      "axes": [{"name": "theta_e_deg", "min": 0, "max": 180, "count": 181},
               {"name": "t_c_fs", "min": 0, "max": 80, "count": 641}],
      "fixed": {"lambda_nm": 60, "tau_fwhm_fs": 2.4, "p0": 14.8, "p_n": 14.8,
                "p_e": 0.72, "delta_r": 3.0, "r0": 12.0},
      "output": {"path": "fig3.csv", "format": "csv"}
    }

Values in the file may carry unit suffixes (``_fs``, ``_nm``, ``_deg``);
everything is converted to atomic units and radians on load.
"""

from __future__ import annotations

import copy
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .approx import approx_probability, beta_coefficients, r_n_magnitude
from .core import (
    Parity,
    PulseParams,
    WavePacketParams,
    atomic_amplitude,
    dot,
    kinematics_from_measured,
    n2_factor,
    norm,
    probability_expanded,
)
from .nonbo import n2_tilde_factor, probability_nonbo_expanded
from .units import FS_AU, fwhm_fs_to_tau_au, make_constants, wavelength_nm_to_omega

SCHEMA_VERSION = 1
CHUNK_SIZE = 4096

SCENARIOS = ("angular_vs_delay", "electron_spectrum_vs_delay", "proton_spectrum_vs_delay",
             "fixed_nuclei", "beta_trace", "custom")
MODELS = ("bo_exact", "bo_approx", "nonbo")
FORMATS = ("csv", "json")

# which variables each scenario may sweep
SWEEPABLE = {
    "angular_vs_delay": {"theta_e", "t_c"},
    "electron_spectrum_vs_delay": {"p_e", "t_c"},
    "proton_spectrum_vs_delay": {"p_1", "t_c"},
    "fixed_nuclei": {"theta_e", "p_e", "r"},
    "beta_trace": {"t_c", "p_e"},
    "custom": {"t_c", "theta_e", "p_e", "p_n", "p_1"},
}

# user-facing name -> (canonical name, factor to atomic units / radians)
_UNIT_ALIASES = {
    "t_c_fs": ("t_c", FS_AU),
    "theta_e_deg": ("theta_e", math.pi / 180),
}
_FIXED_NAMES = {"t_c", "theta_e", "p_e", "p_n", "p_1", "r", "omega", "tau", "p0",
                "delta_r", "r0", "a0", "i_p", "c_n"}
_LAB_FIXED = {"lambda_nm", "tau_fwhm_fs"}
_DEFAULTS = {"t_c": 0.0, "theta_e": 0.0, "a0": 1.0, "i_p": 0.5}

_Z = [0.0, 0.0, 1.0]
_FIG3_FIXED = {"lambda_nm": 60.0, "tau_fwhm_fs": 2.4, "p0": 14.8, "p_n": 14.8,
               "p_e": 0.72, "delta_r": 3.0, "r0": 12.0, "a0": 1.0}
_DELAY_AXIS = {"name": "t_c_fs", "min": 0.0, "max": 80.0, "count": 641}

PRESETS = {
    "fig3": {
        "scenario": "angular_vs_delay", "model": "bo_exact", "parity": "ungerade",
        "geometry": {"e_pump": _Z, "e_probe": _Z, "direction": _Z},
        "axes": [{"name": "theta_e_deg", "min": 0.0, "max": 180.0, "count": 181}, _DELAY_AXIS],
        "fixed": _FIG3_FIXED,
    },
    "fig4": {
        "scenario": "angular_vs_delay", "model": "bo_exact", "parity": "ungerade",
        "geometry": {"e_pump": _Z, "e_probe": [1.0, 0.0, 0.0], "direction": _Z},
        "axes": [{"name": "theta_e_deg", "min": 0.0, "max": 180.0, "count": 181}, _DELAY_AXIS],
        "fixed": _FIG3_FIXED,
    },
    "fig5": {
        "scenario": "electron_spectrum_vs_delay", "model": "bo_exact", "parity": "ungerade",
        "geometry": {"e_pump": _Z, "e_probe": _Z, "direction": _Z},
        "axes": [{"name": "p_e", "min": 1.8, "max": 2.7, "count": 181}, _DELAY_AXIS],
        "fixed": {**_FIG3_FIXED, "lambda_nm": 15.0, "tau_fwhm_fs": 0.24, "delta_r": 1.0,
                  "theta_e": 0.0},
    },
    "fig6": {
        "scenario": "proton_spectrum_vs_delay", "model": "bo_exact", "parity": "ungerade",
        "geometry": {"e_pump": _Z, "e_probe": _Z, "direction": _Z},
        "axes": [{"name": "p_1", "min": 13.4, "max": 15.4, "count": 201}, _DELAY_AXIS],
        "fixed": {**{k: v for k, v in _FIG3_FIXED.items() if k != "p_n"}, "theta_e": 0.0},
    },
}


class SpecError(ValueError):
    """Invalid scan spec; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True, eq=False)
class ScanSpec:
    scenario: str
    model: str
    parity: Parity
    geometry: dict
    axes: tuple
    fixed: dict
    output_path: str | None = None
    output_format: str = "csv"
    preset: str | None = None
    beta_form: str = "exact"
    schema_version: int = SCHEMA_VERSION


@dataclass(eq=False)
class ScanResult:
    columns: list
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in over.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise SpecError(path, f"expected a finite number, got {value!r}")
    return float(value)


def _unit(value, path):
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SpecError(path, "expected a 3-component vector")
    v = np.array([_number(c, f"{path}[{i}]") for i, c in enumerate(value)])
    n = np.linalg.norm(v)
    if abs(n - 1) > 1e-6:
        raise SpecError(path, f"polarization/direction vector {v.tolist()} is not a unit "
                              f"vector (|v| = {n:.6g})")
    return v / n


def _canonical(name: str, value: float):
    if name in _UNIT_ALIASES:
        canon, factor = _UNIT_ALIASES[name]
        return canon, value * factor
    return name, value


def spec_from_dict(doc: dict, preset: str | None = None) -> ScanSpec:
    """Validate a spec document, layering it over ``preset`` (or ``doc["preset"]``)."""
    if not isinstance(doc, dict):
        raise SpecError("", "spec must be a JSON object")
    preset = preset or doc.get("preset")
    user_fixed = doc.get("fixed", {})
    if preset is not None:
        if preset not in PRESETS:
            raise SpecError("preset", f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        over = dict(doc)
        # an explicit axes list replaces the preset's rather than merging
        doc = _merge(PRESETS[preset], {k: v for k, v in over.items() if k != "axes"})
        if "axes" in over:
            doc["axes"] = over["axes"]
    allowed = {"schema_version", "preset", "scenario", "model", "parity", "geometry", "axes",
               "fixed", "output", "beta_form"}
    for key in doc:
        if key not in allowed:
            raise SpecError(key, "unknown field")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SpecError("schema_version", f"unsupported version {version!r}")
    for key in ("scenario", "axes"):
        if key not in doc:
            raise SpecError(key, "required field missing")

    scenario = doc["scenario"]
    if scenario not in SCENARIOS:
        raise SpecError("scenario", f"must be one of {SCENARIOS}, got {scenario!r}")
    model = doc.get("model", "bo_exact")
    if model not in MODELS:
        raise SpecError("model", f"must be one of {MODELS}, got {model!r}")
    try:
        parity = Parity(doc.get("parity", "ungerade"))
    except ValueError:
        raise SpecError("parity", "must be 'gerade' or 'ungerade'") from None
    beta_form = doc.get("beta_form", "exact")
    if beta_form not in ("exact", "asymptotic", "printed"):
        raise SpecError("beta_form", f"unknown form {beta_form!r}")

    geom_doc = doc.get("geometry", {})
    if not isinstance(geom_doc, dict):
        raise SpecError("geometry", "expected an object")
    geometry = {}
    for key in geom_doc:
        if key not in ("e_pump", "e_probe", "direction", "e_perp"):
            raise SpecError(f"geometry.{key}", "unknown field")
    for key, default in (("e_pump", _Z), ("e_probe", _Z), ("direction", _Z)):
        geometry[key] = _unit(geom_doc.get(key, default), f"geometry.{key}")
    if "e_perp" in geom_doc:
        geometry["e_perp"] = _unit(geom_doc["e_perp"], "geometry.e_perp")

    axes_doc = doc["axes"]
    if not isinstance(axes_doc, list) or not 1 <= len(axes_doc) <= 2:
        raise SpecError("axes", "expected a list of one or two axes")
    axes = []
    for i, ax in enumerate(axes_doc):
        path = f"axes[{i}]"
        if not isinstance(ax, dict):
            raise SpecError(path, "expected an object")
        for key in ("name", "min", "max", "count"):
            if key not in ax:
                raise SpecError(f"{path}.{key}", "required field missing")
        count = ax["count"]
        if isinstance(count, bool) or not isinstance(count, int) or count < 2:
            raise SpecError(f"{path}.count", "must be an integer >= 2")
        lo, hi = _number(ax["min"], f"{path}.min"), _number(ax["max"], f"{path}.max")
        name, lo = _canonical(ax["name"], lo)
        _, hi = _canonical(ax["name"], hi)
        if name not in SWEEPABLE[scenario]:
            raise SpecError(f"{path}.name", f"{ax['name']!r} cannot be swept in scenario "
                                             f"{scenario!r}; allowed: {sorted(SWEEPABLE[scenario])}")
        axes.append(Axis(name, lo, hi, count))
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise SpecError("axes", "axis names must be distinct")

    fixed_doc = doc.get("fixed", {})
    if not isinstance(fixed_doc, dict):
        raise SpecError("fixed", "expected an object")
    fixed = dict(_DEFAULTS)
    for key, value in fixed_doc.items():
        path = f"fixed.{key}"
        value = _number(value, path)
        if key == "lambda_nm":
            if value <= 0:
                raise SpecError(path, "wavelength must be positive")
            fixed["omega"] = wavelength_nm_to_omega(value)
        elif key == "tau_fwhm_fs":
            if value <= 0:
                raise SpecError(path, "duration must be positive")
            fixed["tau"] = fwhm_fs_to_tau_au(value)
        else:
            name, value = _canonical(key, value)
            if name not in _FIXED_NAMES:
                raise SpecError(path, "unknown parameter")
            if name in names and isinstance(user_fixed, dict) and key in user_fixed:
                raise SpecError(path, f"{key!r} is also a swept axis")
            fixed[name] = value
    for name in names:
        fixed.pop(name, None)

    output = doc.get("output", {})
    if not isinstance(output, dict):
        raise SpecError("output", "expected an object")
    fmt = output.get("format", "csv")
    if fmt not in FORMATS:
        raise SpecError("output.format", f"must be one of {FORMATS}")

    spec = ScanSpec(scenario=scenario, model=model, parity=parity, geometry=geometry,
                    axes=tuple(axes), fixed=fixed, output_path=output.get("path"),
                    output_format=fmt, preset=preset, beta_form=beta_form,
                    schema_version=version)
    _check_compatible(spec)
    return spec


def _check_compatible(spec: ScanSpec):
    swept = {a.name for a in spec.axes}
    have = swept | set(spec.fixed)

    def need(*names):
        for n in names:
            if n not in have:
                raise SpecError(f"fixed.{n}", f"required by scenario {spec.scenario!r}")

    if spec.scenario == "beta_trace":
        if spec.model == "nonbo":
            raise SpecError("model", "beta_trace is defined for the BO model only")
        need("p_e", "p_n", "r0")
        return
    if spec.scenario == "fixed_nuclei":
        if spec.model != "bo_exact":
            raise SpecError("model", "fixed_nuclei supports only bo_exact")
        need("p_e", "r")
        return
    need("p_e", "p0", "delta_r", "r0", "tau")
    if spec.model != "bo_approx":
        need("omega")
    if "p_1" in have and "p_n" in have:
        raise SpecError("fixed.p_n", "give either p_n or p_1, not both")
    if "p_1" not in have and "p_n" not in have:
        raise SpecError("fixed.p_n", "nuclear momentum (p_n or p_1) is required")
    if spec.model == "nonbo" and spec.parity is not Parity.UNGERADE:
        raise SpecError("parity", "the non-BO model is built for the ungerade state only")


def load_spec(path, preset: str | None = None) -> ScanSpec:
    """Read and validate a JSON scan spec from ``path``."""
    path = Path(path)
    text = path.read_text()
    if not text.strip():
        raise SpecError("", f"{path} is empty")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("", f"{path} is not valid JSON: {exc}") from None
    return spec_from_dict(doc, preset=preset)


def preset_spec(name: str, **overrides) -> ScanSpec:
    return spec_from_dict(overrides, preset=name)


def _perp_direction(geometry: dict) -> np.ndarray:
    # in-plane direction toward which theta_e rotates away from e_probe
    if "e_perp" in geometry:
        return geometry["e_perp"]
    e = geometry["e_probe"]
    for cand in (geometry["direction"], geometry["e_pump"], np.array([1.0, 0, 0]),
                 np.array([0, 1.0, 0])):
        w = cand - np.dot(cand, e) * e
        n = np.linalg.norm(w)
        if n > 1e-9:
            return w / n
    raise AssertionError("unreachable")


def _physics(spec: ScanSpec):
    f = spec.fixed
    k = make_constants(I_p=f["i_p"])
    wp = None
    if "p0" in f:
        wp = WavePacketParams(p0=f["p0"], delta_r=f["delta_r"], r0=f["r0"],
                              e_pump=spec.geometry["e_pump"], c_n=f.get("c_n"))
    pulse = None
    if "tau" in f and "omega" in f:
        pulse = PulseParams(a0=f["a0"], e_probe=spec.geometry["e_probe"], omega=f["omega"],
                            tau=f["tau"], t_c=0.0)
    return k, wp, pulse


def output_columns(spec: ScanSpec) -> list:
    tail = (["beta0", "beta2", "beta4"] if spec.scenario == "beta_trace"
            else ["total", "direct", "cross", "phase"])
    return [a.name for a in spec.axes] + tail


def _grid(spec: ScanSpec) -> np.ndarray:
    mesh = np.meshgrid(*[a.values() for a in spec.axes], indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _evaluate_chunk(spec: ScanSpec, points: np.ndarray) -> np.ndarray:
    n = len(points)
    var = {name: np.full(n, value) for name, value in spec.fixed.items()}
    for i, ax in enumerate(spec.axes):
        var[ax.name] = points[:, i]
    geom = spec.geometry
    k, wp, pulse = _physics(spec)

    if spec.scenario == "beta_trace":
        r_n = r_n_magnitude(var["t_c"], var["p_n"], var["r0"], k.mu)
        b = beta_coefficients(var["p_e"], r_n, spec.beta_form)
        return np.stack(list(b), axis=-1)

    e_probe, perp = geom["e_probe"], _perp_direction(geom)
    theta = var["theta_e"][:, None]
    p_e = var["p_e"][:, None] * (np.cos(theta) * e_probe + np.sin(theta) * perp)

    if spec.scenario == "fixed_nuclei":
        r_vec = var["r"][:, None] * geom["direction"]
        ah2 = np.abs(atomic_amplitude(p_e, e_probe)) ** 2
        phase = dot(p_e, r_vec)
        cross = spec.parity.sign * np.cos(phase) * ah2
        return np.stack([ah2 + cross, ah2, cross, phase], axis=-1)

    if "p_1" in var:
        p_N, _, _ = kinematics_from_measured(var["p_1"][:, None] * geom["direction"], p_e)
    else:
        p_N = var["p_n"][:, None] * geom["direction"]

    if spec.model == "bo_approx":
        pe_mag, pn_mag = norm(p_e), norm(p_N)
        cos_e = dot(p_e, e_probe) / pe_mag
        cos_p = dot(p_N, geom["e_pump"]) / pn_mag
        r_n = r_n_magnitude(var["t_c"], pn_mag, var["r0"], k.mu)
        phase = dot(p_e, p_N) / pn_mag * r_n
        envelope = 0.5 * cos_e**2 * cos_p**2
        cross = spec.parity.sign * envelope * np.cos(phase)
        return np.stack([envelope + cross, envelope, cross, phase], axis=-1)

    pulse = replace(pulse, t_c=var["t_c"])
    if spec.model == "nonbo":
        prob = probability_nonbo_expanded(p_e, p_N, pulse, wp, k)
    else:
        prob = probability_expanded(p_e, p_N, pulse, wp, spec.parity, k)
    return np.stack(list(prob), axis=-1)


def _evaluate_range(args):
    spec, points = args
    return _evaluate_chunk(spec, points)


def run_scan(spec: ScanSpec, workers: int = 1) -> ScanResult:
    """Evaluate the spec's model on every grid point.

    The grid is cut into fixed-size chunks independent of ``workers``, so the
    result is bit-identical for any worker count.
    """
    start = time.perf_counter()
    points = _grid(spec)
    columns = output_columns(spec)
    table = np.empty((len(points), len(columns)))
    table[:, :len(spec.axes)] = points
    bounds = [(i, min(i + CHUNK_SIZE, len(points))) for i in range(0, len(points), CHUNK_SIZE)]
    jobs = [(spec, points[a:b]) for a, b in bounds]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_range, jobs))
    else:
        results = [_evaluate_range(job) for job in jobs]
    for (a, b), res in zip(bounds, results):
        table[a:b, len(spec.axes):] = res
    if not np.all(np.isfinite(table)):
        bad = int(np.argmax(~np.all(np.isfinite(table), axis=1)))
        raise FloatingPointError(f"non-finite result at grid row {bad}: {table[bad].tolist()}")
    meta = scan_metadata(spec)
    meta["timing"] = {"seconds": time.perf_counter() - start, "workers": workers,
                      "points": len(points)}
    return ScanResult(columns, table, meta)


def scan_metadata(spec: ScanSpec) -> dict:
    k, wp, pulse = _physics(spec)
    meta = {
        "schema_version": spec.schema_version,
        "package_version": __version__,
        "scenario": spec.scenario,
        "model": spec.model,
        "parity": spec.parity.value,
        "preset": spec.preset,
        "units": "atomic units; angles in radians",
        "axes": [{"name": a.name, "min": a.min, "max": a.max, "count": a.count}
                 for a in spec.axes],
        "fixed": dict(spec.fixed),
        "geometry": {key: v.tolist() for key, v in spec.geometry.items()},
        "constants": k.as_dict(),
    }
    if spec.scenario == "beta_trace":
        meta["beta_form"] = spec.beta_form
    if wp is not None:
        meta["c_n"] = wp.c_n
    if pulse is not None:
        meta["omega"] = pulse.omega
        meta["tau"] = pulse.tau
        if spec.model == "nonbo":
            meta["n2_tilde"] = n2_tilde_factor(pulse, k)
            meta["n2_bo_over_n2_tilde"] = n2_factor(pulse, k) / meta["n2_tilde"]
        elif spec.model == "bo_exact" and spec.scenario != "fixed_nuclei":
            meta["n2"] = n2_factor(pulse, k)
    if spec.scenario != "fixed_nuclei" and spec.model != "bo_approx":
        meta["normalization"] = "probabilities are |A|^2 / N2^2 (A0 = 1 unless set)"
    return meta


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def write_result(result: ScanResult, path, fmt: str = "csv") -> list:
    """Write the grid as CSV or JSON plus a ``<path>.meta.json`` sidecar.

    The data file holds no timing information, so identical specs produce
    byte-identical files.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    meta = {k: v for k, v in result.metadata.items() if k != "timing"}
    try:
        if fmt == "csv":
            with path.open("w", newline="") as fh:
                for key, value in meta.items():
                    fh.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
                fh.write(",".join(result.columns) + "\n")
                for row in result.data:
                    fh.write(",".join(_fmt(x) for x in row) + "\n")
        else:
            doc = {"schema_version": SCHEMA_VERSION, "columns": result.columns,
                   "data": result.data.tolist(), "metadata": meta}
            path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
        sidecar = path.with_name(path.name + ".meta.json")
        sidecar.write_text(json.dumps(result.metadata, sort_keys=True, indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write scan output to {path}: {exc}") from exc
    return [path, sidecar]


def read_result(path) -> ScanResult:
    """Read a file produced by :func:`write_result` (format from the suffix)."""
    path = Path(path)
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        return ScanResult(doc["columns"], np.array(doc["data"], dtype=float), doc["metadata"])
    meta, rows, columns = {}, [], None
    with path.open() as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                meta[key] = json.loads(value)
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    if columns is None:
        raise ValueError(f"{path} has no header row")
    return ScanResult(columns, np.array(rows, dtype=float).reshape(-1, len(columns)), meta)
