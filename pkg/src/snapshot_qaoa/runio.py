"""Run configuration parsing and record serialization for the CLI.

Configs are JSON objects validated against per-subcommand defaults:
every field has a default, unknown keys are rejected, and the resolved
config is hashed (sha256 of its canonical JSON form) for provenance.
Bulk results go to CSV with floats printed at 17 significant digits so
64-bit values round-trip exactly; each CSV gets a JSON sidecar with the
config hash and run metadata.
"""

import csv
import hashlib
import json
import time
from dataclasses import dataclass

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

_HAMILTONIAN_DEFAULT = {"rows": 3, "cols": 3, "J1": 1.0, "J2": 0.0, "Bx": 1.0}

DEFAULTS = {
    "gs": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "tol": 1e-10,
        "max_iter": 500,
        "seed": 0x5EED,
    },
    "run": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p": 1,
        "T": 1.0,
        "amplitudes_path": None,
    },
    "period": {
        "p": 1,
        "c1_hat": "1/2",
        "rho0": "1/2",     # fractions of pi
        "rho1": None,      # derived from J2 when omitted
        "J2": "0",
    },
    "grid-t": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p": 1,
        "t_lo": 0.0,
        "t_hi": None,      # defaults to p
        "dt_step": 0.01,
        "trace": False,
    },
    "refine": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p": 1,
        "T": None,         # grid-searched when omitted
        "dt_step": 0.01,
        "max_iter": 500,
        "grad_tol": 1e-8,
    },
    "converge": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p_max": 250,
        "refine": False,
        "dt_step": 0.01,
        "epsilon": None,
    },
    "heatmap": {
        "rows": 3,
        "cols": 3,
        "J1": 1.0,
        "J2_grid": [round(0.05 * i, 2) for i in range(21)],
        "Bx_grid": [round(0.10 + 0.05 * i, 2) for i in range(39)],
        "epsilon": 0.01,
        "p_cap": None,     # 250 unrefined, 20 refined
        "refine": False,
        "dt_step": 0.01,
        "workers": None,
    },
    "curve": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p": 1,
        "t_lo": 0.0,
        "t_hi": None,      # defaults to p
        "samples": 1000,
    },
    "regress": {
        "hamiltonian": _HAMILTONIAN_DEFAULT,
        "p_max": 20,
        "dt_step": 0.01,
    },
    "period-scaling": {
        "p_max": 10,
        "c1_hat": "1/2",
        "rho0": "1/2",
        "rho1": None,
        "J2": "0",
    },
    "tqa-maxcut": {
        "n": 12,
        "degree": 3,
        "seed": 7,
        "p": 5,
        "t_samples": 200,
        "t_max": None,     # defaults to p
    },
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    @property
    def hash(self) -> str:
        return config_hash(self.values)

    def to_json(self) -> str:
        return json.dumps(self.values, sort_keys=True, indent=2)


def config_hash(values: dict) -> str:
    canon = json.dumps(values, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _validate(subcommand: str, values: dict):
    ham = values.get("hamiltonian")
    if ham is not None and "edge_list_path" not in ham:
        unknown = set(ham) - set(_HAMILTONIAN_DEFAULT)
        if unknown:
            raise ConfigError(f"hamiltonian: unknown keys {sorted(unknown)}")
        if ham["rows"] < 3 or ham["cols"] < 3:
            raise ConfigError("hamiltonian.rows/cols must be >= 3")
    for key in ("p", "p_max", "p_cap", "max_iter", "samples", "t_samples"):
        if key in values and values[key] is not None and values[key] < 1:
            raise ConfigError(f"{key} must be >= 1, got {values[key]}")
    for key in ("dt_step", "epsilon", "tol", "grad_tol"):
        if key in values and values[key] is not None and values[key] <= 0:
            raise ConfigError(f"{key} must be positive, got {values[key]}")


def parse_config(subcommand: str, path: str = None,
                 overrides: dict = None) -> RunConfig:
    """Resolve a config: file contents (if any) plus inline overrides on
    top of the subcommand defaults. Unknown keys are rejected."""
    if subcommand not in DEFAULTS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    resolved = json.loads(json.dumps(DEFAULTS[subcommand]))  # deep copy
    layers = []
    if path is not None:
        try:
            with open(path) as fh:
                layers.append(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: malformed JSON: {exc}") from exc
    if overrides:
        layers.append(overrides)
    for layer in layers:
        for key, val in layer.items():
            if key not in resolved:
                raise ConfigError(
                    f"unknown config key {key!r} for subcommand {subcommand!r}"
                )
            if isinstance(resolved[key], dict) and isinstance(val, dict) \
                    and "edge_list_path" not in val:
                resolved[key] = {**resolved[key], **val}
            else:
                resolved[key] = val
    _validate(subcommand, resolved)
    return RunConfig(subcommand=subcommand, values=resolved)


def fmt(value) -> str:
    """CSV cell formatting: floats at 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit_records(rows, header, csv_path, sidecar_path, config: RunConfig,
                 extra: dict = None):
    """Write records (dicts keyed by header) to CSV, flushing per record,
    plus a provenance sidecar JSON."""
    t0 = time.time()
    try:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            fh.flush()
            count = 0
            for row in rows:
                writer.writerow([fmt(row.get(col)) for col in header])
                fh.flush()
                count += 1
        sidecar = {
            "subcommand": config.subcommand,
            "config": config.values,
            "config_hash": config.hash,
            "records": count,
            "wall_clock_s": time.time() - t0,
            "code_version": _code_version(),
        }
        if extra:
            sidecar.update(extra)
        with open(sidecar_path, "w") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"writing {csv_path} / {sidecar_path}: {exc}") from exc
    return count


def _code_version() -> str:
    try:
        from importlib.metadata import version
        return version("snapshot-qaoa")
    except Exception:
        return "unknown"
