"""Scenario configuration, figure presets, metric evaluation, CSV output."""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
import time
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

import numpy as np

from . import __version__
from .central_pair import CentralPairConfig, battery_hamiltonian, evolve_reduced
from .charger_battery import ChargerBatteryConfig, evolve_battery
from .collective import DecoherenceConfig, evolve as evolve_collective, lindblad_coefficients, system_hamiltonian
from .ergotropy import MetricsSample, PowerSegment, average_powers, series_metrics
from .linalg import I2, KET0, KET1, KET_PLUS, SIGMA_Z, ket_dm, kron_all

TIMESERIES_COLUMNS = [
    "scenario_id",
    "sweep_value",
    "t",
    "energy",
    "ergotropy",
    "ergotropy_incoherent",
    "ergotropy_coherent",
    "power_inst",
    "power_charging",
]
SEGMENT_COLUMNS = ["scenario_id", "sweep_value", "t_start", "t_end", "kind", "avg_power"]

_SINGLE_KETS = {"0": KET0, "1": KET1, "+": KET_PLUS}


def named_state(name: str) -> np.ndarray:
    """Two-qubit density matrix from a short label like '00', '0+', 'singlet'."""
    if name == "singlet":
        psi = (np.kron(KET0, KET1) - np.kron(KET1, KET0)) / np.sqrt(2)
        return ket_dm(psi)
    if len(name) == 2 and all(c in _SINGLE_KETS for c in name):
        return ket_dm(np.kron(_SINGLE_KETS[name[0]], _SINGLE_KETS[name[1]]))
    raise ValueError(f"unknown initial state {name!r}")


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    scenario_id: str
    model: str  # central_pair | collective_decoherence | charger_battery
    model_params: Any
    t_max: float
    n_steps: int
    substeps: int = 10
    sweep: SweepSpec | None = None
    battery_hamiltonian: str = "local"
    output_path: str | None = None

    def __post_init__(self):
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.n_steps < 3:
            raise ValueError("n_steps must be >= 3")
        if self.battery_hamiltonian not in ("local", "full"):
            raise ValueError("battery_hamiltonian must be 'local' or 'full'")
        if self.sweep is not None and not hasattr(self.model_params, self.sweep.parameter):
            raise ValueError(f"sweep parameter {self.sweep.parameter!r} not on model config")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_steps + 1)


@dataclass(frozen=True)
class RunRecord:
    scenario_id: str
    parameters: dict
    engine_version: str
    wall_time: float
    rows: list[tuple[str, MetricsSample]]  # (sweep value as text, sample)
    segments: list[tuple[str, PowerSegment]]


_MODEL_KEYS = {
    "central_pair": {
        "omega1", "omega2", "omega_a", "omega_b", "eps1", "eps2", "g12",
        "interaction", "beta_a", "beta_b", "M", "N", "initial_state",
    },
    "collective_decoherence": {
        "omega1", "omega2", "Gamma1", "Gamma2", "k0r12", "mu_dot_r", "T",
        "r_sq", "Phi", "vacuum", "include_dipole_shift", "initial_state",
    },
    "charger_battery": {
        "omega_C", "omega_B", "omega_EC", "omega_EB", "g_CB", "g_CEC",
        "g_BEB", "gamma", "lam", "N", "M", "T_C", "T_B", "boundary",
    },
}
_TOP_KEYS = {
    "scenario_id", "model", "model_params", "t_max", "n_steps", "substeps",
    "sweep", "battery_hamiltonian", "output_path",
}


def _build_model_params(model: str, params: dict):
    if model not in _MODEL_KEYS:
        raise ValueError(f"unknown model {model!r}")
    unknown = set(params) - _MODEL_KEYS[model]
    if unknown:
        raise ValueError(f"unknown model_params key(s): {sorted(unknown)}")
    params = dict(params)
    if model in ("central_pair", "collective_decoherence"):
        state = params.pop("initial_state", "00")
        params["initial_state"] = named_state(state) if isinstance(state, str) else np.asarray(state)
    if model == "central_pair":
        return CentralPairConfig(**params)
    if model == "collective_decoherence":
        return DecoherenceConfig(**params)
    return ChargerBatteryConfig(**params)


def scenario_from_dict(raw: dict, default_id: str = "scenario") -> ScenarioConfig:
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ValueError(f"unknown key(s): {sorted(unknown)}")
    for key in ("model", "model_params", "t_max", "n_steps"):
        if key not in raw:
            raise ValueError(f"missing required key {key!r}")
    sweep = None
    if raw.get("sweep") is not None:
        s = raw["sweep"]
        if set(s) != {"parameter", "values"}:
            raise ValueError("sweep must have exactly 'parameter' and 'values'")
        sweep = SweepSpec(s["parameter"], tuple(float(v) for v in s["values"]))
    return ScenarioConfig(
        scenario_id=raw.get("scenario_id", default_id),
        model=raw["model"],
        model_params=_build_model_params(raw["model"], raw["model_params"]),
        t_max=float(raw["t_max"]),
        n_steps=int(raw["n_steps"]),
        substeps=int(raw.get("substeps", 10)),
        sweep=sweep,
        battery_hamiltonian=raw.get("battery_hamiltonian", "local"),
        output_path=raw.get("output_path"),
    )


def load_config(path: str) -> ScenarioConfig:
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config parse error in {path}: {exc}") from exc
    stem = os.path.splitext(os.path.basename(path))[0]
    return scenario_from_dict(raw, default_id=stem)


def _metrics_hamiltonian(cfg: ScenarioConfig) -> np.ndarray:
    p = cfg.model_params
    if cfg.model == "central_pair":
        return battery_hamiltonian(p, cfg.battery_hamiltonian)
    if cfg.model == "collective_decoherence":
        h = p.omega1 / 2 * kron_all(SIGMA_Z, I2) + p.omega2 / 2 * kron_all(I2, SIGMA_Z)
        if cfg.battery_hamiltonian == "full":
            h = system_hamiltonian(p, lindblad_coefficients(p))
        return h
    return p.h_battery  # charger_battery: single-qubit battery Hamiltonian


def _trajectory(cfg: ScenarioConfig, params) -> list[np.ndarray]:
    grid = cfg.grid
    if cfg.model == "central_pair":
        return [s.matrix for s in evolve_reduced(params, grid)]
    if cfg.model == "collective_decoherence":
        return [s.matrix for s in evolve_collective(params, grid, substeps=cfg.substeps)]
    b_states, _ = evolve_battery(params, grid)
    return [s.matrix for s in b_states]


def run_scenario(cfg: ScenarioConfig) -> RunRecord:
    """Evolve, compute metrics and power segments for every sweep value."""
    start = time.perf_counter()
    grid = cfg.grid
    h = _metrics_hamiltonian(cfg)
    variants: list[tuple[str, Any]]
    if cfg.sweep is None:
        variants = [("", cfg.model_params)]
    else:
        variants = [
            (format_value(v), replace(cfg.model_params, **{cfg.sweep.parameter: v}))
            for v in cfg.sweep.values
        ]
    rows: list[tuple[str, MetricsSample]] = []
    segments: list[tuple[str, PowerSegment]] = []
    for sweep_text, params in variants:
        states = _trajectory(cfg, params)
        samples = series_metrics(states, h, grid)
        summary = average_powers(samples)
        rows.extend((sweep_text, s) for s in samples)
        segments.extend((sweep_text, seg) for seg in summary.segments)
    params_dict = dataclasses.asdict(cfg.model_params)
    params_dict = {k: v for k, v in params_dict.items() if not isinstance(v, np.ndarray)}
    return RunRecord(
        scenario_id=cfg.scenario_id,
        parameters=params_dict,
        engine_version=__version__,
        wall_time=time.perf_counter() - start,
        rows=rows,
        segments=segments,
    )


def format_value(x: float) -> str:
    return repr(float(x))


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_csv(records: Sequence[RunRecord], out_dir: str, name: str) -> tuple[str, str]:
    """Write <name>_timeseries.csv and <name>_segments.csv atomically."""
    ts_lines = [",".join(TIMESERIES_COLUMNS)]
    for rec in records:
        for sweep_text, s in rec.rows:
            ts_lines.append(
                ",".join(
                    [
                        rec.scenario_id,
                        sweep_text,
                        format_value(s.t),
                        format_value(s.energy),
                        format_value(s.ergotropy),
                        format_value(s.ergotropy_incoherent),
                        format_value(s.ergotropy_coherent),
                        format_value(s.power_inst),
                        format_value(s.power_charging),
                    ]
                )
            )
    seg_lines = [",".join(SEGMENT_COLUMNS)]
    for rec in records:
        for sweep_text, seg in rec.segments:
            seg_lines.append(
                ",".join(
                    [
                        rec.scenario_id,
                        sweep_text,
                        format_value(seg.t_start),
                        format_value(seg.t_end),
                        seg.kind,
                        format_value(seg.avg_power),
                    ]
                )
            )
    ts_path = os.path.join(out_dir, f"{name}_timeseries.csv")
    seg_path = os.path.join(out_dir, f"{name}_segments.csv")
    _atomic_write(ts_path, "\n".join(ts_lines) + "\n")
    _atomic_write(seg_path, "\n".join(seg_lines) + "\n")
    return ts_path, seg_path


# ---------------------------------------------------------------------------
# Figure presets. Parameter sets are the figure-caption values; README maps
# preset names to figure numbers.
# ---------------------------------------------------------------------------

_CENTRAL_PAIR_CAPTION = dict(
    omega1=1.15, omega2=1.25, omega_a=1.1, omega_b=1.2, g12=0.75,
    eps1=0.5, eps2=0.5, beta_a=4.0, beta_b=1.0, M=8, N=8, initial_state="00",
)
_COLLECTIVE_BASE = dict(omega1=1.0, omega2=1.0, Gamma1=0.05, Gamma2=0.05, mu_dot_r=0.0)
_CHARGER_BATTERY_CAPTION = dict(
    omega_C=1.5, omega_B=1.25, omega_EC=0.7, omega_EB=0.6,
    g_CB=0.05, g_CEC=0.04, g_BEB=0.02, gamma=1.0, lam=1.0,
    N=3, M=2, T_C=0.5, T_B=0.8,
)


def _central_pair_scenario(sid: str, interaction: str, **overrides) -> dict:
    return dict(
        scenario_id=sid,
        model="central_pair",
        model_params={**_CENTRAL_PAIR_CAPTION, "interaction": interaction},
        t_max=20.0,
        n_steps=400,
        battery_hamiltonian="full",
        **overrides,
    )


def _collective_scenario(
    sid: str, *, k0r12, t_max, n_steps, initial_state, sweep=None, substeps=10, **bath
) -> dict:
    # Small separations need fine substeps: the dipole shift grows like
    # 1/(k0 r)^3 and sets the fastest coherent frequency.
    return dict(
        scenario_id=sid,
        model="collective_decoherence",
        model_params={**_COLLECTIVE_BASE, "k0r12": k0r12, "initial_state": initial_state, **bath},
        t_max=t_max,
        n_steps=n_steps,
        substeps=substeps,
        sweep=sweep,
    )


def _charger_scenario(sid: str, *, t_max, n_steps, sweep=None, lam=1.0) -> dict:
    return dict(
        scenario_id=sid,
        model="charger_battery",
        model_params={**_CHARGER_BATTERY_CAPTION, "lam": lam},
        t_max=t_max,
        n_steps=n_steps,
        sweep=sweep,
    )


_SQUEEZED = dict(T=5.0, r_sq=0.5, Phi=np.pi / 4)
_K0R_SWEEP = {"parameter": "k0r12", "values": [round(0.05 * k, 3) for k in range(1, 41)]}
_T_SWEEP = {"parameter": "T", "values": [round(0.2 * k, 3) for k in range(1, 51)]}
_LAMBDA_GRID = {"parameter": "lam", "values": [round(0.025 * k, 4) for k in range(0, 81)]}

PRESETS: dict[str, list[dict]] = {
    "fig1": [
        _central_pair_scenario("fig1_xxx", "XXX"),
        _central_pair_scenario("fig1_dm", "DM"),
    ],
    "fig2": [
        _central_pair_scenario("fig2_xxx", "XXX"),
        _central_pair_scenario("fig2_dm", "DM"),
    ],
    "fig3a": [_collective_scenario("fig3a", k0r12=0.1, t_max=50.0, n_steps=500, initial_state="0+", substeps=100, **_SQUEEZED)],
    "fig3b": [_collective_scenario("fig3b", k0r12=1.2, t_max=50.0, n_steps=500, initial_state="0+", **_SQUEEZED)],
    "fig3c": [_collective_scenario("fig3c", k0r12=0.1, t_max=50.0, n_steps=500, initial_state="0+", substeps=100, vacuum=True)],
    "fig3d": [_collective_scenario("fig3d", k0r12=1.2, t_max=50.0, n_steps=500, initial_state="0+", vacuum=True)],
    "fig4a": [
        _collective_scenario(
            "fig4a", k0r12=0.1, t_max=2.0, n_steps=50, initial_state="singlet",
            sweep=_K0R_SWEEP, substeps=100, **_SQUEEZED,
        )
    ],
    "fig4b": [
        _collective_scenario(
            "fig4b", k0r12=0.1, t_max=2.0, n_steps=50, initial_state="singlet",
            sweep=_K0R_SWEEP, substeps=100, T=0.4, r_sq=0.5, Phi=np.pi / 4,
        )
    ],
    "fig5T": [
        _collective_scenario(
            "fig5T_collective", k0r12=0.05, t_max=2.0, n_steps=50, initial_state="0+",
            sweep=_T_SWEEP, substeps=400, **_SQUEEZED,
        ),
        _collective_scenario(
            "fig5T_independent", k0r12=1.1, t_max=2.0, n_steps=50, initial_state="0+",
            sweep=_T_SWEEP, **_SQUEEZED,
        ),
    ],
    "fig5": [
        _charger_scenario(
            "fig5", t_max=80.0, n_steps=800,
            sweep={"parameter": "lam", "values": [0.25, 0.5, 1.0, 1.5]},
        )
    ],
    "fig6": [_charger_scenario("fig6", t_max=80.0, n_steps=400, sweep=_LAMBDA_GRID)],
    "fig7": [_charger_scenario("fig7", t_max=40.0, n_steps=200, sweep=_LAMBDA_GRID)],
    "fig8a": [_charger_scenario("fig8a", t_max=80.0, n_steps=1600, lam=0.25)],
    "fig8b": [_charger_scenario("fig8b", t_max=80.0, n_steps=1600, lam=0.5)],
    "fig8c": [_charger_scenario("fig8c", t_max=80.0, n_steps=1600, lam=1.0)],
}


def preset_scenarios(name: str) -> list[ScenarioConfig]:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; see list-scenarios")
    return [scenario_from_dict(raw, default_id=raw["scenario_id"]) for raw in PRESETS[name]]


def run_preset(name: str, out_dir: str | None = None) -> list[RunRecord]:
    records = [run_scenario(cfg) for cfg in preset_scenarios(name)]
    if out_dir is not None:
        write_csv(records, out_dir, name)
    return records
