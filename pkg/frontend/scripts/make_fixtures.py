"""Regenerate the small CSV fixtures under test/fixtures.

Each fixture mirrors a figure preset's scenario ids and parameter shape but
uses tiny grids and baths so the files stay small and fast to rebuild:

    python3 frontend/scripts/make_fixtures.py
"""

import os
import sys

import numpy as np

from qbattery.scenarios import run_scenario, scenario_from_dict, write_csv

OUT = os.path.join(os.path.dirname(__file__), "..", "test", "fixtures")

CENTRAL = dict(
    omega1=1.15, omega2=1.25, omega_a=1.1, omega_b=1.2, g12=0.75,
    eps1=0.5, eps2=0.5, beta_a=4.0, beta_b=1.0, M=2, N=2, initial_state="00",
)
COLLECTIVE = dict(omega1=1.0, omega2=1.0, Gamma1=0.05, Gamma2=0.05, mu_dot_r=0.0)
SQUEEZED = dict(T=5.0, r_sq=0.5, Phi=np.pi / 4)
CHARGER = dict(
    omega_C=1.5, omega_B=1.25, omega_EC=0.7, omega_EB=0.6,
    g_CB=0.05, g_CEC=0.04, g_BEB=0.02, gamma=1.0, lam=1.0,
    N=3, M=2, T_C=0.5, T_B=0.8,
)


def central(sid, interaction):
    return dict(
        scenario_id=sid, model="central_pair",
        model_params={**CENTRAL, "interaction": interaction},
        t_max=20.0, n_steps=8, battery_hamiltonian="full",
    )


def collective(sid, *, k0r12, substeps, sweep=None, **bath):
    return dict(
        scenario_id=sid, model="collective_decoherence",
        model_params={**COLLECTIVE, "k0r12": k0r12, "initial_state": "0+", **bath},
        t_max=2.0, n_steps=4, substeps=substeps, sweep=sweep,
    )


def charger(sid, *, t_max, n_steps, sweep=None, lam=1.0):
    return dict(
        scenario_id=sid, model="charger_battery",
        model_params={**CHARGER, "lam": lam},
        t_max=t_max, n_steps=n_steps, sweep=sweep,
    )


K0R_SWEEP = {"parameter": "k0r12", "values": [0.25, 0.5, 1.0]}
T_SWEEP = {"parameter": "T", "values": [0.5, 1.0, 2.0]}
LAM_SWEEP = {"parameter": "lam", "values": [0.0, 0.5, 1.0, 1.5, 2.0]}

FIXTURES = {
    "fig1": [central("fig1_xxx", "XXX"), central("fig1_dm", "DM")],
    "fig2": [central("fig2_xxx", "XXX"), central("fig2_dm", "DM")],
    "fig3a": [collective("fig3a", k0r12=0.1, substeps=200, **SQUEEZED)],
    "fig3b": [collective("fig3b", k0r12=1.2, substeps=10, **SQUEEZED)],
    "fig3c": [collective("fig3c", k0r12=0.1, substeps=200, vacuum=True)],
    "fig3d": [collective("fig3d", k0r12=1.2, substeps=10, vacuum=True)],
    "fig4a": [collective("fig4a", k0r12=0.25, substeps=100, sweep=K0R_SWEEP, **SQUEEZED)],
    "fig4b": [
        collective("fig4b", k0r12=0.25, substeps=100, sweep=K0R_SWEEP, T=0.4, r_sq=0.5, Phi=np.pi / 4)
    ],
    "fig5T": [
        collective("fig5T_collective", k0r12=0.05, substeps=1000, sweep=T_SWEEP, **SQUEEZED),
        collective("fig5T_independent", k0r12=1.1, substeps=10, sweep=T_SWEEP, **SQUEEZED),
    ],
    "fig5": [
        charger("fig5", t_max=80.0, n_steps=8,
                sweep={"parameter": "lam", "values": [0.25, 0.5, 1.0, 1.5]})
    ],
    "fig6": [charger("fig6", t_max=80.0, n_steps=4, sweep=LAM_SWEEP)],
    "fig7": [charger("fig7", t_max=40.0, n_steps=4, sweep=LAM_SWEEP)],
    "fig8a": [charger("fig8a", t_max=80.0, n_steps=40, lam=0.25)],
    "fig8b": [charger("fig8b", t_max=80.0, n_steps=40, lam=0.5)],
    "fig8c": [charger("fig8c", t_max=80.0, n_steps=40, lam=1.0)],
}


def main():
    out = os.path.abspath(OUT)
    os.makedirs(out, exist_ok=True)
    for name, raws in FIXTURES.items():
        records = [run_scenario(scenario_from_dict(raw, raw["scenario_id"])) for raw in raws]
        ts, seg = write_csv(records, out, name)
        print(f"wrote {ts} and {seg}")


if __name__ == "__main__":
    sys.exit(main())
