from __future__ import annotations
from dataclasses import dataclass, field
from typing import Tuple
import math


def db_to_linear(value_db: float) -> float:
    return 10 ** (value_db / 10)


def linear_to_db(value: float) -> float:
    return 10 * math.log10(value) if value > 0 else -math.inf


def dbm_to_watts(value_dbm: float) -> float:
    return 10 ** ((value_dbm - 30) / 10)


def watts_to_dbm(value_w: float) -> float:
    return 10 * math.log10(value_w) + 30 if value_w > 0 else -math.inf


@dataclass(frozen=True)
class LinkBudget:
    """Linear-unit link budget of the radar and the RIS loopback.

    Parameters
    ----------
    tx_power : float
        Transmit power P in watts.
    combined_gain : float
        Combined Tx/Rx antenna gain G_trx, linear.
    ris_loop_factor : float
        zeta = L_loss * alpha_RIS, linear.
    noise_power : float
        Per-sample complex noise power sigma_N^2 in watts.
    rcs_list : Tuple[float, ...]
        Radar cross sections of the scattering paths in m^2.
    """

    tx_power: float = dbm_to_watts(20.0)
    combined_gain: float = db_to_linear(4.7712)
    ris_loop_factor: float = db_to_linear(45.532)
    noise_power: float = dbm_to_watts(-63.64)
    rcs_list: Tuple[float, ...] = field(default_factory=lambda: (19.0,))

    def __post_init__(self):
        for name in ("tx_power", "combined_gain", "ris_loop_factor", "noise_power"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"Invalid link budget parameter {name}={value} passed.")
        if any(not (math.isfinite(rcs) and rcs >= 0) for rcs in self.rcs_list):
            raise ValueError(f"Invalid radar cross sections {self.rcs_list} passed.")
        object.__setattr__(self, "rcs_list", tuple(float(r) for r in self.rcs_list))


def _check_positive_distance(distance: float):
    if not (math.isfinite(distance) and distance > 0):
        raise ValueError(f"Invalid distance {distance} passed; path gain is singular.")


def target_gain_sq(budget: LinkBudget, rcs: float, distance: float, wavelength: float) -> float:
    """Radar-equation power gain P G_trx S_RCS lambda^2 / ((4 pi)^3 d^4)."""
    _check_positive_distance(distance)
    if rcs < 0:
        raise ValueError(f"Invalid radar cross section {rcs} passed.")
    return (
        budget.tx_power
        * budget.combined_gain
        * rcs
        * wavelength**2
        / ((4 * math.pi) ** 3 * distance**4)
    )


def one_way_gain_sq(distance: float, wavelength: float) -> float:
    """Free-space one-way power gain (lambda / (4 pi d))^2."""
    _check_positive_distance(distance)
    return (wavelength / (4 * math.pi * distance)) ** 2


def ris_loopback_gain_sq(budget: LinkBudget, distance: float, wavelength: float) -> float:
    """|gamma_0|^2 = P G_trx |gamma_UR|^2 zeta |gamma_RU|^2."""
    one_way = one_way_gain_sq(distance, wavelength)
    return budget.tx_power * budget.combined_gain * one_way * budget.ris_loop_factor * one_way
