"""Physical link model shared by the analytic and Monte Carlo paths.

Covers the harvested relay power, the per-scenario SNRs, instantaneous
capacities and the outage indicator for a dual-hop link whose relay is
powered entirely by the source signal. The SNR/capacity functions accept
scalar fades or numpy arrays of fades and broadcast elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lognormal import ChannelSpec

DUPLEX_MODES = ("hd", "fd")
RELAY_PROTOCOLS = ("df", "af")
EH_PROTOCOLS = ("tsr", "psr", "irr")


@dataclass(frozen=True)
class SystemConfig:
    """Link parameters. Defaults describe the baseline indoor link used by
    the bundled experiments: 1 W source, unit harvester efficiency,
    free-space-like exponent 2, two 5 m hops and 0.005 W noise at the relay
    and destination (split evenly between antenna and conversion noise)."""

    ps_watts: float = 1.0
    eta: float = 1.0
    path_loss_exp: float = 2.0
    d1_m: float = 5.0
    d2_m: float = 5.0
    sigma_a2_w: float = 0.0025
    sigma_c2_w: float = 0.0025
    sigma_d2_w: float = 0.005
    cth: float = 2.0
    ch1: ChannelSpec = field(default=ChannelSpec(3.0, 2.0))
    ch2: ChannelSpec = field(default=ChannelSpec(3.0, 2.0))
    chg: ChannelSpec = field(default=ChannelSpec(3.0, math.sqrt(5.0)))

    def __post_init__(self):
        if not self.ps_watts > 0:
            raise ValueError(f"ps_watts must be > 0, got {self.ps_watts}")
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must be in (0, 1], got {self.eta}")
        if not self.path_loss_exp >= 1:
            raise ValueError(f"path_loss_exp must be >= 1, got {self.path_loss_exp}")
        for name in ("d1_m", "d2_m"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("sigma_a2_w", "sigma_c2_w", "sigma_d2_w"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.cth >= 0:
            raise ValueError(f"cth must be >= 0, got {self.cth}")


@dataclass(frozen=True)
class Scenario:
    """System variant: duplex mode x relay protocol x harvesting protocol.

    TSR harvests for a fraction tau of the frame, PSR splits off a fraction
    rho of the received power, IRR harvests and decodes simultaneously and
    has no free parameter. pc_fraction diverts that share of the harvested
    power to processing at a DF relay (always zero for AF).
    """

    duplex: str
    relay: str
    eh: str
    tau: float | None = None
    rho: float | None = None
    pc_fraction: float = 0.0

    def __post_init__(self):
        if self.duplex not in DUPLEX_MODES:
            raise ValueError(f"duplex must be one of {DUPLEX_MODES}, got {self.duplex!r}")
        if self.relay not in RELAY_PROTOCOLS:
            raise ValueError(f"relay must be one of {RELAY_PROTOCOLS}, got {self.relay!r}")
        if self.eh not in EH_PROTOCOLS:
            raise ValueError(f"eh must be one of {EH_PROTOCOLS}, got {self.eh!r}")
        if self.duplex == "fd" and self.eh != "tsr":
            raise ValueError("fd supports only the tsr harvesting protocol")
        if self.eh == "tsr":
            if self.tau is None or not 0 < self.tau < 1:
                raise ValueError(f"tau must be in (0, 1) for tsr, got {self.tau}")
        elif self.tau is not None:
            raise ValueError(f"tau is only meaningful for tsr, got {self.tau}")
        if self.eh == "psr":
            if self.rho is None or not 0 < self.rho < 1:
                raise ValueError(f"rho must be in (0, 1) for psr, got {self.rho}")
        elif self.rho is not None:
            raise ValueError(f"rho is only meaningful for psr, got {self.rho}")
        if not 0 <= self.pc_fraction < 1:
            raise ValueError(f"pc_fraction must be in [0, 1), got {self.pc_fraction}")
        if self.relay == "af" and self.pc_fraction > 0:
            raise ValueError("pc_fraction > 0 applies to df relaying only")

    @property
    def eh_param(self) -> float | None:
        """The free harvesting parameter (tau for tsr, rho for psr)."""
        if self.eh == "tsr":
            return self.tau
        if self.eh == "psr":
            return self.rho
        return None

    def label(self) -> str:
        return f"{self.duplex}-{self.relay}-{self.eh}"

    @classmethod
    def from_label(cls, label: str, tau: float | None = None,
                   rho: float | None = None, pc_fraction: float = 0.0) -> "Scenario":
        parts = label.lower().split("-")
        if len(parts) != 3:
            raise ValueError(f"scenario label must look like 'hd-df-tsr', got {label!r}")
        duplex, relay, eh = parts
        return cls(duplex=duplex, relay=relay, eh=eh,
                   tau=tau if eh == "tsr" else None,
                   rho=rho if eh == "psr" else None,
                   pc_fraction=pc_fraction)


@dataclass(frozen=True)
class FadeSample:
    """One joint realization of squared gains (arrays allowed): x = h1^2,
    y = h2^2 and, for full-duplex, the loop-back gain w = g^2."""

    x: object
    y: object
    w: object = None

    def __post_init__(self):
        for name in ("x", "y"):
            if not np.all(np.asarray(getattr(self, name)) > 0):
                raise ValueError(f"{name} must be strictly positive")
        if self.w is not None and not np.all(np.asarray(self.w) > 0):
            raise ValueError("w must be strictly positive")


def hop_losses(cfg: SystemConfig) -> tuple[float, float]:
    return cfg.d1_m**cfg.path_loss_exp, cfg.d2_m**cfg.path_loss_exp


def relay_noise_w(cfg: SystemConfig, scenario: Scenario) -> float:
    """Noise variance at the relay's information receiver.

    PSR routes only the (1-rho) share of the antenna signal to the decoder,
    so the antenna noise contribution scales with (1-rho)."""
    if scenario.eh == "psr":
        return (1.0 - scenario.rho) * cfg.sigma_a2_w + cfg.sigma_c2_w
    return cfg.sigma_a2_w + cfg.sigma_c2_w


def eh_time_gain(cfg: SystemConfig, scenario: Scenario) -> float:
    """k = eta*tau/(1-tau), the harvested-power scale of the TSR protocols."""
    return cfg.eta * scenario.tau / (1.0 - scenario.tau)


def relay_power(cfg: SystemConfig, scenario: Scenario, x):
    """Usable relay transmit power for a first-hop squared gain x.

    HD-TSR retransmits over half the remaining frame, FD-TSR over all of
    it, which halves the FD power for the same harvest. A DF relay loses
    the pc_fraction share to processing.
    """
    lp1, _ = hop_losses(cfg)
    received = cfg.ps_watts * x / lp1
    if scenario.eh == "tsr":
        pr = eh_time_gain(cfg, scenario) * received
        if scenario.duplex == "hd":
            pr = 2.0 * pr
    elif scenario.eh == "psr":
        pr = cfg.eta * scenario.rho * received
    else:
        pr = cfg.eta * received
    if scenario.relay == "df":
        pr = (1.0 - scenario.pc_fraction) * pr
    return pr


def df_snr_coefficients(cfg: SystemConfig, scenario: Scenario) -> tuple[float, float]:
    """SNR coefficients (k1, k2) for DF relaying.

    HD: gamma_r = k1*x and gamma_d = k2*x*y.
    FD: gamma_r = k1/w (loop-back limited) and gamma_d = k2*x*y.
    """
    if scenario.relay != "df":
        raise ValueError("df_snr_coefficients requires a df scenario")
    lp1, lp2 = hop_losses(cfg)
    sr2 = relay_noise_w(cfg, scenario)
    cost = 1.0 - scenario.pc_fraction
    if scenario.duplex == "fd":
        k = eh_time_gain(cfg, scenario)
        return 1.0 / k, cost * k * cfg.ps_watts / (lp1 * lp2 * cfg.sigma_d2_w)
    if scenario.eh == "tsr":
        k1 = cfg.ps_watts / (lp1 * sr2)
        k2 = 2.0 * eh_time_gain(cfg, scenario) * cfg.ps_watts / (lp1 * lp2 * cfg.sigma_d2_w)
    elif scenario.eh == "psr":
        k1 = (1.0 - scenario.rho) * cfg.ps_watts / (lp1 * sr2)
        k2 = cfg.eta * scenario.rho * cfg.ps_watts / (lp1 * lp2 * cfg.sigma_d2_w)
    else:
        k1 = cfg.ps_watts / (lp1 * sr2)
        k2 = cfg.eta * cfg.ps_watts / (lp1 * lp2 * cfg.sigma_d2_w)
    return k1, cost * k2


def af_snr_coefficients(cfg: SystemConfig, scenario: Scenario) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of the HD-AF destination SNR A*x*y/(B*y + C)."""
    if scenario.duplex != "hd" or scenario.relay != "af":
        raise ValueError("af_snr_coefficients requires an hd-af scenario")
    lp1, lp2 = hop_losses(cfg)
    if scenario.eh == "tsr":
        twok = 2.0 * eh_time_gain(cfg, scenario)
        a = twok * cfg.ps_watts
        b = twok * lp1 * relay_noise_w(cfg, scenario)
        c = (1.0 - scenario.tau) * lp1 * lp2 * cfg.sigma_d2_w
    elif scenario.eh == "psr":
        rho = scenario.rho
        a = cfg.eta * rho * (1.0 - rho) * cfg.ps_watts
        b = cfg.eta * rho * lp1 * (cfg.sigma_c2_w + (1.0 - rho) * cfg.sigma_a2_w)
        c = (1.0 - rho) * lp1 * lp2 * cfg.sigma_d2_w
    else:
        a = cfg.eta * cfg.ps_watts
        b = cfg.eta * lp1 * relay_noise_w(cfg, scenario)
        c = lp1 * lp2 * cfg.sigma_d2_w
    return a, b, c


def snr_pair(cfg: SystemConfig, scenario: Scenario, fade: FadeSample):
    """Relay and destination SNRs (gamma_r, gamma_d); gamma_r is None for AF."""
    x, y, w = fade.x, fade.y, fade.w
    if scenario.duplex == "fd" and w is None:
        raise ValueError("fd scenarios need the loop-back gain w in the fade sample")
    if scenario.relay == "df":
        k1, k2 = df_snr_coefficients(cfg, scenario)
        gamma_r = k1 / w if scenario.duplex == "fd" else k1 * x
        return gamma_r, k2 * x * y
    if scenario.duplex == "hd":
        a, b, c = af_snr_coefficients(cfg, scenario)
        return None, a * x * y / (b * y + c)
    # fd-af: amplified loop-back interference enters both signal path and gain
    lp1, lp2 = hop_losses(cfg)
    k = eh_time_gain(cfg, scenario)
    sr2 = relay_noise_w(cfg, scenario)
    denom = lp1 * lp2 * sr2 * (1.0 / k + w) + cfg.ps_watts * k * w * x * y
    return None, cfg.ps_watts * x * y / denom


def capacity_prefactor(scenario: Scenario) -> float:
    """Fraction of the frame carrying one hop's data (the log2 multiplier)."""
    if scenario.duplex == "fd":
        return 1.0 - scenario.tau
    if scenario.eh == "tsr":
        return (1.0 - scenario.tau) / 2.0
    return 0.5


def capacities(cfg: SystemConfig, scenario: Scenario, fade: FadeSample):
    """Instantaneous capacities (c_r, c_d) in bps/Hz; c_r is None for AF."""
    gamma_r, gamma_d = snr_pair(cfg, scenario, fade)
    pre = capacity_prefactor(scenario)
    c_r = None if gamma_r is None else pre * np.log2(1.0 + gamma_r)
    return c_r, pre * np.log2(1.0 + gamma_d)


def outage_indicator(cfg: SystemConfig, scenario: Scenario, fade: FadeSample):
    """1 when the end-to-end capacity is below cth (bool array for arrays)."""
    c_r, c_d = capacities(cfg, scenario, fade)
    effective = c_d if c_r is None else np.minimum(c_r, c_d)
    return effective < cfg.cth


def threshold_snr(scenario: Scenario, cth: float) -> float:
    """Minimum SNR at which the instantaneous capacity reaches cth."""
    if scenario.duplex == "fd":
        expo = cth / (1.0 - scenario.tau)
    elif scenario.eh == "tsr":
        expo = 2.0 * cth / (1.0 - scenario.tau)
    else:
        expo = 2.0 * cth
    if expo >= 1024.0:
        return math.inf
    return 2.0**expo - 1.0


@dataclass(frozen=True)
class OutageEstimate:
    """A probability with its provenance; Monte Carlo estimates also carry
    the binomial standard error and the trial count."""

    value: float
    method: str
    stderr: float | None = None
    trials: int | None = None

    def __post_init__(self):
        if self.method not in ("analytic", "monte_carlo"):
            raise ValueError(f"unknown method {self.method!r}")
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"value must be in [0, 1], got {self.value}")
        if self.stderr is not None and self.stderr < 0:
            raise ValueError(f"stderr must be >= 0, got {self.stderr}")

    @property
    def is_degenerate(self) -> bool:
        """True for a Monte Carlo estimate that saw only one outcome."""
        return self.method == "monte_carlo" and self.value in (0.0, 1.0)
