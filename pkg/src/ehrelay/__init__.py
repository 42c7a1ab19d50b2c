"""Outage analysis of energy-harvesting dual-hop relay links in log-normal
shadowing: analytic evaluators cross-validated by a seeded Monte Carlo
channel simulator, plus a scalar optimizer for the harvesting parameter
and a command-line experiment runner (`ehrelay`)."""

from .analytic import fd_af_outage, fd_df_outage, hd_af_outage, hd_df_outage, outage
from .lognormal import (
    XI,
    ChannelSpec,
    product_ccdf,
    q_function,
    sample_sq_gain,
    sq_gain_cdf,
    sq_gain_pdf,
)
from .model import (
    FadeSample,
    OutageEstimate,
    Scenario,
    SystemConfig,
    capacities,
    outage_indicator,
    relay_power,
    snr_pair,
    threshold_snr,
)
from .montecarlo import McPlan, estimate_outage, estimate_outage_with_cost
from .optimize import OptResult, minimize_over_eh_param
from .quadrature import QuadratureError, QuadSpec, integrate_lognormal_weighted

__version__ = "0.1.0"

__all__ = [
    "XI",
    "ChannelSpec",
    "FadeSample",
    "McPlan",
    "OptResult",
    "OutageEstimate",
    "QuadSpec",
    "QuadratureError",
    "Scenario",
    "SystemConfig",
    "capacities",
    "estimate_outage",
    "estimate_outage_with_cost",
    "fd_af_outage",
    "fd_df_outage",
    "hd_af_outage",
    "hd_df_outage",
    "integrate_lognormal_weighted",
    "minimize_over_eh_param",
    "outage",
    "outage_indicator",
    "product_ccdf",
    "q_function",
    "relay_power",
    "sample_sq_gain",
    "snr_pair",
    "sq_gain_cdf",
    "sq_gain_pdf",
    "threshold_snr",
]
