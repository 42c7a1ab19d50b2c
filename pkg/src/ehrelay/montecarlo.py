"""Seeded Monte Carlo estimation of the ergodic outage probability.

Trials are partitioned into fixed-size blocks; each block draws its fades
from a substream derived deterministically from (seed, block index), so
the estimate depends only on the plan and not on how blocks are scheduled.
Outage is decided from the instantaneous capacities, keeping this path
algebraically independent of the analytic evaluators.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .lognormal import sample_sq_gain
from .model import FadeSample, OutageEstimate, Scenario, SystemConfig, outage_indicator


@dataclass(frozen=True)
class McPlan:
    """Trial budget, master seed and block granularity of one estimate."""

    trials: int
    seed: int
    block_size: int = 1 << 16

    def __post_init__(self):
        if self.trials < 10_000:
            raise ValueError(f"trials must be >= 10000, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit value, got {self.seed}")
        if self.block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {self.block_size}")

    def blocks(self) -> list[tuple[int, int]]:
        """(index, size) of every block; the last one may be short."""
        out = []
        done = 0
        index = 0
        while done < self.trials:
            size = min(self.block_size, self.trials - done)
            out.append((index, size))
            done += size
            index += 1
        return out


def _block_outages(cfg: SystemConfig, scenario: Scenario,
                   seed: int, index: int, size: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    x = sample_sq_gain(cfg.ch1, rng, size)
    y = sample_sq_gain(cfg.ch2, rng, size)
    w = sample_sq_gain(cfg.chg, rng, size) if scenario.duplex == "fd" else None
    fade = FadeSample(x, y, w)
    return int(np.count_nonzero(outage_indicator(cfg, scenario, fade)))


def estimate_outage(cfg: SystemConfig, scenario: Scenario, plan: McPlan,
                    threads: int = 1) -> OutageEstimate:
    """Average the outage indicator over plan.trials independent fades.

    Deterministic for a fixed plan regardless of `threads`: blocks hold
    exact integer outage counts and summation is order-independent.
    """
    blocks = plan.blocks()
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(
                pool.map(
                    lambda blk: _block_outages(cfg, scenario, plan.seed, *blk),
                    blocks,
                )
            )
    else:
        counts = [_block_outages(cfg, scenario, plan.seed, *blk) for blk in blocks]
    failures = sum(counts)
    p_hat = failures / plan.trials
    stderr = np.sqrt(p_hat * (1.0 - p_hat) / plan.trials)
    return OutageEstimate(p_hat, "monte_carlo", float(stderr), plan.trials)


def estimate_outage_with_cost(cfg: SystemConfig, scenario: Scenario,
                              pc_fraction: float, plan: McPlan,
                              threads: int = 1) -> OutageEstimate:
    """estimate_outage with the DF relay's usable power scaled by (1 - pc).

    A processing cost on an AF relay is out of scope and rejected.
    """
    if scenario.relay != "df" and pc_fraction > 0:
        raise ValueError("pc_fraction > 0 applies to df relaying only")
    return estimate_outage(cfg, replace(scenario, pc_fraction=pc_fraction),
                           plan, threads=threads)
