"""
Counter-based per-trial random streams.

Each trial draws from Philox keyed by (master_seed, trial_index), so a trial
can be rerun on its own and trials can run in any order.
"""
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

SEED_BITS = 64


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    trial_index: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < 2**SEED_BITS:
            raise ValidationError(
                f"master_seed must be a {SEED_BITS}-bit unsigned integer",
                field="master_seed",
            )
        if self.trial_index < 0:
            raise ValidationError("trial_index must be >= 0", field="trial_index")

    def rng(self) -> np.random.Generator:
        return trial_rng(self)

    def child(self, trial_index: int) -> "SeedSpec":
        return SeedSpec(self.master_seed, trial_index)


def trial_rng(seed: SeedSpec) -> np.random.Generator:
    """Generator(Philox(SeedSequence(master_seed, spawn_key=(trial_index,))))."""
    sequence = np.random.SeedSequence(
        entropy=seed.master_seed, spawn_key=(seed.trial_index,)
    )
    return np.random.Generator(np.random.Philox(sequence))


def as_seed(seed) -> SeedSpec:
    """Accept a SeedSpec or a bare integer master seed."""
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed), 0)
