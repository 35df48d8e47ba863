"""
Per-trial random generators derived from a master seed.

Mixing function (stable across versions):

    SeedSequence(entropy=master_seed, spawn_key=(trial,)) -> PCG64 -> Generator

which is the stream `SeedSequence(master_seed).spawn(...)[trial]` would hand
out, but addressable by trial index without spawning the earlier children.
"""
import numpy as np

SEED_MIXING = 'numpy.random.SeedSequence(entropy=master_seed, spawn_key=(trial,)) -> PCG64'


def derive_trial_seed(master_seed, trial):
    """SeedSequence for one trial."""
    if int(master_seed) < 0 or int(trial) < 0:
        raise ValueError(f"Seeds must be non-negative, got master={master_seed}, trial={trial}")
    return np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),))


def trial_rng(master_seed, trial):
    """Independent, reproducible generator for one trial."""
    return np.random.Generator(np.random.PCG64(derive_trial_seed(master_seed, trial)))


def seed_record(master_seed, trial):
    return {'master_seed': int(master_seed), 'trial': int(trial), 'mixing': SEED_MIXING}
