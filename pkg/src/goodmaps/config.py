import os
from dataclasses import dataclass, field


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class FiniteConfig:
    # exhaustive checkers are exponential in the point count
    size_cap: int = 16


@dataclass(frozen=True)
class AlgebraConfig:
    max_degree: int = field(default_factory=lambda: _env_int("GOODMAP_MAX_DEGREE", 48))
    max_basis: int = 400
    max_pairs: int = 20000
    max_branches: int = 256
    max_terms: int = 5000
    # integer coefficient size during fraction-free reduction
    max_coeff_bits: int = 4096


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 42
    exhaustive_max: int = 3
    sampled_points: int = 4
    samples: int = 10000
    composition_samples: int = 1000


FINITE = FiniteConfig()


def algebra_config():
    # re-read so GOODMAP_MAX_DEGREE set after import still applies
    return AlgebraConfig()
