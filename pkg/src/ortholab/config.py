from dataclasses import dataclass

from ortholab.errors import ResourceError


@dataclass(frozen=True)
class Limits:
    max_dim: int = 8
    max_arity: int = 6
    max_free_dim: int = 4096
    max_partition_n: int = 8


LIMITS = Limits()

DEFAULT_TRIALS = 1000
DEFAULT_SEED = 0


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ResourceError(message)
