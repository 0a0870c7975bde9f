"""
Run configuration for the Spiral Workbench command line
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Subcommand(Enum):
    """Supported subcommands"""
    GEN_DK = "gen-dk"
    PERM = "perm"
    HOMOLOGY = "homology"
    SPIRAL = "spiral"
    TOTSS = "totss"
    RANDOM = "random"
    VERIFY = "verify"


class OutputFormat(Enum):
    JSON = "json"
    TSV = "tsv"
    DOT = "dot"


class InstanceKind(Enum):
    BICOMPLEX = "bicomplex"
    BISIMPLICIAL = "bisimplicial"
    COSIMPLICIAL = "cosimplicial"


def is_prime(value: int) -> bool:
    if value < 2:
        return False
    divisor = 2
    while divisor * divisor <= value:
        if value % divisor == 0:
            return False
        divisor += 1
    return True


class RunConfig(BaseModel):
    """Validated settings shared by every subcommand"""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    subcommand: Subcommand = Subcommand.VERIFY
    inputs: List[Path] = Field(default_factory=list)
    prime: int = 2
    seed: int = 0
    max_n: int = Field(default=3, ge=0)
    max_q: int = Field(default=3, ge=0)
    dim_cap: int = Field(default=2, ge=0)
    r_max: int = Field(default=6, ge=1)
    output_format: OutputFormat = OutputFormat.JSON
    suite: str = "all"
    seeds: int = Field(default=100, ge=1)
    max_gap: int = Field(default=4, ge=1, le=6)
    iso_cap: int = Field(default=10_000, ge=1)
    kind: InstanceKind = InstanceKind.BISIMPLICIAL
    progress: bool = False
    output_dir: Optional[Path] = None

    @field_validator("prime")
    @classmethod
    def _prime_in_range(cls, value: int) -> int:
        if not (2 <= value < 2 ** 16) or not is_prime(value):
            raise ValueError(f"p must be a prime below 2^16, got {value}")
        return value

    @field_validator("seed")
    @classmethod
    def _seed_is_64_bit(cls, value: int) -> int:
        if not (0 <= value < 2 ** 64):
            raise ValueError(f"seed must fit in 64 bits, got {value}")
        return value

    def seed_list(self) -> List[int]:
        """Consecutive seeds starting at `seed`, as used by corpus suites"""
        return [(self.seed + offset) % (2 ** 64) for offset in range(self.seeds)]

    def with_overrides(self, **changes) -> "RunConfig":
        return type(self).model_validate({**self.model_dump(), **changes})
