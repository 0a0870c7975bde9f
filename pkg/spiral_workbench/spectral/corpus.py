"""
Seeded instance corpus for the verification suites and the `random` command.

Every instance starts life as a bicomplex built from elementary pieces and is
then realized in the requested kind:

  - bicomplex:     the bicomplex itself
  - bisimplicial:  Gamma in both directions (normalizes back to the bicomplex)
  - cosimplicial:  the bicomplex read backwards, then the dual construction
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Union

import numpy as np
from tqdm import tqdm

from ..algebra.bicomplex import Bicomplex, Piece, bicomplex_from_pieces, change_basis, random_bicomplex
from ..resource.artifact_io import require_keys
from ..resource.errors import SchemaViolation, SizeLimitExceeded
from ..resource.logger import LoggerFactory
from ..resource.run_config import InstanceKind, RunConfig
from .simplicial_vs import BisimplicialVS, dold_kan_inverse2, double_moore
from .tot import CosimplicialSVS, cosimplicial_from_bicomplex, dual_dold_kan, normalized_bicomplex

Realized = Union[Bicomplex, BisimplicialVS, CosimplicialSVS]

logger = LoggerFactory.get_logger("corpus")

# Gamma sizes grow like 2^(N+Q) times the entry dimensions
MAX_LEVEL = 5
# square realizations for diagonal checks validate every bidegree up to this level
DIAGONAL_LEVEL = 4


@dataclass
class Instance:
    name: str
    kind: InstanceKind
    bicomplex: Bicomplex
    value: Realized
    seed: Optional[int] = None
    expect: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "seed": self.seed,
            "expect": self.expect,
            "instance": self.value.to_dict(),
        }


def realize(B: Bicomplex, kind: InstanceKind, N: Optional[int] = None, Q: Optional[int] = None) -> Realized:
    """The bicomplex as an object of the requested kind, truncated at N and Q"""
    N = B.max_n if N is None else N
    Q = B.max_q if Q is None else Q
    if N > MAX_LEVEL or Q > MAX_LEVEL:
        raise SizeLimitExceeded(f"Levels up to {MAX_LEVEL} are supported, got N={N}, Q={Q}",
                                {"N": N, "Q": Q})
    if kind == InstanceKind.BICOMPLEX:
        return B
    if kind == InstanceKind.BISIMPLICIAL:
        return dold_kan_inverse2(B, N, Q)
    return dual_dold_kan(cosimplicial_from_bicomplex(B, N), N, Q)


def diagonal_level(B: Bicomplex) -> int:
    """Smallest level holding all of B whose diagonal is exact through the top total degree of B"""
    support = [key for key, d in B.dims.items() if d]
    top = max((n + q for n, q in support), default=0)
    return max([top + 1] + [max(key) for key in support])


def diagonal_realization(B: Bicomplex) -> BisimplicialVS:
    """Gamma of B in both directions up to diagonal_level(B)"""
    level = diagonal_level(B)
    if level > DIAGONAL_LEVEL:
        raise SizeLimitExceeded(f"Diagonal checks need level {level}, above {DIAGONAL_LEVEL}",
                                {"level": level, "limit": DIAGONAL_LEVEL})
    return dold_kan_inverse2(B, level, level)


def random_instance(kind: InstanceKind, seed: int, prime: int = 2, max_n: int = 3, max_q: int = 3,
                    dim_cap: int = 2) -> Instance:
    rng = np.random.default_rng(seed)
    B = random_bicomplex(rng, prime, max_n, max_q, dim_cap)
    logger.debug("Random instance", {"kind": kind.value, "seed": seed, "dims": len(B.dims)})
    return Instance(f"random-{kind.value}-{seed}", kind, B, realize(B, kind, max_n, max_q), seed)


def instance_for_seed(config: RunConfig, seed: int) -> Instance:
    return random_instance(config.kind, seed, config.prime, config.max_n, config.max_q, config.dim_cap)


def corpus(config: RunConfig, kind: Optional[InstanceKind] = None, label: str = "corpus") -> Iterator[Instance]:
    """One random instance per seed of the configuration"""
    kind = kind or config.kind
    seeds = config.seed_list()
    for seed in tqdm(seeds, desc=label, disable=not config.progress):
        yield random_instance(kind, seed, config.prime, config.max_n, config.max_q, config.dim_cap)


# Engineered instances -----------------------------------------------------------

def _piece_instance(name: str, kind: InstanceKind, prime: int, pieces: List[Piece],
                    expect: Dict[str, Any], seed: Optional[int] = None) -> Instance:
    B = bicomplex_from_pieces(prime, pieces)
    if seed is not None:
        B = change_basis(B, np.random.default_rng(seed))
    return Instance(name, kind, B, realize(B, kind), seed, expect)


def engineered_instances(kind: InstanceKind, prime: int = 2) -> List[Instance]:
    """Instances with known long differentials: zig-zags of length r carry a nonzero d_r"""
    return [
        _piece_instance("zigzag-d2", kind, prime, [Piece("zigzag", 2, 0, 2)], {"d2_nonzero": True}),
        _piece_instance("zigzag-d2-shifted", kind, prime, [Piece("zigzag", 2, 1, 2), Piece("dot", 0, 0)],
                        {"d2_nonzero": True}),
        _piece_instance("zigzag-d2-mixed", kind, prime,
                        [Piece("zigzag", 2, 0, 2), Piece("square", 1, 1), Piece("vertical", 2, 1)],
                        {"d2_nonzero": True}, seed=11),
        _piece_instance("zigzag-d3", kind, prime, [Piece("zigzag", 3, 0, 3)], {"d3_nonzero": True}),
    ]


def constant_instance(kind: InstanceKind, prime: int = 2, dim: int = 1, N: int = 2, Q: int = 2) -> Instance:
    B = Bicomplex(prime, {(0, 0): dim})
    return Instance("constant", kind, B, realize(B, kind, N, Q), expect={"e1_support": [[0, 0]]})


def single_entry_instance(kind: InstanceKind, n: int, q: int, prime: int = 2, dim: int = 1) -> Instance:
    B = Bicomplex(prime, {(n, q): dim})
    return Instance(f"single-{n}-{q}", kind, B, realize(B, kind), expect={"entry": [n, q]})


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """Read an instance file written by `random` (or a bare object with a `kind` field)"""
    require_keys(data, ("kind",), "Instance")
    try:
        kind = InstanceKind(data["kind"])
    except ValueError:
        raise SchemaViolation(f"Unknown instance kind {data['kind']!r}")
    payload = data.get("instance", data)
    if kind == InstanceKind.BICOMPLEX:
        value = Bicomplex.from_dict(payload)
        B = value
    elif kind == InstanceKind.BISIMPLICIAL:
        value = BisimplicialVS.from_dict(payload)
        B = double_moore(value)
    else:
        value = CosimplicialSVS.from_dict(payload)
        cochains = normalized_bicomplex(value)
        B = Bicomplex(value.prime, {(value.N - k, q): d for (k, q), d in cochains.dims.items()},
                      {(value.N - k, q): m for (k, q), m in cochains.delta.items()},
                      {(value.N - k, q): m for (k, q), m in cochains.dv.items()})
    return Instance(data.get("name", "input"), kind, B, value, data.get("seed"), data.get("expect", {}))
