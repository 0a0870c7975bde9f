"""
Abstract permutahedra as face lattices of ordered partitions, their order
complexes, the facet decomposition of the boundary and the obstruction labels
of the higher-differential construction.
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..resource.errors import IndexOutOfRange
from ..resource.logger import LoggerFactory
from ..simplicial.sset import SimplicialSet, homology, product, reduced_homology
from .simplex_cat import Injection, OrderedPartition, chain_from_partition, ordered_partitions

logger = LoggerFactory.get_logger("permutahedron")


def partition_name(partition: OrderedPartition) -> str:
    return "|".join(",".join(str(x) for x in block) for block in partition)


@dataclass(frozen=True)
class PermFace:
    """Face of P^n: an ordered partition of {0..n}"""
    partition: OrderedPartition

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.partition) - 1

    @property
    def dim(self) -> int:
        return self.n + 1 - len(self.partition)

    def name(self) -> str:
        return partition_name(self.partition)

    def splits(self) -> List["PermFace"]:
        """Faces one dimension down: one block split into two ordered parts"""
        result = []
        for index, block in enumerate(self.partition):
            for size in range(1, len(block)):
                for first in combinations(block, size):
                    second = tuple(x for x in block if x not in first)
                    parts = self.partition[:index] + (first, second) + self.partition[index + 1:]
                    result.append(PermFace(parts))
        return result

    def refines(self, other: "PermFace") -> bool:
        """True when this face lies in `other`: merging consecutive blocks gives `other`"""
        blocks = list(self.partition)
        position = 0
        for target in other.partition:
            collected: set = set()
            while position < len(blocks) and len(collected) < len(target):
                collected |= set(blocks[position])
                position += 1
            if collected != set(target):
                return False
        return position == len(blocks)


@dataclass
class FaceLattice:
    n: int
    faces: Dict[int, List[PermFace]]
    covers: List[Tuple[str, str]]

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces.get(k, [])) for k in range(self.n + 1))

    @property
    def maximum(self) -> PermFace:
        return self.faces[self.n][0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "faces": {str(k): [face.name() for face in faces] for k, faces in sorted(self.faces.items())},
            "covers": [list(pair) for pair in self.covers],
        }


def face_lattice(n: int) -> FaceLattice:
    """k-faces are ordered partitions of {0..n} into n-k+1 blocks"""
    faces: Dict[int, List[PermFace]] = {}
    for blocks in range(n + 1, 0, -1):
        dim = n + 1 - blocks
        faces[dim] = [PermFace(tuple(tuple(b) for b in p)) for p in ordered_partitions(n + 1, blocks)]
    covers = []
    for dim in range(1, n + 1):
        for face in faces[dim]:
            for lower in face.splits():
                covers.append((lower.name(), face.name()))
    return FaceLattice(n, faces, sorted(covers))


def _chains(lattice: FaceLattice) -> List[Tuple[PermFace, ...]]:
    """Strict chains of faces, coarsest first"""
    ordered = [face for dim in sorted(lattice.faces, reverse=True) for face in lattice.faces[dim]]
    finer = {face: [other for other in ordered if other.dim < face.dim and other.refines(face)] for face in ordered}
    result: List[Tuple[PermFace, ...]] = []

    def grow(chain: Tuple[PermFace, ...]) -> None:
        result.append(chain)
        for face in finer[chain[-1]]:
            grow(chain + (face,))

    for face in ordered:
        grow((face,))
    return result


def _nerve(chains: Sequence[Tuple[PermFace, ...]], basepoint: Optional[str] = None) -> SimplicialSet:
    cells: Dict[int, List[str]] = {}
    faces: Dict[str, list] = {}
    data: Dict[str, Any] = {}
    for chain in sorted(chains, key=lambda c: (len(c), [f.name() for f in c])):
        name = "/".join(face.name() for face in chain)
        k = len(chain) - 1
        cells.setdefault(k, []).append(name)
        faces[name] = [((), "/".join(face.name() for face in chain[:i] + chain[i + 1:])) for i in range(k + 1)] if k else []
        data[name] = {"chain": [[list(block) for block in face.partition] for face in chain]}
    return SimplicialSet(cells, faces, basepoint, data)


def _ascending_vertex(n: int) -> str:
    return partition_name(tuple((x,) for x in range(n + 1)))


def order_complex(n: int) -> SimplicialSet:
    """Nerve of the face poset of P^n, maximum included; d_i drops the i-th face counted coarse-first"""
    return _nerve(_chains(face_lattice(n)), _ascending_vertex(n))


def boundary_order_complex(n: int) -> SimplicialSet:
    """Chains avoiding the maximum: a triangulation of the boundary sphere"""
    lattice = face_lattice(n)
    top = lattice.maximum
    return _nerve([c for c in _chains(lattice) if top not in c], _ascending_vertex(n) if n else None)


def _relabel(partition: Sequence[Sequence[int]], labels: Sequence[int]) -> OrderedPartition:
    return tuple(tuple(sorted(labels[x] for x in block)) for block in partition)


def boundary_coequalizer_check(n: int) -> Dict[str, Any]:
    """Glue the facet products P^|S1|-1 x P^|S2|-1 and compare with the boundary of P^n"""
    from ..simplicial.dk_resolution import iso_check

    images: Dict[str, List[str]] = {}
    chains: Dict[str, Tuple[PermFace, ...]] = {}
    facets = ordered_partitions(n + 1, 2)
    product_cells = 0
    for first, second in facets:
        left, right = order_complex(len(first) - 1), order_complex(len(second) - 1)
        prism = product(left, right)
        for cell in prism.all_cells():
            product_cells += 1
            chain = []
            for vertex in prism.vertices_of(((), cell)):
                x, y = prism.cell_data[vertex]["left"], prism.cell_data[vertex]["right"]
                f = left.cell_data[x]["chain"][0]
                g = right.cell_data[y]["chain"][0]
                chain.append(PermFace(_relabel(f, first) + _relabel(g, second)))
            name = "/".join(face.name() for face in chain)
            images.setdefault(name, []).append(f"{partition_name((first, second))}:{cell}")
            chains[name] = tuple(chain)
    assembled = _nerve(list(chains.values()), _ascending_vertex(n) if n else None)
    target = boundary_order_complex(n)
    glued = {name: sources for name, sources in images.items() if len(sources) > 1}
    gluing_ok = all(len(chains[name][0].partition) >= 3 for name in glued) and \
        all(len(chains[name][0].partition) == 2 for name, sources in images.items() if len(sources) == 1)
    iso = iso_check(assembled, target, cap=10 ** 6) is not None
    sphere = _homology_of_sphere(assembled, n - 1)
    report = {
        "n": n,
        "facets": len(facets),
        "product_cells": product_cells,
        "glued_cells": len(images),
        "multiply_covered": len(glued),
        "counts": list(assembled.counts()),
        "gluing_along_triple_faces": gluing_ok,
        "isomorphic_to_boundary": iso,
        "sphere": sphere,
    }
    report["passed"] = gluing_ok and iso and sphere
    logger.debug("Boundary coequalizer", report)
    return report


def _homology_of_sphere(X: SimplicialSet, dimension: int) -> bool:
    if dimension == 0:
        answer = homology(X)
        return answer[0].rank == 2 and all(g.rank == 0 for k, g in answer.items() if k)
    reduced = reduced_homology(X)
    return all(g.rank == (1 if k == dimension else 0) and not g.torsion for k, g in reduced.items()) \
        and dimension in reduced


def facet_census(n: int) -> Dict[str, int]:
    """Facets of P^n by the shape (|S1|, |S2|)"""
    counts = Counter((len(first), len(second)) for first, second in ordered_partitions(n + 1, 2))
    return {f"{a},{b}": c for (a, b), c in sorted(counts.items())}


def label_obstruction_boundary(n: int, r: int) -> List[Dict[str, Any]]:
    """Label every facet (theta')(theta'') of the boundary of P^r for theta = d0 ... dr.

    The omitted set O'' of the rightmost factor decides the label:
      - O'' = {0}: "coherence"
      - 0 not in O'': "zero"
      - 0 in O'' and |O''| >= 2: "choice" at stage |O''| - 1, new when O'' holds 0 and 1 and the stage is r - 1
    """
    if r < 2 or n < r:
        raise IndexOutOfRange(f"Labels need r >= 2 and n >= r, got n={n}, r={r}")
    theta = Injection(n - r, n + 1, tuple(range(r + 1, n + 2)))
    labels = []
    for first, second in ordered_partitions(r + 1, 2):
        chain = chain_from_partition(theta, (first, second))
        left, right = chain.factors
        stage = None
        if second == (0,):
            label = "coherence"
        elif 0 not in second:
            label = "zero"
        else:
            label = "choice"
            stage = len(second) - 1
        labels.append({
            "facet": partition_name((first, second)),
            "left": [int(x) for x in first],
            "right": [int(x) for x in second],
            "words": [left.name(), right.name()],
            "label": label,
            "stage": stage,
            "new": label == "choice" and {0, 1} <= set(second) and stage == r - 1,
        })
    return labels


def _subset_name(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in subset) + "}"


def dual_witness_complex(r: int) -> SimplicialSet:
    """Nerve of the subsets of {0..r}: one top simplex per vertex of P^r, glued along edges of P^r"""
    universe = tuple(range(r + 1))
    subsets = [s for k in range(r + 2) for s in combinations(universe, k)]
    chains: List[Tuple[Tuple[int, ...], ...]] = []

    def grow(chain: Tuple[Tuple[int, ...], ...]) -> None:
        chains.append(chain)
        for s in subsets:
            if len(s) > len(chain[-1]) and set(chain[-1]) < set(s):
                grow(chain + (s,))

    for s in subsets:
        grow((s,))
    cells: Dict[int, List[str]] = {}
    faces: Dict[str, list] = {}
    for chain in sorted(chains, key=lambda c: (len(c), c)):
        name = "<".join(_subset_name(s) for s in chain)
        k = len(chain) - 1
        cells.setdefault(k, []).append(name)
        faces[name] = [((), "<".join(_subset_name(s) for s in chain[:i] + chain[i + 1:])) for i in range(k + 1)] if k else []
    return SimplicialSet(cells, faces, _subset_name(()))


def gluing_count(X: SimplicialSet) -> int:
    """Codimension-one cells shared by exactly two top cells"""
    top = X.dimension
    cofaces: Counter = Counter()
    for name in X.cells.get(top, []):
        for word, target in X.faces[name]:
            if not word:
                cofaces[target] += 1
    return sum(1 for count in cofaces.values() if count == 2)
