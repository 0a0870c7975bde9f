"""
Finite simplicial sets stored by nondegenerate cells and face data.

A simplex is a pair (degeneracy word, cell): the word (j1, ..., jk) stands for
s_{j1} ... s_{jk} applied to the nondegenerate `cell`, always in the canonical
form j1 > j2 > ... > jk.  Face targets may be degenerate; every constructor
validates the simplicial identities before returning.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..resource.errors import (IndexOutOfRange, NotASubcomplex, SchemaViolation,
                               SimplicialIdentityError, UnsupportedRing)
from ..resource.logger import LoggerFactory

Simplex = Tuple[Tuple[int, ...], str]

logger = LoggerFactory.get_logger("sset")


def normalize_degeneracies(word: Sequence[int]) -> Tuple[int, ...]:
    """Canonical strictly descending form via s_i s_j = s_(j+1) s_i for i <= j"""
    letters = list(word)
    changed = True
    while changed:
        changed = False
        for t in range(len(letters) - 1):
            if letters[t] <= letters[t + 1]:
                letters[t], letters[t + 1] = letters[t + 1] + 1, letters[t]
                changed = True
    return tuple(letters)


@dataclass
class SimplicialSet:
    cells: Dict[int, List[str]]
    faces: Dict[str, List[Simplex]]
    basepoint: Optional[str] = None
    cell_data: Dict[str, Any] = field(default_factory=dict)
    validate_on_init: bool = True

    def __post_init__(self):
        self.cells = {int(k): list(v) for k, v in self.cells.items() if v}
        self._dims: Dict[str, int] = {}
        for n, names in self.cells.items():
            for name in names:
                if name in self._dims:
                    raise SchemaViolation(f"Duplicate cell name {name!r}")
                self._dims[name] = n
        self.faces = {name: [(tuple(word), target) for word, target in self.faces.get(name, [])]
                      for name in self._dims}
        if self.validate_on_init:
            self.validate()

    # Basic queries -------------------------------------------------------

    def dim_of(self, cell: str) -> int:
        return self._dims[cell]

    def __contains__(self, cell: str) -> bool:
        return cell in self._dims

    @property
    def dimension(self) -> int:
        return max(self.cells) if self.cells else -1

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.cells.get(n, [])) for n in range(self.dimension + 1))

    def total_cells(self) -> int:
        return len(self._dims)

    def all_cells(self) -> List[str]:
        return [name for n in sorted(self.cells) for name in self.cells[n]]

    def simplex_dim(self, simplex: Simplex) -> int:
        word, cell = simplex
        return self._dims[cell] + len(word)

    # Face calculus -------------------------------------------------------

    def face(self, i: int, simplex: Simplex) -> Simplex:
        """d_i of a possibly degenerate simplex, via the mixed simplicial identities"""
        word, cell = simplex
        degree = self._dims[cell] + len(word)
        if degree == 0 or not 0 <= i <= degree:
            raise IndexOutOfRange(f"d{i} undefined on a simplex of dimension {degree}")
        out: List[int] = []
        for t, j in enumerate(word):
            if i < j:
                out.append(j - 1)
            elif i == j or i == j + 1:
                return normalize_degeneracies(out + list(word[t + 1:])), cell
            else:
                out.append(j)
                i -= 1
        target_word, target = self.faces[cell][i]
        return normalize_degeneracies(out + list(target_word)), target

    def some_vertex(self, simplex: Simplex) -> str:
        current = simplex
        while self.simplex_dim(current) > 0:
            current = self.face(0, current)
        return current[1]

    def vertices_of(self, simplex: Simplex) -> Tuple[str, ...]:
        """Ordered vertices v_0, ..., v_n of a simplex"""
        n = self.simplex_dim(simplex)
        result = []
        for k in range(n + 1):
            current = simplex
            while self.simplex_dim(current) > k:
                current = self.face(self.simplex_dim(current), current)
            while self.simplex_dim(current) > 0:
                current = self.face(0, current)
            result.append(current[1])
        return tuple(result)

    def validate(self) -> None:
        for name, n in self._dims.items():
            face_list = self.faces[name]
            if n == 0:
                if face_list:
                    raise SchemaViolation(f"Vertex {name!r} must not have faces")
                continue
            if len(face_list) != n + 1:
                raise SchemaViolation(f"Cell {name!r} of dimension {n} needs {n + 1} faces, has {len(face_list)}")
            for i, (word, target) in enumerate(face_list):
                if target not in self._dims:
                    raise SchemaViolation(f"Face d{i} of {name!r} points at unknown cell {target!r}")
                if normalize_degeneracies(word) != tuple(word):
                    raise SchemaViolation(f"Face d{i} of {name!r} has a non-canonical degeneracy word {list(word)}")
                base = self._dims[target]
                if base + len(word) != n - 1:
                    raise SchemaViolation(f"Face d{i} of {name!r} has dimension {base + len(word)}, expected {n - 1}")
                for t, j in enumerate(word):
                    if j > base + len(word) - t - 1:
                        raise SchemaViolation(f"Degeneracy s{j} out of range in face d{i} of {name!r}")
        if self.basepoint is not None and self._dims.get(self.basepoint) != 0:
            raise SchemaViolation(f"Basepoint {self.basepoint!r} is not a vertex")
        self.check_identities()

    def check_identities(self) -> None:
        for name, n in self._dims.items():
            if n < 2:
                continue
            top: Simplex = ((), name)
            for j in range(1, n + 1):
                for i in range(j):
                    left = self.face(i, self.face(j, top))
                    right = self.face(j - 1, self.face(i, top))
                    if left != right:
                        raise SimplicialIdentityError(
                            f"d{i}d{j} != d{j - 1}d{i} on {name!r}",
                            {"cell": name, "i": i, "j": j, "left": list(left), "right": list(right)})

    # Serialization -------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cells": {str(n): list(names) for n, names in sorted(self.cells.items())},
            "faces": {name: [[list(word), target] for word, target in self.faces[name]]
                      for name in self.all_cells() if self.faces[name]},
            "basepoint": self.basepoint,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SimplicialSet":
        if not isinstance(data, dict) or "cells" not in data:
            raise SchemaViolation("Simplicial set JSON needs a 'cells' object")
        try:
            cells = {int(n): [str(c) for c in names] for n, names in data["cells"].items()}
            faces = {str(name): [(tuple(int(j) for j in word), str(target)) for word, target in entries]
                     for name, entries in data.get("faces", {}).items()}
        except (TypeError, ValueError, AttributeError):
            raise SchemaViolation("Malformed simplicial set JSON")
        try:
            return cls(cells, faces, data.get("basepoint"))
        except SimplicialIdentityError as e:
            raise SchemaViolation(f"Simplicial identities fail: {e.message}", e.witness)

    # Chains --------------------------------------------------------------

    def boundary_matrix(self, n: int) -> np.ndarray:
        """Normalized boundary C_n -> C_(n-1) over the integers"""
        rows = self.cells.get(n - 1, [])
        cols = self.cells.get(n, [])
        index = {name: k for k, name in enumerate(rows)}
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
        if n == 0:
            return matrix
        for c, name in enumerate(cols):
            for i, (word, target) in enumerate(self.faces[name]):
                if not word:
                    matrix[index[target], c] += (-1) ** i
        return matrix


# Constructors ---------------------------------------------------------------

def _vertex_tuple_name(vertices: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in vertices) + ")"


def _simplex_cells(n: int, keep) -> Tuple[Dict[int, List[str]], Dict[str, List[Simplex]]]:
    cells: Dict[int, List[str]] = {}
    faces: Dict[str, List[Simplex]] = {}
    for m in range(n + 1):
        for vertices in combinations(range(n + 1), m + 1):
            if not keep(vertices):
                continue
            name = _vertex_tuple_name(vertices)
            cells.setdefault(m, []).append(name)
            faces[name] = [((), _vertex_tuple_name(vertices[:i] + vertices[i + 1:])) for i in range(m + 1)] if m else []
    return cells, faces


def standard_simplex(n: int) -> SimplicialSet:
    if n < 0:
        raise IndexOutOfRange(f"Simplex dimension must be non-negative, got {n}")
    return SimplicialSet(*_simplex_cells(n, lambda v: True))


def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise IndexOutOfRange(f"Simplex dimension must be non-negative, got {n}")
    return SimplicialSet(*_simplex_cells(n, lambda v: len(v) <= n))


def horn(n: int, k: int) -> SimplicialSet:
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"Horn index {k} out of range for dimension {n}")
    facet_k = tuple(v for v in range(n + 1) if v != k)
    return SimplicialSet(*_simplex_cells(n, lambda v: len(v) <= n and v != facet_k))


def subcomplex(X: SimplicialSet, names: Iterable[str]) -> SimplicialSet:
    """Smallest subcomplex containing the named cells"""
    keep = set()
    stack = list(names)
    while stack:
        name = stack.pop()
        if name in keep:
            continue
        if name not in X:
            raise NotASubcomplex(f"Unknown cell {name!r}")
        keep.add(name)
        stack.extend(target for _, target in X.faces[name])
    cells = {n: [c for c in names_n if c in keep] for n, names_n in X.cells.items()}
    faces = {c: X.faces[c] for c in keep}
    basepoint = X.basepoint if X.basepoint in keep else None
    return SimplicialSet(cells, faces, basepoint, {c: X.cell_data[c] for c in keep if c in X.cell_data})


def is_subcomplex(X: SimplicialSet, A: SimplicialSet) -> bool:
    for name in A.all_cells():
        if name not in X or X.dim_of(name) != A.dim_of(name) or X.faces[name] != A.faces[name]:
            return False
    return True


def _fresh_name(X: SimplicialSet, preferred: str) -> str:
    name = preferred
    while name in X:
        name += "'"
    return name


def _collapsed(point: str, degree: int) -> Simplex:
    """The totally degenerate simplex of `degree` on a vertex"""
    return tuple(range(degree - 1, -1, -1)), point


def quotient(X: SimplicialSet, A: SimplicialSet) -> SimplicialSet:
    """X/A pointed at the image of A (a disjoint basepoint when A is empty)"""
    if not is_subcomplex(X, A):
        raise NotASubcomplex("Quotient requires a subcomplex")
    point = _fresh_name(X, "*")
    collapsed = set(A.all_cells())
    cells: Dict[int, List[str]] = {0: [point]}
    faces: Dict[str, List[Simplex]] = {point: []}
    for n in sorted(X.cells):
        for name in X.cells[n]:
            if name in collapsed:
                continue
            cells.setdefault(n, []).append(name)
            faces[name] = [_collapsed(point, n - 1) if target in collapsed else (word, target)
                           for word, target in X.faces[name]]
    return SimplicialSet(cells, faces, point)


def cone(X: SimplicialSet) -> SimplicialSet:
    """X * Δ^0 with the cone point last"""
    apex = _fresh_name(X, "c")
    cells: Dict[int, List[str]] = {n: list(names) for n, names in X.cells.items()}
    cells.setdefault(0, []).insert(0, apex)
    faces: Dict[str, List[Simplex]] = {name: list(X.faces[name]) for name in X.all_cells()}
    faces[apex] = []

    def coned(name: str) -> str:
        return f"C{name}"

    for n in sorted(X.cells):
        for name in X.cells[n]:
            top = coned(name)
            cells.setdefault(n + 1, []).append(top)
            if n == 0:
                faces[top] = [((), apex), ((), name)]
            else:
                faces[top] = [(word, coned(target)) for word, target in X.faces[name]] + [((), name)]
    return SimplicialSet(cells, faces, apex)


def tr_simplex(n: int) -> SimplicialSet:
    """Δ^n subdivided as the cone on its boundary"""
    if n < 1:
        raise IndexOutOfRange(f"tr_simplex needs n >= 1, got {n}")
    return cone(boundary(n))


def _product_name(x: str, y: str, left: Sequence[int], right: Sequence[int]) -> str:
    return f"{x}x{y}[{','.join(map(str, left))}|{','.join(map(str, right))}]"


def product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """Categorical product; nondegenerate k-cells are (s_I x, s_J y) with I, J disjoint"""
    cells: Dict[int, List[str]] = {}
    parts: Dict[str, Tuple[str, str, Tuple[int, ...], Tuple[int, ...]]] = {}
    for x in X.all_cells():
        a = X.dim_of(x)
        for y in Y.all_cells():
            b = Y.dim_of(y)
            for k in range(max(a, b), a + b + 1):
                for left in combinations(range(k), k - a):
                    rest = [i for i in range(k) if i not in left]
                    for right in combinations(rest, k - b):
                        name = _product_name(x, y, left, right)
                        cells.setdefault(k, []).append(name)
                        parts[name] = (x, y, left, right)

    def face_of(name: str, i: int) -> Simplex:
        x, y, left, right = parts[name]
        left_word, x_face = X.face(i, (tuple(sorted(left, reverse=True)), x))
        right_word, y_face = Y.face(i, (tuple(sorted(right, reverse=True)), y))
        common = set(left_word) & set(right_word)

        def squeeze(word: Sequence[int]) -> Tuple[int, ...]:
            return tuple(sorted(j - sum(1 for c in common if c < j) for j in word if j not in common))

        target = _product_name(x_face, y_face, squeeze(left_word), squeeze(right_word))
        return tuple(sorted(common, reverse=True)), target

    faces = {name: [face_of(name, i) for i in range(k + 1)] if k else []
             for k, names in cells.items() for name in names}
    data = {name: {"left": parts[name][0], "right": parts[name][1],
                   "left_degeneracies": list(parts[name][2]), "right_degeneracies": list(parts[name][3])}
            for name in parts}
    return SimplicialSet(cells, faces, cell_data=data)


def fattened_simplex(n: int) -> SimplicialSet:
    """∂Δ^n x Δ^1 with Δ^n x {0} glued in along ∂Δ^n x {0}"""
    if n < 1:
        raise IndexOutOfRange(f"fattened_simplex needs n >= 1, got {n}")
    prism = product(boundary(n), standard_simplex(1))
    top = _vertex_tuple_name(range(n + 1))
    start = _vertex_tuple_name((0,))
    name = _product_name(top, start, (), tuple(range(n)))
    cells = {k: list(v) for k, v in prism.cells.items()}
    cells.setdefault(n, []).append(name)
    faces = dict(prism.faces)
    faces[name] = []
    for i in range(n + 1):
        facet = _vertex_tuple_name(tuple(v for v in range(n + 1) if v != i))
        faces[name].append(((), _product_name(facet, start, (), tuple(range(n - 1)))))
    return SimplicialSet(cells, faces)


def opposite(X: SimplicialSet) -> SimplicialSet:
    """Reverse every simplex: d_i becomes d_(n-i)"""

    def flip(word: Sequence[int], base: int) -> Tuple[int, ...]:
        flipped = []
        degree = base
        for j in reversed(tuple(word)):
            flipped.append(degree - j)
            degree += 1
        return normalize_degeneracies(tuple(reversed(flipped)))

    faces = {}
    for name in X.all_cells():
        n = X.dim_of(name)
        entries = []
        for i in range(n + 1 if n else 0):
            word, target = X.faces[name][n - i]
            entries.append((flip(word, X.dim_of(target)), target))
        faces[name] = entries
    return SimplicialSet(X.cells, faces, X.basepoint, dict(X.cell_data))


# Invariants -----------------------------------------------------------------

def chain_complex(X: SimplicialSet, ring: Any = "Z"):
    from ..algebra.chain_complex import ChainComplex
    dims = {n: len(X.cells.get(n, [])) for n in range(X.dimension + 1)}
    diffs = {n: X.boundary_matrix(n) for n in range(1, X.dimension + 1)}
    return ChainComplex(ring, dims, diffs)


def homology(X: SimplicialSet, ring: Any = "Z") -> Dict[int, Any]:
    """Homology of normalized chains; ring is "Z" or a prime"""
    from ..algebra.chain_complex import homology as complex_homology
    if ring != "Z" and not isinstance(ring, (int, np.integer)):
        raise UnsupportedRing(f"Unsupported ring {ring!r}")
    return complex_homology(chain_complex(X, ring))


def reduced_homology(X: SimplicialSet, ring: Any = "Z") -> Dict[int, Any]:
    from ..algebra.chain_complex import ChainComplex, homology as complex_homology
    base = chain_complex(X, ring)
    if not X.cells.get(0):
        return complex_homology(base)
    dims = dict(base.dims)
    dims[-1] = 1
    diffs = dict(base.diffs)
    diffs[0] = np.ones((1, dims[0]), dtype=np.int64)
    return complex_homology(ChainComplex(ring, dims, diffs))


def is_acyclic(X: SimplicialSet, ring: Any = "Z") -> bool:
    """Reduced homology vanishes"""
    return all(_is_zero_group(answer) for answer in reduced_homology(X, ring).values())


def _is_zero_group(answer: Any) -> bool:
    return answer.rank == 0 and not answer.torsion


def euler_characteristic(X: SimplicialSet) -> int:
    return sum((-1) ** n * len(names) for n, names in X.cells.items())


def components(X: SimplicialSet) -> List[List[str]]:
    """Cells grouped by connected component, ordered by first vertex"""
    graph = nx.Graph()
    vertices = X.cells.get(0, [])
    graph.add_nodes_from(vertices)
    for edge in X.cells.get(1, []):
        graph.add_edge(X.faces[edge][0][1], X.faces[edge][1][1])
    order = {v: k for k, v in enumerate(vertices)}
    groups = sorted((sorted(c, key=order.get) for c in nx.connected_components(graph)),
                    key=lambda c: order[c[0]])
    which = {v: k for k, group in enumerate(groups) for v in group}
    result: List[List[str]] = [[] for _ in groups]
    for name in X.all_cells():
        result[which[X.some_vertex(((), name))]].append(name)
    return result


def cofibration_sequence_check(n: int) -> Dict[str, Any]:
    """Δ^(n-1)/∂Δ^(n-1) -> Δ^n/Λ^n_0 -> Δ^n/∂Δ^n: outer terms spheres, middle contractible"""
    sphere_low = quotient(standard_simplex(n - 1), boundary(n - 1))
    middle = quotient(standard_simplex(n), horn(n, 0))
    sphere_high = quotient(standard_simplex(n), boundary(n))
    report = {
        "n": n,
        "middle_contractible": is_acyclic(middle),
        "low_sphere": is_sphere(sphere_low, n - 1),
        "high_sphere": is_sphere(sphere_high, n),
    }
    report["passed"] = all(report[k] for k in ("middle_contractible", "low_sphere", "high_sphere"))
    return report


def is_sphere(X: SimplicialSet, dimension: int) -> bool:
    reduced = reduced_homology(X)
    for degree, answer in reduced.items():
        expected = 1 if degree == dimension else 0
        if answer.rank != expected or answer.torsion:
            return False
    return dimension in reduced
