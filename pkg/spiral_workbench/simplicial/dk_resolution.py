"""
Mapping spaces of the Dwyer-Kan free resolution of a finite category.

An n-simplex of DK(C)(a, b) is a word of non-identity arrows of C with n
levels of bracketing.  The word is written in composition order (the rightmost
leaf acts first); level L_1 groups the leaves, L_2 groups the blocks of L_1,
and so on.  A bracketing is degenerate when some level only wraps single
blocks.  Faces:

  - d_n composes every L_1 block in C, so its composites become the leaves
  - d_i for i < n forgets level L_(n-i); the outermost level is simply dropped

For C = the opposite restricted simplex category, the component of theta is
the order complex of a permutahedron.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms import isomorphism

from ..combinatorics.simplex_cat import Injection, compose, enumerate_injections
from ..resource.errors import ObjectMismatch, SizeLimitExceeded, UnknownObject
from ..resource.logger import LoggerFactory
from .sset import Simplex, SimplicialSet, normalize_degeneracies

logger = LoggerFactory.get_logger("dk_resolution")

Levels = Tuple[Tuple[int, ...], ...]


@dataclass
class FinCat:
    """Finite category given by its full composition table.

    `arrows` maps a name to (source, target); `table[(f, g)]` is f o g, defined
    when g's target is f's source.
    """
    objects: List[Any]
    arrows: Dict[str, Tuple[Any, Any]]
    identities: Dict[Any, str]
    table: Dict[Tuple[str, str], str] = field(default_factory=dict)

    def src(self, arrow: str) -> Any:
        return self.arrows[arrow][0]

    def tgt(self, arrow: str) -> Any:
        return self.arrows[arrow][1]

    def is_identity(self, arrow: str) -> bool:
        return self.identities.get(self.src(arrow)) == arrow

    def compose(self, f: str, g: str) -> str:
        """f o g (g first)"""
        if self.tgt(g) != self.src(f):
            raise ObjectMismatch(f"Cannot compose {f} after {g}")
        return self.table[(f, g)]

    def compose_word(self, word: Sequence[str]) -> str:
        result = word[-1]
        for arrow in reversed(word[:-1]):
            result = self.compose(arrow, result)
        return result

    def hom(self, a: Any, b: Any) -> List[str]:
        return [name for name, (s, t) in self.arrows.items() if s == a and t == b]

    def non_identity_out_of(self, a: Any) -> List[str]:
        return [name for name, (s, _) in self.arrows.items() if s == a and not self.is_identity(name)]

    def validate(self) -> None:
        """Unit and associativity laws over the whole table"""
        for name, (s, t) in self.arrows.items():
            if self.compose(name, self.identities[s]) != name or self.compose(self.identities[t], name) != name:
                raise ObjectMismatch(f"Unit law fails at {name}")
        for (f, g), fg in self.table.items():
            for h in self.arrows:
                if self.tgt(h) != self.src(g):
                    continue
                if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                    raise ObjectMismatch(f"Associativity fails at ({f}, {g}, {h})")

    def require_directed(self) -> None:
        """Words of non-identity arrows are finite only when the category has no loops"""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.objects)
        for name, (s, t) in self.arrows.items():
            if self.is_identity(name):
                continue
            if s == t:
                raise SizeLimitExceeded(f"Arrow {name} is a non-identity endomorphism; the resolution is infinite")
            graph.add_edge(s, t)
        if not nx.is_directed_acyclic_graph(graph):
            raise SizeLimitExceeded("The category has a cycle of arrows; the resolution is infinite")


def arrow_name(theta: Injection) -> str:
    return f"{theta.name()}@{theta.tgt}"


def delta_op_category(k: int, n: int) -> FinCat:
    """Objects [k..n] with every injection [m] -> [j] read as an arrow j -> m"""
    if k < -1 or k > n:
        raise UnknownObject(f"Bad object range [{k}, {n}]")
    objects = list(range(n, k - 1, -1))
    injections: Dict[str, Injection] = {}
    arrows: Dict[str, Tuple[int, int]] = {}
    identities: Dict[int, str] = {}
    for j in range(k, n + 1):
        for m in range(k, j + 1):
            for theta in enumerate_injections(m, j):
                name = arrow_name(theta)
                injections[name] = theta
                arrows[name] = (j, m)
                if theta.is_identity:
                    identities[j] = name
    table = {}
    for f, f_inj in injections.items():
        for g, g_inj in injections.items():
            # g: j -> m then f: m -> l, i.e. f_inj: [l] -> [m] followed by g_inj: [m] -> [j]
            if g_inj.src == f_inj.tgt:
                table[(f, g)] = arrow_name(compose(f_inj, g_inj))
    return FinCat(objects, arrows, identities, table)


def free_dag_category(edges: Sequence[Tuple[str, Any, Any]]) -> FinCat:
    """Free category on a directed acyclic graph; composites are named "f.g" for f o g"""
    graph = nx.MultiDiGraph()
    for name, s, t in edges:
        graph.add_edge(s, t, key=name)
    if not nx.is_directed_acyclic_graph(graph):
        raise SizeLimitExceeded("Free category on a graph with cycles is infinite")
    objects = sorted(graph.nodes, key=str)
    paths: Dict[str, Tuple[Tuple[str, ...], Any, Any]] = {}

    def extend(word: Tuple[str, ...], start: Any, end: Any) -> None:
        paths[".".join(word)] = (word, start, end)
        for _, nxt, key in graph.out_edges(end, keys=True):
            extend((key,) + word, start, nxt)

    for name, s, t in edges:
        extend((name,), s, t)
    arrows = {name: (s, t) for name, (_, s, t) in paths.items()}
    identities = {obj: f"id@{obj}" for obj in objects}
    arrows.update({ident: (obj, obj) for obj, ident in identities.items()})
    table = {}
    for f, (f_word, f_src, f_tgt) in paths.items():
        for g, (g_word, g_src, g_tgt) in paths.items():
            if g_tgt == f_src:
                table[(f, g)] = ".".join(f_word + g_word)
    for name, (s, t) in arrows.items():
        table[(name, identities[s])] = name
        table[(identities[t], name)] = name
    return FinCat(objects, arrows, identities, table)


@dataclass(frozen=True)
class NestedWord:
    """Leaves in written order plus bracket levels, innermost first, as block sizes"""
    leaves: Tuple[str, ...]
    levels: Levels = ()

    @property
    def dim(self) -> int:
        return len(self.levels)

    def counts(self) -> Tuple[int, ...]:
        return (len(self.leaves),) + tuple(len(level) for level in self.levels)

    def name(self) -> str:
        groups = list(self.leaves)
        for level in self.levels:
            merged, start = [], 0
            for size in level:
                merged.append("(" + " ".join(groups[start:start + size]) + ")")
                start += size
            groups = merged
        return " ".join(groups)

    def face(self, C: FinCat, i: int) -> "NestedWord":
        n = self.dim
        if i == n:
            leaves, start = [], 0
            for size in self.levels[0]:
                leaves.append(C.compose_word(self.leaves[start:start + size]))
                start += size
            return NestedWord(tuple(leaves), self.levels[1:])
        drop = n - i - 1
        levels = list(self.levels)
        if drop < n - 1:
            inner, outer = levels[drop], levels[drop + 1]
            merged, start = [], 0
            for size in outer:
                merged.append(sum(inner[start:start + size]))
                start += size
            levels[drop + 1] = tuple(merged)
        del levels[drop]
        return NestedWord(self.leaves, tuple(levels))

    def to_dict(self) -> Dict[str, Any]:
        return {"leaves": list(self.leaves), "levels": [list(level) for level in self.levels]}


def is_degenerate(word: NestedWord) -> bool:
    """Some level wraps every block below it on its own"""
    counts = word.counts()
    return any(a == b for a, b in zip(counts, counts[1:]))


def _normalize(word: NestedWord) -> Tuple[Tuple[int, ...], NestedWord]:
    """(degeneracy word, nondegenerate word) with s-indices counted coarse-first"""
    counts = word.counts()
    n = word.dim
    repeats = []
    kept = []
    for j, level in enumerate(word.levels, start=1):
        if counts[j] == counts[j - 1]:
            repeats.append(n - j)
        else:
            kept.append(level)
    return normalize_degeneracies(sorted(repeats, reverse=True)), NestedWord(word.leaves, tuple(kept))


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered block sizes summing to `total`"""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _level_stacks(count: int, depth: int) -> Iterator[Levels]:
    """Strictly coarsening stacks of `depth` levels over `count` items"""
    if depth == 0:
        yield ()
        return
    for parts in range(1, count):
        for level in _compositions(count, parts):
            for rest in _level_stacks(parts, depth - 1):
                yield (level,) + rest


def _words(C: FinCat, a: Any, b: Any) -> List[Tuple[str, ...]]:
    """Words of non-identity arrows from a to b in written order"""
    found: List[Tuple[str, ...]] = []

    def walk(word: Tuple[str, ...], at: Any) -> None:
        if at == b and word:
            found.append(word)
        for arrow in sorted(C.non_identity_out_of(at)):
            walk((arrow,) + word, C.tgt(arrow))

    walk((), a)
    return sorted(found, key=lambda w: (len(w), w))


def dk_mapping_space(C: FinCat, a: Any, b: Any, max_dim: Optional[int] = None) -> SimplicialSet:
    """Nondegenerate simplices of DK(C)(a, b) up to `max_dim`"""
    if a not in C.objects or b not in C.objects:
        raise UnknownObject(f"Unknown object {a if a not in C.objects else b!r}")
    C.require_directed()
    words = _words(C, a, b)
    if a == b:
        words = [(C.identities[a],)]
    longest = max((len(w) for w in words), default=1)
    top = longest - 1 if max_dim is None else min(max_dim, longest - 1)
    cells: Dict[int, List[str]] = {}
    faces: Dict[str, List[Simplex]] = {}
    data: Dict[str, Any] = {}
    for n in range(top + 1):
        for leaves in words:
            for levels in _level_stacks(len(leaves), n):
                word = NestedWord(leaves, levels)
                name = word.name()
                cells.setdefault(n, []).append(name)
                entries = []
                for i in range(n + 1 if n else 0):
                    degeneracies, target = _normalize(word.face(C, i))
                    entries.append((degeneracies, target.name()))
                faces[name] = entries
                data[name] = {"leaves": list(leaves), "levels": [list(level) for level in levels],
                              "composite": C.compose_word(leaves)}
    logger.debug("Generated mapping space", {"from": str(a), "to": str(b), "counts": [len(cells[n]) for n in sorted(cells)]})
    return SimplicialSet(cells, faces, cell_data=data)


def component_of(space: SimplicialSet, theta: Union[Injection, str]) -> SimplicialSet:
    """Cells whose leaves compose to theta"""
    target = arrow_name(theta) if isinstance(theta, Injection) else theta
    keep = [name for name in space.all_cells() if space.cell_data.get(name, {}).get("composite") == target]
    if not keep:
        raise ObjectMismatch(f"{target} is not an arrow of this mapping space")
    chosen = set(keep)
    cells = {n: [c for c in names if c in chosen] for n, names in space.cells.items()}
    return SimplicialSet(cells, {c: space.faces[c] for c in keep}, cell_data={c: space.cell_data[c] for c in keep})


def boundary_of_component(component: SimplicialSet) -> SimplicialSet:
    """Cells avoiding the vertex of the one-leaf word"""
    apex = next(name for name in component.cells.get(0, []) if len(component.cell_data[name]["leaves"]) == 1)
    keep = [name for name in component.all_cells() if apex not in component.vertices_of(((), name))]
    chosen = set(keep)
    cells = {n: [c for c in names if c in chosen] for n, names in component.cells.items()}
    return SimplicialSet(cells, {c: component.faces[c] for c in keep},
                         cell_data={c: component.cell_data[c] for c in keep})


def components_by_arrow(C: FinCat, a: Any, b: Any) -> Dict[str, SimplicialSet]:
    space = dk_mapping_space(C, a, b)
    arrows = sorted({space.cell_data[name]["composite"] for name in space.cells.get(0, [])})
    return {arrow: component_of(space, arrow) for arrow in arrows}


# Isomorphism ------------------------------------------------------------------

def face_graph(X: SimplicialSet) -> nx.MultiDiGraph:
    """Cells as nodes; an edge cell -> target labelled "i:word" for every face"""
    graph = nx.MultiDiGraph()
    for name in X.all_cells():
        graph.add_node(name, dim=X.dim_of(name))
    for name in X.all_cells():
        for i, (word, target) in enumerate(X.faces[name]):
            graph.add_edge(name, target, label=f"{i}:{list(word)}")
    return graph


def _labels(edges: Dict[Any, Dict[str, Any]]) -> List[str]:
    return sorted(attrs["label"] for attrs in edges.values())


def iso_check(A: SimplicialSet, B: SimplicialSet, cap: int = 10_000) -> Optional[Dict[str, str]]:
    """A dimension-preserving bijection of cells commuting with all faces, or None"""
    for X in (A, B):
        if X.total_cells() > cap:
            raise SizeLimitExceeded(f"Isomorphism search over {X.total_cells()} cells exceeds the cap of {cap}",
                                    {"cells": X.total_cells(), "cap": cap})
    if A.counts() != B.counts():
        return None
    if set(A.all_cells()) == set(B.all_cells()) and all(A.faces[c] == B.faces[c] for c in A.all_cells()):
        return {c: c for c in A.all_cells()}
    matcher = isomorphism.MultiDiGraphMatcher(
        face_graph(A), face_graph(B),
        node_match=lambda x, y: x["dim"] == y["dim"],
        edge_match=lambda x, y: _labels(x) == _labels(y))
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)
