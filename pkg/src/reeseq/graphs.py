"""Graph encodings of a word's zero behavior.

Three graphs are attached to a polynomial p over a combinatorial Rees matrix
semigroup:

* the adjacency digraph on p's symbols, with an arc (c, d) exactly when the
  two-symbol word cd divides p syntactically;
* a bipartite graph on first-coordinate vertices (side X) and
  second-coordinate vertices (side Y): an adjacent pair vw in p contributes
  the edge {w_1 in X, v_2 in Y}, so an edge {x, y} carries the nonzero
  constraint M(e(y), e(x)) != 0 on evaluations;
* the identified graph, where constant vertices carrying the same index are
  merged across sides.  Merging compares row and column indices as integers,
  which is meaningful over identity-matrix contexts (the only place it is
  used); variable vertices are never merged.

Vertices are plain tuples: ("v", name, side) for variables,
("c", index, side) for constants, and ("m", index) after identification,
with side 1 = X and side 2 = Y.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ReesError
from .words import Polynomial


@dataclass(frozen=True)
class Digraph:
    vertices: frozenset
    edges: frozenset  # ordered pairs


@dataclass(frozen=True)
class Bigraph:
    vertices: frozenset
    edges: frozenset  # (x_vertex, y_vertex) pairs, X side first


def _sym_vertex(s, side: int):
    if s.is_var:
        return ("v", s.name, side)
    idx = s.elem.i if side == 1 else s.elem.lam
    return ("c", idx, side)


def build_adjacency(p: Polynomial) -> Digraph:
    verts = frozenset(("v", s.name) if s.is_var else ("k", s.elem)
                      for s in p.word)
    edges = set()
    for a, b in zip(p.word, p.word[1:]):
        ka = ("v", a.name) if a.is_var else ("k", a.elem)
        kb = ("v", b.name) if b.is_var else ("k", b.elem)
        edges.add((ka, kb))
    return Digraph(verts, frozenset(edges))


def build_bipartite(p: Polynomial) -> Bigraph:
    verts = set()
    for s in p.word:
        verts.add(_sym_vertex(s, 1))
        verts.add(_sym_vertex(s, 2))
    edges = set()
    for v, w in zip(p.word, p.word[1:]):
        edges.add((_sym_vertex(w, 1), _sym_vertex(v, 2)))
    return Bigraph(frozenset(verts), frozenset(edges))


def _identify(vertex):
    if vertex[0] == "c":
        return ("m", vertex[1])
    return vertex


def build_identified(p: Polynomial) -> Bigraph:
    b = build_bipartite(p)
    verts = frozenset(_identify(v) for v in b.vertices)
    edges = frozenset((_identify(x), _identify(y)) for x, y in b.edges)
    return Bigraph(verts, edges)


# ---------------------------------------------------------------------------
# Connected components

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def components(g: Bigraph) -> frozenset:
    """Partition of the vertex set into connected components."""
    uf = _UnionFind(g.vertices)
    for a, b in g.edges:
        uf.union(a, b)
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(uf.find(v), set()).add(v)
    return frozenset(frozenset(c) for c in groups.values())


def _indices_of(component) -> set[int]:
    return {v[1] for v in component if v[0] in ("c", "m")}


def is_consistent(component) -> bool:
    """A component is consistent when its constant vertices agree on one index."""
    return len(_indices_of(component)) <= 1


def has_inconsistent_component(g: Bigraph) -> bool:
    return any(not is_consistent(c) for c in components(g))


def component_of(partition, vertex) -> frozenset:
    for c in partition:
        if vertex in c:
            return c
    raise ReesError(f"vertex {vertex!r} not in partition")


def component_sequencing(p: Polynomial, side: str) -> tuple:
    """Components of the bipartite graph in order of first appearance.

    Scanning left to right, a position contributes its first-coordinate
    vertex before its second; right to left, the mirror order.
    """
    part = components(build_bipartite(p))
    word = p.word if side == "left" else tuple(reversed(p.word))
    sides = (1, 2) if side == "left" else (2, 1)
    seen: list = []
    for s in word:
        for sd in sides:
            c = component_of(part, _sym_vertex(s, sd))
            if c not in seen:
                seen.append(c)
    return tuple(seen)


# ---------------------------------------------------------------------------
# Separating-set families for ordered variable pairs

def factor_variable_sets(p: Polynomial, x: str, y: str) -> frozenset:
    """Sets of variables lying strictly between an x...y factor of p.

    A factor counts when neither x nor y occurs inside it (x = y allowed);
    the empty set appears exactly when xy divides p directly.  Constants
    inside a factor are permitted and ignored; the families are meaningful
    for terms.
    """
    word = p.word
    out = set()
    for a in range(len(word)):
        if not (word[a].is_var and word[a].name == x):
            continue
        inner: set[str] = set()
        for b in range(a + 1, len(word)):
            s = word[b]
            if s.is_var and s.name == y:
                out.add(frozenset(inner))
                break  # extending further would put y inside the factor
            if s.is_var and s.name == x:
                break
            if s.is_var:
                inner.add(s.name)
    return frozenset(out)


def antichain(p: Polynomial, x: str, y: str) -> frozenset:
    """Inclusion-minimal members of the factor family for the pair (x, y)."""
    fam = factor_variable_sets(p, x, y)
    return frozenset(s for s in fam
                     if not any(t < s for t in fam))


def antichain_table(p: Polynomial) -> tuple:
    """Canonical table of antichain families over all ordered variable pairs."""
    names = sorted(p.variables)
    return tuple(((x, y), antichain(p, x, y)) for x in names for y in names)


# ---------------------------------------------------------------------------
# DOT export

def _vertex_label(v) -> str:
    if v[0] == "v":
        return v[1] if len(v) == 2 else f"{v[1]}_{v[2]}"
    if v[0] == "c":
        return f"{v[1] + 1}_{'X' if v[2] == 1 else 'Y'}"
    if v[0] == "m":
        return str(v[1] + 1)
    if v[0] == "k":  # adjacency-graph constant: an element
        e = v[1]
        return f"[{e.i + 1},{e.lam + 1}]" if e.g == 0 else \
            f"[{e.i + 1},{e.g + 1},{e.lam + 1}]"
    return str(v)


def to_dot(g, name: str = "g") -> str:
    """Graph text in DOT format, one edge per line."""
    lines = []
    directed = isinstance(g, Digraph)
    lines.append(("digraph" if directed else "graph") + f" {name} {{")
    arrow = "->" if directed else "--"
    for v in sorted(g.vertices, key=repr):
        lines.append(f'  "{_vertex_label(v)}";')
    for a, b in sorted(g.edges, key=repr):
        lines.append(f'  "{_vertex_label(a)}" {arrow} "{_vertex_label(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
