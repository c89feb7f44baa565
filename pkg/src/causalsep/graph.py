"""Mixed causal graphs and the structural operations shared by all modules.

A :class:`MixedGraph` holds directed (``->``), bidirected (``<->``) and
undirected (``--``) edges over string node ids. Graphs are immutable;
node order is the insertion order, which fixes every deterministic
tie-break in the package. At most one edge may join a pair of nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels

NodeSet = frozenset

EDGE_KINDS = ("->", "<->", "--")

_ROLES = ("latent", "exposure", "outcome", "context")

_CLOSURE_RELATION = {
    "ancestors": "parents",
    "descendants": "children",
    "anteriors": "anterior_pred",
}


def _check_id(v) -> str:
    if not isinstance(v, str) or not v or "#" in v or any(c.isspace() for c in v):
        raise ValueError(
            f"invalid node id {v!r}: ids are non-empty strings without "
            "whitespace or '#'"
        )
    return v


class MixedGraph:
    """Immutable mixed graph over string node ids."""

    __slots__ = (
        "_ids",
        "_index",
        "_edges",
        "_pa",
        "_ch",
        "_sp",
        "_ne",
        "_pair_kind",
        "_csr_cache",
    )

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple] = ()):
        ids: list[str] = []
        index: dict[str, int] = {}
        for v in nodes:
            _check_id(v)
            if v in index:
                raise ValueError(f"duplicate node id {v!r}")
            index[v] = len(ids)
            ids.append(v)
        pa: list[list[int]] = [[] for _ in ids]
        ch: list[list[int]] = [[] for _ in ids]
        sp: list[list[int]] = [[] for _ in ids]
        ne: list[list[int]] = [[] for _ in ids]
        pair_kind: dict[tuple[int, int], str] = {}
        stored: list[tuple[int, str, int]] = []
        for edge in edges:
            try:
                u, kind, v = edge
            except (TypeError, ValueError):
                raise ValueError(
                    f"malformed edge {edge!r}: expected (tail, kind, head)"
                ) from None
            if kind not in EDGE_KINDS:
                raise ValueError(f"unknown edge kind {kind!r} in edge {edge!r}")
            iu = index.get(u)
            iv = index.get(v)
            if iu is None:
                raise ValueError(f"edge endpoint {u!r} is not a declared node")
            if iv is None:
                raise ValueError(f"edge endpoint {v!r} is not a declared node")
            if iu == iv:
                raise ValueError(f"self-loop on node {u!r}")
            key = (iu, iv) if iu < iv else (iv, iu)
            if key in pair_kind:
                raise ValueError(f"multiple edges between {u!r} and {v!r}")
            pair_kind[key] = (iu, kind, iv)
            stored.append((iu, kind, iv))
            if kind == "->":
                ch[iu].append(iv)
                pa[iv].append(iu)
            elif kind == "<->":
                sp[iu].append(iv)
                sp[iv].append(iu)
            else:
                ne[iu].append(iv)
                ne[iv].append(iu)
        self._ids = tuple(ids)
        self._index = index
        self._edges = tuple(stored)
        self._pa = tuple(tuple(s) for s in pa)
        self._ch = tuple(tuple(s) for s in ch)
        self._sp = tuple(tuple(s) for s in sp)
        self._ne = tuple(tuple(s) for s in ne)
        self._pair_kind = pair_kind
        self._csr_cache: dict[str, tuple] = {}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], extra_nodes: Iterable[str] = ()):
        """Build a graph whose nodes are collected from ``edges`` in order
        of first mention, followed by any unmentioned ``extra_nodes``."""
        order: list[str] = []
        seen: set[str] = set()
        edges = list(edges)
        for u, _, v in edges:
            for w in (u, v):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        for w in extra_nodes:
            if w not in seen:
                seen.add(w)
                order.append(w)
        return cls(order, edges)

    @classmethod
    def _trusted(cls, nodes: Iterable[str], edges: Iterable[tuple]) -> "MixedGraph":
        """Construction fast path for derived graphs (subgraphs,
        transforms, augmentations) whose node ids and edges come from an
        already-validated graph; skips the per-id and per-edge checks."""
        self = cls.__new__(cls)
        ids = tuple(nodes)
        index = {v: k for k, v in enumerate(ids)}
        pa: list[list[int]] = [[] for _ in ids]
        ch: list[list[int]] = [[] for _ in ids]
        sp: list[list[int]] = [[] for _ in ids]
        ne: list[list[int]] = [[] for _ in ids]
        pair_kind: dict[tuple[int, int], tuple] = {}
        stored: list[tuple[int, str, int]] = []
        for u, kind, v in edges:
            iu = index[u]
            iv = index[v]
            key = (iu, iv) if iu < iv else (iv, iu)
            pair_kind[key] = (iu, kind, iv)
            stored.append((iu, kind, iv))
            if kind == "->":
                ch[iu].append(iv)
                pa[iv].append(iu)
            elif kind == "<->":
                sp[iu].append(iv)
                sp[iv].append(iu)
            else:
                ne[iu].append(iv)
                ne[iv].append(iu)
        self._ids = ids
        self._index = index
        self._edges = tuple(stored)
        self._pa = tuple(tuple(s) for s in pa)
        self._ch = tuple(tuple(s) for s in ch)
        self._sp = tuple(tuple(s) for s in sp)
        self._ne = tuple(tuple(s) for s in ne)
        self._pair_kind = pair_kind
        self._csr_cache = {}
        return self

    @classmethod
    def _trusted_indexed(
        cls, base: "MixedGraph", edges: Iterable[tuple]
    ) -> "MixedGraph":
        """Trusted construction over ``base``'s node set with edges
        already given as (tail index, kind, head index) triples."""
        self = cls.__new__(cls)
        n = len(base._ids)
        pa: list[list[int]] = [[] for _ in range(n)]
        ch: list[list[int]] = [[] for _ in range(n)]
        sp: list[list[int]] = [[] for _ in range(n)]
        ne: list[list[int]] = [[] for _ in range(n)]
        stored: list[tuple[int, str, int]] = []
        for iu, kind, iv in edges:
            stored.append((iu, kind, iv))
            if kind == "->":
                ch[iu].append(iv)
                pa[iv].append(iu)
            elif kind == "<->":
                sp[iu].append(iv)
                sp[iv].append(iu)
            else:
                ne[iu].append(iv)
                ne[iv].append(iu)
        self._ids = base._ids
        self._index = base._index
        self._edges = tuple(stored)
        self._pa = tuple(tuple(s) for s in pa)
        self._ch = tuple(tuple(s) for s in ch)
        self._sp = tuple(tuple(s) for s in sp)
        self._ne = tuple(tuple(s) for s in ne)
        self._pair_kind = None
        self._csr_cache = {}
        return self

    # -- basic structure ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def nodes(self) -> tuple:
        return self._ids

    @property
    def node_set(self) -> frozenset:
        return frozenset(self._ids)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._ids == other._ids and self._edge_signature() == other._edge_signature()

    def __hash__(self):
        return hash((self._ids, frozenset(self._edge_signature())))

    def _edge_signature(self) -> set:
        sig = set()
        for iu, kind, iv in self._edges:
            if kind == "->":
                sig.add((iu, kind, iv))
            else:
                sig.add((min(iu, iv), kind, max(iu, iv)))
        return sig

    def __repr__(self):
        return f"MixedGraph(n={self.n}, m={len(self._edges)})"

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> Iterator[tuple]:
        for iu, kind, iv in self._edges:
            yield self._ids[iu], kind, self._ids[iv]

    def index_of(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise ValueError(f"unknown node {v!r}") from None

    def node_at(self, i: int) -> str:
        return self._ids[i]

    def indices_of(self, vs: Iterable[str]) -> list:
        return [self.index_of(v) for v in vs]

    def id_set(self, idxs: Iterable[int]) -> frozenset:
        return frozenset(self._ids[i] for i in idxs)

    # -- neighbourhoods --------------------------------------------------

    def parents(self, v: str) -> frozenset:
        return self.id_set(self._pa[self.index_of(v)])

    def children(self, v: str) -> frozenset:
        return self.id_set(self._ch[self.index_of(v)])

    def spouses(self, v: str) -> frozenset:
        """Nodes joined to ``v`` by a bidirected edge."""
        return self.id_set(self._sp[self.index_of(v)])

    def und_neighbors(self, v: str) -> frozenset:
        return self.id_set(self._ne[self.index_of(v)])

    def neighbors(self, v: str) -> frozenset:
        """All nodes adjacent to ``v``, irrespective of edge kind."""
        i = self.index_of(v)
        return self.id_set(self._pa[i] + self._ch[i] + self._sp[i] + self._ne[i])

    def _pairs_map(self) -> dict:
        """Edge lookup keyed by ordered index pair; built on demand for
        graphs created through the trusted index-level path."""
        if self._pair_kind is None:
            self._pair_kind = {
                ((iu, iv) if iu < iv else (iv, iu)): (iu, kind, iv)
                for iu, kind, iv in self._edges
            }
        return self._pair_kind

    def adjacent(self, u: str, v: str) -> bool:
        iu, iv = self.index_of(u), self.index_of(v)
        return ((iu, iv) if iu < iv else (iv, iu)) in self._pairs_map()

    def edge_between(self, u: str, v: str):
        """The edge joining ``u`` and ``v``, oriented as stored, or None
        when they are not adjacent."""
        iu, iv = self.index_of(u), self.index_of(v)
        hit = self._pairs_map().get((iu, iv) if iu < iv else (iv, iu))
        if hit is None:
            return None
        a, kind, b = hit
        return (self._ids[a], kind, self._ids[b])

    @property
    def has_undirected(self) -> bool:
        return any(k == "--" for _, k, _ in self._edges)

    @property
    def has_bidirected(self) -> bool:
        return any(k == "<->" for _, k, _ in self._edges)

    @property
    def is_directed_only(self) -> bool:
        return all(k == "->" for _, k, _ in self._edges)

    # -- flat array views -------------------------------------------------

    def csr(self, relation: str) -> tuple:
        """CSR view of a node relation.

        ``relation`` is one of ``parents``, ``children``, ``spouses``,
        ``anterior_pred`` (parents plus undirected neighbours),
        ``skeleton`` (all neighbours) or ``incidence``. All views are
        cached on the graph. ``incidence`` additionally returns a code
        array: bit 0 of ``codes[e]`` marks an arrowhead at the arc's tail
        node, bit 1 an arrowhead at its head node.
        """
        cached = self._csr_cache.get(relation)
        if cached is not None:
            return cached
        n = self.n
        if relation == "incidence":
            counts = [
                len(self._pa[i]) + len(self._ch[i]) + len(self._sp[i]) + len(self._ne[i])
                for i in range(n)
            ]
            indptr = np.zeros(n + 1, dtype=np.int32)
            np.cumsum(counts, out=indptr[1:])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            codes = np.empty(int(indptr[-1]), dtype=np.uint8)
            pos = indptr[:-1].copy()
            for i in range(n):
                p = int(pos[i])
                for v in self._ch[i]:  # i -> v : head at the far end
                    indices[p] = v
                    codes[p] = 2
                    p += 1
                for v in self._pa[i]:  # v -> i : head at this end
                    indices[p] = v
                    codes[p] = 1
                    p += 1
                for v in self._sp[i]:
                    indices[p] = v
                    codes[p] = 3
                    p += 1
                for v in self._ne[i]:
                    indices[p] = v
                    codes[p] = 0
                    p += 1
            out = (indptr, indices, codes)
        else:
            if relation == "parents":
                lists = self._pa
            elif relation == "children":
                lists = self._ch
            elif relation == "spouses":
                lists = self._sp
            elif relation == "anterior_pred":
                lists = tuple(self._pa[i] + self._ne[i] for i in range(n))
            elif relation == "skeleton":
                lists = tuple(
                    self._pa[i] + self._ch[i] + self._sp[i] + self._ne[i]
                    for i in range(n)
                )
            else:
                raise ValueError(f"unknown relation {relation!r}")
            indptr = np.zeros(n + 1, dtype=np.int32)
            np.cumsum([len(s) for s in lists], out=indptr[1:])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            p = 0
            for s in lists:
                for v in s:
                    indices[p] = v
                    p += 1
            out = (indptr, indices)
        self._csr_cache[relation] = out
        return out

    def mask_of(self, vs: Iterable[str]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=np.uint8)
        for v in vs:
            mask[self.index_of(v)] = 1
        return mask

    def ids_from_mask(self, mask) -> frozenset:
        return frozenset(self._ids[i] for i in range(self.n) if mask[i])

    def closure_mask(self, seed_indices, relation: str) -> np.ndarray:
        """Reflexive closure of ``seed_indices`` under a closure relation
        (``ancestors``, ``descendants`` or ``anteriors``) as a uint8 mask."""
        rel = _CLOSURE_RELATION.get(relation)
        if rel is None:
            raise ValueError(f"unknown closure relation {relation!r}")
        seeds = np.fromiter(seed_indices, dtype=np.int32)
        if seeds.size == 0:
            return np.zeros(self.n, dtype=np.uint8)
        indptr, indices = self.csr(rel)
        return _kernels.reach(indptr, indices, seeds, self.n)


# -- structural operations ---------------------------------------------


def closure(g: MixedGraph, seed: Iterable[str], relation: str) -> frozenset:
    """Reflexive ancestral/descendant/anterior closure of ``seed``.

    Ancestors follow directed edges tailwards, descendants headwards;
    anteriors additionally walk undirected edges, closing ``seed`` under
    the walks that end with an arrow-free prefix into it.
    """
    mask = g.closure_mask((g.index_of(v) for v in seed), relation)
    return g.ids_from_mask(mask)


def transform(
    g: MixedGraph,
    remove_into: Iterable[str] = (),
    remove_out: Iterable[str] = (),
) -> MixedGraph:
    """Drop edge-ends at the given nodes.

    ``remove_into`` deletes every edge carrying an arrowhead at a listed
    node (its incoming directed edges and all its bidirected edges);
    ``remove_out`` deletes every edge carrying a tail at a listed node
    (its outgoing directed edges and all its undirected edges).
    """
    into = {v for v in remove_into}
    out = {v for v in remove_out}
    for v in into | out:
        g.index_of(v)  # raises on unknown ids
    kept = []
    for u, kind, v in g.edges():
        if kind == "->" and (v in into or u in out):
            continue
        if kind == "<->" and (u in into or v in into):
            continue
        if kind == "--" and (u in out or v in out):
            continue
        kept.append((u, kind, v))
    return MixedGraph._trusted(g.nodes, kept)


def induced_subgraph(g: MixedGraph, keep: Iterable[str]) -> MixedGraph:
    keep_set = {v for v in keep}
    for v in keep_set:
        g.index_of(v)
    nodes = [v for v in g.nodes if v in keep_set]
    edges = [
        (u, kind, v) for u, kind, v in g.edges() if u in keep_set and v in keep_set
    ]
    return MixedGraph._trusted(nodes, edges)


def _district_masks(g: MixedGraph) -> list:
    """Connected components of the bidirected part, as index lists
    (singletons included)."""
    n = g.n
    seen = [False] * n
    comps = []
    for i in range(n):
        if seen[i]:
            continue
        seen[i] = True
        comp = [i]
        stack = [i]
        while stack:
            u = stack.pop()
            for w in g._sp[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def augment(g: MixedGraph) -> MixedGraph:
    """The undirected graph joining every collider-connected pair.

    Two nodes are adjacent in the result iff the input joins them by an
    edge or by a path on which every intermediate node is a collider.
    Concretely: take the skeleton, then for every connected component D
    of the bidirected part place a clique over D together with all
    directed parents of D's members. On a directed-only graph this is
    the classic marry-the-parents construction.
    """
    n = g.n
    adj = [0] * n
    for iu, _, iv in g._edges:
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
    for comp in _district_masks(g):
        clique = 0
        for u in comp:
            clique |= 1 << u
            for p in g._pa[u]:
                clique |= 1 << p
        m = clique
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            adj[u] |= clique & ~lsb
            m ^= lsb
    edges = []
    for u in range(n):
        m = adj[u] >> (u + 1)
        v = u + 1
        while m:
            if m & 1:
                edges.append((g._ids[u], "--", g._ids[v]))
            m >>= 1
            v += 1
    return MixedGraph._trusted(g.nodes, edges)


def reduce_constraints(
    ugraph: MixedGraph,
    anchors_x: Iterable[str],
    anchors_y: Iterable[str],
    i: Iterable[str],
    unrestricted: Iterable[str],
) -> MixedGraph:
    """Fold separator-side constraints into an undirected graph.

    Nodes in ``i`` are committed to every separator, so they are plainly
    deleted (their work is done). Nodes in ``unrestricted`` lie outside
    the candidate pool and may never be cut, so each is deleted after
    joining its neighbourhood into a clique, preserving all connections
    through it. Anchor nodes are the terminals the caller still needs and
    are exempt from the clique-deletion even if listed as unrestricted.
    """
    for _, kind, _ in ugraph.edges():
        if kind != "--":
            raise ValueError("reduce_constraints expects an undirected graph")
    ax = frozenset(anchors_x)
    ay = frozenset(anchors_y)
    drop = frozenset(i)
    if drop & (ax | ay):
        clash = sorted(drop & (ax | ay))[0]
        raise ValueError(f"node {clash!r} is both an anchor and committed")
    n = ugraph.n
    adj = [0] * n
    for iu, _, iv in ugraph._edges:
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
    gone = 0
    for v in sorted(ugraph.indices_of(drop)):
        bit = 1 << v
        m = adj[v]
        while m:
            lsb = m & -m
            adj[lsb.bit_length() - 1] &= ~bit
            m ^= lsb
        adj[v] = 0
        gone |= bit
    exempt = ax | ay | drop
    bypass = [
        v
        for v in sorted(ugraph.indices_of(frozenset(unrestricted)))
        if ugraph._ids[v] not in exempt
    ]
    for v in bypass:
        bit = 1 << v
        neigh = adj[v]
        m = neigh
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            adj[u] = (adj[u] | (neigh & ~lsb)) & ~bit
            m ^= lsb
        adj[v] = 0
        gone |= bit
    nodes = [ugraph._ids[v] for v in range(n) if not (gone >> v) & 1]
    edges = []
    for u in range(n):
        m = adj[u] >> (u + 1)
        v = u + 1
        while m:
            if m & 1:
                edges.append((ugraph._ids[u], "--", ugraph._ids[v]))
            m >>= 1
            v += 1
    return MixedGraph._trusted(nodes, edges)


# -- validation ---------------------------------------------------------


def _directed_cycle(g: MixedGraph):
    """A node on a directed cycle, or None."""
    n = g.n
    indeg = [len(g._pa[i]) for i in range(n)]
    queue = [i for i in range(n) if indeg[i] == 0]
    done = 0
    while queue:
        u = queue.pop()
        done += 1
        for v in g._ch[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if done == n:
        return None
    for i in range(n):
        if indeg[i] > 0:
            return g._ids[i]
    return None


def validate(g: MixedGraph, graph_class: str) -> list:
    """Violations keeping ``g`` out of ``graph_class`` (empty when valid).

    ``graph_class`` is ``"dag"``, ``"ag"`` (ancestral graph) or ``"mag"``.
    Ancestral graphs forbid directed cycles, bidirected edges between a
    node and its ancestor, and arrowheads at nodes with undirected edges;
    maximal ancestral graphs additionally require every non-adjacent pair
    to be separable. The maximality check runs a separation test per
    non-adjacent pair.
    """
    if graph_class not in ("dag", "ag", "mag"):
        raise ValueError(f"unknown graph class {graph_class!r}")
    viol = []
    if graph_class == "dag":
        for u, kind, v in g.edges():
            if kind != "->":
                viol.append(f"non-directed edge {u} {kind} {v}")
        cyc = _directed_cycle(g)
        if cyc is not None:
            viol.append(f"directed cycle through {cyc}")
        return viol
    cyc = _directed_cycle(g)
    if cyc is not None:
        viol.append(f"directed cycle through {cyc}")
        return viol
    for u, kind, v in g.edges():
        if kind == "<->":
            iu, iv = g.index_of(u), g.index_of(v)
            if g.closure_mask([iu], "ancestors")[iv]:
                viol.append(f"almost-directed cycle: {v} <-> {u} with {v} -> ... -> {u}")
            elif g.closure_mask([iv], "ancestors")[iu]:
                viol.append(f"almost-directed cycle: {u} <-> {v} with {u} -> ... -> {v}")
    for u, kind, v in g.edges():
        if kind == "--":
            for w in (u, v):
                if g.parents(w) or g.spouses(w):
                    viol.append(
                        f"arrowhead at {w}, which lies on the undirected edge {u} -- {v}"
                    )
    if graph_class == "mag" and not viol:
        from .separation import test_sep

        nodes = g.nodes
        for a in range(g.n):
            for b in range(a + 1, g.n):
                u, v = nodes[a], nodes[b]
                if g.adjacent(u, v):
                    continue
                z = closure(g, (u, v), "anteriors") - {u, v}
                if not test_sep(g, frozenset((u,)), frozenset((v,)), z):
                    viol.append(f"non-maximal pair {u}, {v}: no set separates them")
    return viol


# -- text format ---------------------------------------------------------


@dataclass(frozen=True)
class GraphDoc:
    """A graph plus the node roles carried by its text form."""

    graph: MixedGraph
    latent: frozenset = frozenset()
    exposure: frozenset = frozenset()
    outcome: frozenset = frozenset()
    context: frozenset = frozenset()

    @property
    def observed(self) -> frozenset:
        return self.graph.node_set - self.latent


def parse_graph(text: str) -> GraphDoc:
    """Parse the line-oriented graph format.

    Lines are ``node <id> [latent|exposure|outcome|context]`` or
    ``edge <id> {->|<->|--} <id>``; ``#`` starts a comment. Nodes first
    appearing on an edge line are declared implicitly, in order of
    mention. Unknown keywords, roles or edge kinds are errors naming the
    line.
    """
    order: list[str] = []
    declared: set[str] = set()
    roles: dict[str, set] = {r: set() for r in _ROLES}
    edges: list[tuple] = []

    def _mention(v: str, lineno: int) -> None:
        try:
            _check_id(v)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if v not in declared:
            declared.add(v)
            order.append(v)

    explicit: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "node":
            if len(tokens) not in (2, 3):
                raise ValueError(
                    f"line {lineno}: expected 'node <id> [role]', got {line!r}"
                )
            v = tokens[1]
            if v in explicit:
                raise ValueError(f"line {lineno}: node {v!r} declared twice")
            _mention(v, lineno)
            explicit.add(v)
            if len(tokens) == 3:
                role = tokens[2]
                if role not in _ROLES:
                    raise ValueError(
                        f"line {lineno}: unknown role {role!r} "
                        f"(expected one of {', '.join(_ROLES)})"
                    )
                roles[role].add(v)
        elif keyword == "edge":
            if len(tokens) != 4:
                raise ValueError(
                    f"line {lineno}: expected 'edge <id> <kind> <id>', got {line!r}"
                )
            u, kind, v = tokens[1], tokens[2], tokens[3]
            if kind not in EDGE_KINDS:
                raise ValueError(
                    f"line {lineno}: unknown edge kind {kind!r} "
                    f"(expected one of {', '.join(EDGE_KINDS)})"
                )
            _mention(u, lineno)
            _mention(v, lineno)
            edges.append((u, kind, v))
        else:
            raise ValueError(f"line {lineno}: unknown keyword {keyword!r}")
    graph = MixedGraph(order, edges)
    for role_a in _ROLES:
        for role_b in _ROLES:
            if role_a < role_b and roles[role_a] & roles[role_b]:
                v = sorted(roles[role_a] & roles[role_b])[0]
                raise ValueError(f"node {v!r} carries both roles {role_a} and {role_b}")
    return GraphDoc(
        graph,
        latent=frozenset(roles["latent"]),
        exposure=frozenset(roles["exposure"]),
        outcome=frozenset(roles["outcome"]),
        context=frozenset(roles["context"]),
    )


def serialize_graph(doc: GraphDoc) -> str:
    """Inverse of :func:`parse_graph` (up to comments and blank lines)."""
    lines = []
    for v in doc.graph.nodes:
        role = ""
        for name in _ROLES:
            if v in getattr(doc, name):
                role = f" {name}"
                break
        lines.append(f"node {v}{role}")
    for u, kind, v in doc.graph.edges():
        lines.append(f"edge {u} {kind} {v}")
    return "\n".join(lines) + "\n"
