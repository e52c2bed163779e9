"""Graph descriptions and the structures derived from them.

A graph is given by a finite text description: a kind (finite, periodic-z,
periodic-n), vertex classes, and edge classes. Periodic kinds describe one
cell that repeats along the integers or the naturals, plus optional cap
vertices that exist once. Everything downstream (ends, components, half
spaces, ray classification) is computed from a per-direction block partition
that is iterated to a least fixpoint and then certified by one more step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    BadOffset,
    FormatError,
    InfiniteComponents,
    InternalError,
    LoopEdge,
    NotARay,
    UnknownEdge,
    UnknownEnd,
    UnknownVertex,
    UnknownVertexClass,
)

KIND_FINITE = "finite"
KIND_PERIODIC_Z = "periodic-z"
KIND_PERIODIC_N = "periodic-n"
KINDS = (KIND_FINITE, KIND_PERIODIC_Z, KIND_PERIODIC_N)

_CLASS_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_GRAPH_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")
_ENDPOINT_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\[([+-]?\d+)\])?$")
_END_RE = re.compile(r"^end([+-])(\d+)$")

# hard cap on declared offsets so W stays small
_MAX_OFFSET = 10_000


@dataclass(frozen=True)
class VertexId:
    """A single vertex: class name plus cell index (None for caps)."""

    cls: str
    index: int | None = None

    def label(self):
        if self.index is None:
            return self.cls
        return "%s[%d]" % (self.cls, self.index)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class EdgeId:
    """A single edge instance: class name plus instance index (None if the
    class has one static instance)."""

    cls: str
    index: int | None = None

    def label(self):
        if self.index is None:
            return self.cls
        return "%s[%d]" % (self.cls, self.index)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class Dart:
    """An oriented edge instance. forward means tail to head."""

    edge: EdgeId
    forward: bool = True

    def reverse(self):
        return Dart(self.edge, not self.forward)

    def label(self):
        return self.edge.label() + ("+" if self.forward else "-")

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class EndId:
    """An end of the graph: escape direction plus a stable rank within it."""

    direction: str  # "+" or "-"
    rank: int

    def label(self):
        return "end%s%d" % (self.direction, self.rank)

    def __str__(self):
        return self.label()

    @staticmethod
    def parse(text):
        m = _END_RE.match(text.strip())
        if not m:
            raise FormatError("bad end %r, expected e.g. end+0" % text)
        return EndId(m.group(1), int(m.group(2)))


def vertex_key(v: VertexId):
    return (v.cls, v.index is not None, v.index if v.index is not None else 0)


def edge_key(e: EdgeId):
    return (e.cls, e.index is not None, e.index if e.index is not None else 0)


def dart_key(d: Dart):
    return edge_key(d.edge) + (0 if d.forward else 1,)


def end_key(e: EndId):
    return (0 if e.direction == "+" else 1, e.rank)


@dataclass(frozen=True)
class RawEdge:
    name: str
    tail: tuple  # (class name, index or None)
    head: tuple


@dataclass(frozen=True)
class GraphSpec:
    name: str
    kind: str
    cell_classes: tuple
    cap_classes: tuple
    edges: tuple  # of RawEdge


@dataclass(frozen=True)
class EdgeClass:
    """Resolved edge class. For cell-cell classes tail_pos/head_pos are
    offsets normalized so the smaller one is 0; instance n occupies cells
    n .. n+span. For static classes a cell-side pos is an absolute index."""

    name: str
    tail_cls: str
    tail_pos: int | None
    head_cls: str
    head_pos: int | None
    static: bool

    @property
    def span(self):
        if self.static:
            return 0
        return max(self.tail_pos, self.head_pos)


@dataclass(frozen=True)
class Ray:
    """An eventually periodic injective one-way path: a start vertex, a
    finite lead-in, and a repeating dart block that shifts its own start
    vertex by `shift` cells."""

    start: VertexId
    initial: tuple
    repeat: tuple
    shift: int


@dataclass(frozen=True)
class Subgraph:
    center: VertexId
    radius: int
    vertices: frozenset
    edges: frozenset


@dataclass(frozen=True)
class Truncation:
    radius: int
    vertices: tuple
    edges: tuple
    boundary: tuple


@dataclass(frozen=True)
class Component:
    index: int
    representative: VertexId
    cell_classes: tuple
    caps: tuple
    ends: tuple
    finite: bool
    size: int | None


class UnionFind:
    """Union-find over hashable items with path compression."""

    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.parent[x] = x

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra = self.find(a)
        rb = self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra

    def same(self, a, b):
        return self.find(a) == self.find(b)

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def parse_graph_text(text) -> GraphSpec:
    """Parse the graph description format. Syntax only; semantic checks
    (unknown classes, loops, offsets) happen when the Graph is built."""
    name = None
    kind = None
    cells = []
    caps = []
    edges = []
    seen_classes = set()
    seen_edges = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "graph":
            if name is not None:
                raise FormatError("duplicate graph line", ln)
            if len(parts) != 2 or not _GRAPH_NAME_RE.match(parts[1]):
                raise FormatError("expected: graph <name>", ln)
            name = parts[1]
        elif head == "kind":
            if kind is not None:
                raise FormatError("duplicate kind line", ln)
            if len(parts) != 2 or parts[1] not in KINDS:
                raise FormatError(
                    "expected: kind finite|periodic-z|periodic-n", ln
                )
            kind = parts[1]
        elif head in ("vertex", "cap-vertex"):
            if kind is None:
                raise FormatError("kind must come before declarations", ln)
            if len(parts) != 2 or not _CLASS_RE.match(parts[1]):
                raise FormatError("expected: %s <name>" % head, ln)
            cname = parts[1]
            if cname in seen_classes:
                raise FormatError("duplicate vertex class %r" % cname, ln)
            seen_classes.add(cname)
            # finite graphs have no cells, both forms declare a plain vertex
            if head == "vertex" and kind != KIND_FINITE:
                cells.append(cname)
            else:
                caps.append(cname)
        elif head == "edge":
            if kind is None:
                raise FormatError("kind must come before declarations", ln)
            body = line[len("edge") :].strip()
            if ":" not in body:
                raise FormatError(
                    "expected: edge <name>: <tail> -> <head>", ln
                )
            ename, rhs = body.split(":", 1)
            ename = ename.strip()
            if not _CLASS_RE.match(ename):
                raise FormatError("bad edge name %r" % ename, ln)
            if ename in seen_edges or ename in seen_classes:
                raise FormatError("duplicate name %r" % ename, ln)
            seen_edges.add(ename)
            if "->" not in rhs:
                raise FormatError(
                    "expected: edge <name>: <tail> -> <head>", ln
                )
            tpart, hpart = rhs.split("->", 1)
            tail = _parse_endpoint(tpart.strip(), ln)
            headp = _parse_endpoint(hpart.strip(), ln)
            edges.append(RawEdge(ename, tail, headp))
        else:
            raise FormatError("unknown directive %r" % head, ln)
    if name is None:
        raise FormatError("missing graph line")
    if kind is None:
        raise FormatError("missing kind line")
    return GraphSpec(name, kind, tuple(cells), tuple(caps), tuple(edges))


def _parse_endpoint(tok, ln):
    m = _ENDPOINT_RE.match(tok)
    if not m:
        raise FormatError("bad endpoint %r" % tok, ln)
    idx = m.group(2)
    return (m.group(1), int(idx) if idx is not None else None)


class _RayStructure:
    """Everything about one escape direction: the certified block partition,
    its unbounded classes (the ends), the parent map between consecutive
    levels, and coordinate transforms. Depth d corresponds to the cell at
    distance d+1 beyond the stabilization radius."""

    def __init__(self, g, sign):
        self.g = g
        self.sign = sign
        self.direction = "+" if sign > 0 else "-"
        self.W = g.W
        self.r0 = g.stabilization_radius
        self.block = tuple(
            (c, r) for c in g.cell_classes for r in range(self.W)
        )
        # per edge class: offsets seen from this direction (min stays 0)
        self.klass = []
        for ec in g.cell_edge_classes:
            s = ec.span
            if sign > 0:
                self.klass.append((ec, ec.tail_pos, ec.head_pos, s))
            else:
                self.klass.append((ec, s - ec.tail_pos, s - ec.head_pos, s))
        self._fixpoint()
        self._classify()

    def cell_of_depth(self, d):
        return self.sign * (self.r0 + 1 + d)

    def depth_of_cell(self, n):
        return self.sign * n - self.r0 - 1

    def _base_index(self, s, t):
        if self.sign > 0:
            return t + self.r0 + 1
        return -(t + s + self.r0 + 1)

    def _instances(self, lo, hi):
        """Edge instances with both endpoint depths in [lo, hi)."""
        out = []
        for ec, toff, hoff, s in self.klass:
            for t in range(lo, hi - s):
                n = self._base_index(s, t)
                if self.g.kind == KIND_PERIODIC_N and n < 0:
                    continue
                out.append(
                    (
                        (ec.tail_cls, t + toff),
                        (ec.head_cls, t + hoff),
                        EdgeId(ec.name, n),
                    )
                )
        return out

    def _freeze(self, uf, limit):
        """Partition of the block induced by uf, as a frozenset of groups.
        Members at depth >= limit are dropped."""
        groups = {}
        for x in uf.parent:
            if x[1] < limit:
                groups.setdefault(uf.find(x), []).append(x)
        return frozenset(frozenset(g) for g in groups.values())

    def _fixpoint(self):
        W = self.W
        verts2 = [(c, d) for c in self.g.cell_classes for d in range(2 * W)]
        edges2 = self._instances(0, 2 * W)
        uf = UnionFind(self.block)
        for a, b, _ in self._instances(0, W):
            uf.union(a, b)
        pi = self._freeze(uf, W)
        steps = 0
        while True:
            uf = UnionFind(verts2)
            for a, b, _ in edges2:
                uf.union(a, b)
            for grp in pi:
                mem = sorted(grp)
                first = mem[0]
                for other in mem[1:]:
                    uf.union((first[0], first[1] + W), (other[0], other[1] + W))
            new = self._freeze(uf, W)
            if new == pi:
                break
            pi = new
            steps += 1
            if steps > len(self.block) + 2:
                raise InternalError("block partition failed to converge")
        # the loop exits only via new == pi, which is the fixpoint certificate
        self.pi = pi
        self._uf2 = uf
        groups = sorted(pi, key=min)
        self.members = []
        self.cls_id = {}
        for i, grp in enumerate(groups):
            self.members.append(tuple(sorted(grp)))
            for x in grp:
                self.cls_id[x] = i

    def _classify(self):
        W = self.W
        nids = len(self.members)
        comp0 = {}
        comp1 = {}
        for (c, d) in self._uf2.parent:
            root = self._uf2.find((c, d))
            if d < W:
                comp0.setdefault(root, set()).add(self.cls_id[(c, d)])
            else:
                comp1.setdefault(root, set()).add(self.cls_id[(c, d - W)])
        arcs = {i: set() for i in range(nids)}
        parent = {}
        for root, ids1 in comp1.items():
            ids0 = comp0.get(root, set())
            if len(ids0) > 1:
                raise InternalError("fixpoint restriction is not a congruence")
            x = next(iter(ids0)) if ids0 else None
            for y in ids1:
                parent[y] = x
                if x is not None:
                    arcs[x].add(y)
        self.parent = parent
        self.arcs = arcs
        # a class is unbounded iff it starts an infinite arc walk,
        # i.e. survives pruning of nodes with no live successor
        alive = set(range(nids))
        while True:
            dead = [i for i in alive if not (arcs[i] & alive)]
            if not dead:
                break
            alive.difference_update(dead)
        self.unbounded = frozenset(alive)
        ranked = sorted(self.unbounded, key=lambda i: self.members[i][0])
        self.rank = {cid: k for k, cid in enumerate(ranked)}
        self.by_rank = {k: cid for cid, k in self.rank.items()}
        self.end_count = len(ranked)

    def missing_attachment(self):
        """Class ids with no edge toward shallower cells. Any such class
        describes a component pattern that repeats forever on its own."""
        attached = set()
        for ec, toff, hoff, s in self.klass:
            for t in range(-s, 0):
                n = self._base_index(s, t)
                if self.g.kind == KIND_PERIODIC_N and n < 0:
                    continue
                d1, d2 = t + toff, t + hoff
                if (d1 < 0) != (d2 < 0):
                    c, d = (ec.tail_cls, d1) if d1 >= 0 else (ec.head_cls, d2)
                    attached.add(self.cls_id[(c, d)])
        return [i for i in range(len(self.members)) if i not in attached]

    def check_certificate(self):
        """Re-run one fixpoint step and confirm nothing merges, and that the
        parent map restricted to unbounded classes is a bijection."""
        for y in self.parent:
            if self.parent[y] is None:
                raise InternalError("parent map is partial on a valid graph")
        ub_parents = {self.parent[y] for y in self.unbounded}
        if ub_parents != set(self.unbounded):
            raise InternalError("unbounded classes do not shift bijectively")

    def parent_pow(self, cid, k):
        seen = {}
        path = []
        while k > 0:
            if cid in seen:
                lam = len(path) - seen[cid]
                k %= lam
                for _ in range(k):
                    cid = self.parent[cid]
                return cid
            seen[cid] = len(path)
            path.append(cid)
            cid = self.parent[cid]
            k -= 1
        return cid

    def stable_class(self, c, d):
        """Stable class id of the cell-class vertex at depth d >= 0, pulled
        back to depth level zero through the parent map."""
        cid = self.cls_id[(c, d % self.W)]
        return self.parent_pow(cid, d // self.W)


class _Band:
    """Connected components of the part of the graph beyond one truncation
    fence, in one direction, with the deep pattern closed off by the block
    partition. Answers half-space membership at this radius."""

    def __init__(self, g, ray, rho):
        self.g = g
        self.ray = ray
        self.rho = rho
        W = g.W
        nb = max(1, len(g.cell_classes) * W)
        self.top = max(rho, g.stabilization_radius) + (nb + 3) * W
        lo, hi = rho + 1, self.top + W
        universe = [
            VertexId(c, ray.sign * m)
            for m in range(lo, hi + 1)
            for c in g.cell_classes
        ]
        uf = UnionFind(universe)
        if ray.sign > 0:
            clo, chi = lo, hi
        else:
            clo, chi = -hi, -lo
        for e in g.cell_instances_within(clo, chi):
            t, h = g.endpoints(e)
            uf.union(t, h)
        # close the far boundary: one block, glued by the stable partition
        for rel in range(W):
            for c in g.cell_classes:
                cid = ray.cls_id[(c, rel)]
                first = ray.members[cid][0]
                uf.union(
                    VertexId(first[0], ray.sign * (self.top + 1 + first[1])),
                    VertexId(c, ray.sign * (self.top + 1 + rel)),
                )
        self.uf = uf
        self.universe = set(universe)
        self.end_root = {}
        for rel in range(W):
            for c in g.cell_classes:
                v = VertexId(c, ray.sign * (self.top + 1 + rel))
                cid = ray.stable_class(c, ray.depth_of_cell(v.index))
                if cid not in ray.unbounded:
                    continue
                rk = ray.rank[cid]
                root = uf.find(v)
                if rk in self.end_root and self.end_root[rk] != root:
                    raise InternalError("one end spread over two components")
                self.end_root[rk] = root
        if set(self.end_root) != set(range(ray.end_count)):
            raise InternalError("an end vanished from its own band")

    def contains(self, v, rank):
        if v in self.universe:
            return self.uf.find(v) == self.end_root[rank]
        ray = self.ray
        dc = ray.sign * v.index - self.top - 1
        cid = ray.parent_pow(
            ray.cls_id[(v.cls, dc % ray.W)], dc // ray.W
        )
        c0, rel0 = ray.members[cid][0]
        w = VertexId(c0, ray.sign * (self.top + 1 + rel0))
        return self.uf.find(w) == self.end_root[rank]


class Graph:
    """A validated graph built from a GraphSpec.

    Construction performs every semantic check: endpoint classes must exist,
    loops are rejected, offsets must be sane for the kind, and descriptions
    whose deep pattern would repeat a detached component forever are refused
    (the component list would be infinite).
    """

    def __init__(self, spec: GraphSpec):
        self.spec = spec
        self.name = spec.name
        self.kind = spec.kind
        self.cell_classes = spec.cell_classes
        self.cap_classes = spec.cap_classes
        self._cell_set = set(spec.cell_classes)
        self._cap_set = set(spec.cap_classes)
        self._resolve_edges(spec)
        self.D = max((ec.span for ec in self.cell_edge_classes), default=0)
        self.W = max(self.D, 1)
        reach = 0
        for ec in self.static_edge_classes:
            for pos in (ec.tail_pos, ec.head_pos):
                if pos is not None:
                    reach = max(reach, abs(pos))
        self.cap_reach = reach
        self._r0 = reach + self.D + 1
        self._rays = {}
        if self.kind != KIND_FINITE and self.cell_classes:
            signs = (1, -1) if self.kind == KIND_PERIODIC_Z else (1,)
            for sign in signs:
                ray = _RayStructure(self, sign)
                missing = ray.missing_attachment()
                if missing:
                    c, r = ray.members[missing[0]][0]
                    raise InfiniteComponents(
                        "the pattern around vertex class %r repeats with no "
                        "attachment toward the center (direction %s); the "
                        "graph would have infinitely many components"
                        % (c, ray.direction)
                    )
                ray.check_certificate()
                self._rays[sign] = ray
        self._comp_cache = None
        self._bands = {}

    # -- construction helpers -------------------------------------------

    def _resolve_edges(self, spec):
        known = self._cell_set | self._cap_set
        classes = []
        for raw in spec.edges:
            (tc, ti), (hc, hi) = raw.tail, raw.head
            for cname in (tc, hc):
                if cname not in known:
                    raise UnknownVertexClass(
                        "edge %r endpoint uses unknown vertex class %r"
                        % (raw.name, cname)
                    )
            t_cap = tc in self._cap_set
            h_cap = hc in self._cap_set
            for cname, idx, is_cap in ((tc, ti, t_cap), (hc, hi, h_cap)):
                if is_cap and idx is not None:
                    raise BadOffset(
                        "edge %r: cap vertex %r takes no index"
                        % (raw.name, cname)
                    )
                if idx is not None and abs(idx) > _MAX_OFFSET:
                    raise BadOffset(
                        "edge %r: offset %d out of range" % (raw.name, idx)
                    )
            if self.kind == KIND_FINITE:
                if ti is not None or hi is not None:
                    raise BadOffset(
                        "edge %r: finite graphs take no indices" % raw.name
                    )
                if tc == hc:
                    raise LoopEdge("edge %r is a loop" % raw.name)
                classes.append(EdgeClass(raw.name, tc, None, hc, None, True))
                continue
            if t_cap and h_cap:
                if tc == hc:
                    raise LoopEdge("edge %r is a loop" % raw.name)
                classes.append(EdgeClass(raw.name, tc, None, hc, None, True))
            elif t_cap or h_cap:
                cell_idx = hi if t_cap else ti
                cell_idx = 0 if cell_idx is None else cell_idx
                if self.kind == KIND_PERIODIC_N and cell_idx < 0:
                    raise BadOffset(
                        "edge %r: negative index %d in a periodic-n graph"
                        % (raw.name, cell_idx)
                    )
                tp = None if t_cap else cell_idx
                hp = None if h_cap else cell_idx
                classes.append(EdgeClass(raw.name, tc, tp, hc, hp, True))
            else:
                a = 0 if ti is None else ti
                b = 0 if hi is None else hi
                m = min(a, b)
                a, b = a - m, b - m
                if tc == hc and a == b:
                    raise LoopEdge("edge %r is a loop" % raw.name)
                classes.append(EdgeClass(raw.name, tc, a, hc, b, False))
        self._ec = {ec.name: ec for ec in classes}
        self.cell_edge_classes = tuple(ec for ec in classes if not ec.static)
        self.static_edge_classes = tuple(ec for ec in classes if ec.static)

    # -- basic queries ---------------------------------------------------

    @property
    def stabilization_radius(self):
        """Radius past which the periodic pattern is clean: caps are cleared
        and every cell sees its full star."""
        return getattr(self, "_r0")

    @property
    def edge_classes(self):
        return self._ec

    def directions(self):
        return tuple(self._rays[s].direction for s in (1, -1) if s in self._rays)

    def _ray(self, direction):
        sign = 1 if direction in ("+", 1) else -1
        if sign not in self._rays:
            raise UnknownEnd("graph has no %s direction" % direction)
        return self._rays[sign]

    def require_vertex(self, v: VertexId):
        if not isinstance(v, VertexId):
            raise UnknownVertex("not a vertex: %r" % (v,))
        if v.cls in self._cap_set:
            if v.index is not None:
                raise UnknownVertex(
                    "cap vertex %r takes no index" % v.cls
                )
        elif v.cls in self._cell_set:
            if v.index is None:
                raise UnknownVertex("vertex class %r needs an index" % v.cls)
            if self.kind == KIND_PERIODIC_N and v.index < 0:
                raise UnknownVertex("no vertex %s" % v.label())
        else:
            raise UnknownVertex("unknown vertex class %r" % v.cls)
        return v

    def has_vertex(self, v):
        try:
            self.require_vertex(v)
            return True
        except UnknownVertex:
            return False

    def require_edge(self, e: EdgeId) -> EdgeClass:
        ec = self._ec.get(e.cls)
        if ec is None:
            raise UnknownEdge("unknown edge class %r" % e.cls)
        if ec.static:
            if e.index is not None:
                raise UnknownEdge("edge %r takes no index" % e.cls)
        else:
            if e.index is None:
                raise UnknownEdge("edge class %r needs an index" % e.cls)
            if self.kind == KIND_PERIODIC_N and e.index < 0:
                raise UnknownEdge("no edge %s" % e.label())
        return ec

    def has_edge(self, e):
        try:
            self.require_edge(e)
            return True
        except UnknownEdge:
            return False

    def endpoints(self, e: EdgeId):
        ec = self.require_edge(e)
        if ec.static:
            return (
                VertexId(ec.tail_cls, ec.tail_pos),
                VertexId(ec.head_cls, ec.head_pos),
            )
        return (
            VertexId(ec.tail_cls, e.index + ec.tail_pos),
            VertexId(ec.head_cls, e.index + ec.head_pos),
        )

    def dart_ends(self, d: Dart):
        t, h = self.endpoints(d.edge)
        return (t, h) if d.forward else (h, t)

    def shift_vertex(self, v, k):
        self.require_vertex(v)
        if v.index is None:
            raise UnknownVertex("cap vertex %s cannot be shifted" % v.label())
        return self.require_vertex(VertexId(v.cls, v.index + k))

    def shift_edge(self, e, k):
        ec = self.require_edge(e)
        if ec.static:
            raise UnknownEdge("static edge %s cannot be shifted" % e.label())
        return EdgeId(e.cls, e.index + k)

    def shift_dart(self, d, k):
        return Dart(self.shift_edge(d.edge, k), d.forward)

    def neighbors(self, v: VertexId):
        """Darts leaving v, with the vertex each one reaches."""
        self.require_vertex(v)
        out = []
        for ec in self.static_edge_classes:
            t = VertexId(ec.tail_cls, ec.tail_pos)
            h = VertexId(ec.head_cls, ec.head_pos)
            e = EdgeId(ec.name, None)
            if v == t:
                out.append((Dart(e, True), h))
            if v == h:
                out.append((Dart(e, False), t))
        if v.index is not None:
            for ec in self.cell_edge_classes:
                if ec.tail_cls == v.cls:
                    n = v.index - ec.tail_pos
                    if self.kind != KIND_PERIODIC_N or n >= 0:
                        e = EdgeId(ec.name, n)
                        out.append(
                            (Dart(e, True), VertexId(ec.head_cls, n + ec.head_pos))
                        )
                if ec.head_cls == v.cls:
                    n = v.index - ec.head_pos
                    if self.kind != KIND_PERIODIC_N or n >= 0:
                        e = EdgeId(ec.name, n)
                        out.append(
                            (Dart(e, False), VertexId(ec.tail_cls, n + ec.tail_pos))
                        )
        out.sort(key=lambda p: dart_key(p[0]))
        return tuple(out)

    def degree(self, v):
        return len(self.neighbors(v))

    # -- enumeration ------------------------------------------------------

    def cell_instances_within(self, lo, hi):
        """Cell-cell edge instances whose endpoint cells all lie in [lo, hi]."""
        for ec in self.cell_edge_classes:
            start = lo
            if self.kind == KIND_PERIODIC_N:
                start = max(lo, 0)
            for n in range(start, hi - ec.span + 1):
                yield EdgeId(ec.name, n)

    def static_instances(self):
        for ec in self.static_edge_classes:
            yield EdgeId(ec.name, None)

    def cap_vertices(self):
        return tuple(VertexId(c, None) for c in self.cap_classes)

    def cell_vertices_within(self, lo, hi):
        if self.kind == KIND_PERIODIC_N:
            lo = max(lo, 0)
        for c in self.cell_classes:
            for n in range(lo, hi + 1):
                yield VertexId(c, n)

    # -- local structure --------------------------------------------------

    def ball(self, v, r):
        self.require_vertex(v)
        if not isinstance(r, int) or r < 0:
            raise FormatError("radius must be a nonnegative integer")
        seen = {v}
        frontier = [v]
        for _ in range(r):
            new = []
            for u in frontier:
                for _, w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        edges = set()
        for u in seen:
            for d, w in self.neighbors(u):
                if w in seen:
                    edges.add(d.edge)
        return Subgraph(v, r, frozenset(seen), frozenset(edges))

    def truncate(self, r):
        if not isinstance(r, int) or r < 0:
            raise FormatError("radius must be a nonnegative integer")
        verts = list(self.cap_vertices())
        if self.kind != KIND_FINITE:
            verts.extend(self.cell_vertices_within(-r, r))
        vset = set(verts)
        edges = set(self.static_instances())
        edges = {e for e in edges if all(p in vset for p in self.endpoints(e))}
        if self.kind != KIND_FINITE:
            edges.update(self.cell_instances_within(-r, r))
        boundary = []
        for u in verts:
            if any(w not in vset for _, w in self.neighbors(u)):
                boundary.append(u)
        return Truncation(
            r,
            tuple(sorted(vset, key=vertex_key)),
            tuple(sorted(edges, key=edge_key)),
            tuple(sorted(boundary, key=vertex_key)),
        )

    # -- ends --------------------------------------------------------------

    def ends(self):
        out = []
        for sign in (1, -1):
            ray = self._rays.get(sign)
            if ray:
                out.extend(EndId(ray.direction, k) for k in range(ray.end_count))
        return tuple(out)

    def end_count(self):
        return len(self.ends())

    def require_end(self, end: EndId):
        if end not in self.ends():
            raise UnknownEnd("graph has no end %s" % end)
        return end

    # -- components ---------------------------------------------------------

    def _components_info(self):
        if self._comp_cache is not None:
            return self._comp_cache
        W = self.W
        nb = max(1, len(self.cell_classes) * W)
        M = self.stabilization_radius + (nb + 3) * W
        universe = set(self.cap_vertices())
        if self.cell_classes and self.kind != KIND_FINITE:
            lo = 0 if self.kind == KIND_PERIODIC_N else -(M + W)
            universe.update(self.cell_vertices_within(lo, M + W))
        uf = UnionFind(universe)
        for e in self.static_instances():
            t, h = self.endpoints(e)
            uf.union(t, h)
        if self.cell_classes and self.kind != KIND_FINITE:
            lo = 0 if self.kind == KIND_PERIODIC_N else -(M + W)
            for e in self.cell_instances_within(lo, M + W):
                t, h = self.endpoints(e)
                uf.union(t, h)
        for sign, ray in self._rays.items():
            for rel in range(W):
                for c in self.cell_classes:
                    cid = ray.cls_id[(c, rel)]
                    first = ray.members[cid][0]
                    uf.union(
                        VertexId(first[0], sign * (M + 1 + first[1])),
                        VertexId(c, sign * (M + 1 + rel)),
                    )
        raw = sorted(
            uf.groups().values(),
            key=lambda ms: min(vertex_key(u) for u in ms),
        )
        end_roots = {}
        for sign, ray in self._rays.items():
            for cid in ray.unbounded:
                c0, rel0 = ray.members[cid][0]
                v = VertexId(c0, sign * (M + 1 + rel0))
                end_roots.setdefault(uf.find(v), []).append(
                    EndId(ray.direction, ray.rank[cid])
                )
        comps = []
        root_index = {}
        for i, ms in enumerate(raw):
            root = uf.find(ms[0])
            root_index[root] = i
            ends = tuple(sorted(end_roots.get(root, []), key=end_key))
            finite = not ends
            if finite and any(
                u.index is not None and abs(u.index) > M for u in ms
            ):
                raise InternalError("finite component reached the closure block")
            comps.append(
                Component(
                    index=i,
                    representative=min(ms, key=vertex_key),
                    cell_classes=tuple(
                        sorted({u.cls for u in ms if u.index is not None})
                    ),
                    caps=tuple(sorted({u.cls for u in ms if u.index is None})),
                    ends=ends,
                    finite=finite,
                    size=len(ms) if finite else None,
                )
            )
        self._comp_cache = (uf, universe, tuple(comps), root_index, M)
        return self._comp_cache

    def components(self):
        return self._components_info()[2]

    def component_of(self, v):
        self.require_vertex(v)
        uf, universe, comps, root_index, M = self._components_info()
        if v in universe:
            return root_index[uf.find(v)]
        sign = 1 if v.index > 0 else -1
        ray = self._rays[sign]
        cid = ray.stable_class(v.cls, ray.depth_of_cell(v.index))
        c0, rel0 = ray.members[cid][0]
        w = VertexId(c0, ray.cell_of_depth(rel0))
        return root_index[uf.find(w)]

    # -- half spaces ---------------------------------------------------------

    def _band(self, sign, rho):
        key = (sign, rho)
        if key not in self._bands:
            self._bands[key] = _Band(self, self._rays[sign], rho)
        return self._bands[key]

    def in_half_space(self, v, end: EndId, radius):
        """Whether v lies in the unbounded piece that the given end inhabits
        after the radius-`radius` truncation is removed."""
        self.require_vertex(v)
        self.require_end(end)
        if not isinstance(radius, int) or radius < 0:
            raise FormatError("radius must be a nonnegative integer")
        if v.index is None:
            return False
        sign = 1 if end.direction == "+" else -1
        if sign * v.index <= radius:
            return False
        return self._band(sign, radius).contains(v, end.rank)

    # -- rays ------------------------------------------------------------------

    def walk_from(self, v, darts):
        """Follow darts from v, checking that they chain. Returns every
        visited vertex, start included."""
        self.require_vertex(v)
        seq = [v]
        cur = v
        for d in darts:
            frm, to = self.dart_ends(d)
            if frm != cur:
                raise NotARay(
                    "dart %s does not start at %s" % (d.label(), cur.label())
                )
            cur = to
            seq.append(cur)
        return seq

    def check_ray(self, ray: Ray):
        if self.kind == KIND_FINITE:
            raise NotARay("finite graphs have no rays")
        if not ray.repeat:
            raise NotARay("empty repeat block")
        if ray.shift == 0:
            raise NotARay("repeat block must shift")
        if self.kind == KIND_PERIODIC_N and ray.shift < 0:
            raise NotARay("negative drift leaves a periodic-n graph")
        lead = self.walk_from(ray.start, ray.initial)
        v1 = lead[-1]
        if v1.index is None:
            raise NotARay("repeat block starts on a cap vertex")
        per = self.walk_from(v1, ray.repeat)
        v2 = per[-1]
        for u in per:
            if u.index is None:
                raise NotARay("repeat block visits cap vertex %s" % u.label())
        if v2.cls != v1.cls or v2.index - v1.index != ray.shift:
            raise NotARay(
                "repeat block moves %s to %s, not a %+d shift"
                % (v1.label(), v2.label(), ray.shift)
            )
        # injectivity: collisions between period p and period q > p need
        # (q-p)*|shift| <= 2*extent, so checking a few periods settles it
        extent = 1
        for u in lead + per:
            if u.index is not None:
                extent = max(extent, abs(u.index - v1.index))
        t = (2 * extent) // abs(ray.shift) + 2
        seen = []
        seen.extend(lead[:-1])
        for p in range(t):
            seen.extend(
                VertexId(u.cls, u.index + p * ray.shift) for u in per[:-1]
            )
        if len(set(seen)) != len(seen):
            dup = [u for u in seen if seen.count(u) > 1]
            raise NotARay("path revisits %s" % dup[0].label())
        return v1, per

    def end_of_ray(self, ray: Ray):
        v1, per = self.check_ray(ray)
        sign = 1 if ray.shift > 0 else -1
        r0 = self.stabilization_radius
        mrel = min(sign * u.index - sign * v1.index for u in per)
        need = r0 + 1 - mrel - sign * v1.index
        j = max(0, -(-need // abs(ray.shift)))
        u = VertexId(v1.cls, v1.index + j * ray.shift)
        for e in self.ends():
            if e.direction != ("+" if sign > 0 else "-"):
                continue
            if self.in_half_space(u, e, r0):
                return e
        raise InternalError("ray tail escaped every end")


def validate(spec: GraphSpec) -> Graph:
    """Build (and thereby fully check) a graph from its description."""
    return Graph(spec)


def graph_from_text(text) -> Graph:
    return Graph(parse_graph_text(text))


def parse_vertex_label(text) -> VertexId:
    """Parse "cls" or "cls[3]". Syntax only, no graph lookup."""
    m = _ENDPOINT_RE.match(text.strip())
    if not m:
        raise FormatError("bad vertex %r" % text)
    idx = m.group(2)
    return VertexId(m.group(1), int(idx) if idx is not None else None)


def parse_edge_label(text) -> EdgeId:
    m = _ENDPOINT_RE.match(text.strip())
    if not m:
        raise FormatError("bad edge %r" % text)
    idx = m.group(2)
    return EdgeId(m.group(1), int(idx) if idx is not None else None)


def parse_dart_label(text) -> Dart:
    t = text.strip()
    if not t or t[-1] not in "+-":
        raise FormatError("bad dart %r, expected e.g. rail[0]+ " % text)
    return Dart(parse_edge_label(t[:-1]), t[-1] == "+")
