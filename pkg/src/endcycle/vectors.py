"""Integer edge vectors with eventually constant tails, and thin families.

An EdgeVector stores finitely many explicit instance values plus, per edge
class and direction, an optional constant tail (threshold, value): every
instance at index >= threshold (direction "+") or <= threshold ("-") carries
the value unless an explicit entry overrides it. Values are attached to the
forward orientation; evaluating a reversed dart negates.

A VectorFamily is a finite list of vectors plus shift-periodic members
(coefficient, finite template, shift range). thin_sum adds the whole family
exactly or refuses with NotThin / NotRepresentable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FormatError,
    GraphMismatch,
    NotRepresentable,
    NotThin,
    UnknownEdge,
)
from .graph import (
    KIND_FINITE,
    KIND_PERIODIC_N,
    Dart,
    EdgeId,
    edge_key,
    parse_edge_label,
)

# widest finite shift range that gets expanded member by member
_EXPAND_CAP = 4096
# widest contiguous block of explicit values a thin sum may materialize
_WIDTH_CAP = 200_000


def _check_same_graph(a, b):
    if a is b:
        return
    if a.spec != b.spec:
        raise GraphMismatch("objects belong to different graphs")


class EdgeVector:
    """Finitely many explicit values plus constant tails. Immutable by
    convention; all operations return new vectors in canonical form."""

    __hash__ = None

    def __init__(self, graph, vals=None, tails=None):
        self.graph = graph
        self.vals = dict(vals or {})
        self.tails = dict(tails or {})
        self._normalize()

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, graph):
        return cls(graph)

    @classmethod
    def from_dart(cls, graph, dart: Dart):
        graph.require_edge(dart.edge)
        return cls(graph, {dart.edge: 1 if dart.forward else -1})

    @classmethod
    def from_darts(cls, graph, darts):
        vals = {}
        for d in darts:
            graph.require_edge(d.edge)
            vals[d.edge] = vals.get(d.edge, 0) + (1 if d.forward else -1)
        return cls(graph, vals)

    def _normalize(self):
        g = self.graph
        for e, v in list(self.vals.items()):
            g.require_edge(e)
            if not isinstance(v, int):
                raise FormatError("vector values must be integers")
        tails = {}
        for (cname, direction), (t, v) in self.tails.items():
            if not isinstance(v, int) or not isinstance(t, int):
                raise FormatError("tail thresholds and values must be integers")
            if v == 0:
                continue
            ec = g.edge_classes.get(cname)
            if ec is None:
                raise UnknownEdge("unknown edge class %r" % cname)
            if ec.static:
                raise FormatError("static edge %r cannot carry a tail" % cname)
            if direction not in ("+", "-"):
                raise FormatError("tail direction must be + or -")
            if g.kind == KIND_FINITE:
                raise FormatError("finite graphs have no tails")
            if direction == "-" and g.kind == KIND_PERIODIC_N:
                raise FormatError("periodic-n graphs have no - tails")
            if direction == "+" and g.kind == KIND_PERIODIC_N and t < 0:
                t = 0
            tails[(cname, direction)] = (t, v)
        self.tails = tails
        # rebuild each tailed class from the values it denotes, so equal
        # vectors always land on the same representation
        for cname in {c for c, _ in self.tails}:
            pt = self.tails.get((cname, "+"))
            mt = self.tails.get((cname, "-"))
            vp = pt[1] if pt else 0
            vm = mt[1] if mt else 0
            explicit = {
                e.index: w
                for e, w in self.vals.items()
                if e.cls == cname and e.index is not None
            }
            b = 0
            for tl in (pt, mt):
                if tl is not None:
                    b = max(b, abs(tl[0]))
            for i in explicit:
                b = max(b, abs(i))
            if b > _WIDTH_CAP:
                raise FormatError(
                    "vector support on %r is too wide to canonicalize" % cname
                )
            if pt and mt and mt[0] >= pt[0] and vp != vm:
                span = range(pt[0], mt[0] + 1)
                if len(span) > len(explicit) or any(i not in explicit for i in span):
                    raise FormatError(
                        "tails of %r overlap with different values" % cname
                    )

            lo = 0 if g.kind == KIND_PERIODIC_N else -b - 1
            hi = b + 1

            def val_at(i):
                if i in explicit:
                    return explicit[i]
                if pt and i >= pt[0]:
                    return vp
                if mt and i <= mt[0]:
                    return vm
                return 0

            # beyond the window every index is plain tail (or zero)
            t_plus = hi
            while t_plus > lo and val_at(t_plus - 1) == vp:
                t_plus -= 1
            t_minus = lo - 1
            while t_minus + 1 <= hi and val_at(t_minus + 1) == vm:
                t_minus += 1

            for i in explicit:
                del self.vals[EdgeId(cname, i)]
            self.tails.pop((cname, "+"), None)
            self.tails.pop((cname, "-"), None)
            if vp == vm != 0 and t_plus <= t_minus + 1:
                # the class is constant: canonical split at zero
                self.tails[(cname, "+")] = (0, vp)
                self.tails[(cname, "-")] = (-1, vp)
                continue
            if vp != 0:
                self.tails[(cname, "+")] = (t_plus, vp)
            if vm != 0:
                self.tails[(cname, "-")] = (t_minus, vm)
            for i in range(max(lo, t_minus + 1), t_plus):
                w = val_at(i)
                if w != 0:
                    self.vals[EdgeId(cname, i)] = w
        # untailed classes and statics just shed their zeros
        for e in list(self.vals):
            if self.vals[e] == 0:
                del self.vals[e]

    def _tail_value(self, e: EdgeId):
        """Tail value covering this instance, or None if no tail covers it."""
        if e.index is None:
            return None
        pt = self.tails.get((e.cls, "+"))
        if pt and e.index >= pt[0]:
            return pt[1]
        mt = self.tails.get((e.cls, "-"))
        if mt and e.index <= mt[0]:
            return mt[1]
        return None

    # queries ----------------------------------------------------------------

    def value_on(self, e: EdgeId) -> int:
        self.graph.require_edge(e)
        if e in self.vals:
            return self.vals[e]
        cov = self._tail_value(e)
        return cov if cov is not None else 0

    def evaluate(self, dart: Dart) -> int:
        v = self.value_on(dart.edge)
        return v if dart.forward else -v

    def is_zero(self):
        return not self.vals and not self.tails

    def tail_of(self, cname, direction):
        return self.tails.get((cname, direction))

    def support_bound(self):
        """Bound b such that all explicit entries and thresholds have
        |index| <= b."""
        b = 0
        for e in self.vals:
            if e.index is not None:
                b = max(b, abs(e.index))
        for (t, _v) in self.tails.values():
            b = max(b, abs(t))
        return b

    def has_static_support(self):
        return any(e.index is None for e in self.vals)

    def __eq__(self, other):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        return (
            self.graph.spec == other.graph.spec
            and self.vals == other.vals
            and self.tails == other.tails
        )

    def __repr__(self):
        items = ["%s=%d" % (e.label(), v) for e, v in sorted(self.vals.items(), key=lambda p: edge_key(p[0]))]
        items += [
            "tail%s %s from %d = %d" % (d, c, t, v)
            for (c, d), (t, v) in sorted(self.tails.items())
        ]
        return "<EdgeVector %s>" % ("; ".join(items) if items else "0")

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        _check_same_graph(self.graph, other.graph)
        classes = {c for c, _ in self.tails} | {c for c, _ in other.tails}
        vals = {}
        tails = {}
        if classes:
            # past the window both operands are pure tail, so the sum is
            # pointwise inside and a summed tail outside
            b = 0
            for vec in (self, other):
                for (_, _), (t, _) in vec.tails.items():
                    b = max(b, abs(t))
                for e in vec.vals:
                    if e.cls in classes and e.index is not None:
                        b = max(b, abs(e.index))
            if b > _WIDTH_CAP:
                raise FormatError("vector sum support is too wide to canonicalize")
            lo = 0 if self.graph.kind == KIND_PERIODIC_N else -b - 1
            hi = b + 1
            for cname in classes:
                sp = (
                    self.tails.get((cname, "+"), (0, 0))[1]
                    + other.tails.get((cname, "+"), (0, 0))[1]
                )
                sm = (
                    self.tails.get((cname, "-"), (0, 0))[1]
                    + other.tails.get((cname, "-"), (0, 0))[1]
                )
                if sp != 0:
                    tails[(cname, "+")] = (hi, sp)
                if sm != 0:
                    tails[(cname, "-")] = (lo, sm)
                for i in range(lo, hi):
                    e = EdgeId(cname, i)
                    w = self.value_on(e) + other.value_on(e)
                    if w != 0:
                        vals[e] = w
        for e in set(self.vals) | set(other.vals):
            if e.cls in classes:
                continue
            w = self.value_on(e) + other.value_on(e)
            if w != 0:
                vals[e] = w
        return EdgeVector(self.graph, vals, tails)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self.__add__(-other)

    def scale(self, c: int):
        if not isinstance(c, int):
            raise FormatError("scalars must be integers")
        vals = {e: c * v for e, v in self.vals.items()}
        tails = {k: (t, c * v) for k, (t, v) in self.tails.items()}
        return EdgeVector(self.graph, vals, tails)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def shifted(self, k: int):
        """Translate every index by k. Cell support only."""
        if self.has_static_support():
            raise FormatError("cannot shift a vector with static support")
        if self.graph.kind == KIND_PERIODIC_N:
            for e in self.vals:
                if e.index + k < 0:
                    raise FormatError("shift slides support off the graph")
            for (t, _v) in self.tails.values():
                if t + k < 0:
                    raise FormatError("shift slides a tail off the graph")
        vals = {EdgeId(e.cls, e.index + k): v for e, v in self.vals.items()}
        tails = {key: (t + k, v) for key, (t, v) in self.tails.items()}
        return EdgeVector(self.graph, vals, tails)


@dataclass(frozen=True)
class FamilyMember:
    """coeff copies of base shifted by every k with lo <= k <= hi.
    None endpoints mean unbounded."""

    coeff: int
    base: EdgeVector
    lo: int | None
    hi: int | None

    def width(self):
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo + 1


class VectorFamily:
    """A finite list of (coeff, vector) plus shift-periodic members."""

    def __init__(self, graph, finite=(), periodic=()):
        self.graph = graph
        self.finite = tuple((int(c), v) for c, v in finite)
        for _, v in self.finite:
            _check_same_graph(graph, v.graph)
        members = []
        for m in periodic:
            if not isinstance(m, FamilyMember):
                m = FamilyMember(*m)
            _check_same_graph(graph, m.base.graph)
            if m.base.has_static_support():
                raise FormatError(
                    "periodic members shift cell edges only; put static "
                    "support in the finite part"
                )
            if m.lo is not None and m.hi is not None and m.lo > m.hi:
                raise FormatError("empty shift range")
            if graph.kind == KIND_PERIODIC_N:
                if m.lo is None:
                    raise FormatError("shift range must be bounded below here")
                anchor = None
                for e in m.base.vals:
                    anchor = e.index if anchor is None else min(anchor, e.index)
                for (t, _v) in m.base.tails.values():
                    anchor = t if anchor is None else min(anchor, t)
                if anchor is not None and m.lo + anchor < 0:
                    raise FormatError("shift range slides off the graph")
            members.append(m)
        self.periodic = tuple(members)

    def _offender(self):
        """First member that makes the family hit some edge infinitely
        often, with a witness instance. A "+" tail dragged toward minus
        infinity piles onto one instance (and mirrored); dragging it the
        other way stays thin, that case is merely unrepresentable."""
        for m in self.periodic:
            if m.coeff == 0 or m.base.is_zero():
                continue
            for (cname, direction), (t, _v) in m.base.tails.items():
                if direction == "+" and m.lo is None:
                    return m, EdgeId(cname, t + (m.hi if m.hi is not None else 0))
                if direction == "-" and m.hi is None:
                    return m, EdgeId(cname, t + (m.lo if m.lo is not None else 0))
        return None

    def is_thin(self):
        return self._offender() is None


def is_thin(family: VectorFamily) -> bool:
    return family.is_thin()


def thin_sum(family: VectorFamily) -> EdgeVector:
    """Exact sum of the family.

    Raises NotThin when some edge is hit infinitely often, and
    NotRepresentable when the sum exists but is not eventually constant
    (a tailed template dragged over an unbounded range)."""
    g = family.graph
    bad = family._offender()
    if bad is not None:
        m, witness = bad
        raise NotThin(
            "family hits %s infinitely often" % witness.label(), witness=witness
        )
    acc = EdgeVector.zero(g)
    for c, v in family.finite:
        if c:
            acc = acc + v.scale(c)
    intervals = {}
    for m in family.periodic:
        if m.coeff == 0 or m.base.is_zero():
            continue
        if m.base.tails:
            w = m.width()
            if w is None:
                raise NotRepresentable(
                    "a tailed template shifted over an unbounded range "
                    "gives linearly growing values"
                )
            if w > _EXPAND_CAP:
                raise FormatError("shift range too wide to expand")
            for k in range(m.lo, m.hi + 1):
                acc = acc + m.base.shifted(k).scale(m.coeff)
            continue
        w = m.width()
        if w is not None and w <= _EXPAND_CAP:
            for k in range(m.lo, m.hi + 1):
                acc = acc + m.base.shifted(k).scale(m.coeff)
            continue
        for e, val in m.base.vals.items():
            d = m.coeff * val
            if d == 0:
                continue
            a = None if m.lo is None else m.lo + e.index
            b = None if m.hi is None else m.hi + e.index
            intervals.setdefault(e.cls, []).append((a, b, d))
    if intervals:
        acc = acc + _vector_from_intervals(g, intervals)
    return acc


def _vector_from_intervals(g, intervals) -> EdgeVector:
    """Turn per-class interval contributions (a, b, delta), endpoints
    possibly None for unbounded, into one canonical vector."""
    vals = {}
    tails = {}
    for cname, ivs in intervals.items():
        bps = set()
        for a, b, _d in ivs:
            if a is not None:
                bps.add(a)
            if b is not None:
                bps.add(b + 1)
        if not bps:
            c0 = sum(d for _a, _b, d in ivs)
            if c0:
                tails[(cname, "+")] = (0, c0)
                if g.kind != KIND_PERIODIC_N:
                    tails[(cname, "-")] = (-1, c0)
            continue
        p0, pk = min(bps), max(bps)
        if pk - p0 > _WIDTH_CAP:
            raise FormatError("family support too wide to materialize")
        left = sum(d for a, _b, d in ivs if a is None)
        right = sum(d for _a, b, d in ivs if b is None)
        if left and g.kind != KIND_PERIODIC_N:
            tails[(cname, "-")] = (p0 - 1, left)
        if right:
            tails[(cname, "+")] = (pk, right)
        lo_m = max(p0, 0) if g.kind == KIND_PERIODIC_N else p0
        for mm in range(lo_m, pk):
            s = 0
            for a, b, d in ivs:
                if (a is None or a <= mm) and (b is None or mm <= b):
                    s += d
            vals[EdgeId(cname, mm)] = s
    return EdgeVector(g, vals, tails)


# spec-level wrappers ---------------------------------------------------------


def evaluate(vec: EdgeVector, dart: Dart) -> int:
    return vec.evaluate(dart)


def add(a: EdgeVector, b: EdgeVector) -> EdgeVector:
    return a + b


def negate(a: EdgeVector) -> EdgeVector:
    return -a


def scale(c: int, a: EdgeVector) -> EdgeVector:
    return a.scale(c)


# text format ------------------------------------------------------------------


def parse_vector_text(graph, text) -> EdgeVector:
    """Vector file format: `set <edge> = <int>` and
    `tail+ <class> from <int> = <int>` lines (tail- mirrors; bare `tail`
    infers the direction from the sign of the threshold)."""
    vals = {}
    tails = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "set":
            rest = line[len("set") :]
            if "=" not in rest:
                raise FormatError("expected: set <edge> = <value>", ln)
            lhs, rhs = rest.split("=", 1)
            e = parse_edge_label(lhs)
            graph.require_edge(e)
            if e in vals:
                raise FormatError("duplicate entry for %s" % e.label(), ln)
            vals[e] = _parse_int(rhs, ln)
        elif parts[0] in ("tail", "tail+", "tail-"):
            if len(parts) < 6 or parts[2] != "from" or parts[4] != "=":
                raise FormatError(
                    "expected: %s <class> from <index> = <value>" % parts[0], ln
                )
            cname = parts[1]
            t = _parse_int(parts[3], ln)
            v = _parse_int(parts[5], ln)
            if parts[0] == "tail":
                direction = "+" if t >= 0 else "-"
            else:
                direction = parts[0][-1]
            if (cname, direction) in tails:
                raise FormatError(
                    "duplicate %s tail for %r" % (direction, cname), ln
                )
            tails[(cname, direction)] = (t, v)
        else:
            raise FormatError("unknown directive %r" % parts[0], ln)
    return EdgeVector(graph, vals, tails)


def _parse_int(tok, ln):
    try:
        return int(tok.strip())
    except ValueError:
        raise FormatError("not an integer: %r" % tok.strip(), ln)


def vector_to_text(vec: EdgeVector) -> str:
    lines = []
    for (cname, direction), (t, v) in sorted(vec.tails.items()):
        lines.append("tail%s %s from %d = %d" % (direction, cname, t, v))
    for e, v in sorted(vec.vals.items(), key=lambda p: edge_key(p[0])):
        lines.append("set %s = %d" % (e.label(), v))
    return "\n".join(lines) + ("\n" if lines else "")


def vector_to_json(vec: EdgeVector) -> dict:
    return {
        "edges": [
            {"edge": _edge_json(e), "value": v}
            for e, v in sorted(vec.vals.items(), key=lambda p: edge_key(p[0]))
        ],
        "tails": [
            {"class": c, "direction": d, "from": t, "value": v}
            for (c, d), (t, v) in sorted(vec.tails.items())
        ],
    }


def _edge_json(e: EdgeId):
    out = {"edge": e.cls}
    if e.index is not None:
        out["index"] = e.index
    return out
