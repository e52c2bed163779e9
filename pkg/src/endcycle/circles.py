"""Circles and circle decompositions.

A circle is a closed curve in the compactified graph. Three finite
descriptions cover the ones this package produces and checks:

  FiniteCircuit   a closed edge-injective dart walk in the graph itself.
  CircuitFamily   a circuit template repeated over a range of shifts; one
                  entry stands for the whole (possibly infinite) family.
  EndCircle       a circle through one or more ends: a cyclic list of
                  segments, each a back ray (traversed inward), a finite
                  middle walk, and a forward ray. Consecutive segments must
                  meet at a common end. One segment whose two rays share an
                  end is a plain double ray.

Every piece can be evaluated exactly on any single edge, and a
CircleDecomposition is a finite list of integer-weighted pieces. Families
keep each edge's total finite because a template meets a fixed edge at
finitely many shifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FormatError, NotARay
from .graph import Dart, EdgeId, Ray, VertexId
from .vectors import EdgeVector


@dataclass(frozen=True)
class FiniteCircuit:
    darts: tuple

    def check(self, g):
        if not self.darts:
            raise FormatError("empty circuit")
        frm, _ = g.dart_ends(self.darts[0])
        seq = g.walk_from(frm, self.darts)
        if seq[-1] != seq[0]:
            raise FormatError(
                "circuit ends at %s, started at %s"
                % (seq[-1].label(), seq[0].label())
            )
        edges = [d.edge for d in self.darts]
        if len(set(edges)) != len(edges):
            dup = next(e for e in edges if edges.count(e) > 1)
            raise FormatError("circuit repeats edge %s" % dup.label())

    def hits(self, e: EdgeId) -> int:
        out = 0
        for d in self.darts:
            if d.edge == e:
                out += 1 if d.forward else -1
        return out

    def vector(self, g) -> EdgeVector:
        return EdgeVector.from_darts(g, self.darts)

    def shifted(self, g, k) -> "FiniteCircuit":
        return FiniteCircuit(tuple(g.shift_dart(d, k) for d in self.darts))


@dataclass(frozen=True)
class CircuitFamily:
    """template shifted by every k in [lo, hi]; None means unbounded."""

    template: FiniteCircuit
    lo: object = None
    hi: object = None

    def check(self, g):
        if g.kind == "finite":
            raise FormatError("shift families need a periodic graph")
        self.template.check(g)
        for d in self.template.darts:
            if d.edge.index is None:
                raise FormatError(
                    "family template uses static edge %s" % d.edge.label()
                )
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise FormatError("empty shift range")
        if g.kind == "periodic-n":
            if self.lo is None:
                raise FormatError(
                    "shift range must be bounded below on a one-ended lattice"
                )
            mn = min(d.edge.index for d in self.template.darts)
            if self.lo + mn < 0:
                raise FormatError("shift %d slides the template off the graph"
                                  % self.lo)

    def hits(self, e: EdgeId) -> int:
        if e.index is None:
            return 0
        out = 0
        for d in self.template.darts:
            if d.edge.cls != e.cls:
                continue
            k = e.index - d.edge.index
            if (self.lo is None or k >= self.lo) and (
                self.hi is None or k <= self.hi
            ):
                out += 1 if d.forward else -1
        return out


def ray_hits(g, ray: Ray, e: EdgeId) -> int:
    """Net number of times the ray traverses e (signed by direction)."""
    out = 0
    for d in ray.initial:
        if d.edge == e:
            out += 1 if d.forward else -1
    if e.index is None:
        return out
    for d in ray.repeat:
        if d.edge.cls != e.cls:
            continue
        diff = e.index - d.edge.index
        if diff % ray.shift == 0 and diff // ray.shift >= 0:
            out += 1 if d.forward else -1
    return out


def _lattices_meet(a, sa, b, sb) -> bool:
    # does {a + p*sa : p >= 0} intersect {b + q*sb : q >= 0}?
    L = abs(sa) * abs(sb) // math.gcd(abs(sa), abs(sb))
    base = min(a, b)
    for r in range(base, base + L):
        if (r - a) % abs(sa) or (r - b) % abs(sb):
            continue
        if (sa > 0) == (sb > 0):
            return True
        lo, hi = (a, b) if sa > 0 else (b, a)
        if lo > hi:
            continue
        first = r + -(-(lo - r) // L) * L
        if first <= hi:
            return True
    return False


def _rays_share_edge(g, r1: Ray, r2: Ray):
    """An edge traversed by both rays, or None."""
    for d in r1.initial:
        if ray_hits(g, r2, d.edge):
            return d.edge
    for d in r2.initial:
        if ray_hits(g, r1, d.edge):
            return d.edge
    for d1 in r1.repeat:
        for d2 in r2.repeat:
            if d1.edge.cls != d2.edge.cls:
                continue
            if _lattices_meet(d1.edge.index, r1.shift, d2.edge.index, r2.shift):
                # report the first concrete instance on r1's side
                n = d1.edge.index
                while ray_hits(g, r2, EdgeId(d1.edge.cls, n)) == 0:
                    n += r1.shift
                return EdgeId(d1.edge.cls, n)
    return None


@dataclass(frozen=True)
class RaySegment:
    """An arc from one end to another: in along back (reversed), across the
    middle darts, out along fwd."""

    back: Ray
    middle: tuple
    fwd: Ray

    def check(self, g):
        g.check_ray(self.back)
        g.check_ray(self.fwd)
        seq = g.walk_from(self.back.start, self.middle)
        if seq[-1] != self.fwd.start:
            raise FormatError(
                "segment middle ends at %s but the forward ray starts at %s"
                % (seq[-1].label(), self.fwd.start.label())
            )

    def hits(self, g, e: EdgeId) -> int:
        out = ray_hits(g, self.fwd, e) - ray_hits(g, self.back, e)
        for d in self.middle:
            if d.edge == e:
                out += 1 if d.forward else -1
        return out

    def rays(self):
        return (self.back, self.fwd)


@dataclass(frozen=True)
class EndCircle:
    segments: tuple

    def check(self, g):
        if not self.segments:
            raise FormatError("end circle with no segments")
        for seg in self.segments:
            seg.check(g)
        for i, seg in enumerate(self.segments):
            nxt = self.segments[(i + 1) % len(self.segments)]
            a = g.end_of_ray(seg.fwd)
            b = g.end_of_ray(nxt.back)
            if a != b:
                raise FormatError(
                    "segment %d leaves toward %s but segment %d returns from %s"
                    % (i, a, (i + 1) % len(self.segments), b)
                )
        rays = [r for seg in self.segments for r in seg.rays()]
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                e = _rays_share_edge(g, rays[i], rays[j])
                if e is not None:
                    raise FormatError(
                        "circle traverses edge %s twice" % e.label()
                    )
        mids = [d.edge for seg in self.segments for d in seg.middle]
        if len(set(mids)) != len(mids):
            dup = next(e for e in mids if mids.count(e) > 1)
            raise FormatError("circle traverses edge %s twice" % dup.label())
        for e in mids:
            for r in rays:
                if ray_hits(g, r, e):
                    raise FormatError(
                        "circle traverses edge %s twice" % e.label()
                    )

    def hits(self, g, e: EdgeId) -> int:
        return sum(seg.hits(g, e) for seg in self.segments)

    def ends(self, g):
        return tuple(g.end_of_ray(seg.fwd) for seg in self.segments)


PIECE_TYPES = (FiniteCircuit, CircuitFamily, EndCircle)


@dataclass(frozen=True)
class CircleDecomposition:
    entries: tuple  # of (coeff, piece)

    def check(self, g):
        for coeff, piece in self.entries:
            if not isinstance(coeff, int) or coeff == 0:
                raise FormatError("circle coefficient must be a nonzero "
                                  "integer, got %r" % (coeff,))
            if not isinstance(piece, PIECE_TYPES):
                raise FormatError("not a circle: %r" % (piece,))
            piece.check(g)

    def value_on(self, g, e: EdgeId) -> int:
        out = 0
        for coeff, piece in self.entries:
            if isinstance(piece, EndCircle):
                out += coeff * piece.hits(g, e)
            else:
                out += coeff * piece.hits(e)
        return out

    def evaluate(self, g, d: Dart) -> int:
        v = self.value_on(g, d.edge)
        return v if d.forward else -v


# serialization ------------------------------------------------------------


def dart_to_json(d: Dart):
    out = {"edge": d.edge.cls, "forward": d.forward}
    if d.edge.index is not None:
        out["index"] = d.edge.index
    return out


def dart_from_json(obj) -> Dart:
    if not isinstance(obj, dict) or "edge" not in obj:
        raise FormatError("bad dart object %r" % (obj,))
    idx = obj.get("index")
    if idx is not None and not isinstance(idx, int):
        raise FormatError("dart index must be an integer")
    fwd = obj.get("forward", True)
    if not isinstance(fwd, bool):
        raise FormatError("dart 'forward' must be a boolean")
    return Dart(EdgeId(obj["edge"], idx), fwd)


def ray_to_json(ray: Ray):
    start = {"class": ray.start.cls}
    if ray.start.index is not None:
        start["index"] = ray.start.index
    return {
        "start": start,
        "initial": [dart_to_json(d) for d in ray.initial],
        "repeat": [dart_to_json(d) for d in ray.repeat],
        "shift": ray.shift,
    }


def ray_from_json(obj) -> Ray:
    if not isinstance(obj, dict) or "start" not in obj:
        raise FormatError("bad ray object %r" % (obj,))
    st = obj["start"]
    if not isinstance(st, dict) or "class" not in st:
        raise FormatError("bad ray start %r" % (st,))
    if not isinstance(obj.get("shift"), int):
        raise FormatError("ray shift must be an integer")
    return Ray(
        VertexId(st["class"], st.get("index")),
        tuple(dart_from_json(d) for d in obj.get("initial", [])),
        tuple(dart_from_json(d) for d in obj.get("repeat", [])),
        obj["shift"],
    )


def _segment_to_json(seg: RaySegment):
    return {
        "back": ray_to_json(seg.back),
        "middle": [dart_to_json(d) for d in seg.middle],
        "forward": ray_to_json(seg.fwd),
    }


def _segment_from_json(obj) -> RaySegment:
    if not isinstance(obj, dict):
        raise FormatError("bad segment %r" % (obj,))
    for key in ("back", "forward"):
        if key not in obj:
            raise FormatError("segment needs a %r ray" % key)
    return RaySegment(
        ray_from_json(obj["back"]),
        tuple(dart_from_json(d) for d in obj.get("middle", [])),
        ray_from_json(obj["forward"]),
    )


def piece_to_json(piece):
    if isinstance(piece, FiniteCircuit):
        return {
            "type": "circuit",
            "darts": [dart_to_json(d) for d in piece.darts],
        }
    if isinstance(piece, CircuitFamily):
        return {
            "type": "family",
            "template": [dart_to_json(d) for d in piece.template.darts],
            "lo": piece.lo,
            "hi": piece.hi,
        }
    if isinstance(piece, EndCircle):
        if len(piece.segments) == 1:
            return {"type": "double-ray", **_segment_to_json(piece.segments[0])}
        return {
            "type": "end-circle",
            "segments": [_segment_to_json(s) for s in piece.segments],
        }
    raise FormatError("not a circle: %r" % (piece,))


def piece_from_json(obj):
    if not isinstance(obj, dict):
        raise FormatError("bad circle object %r" % (obj,))
    typ = obj.get("type")
    if typ == "circuit":
        return FiniteCircuit(tuple(dart_from_json(d) for d in obj.get("darts", [])))
    if typ == "family":
        lo, hi = obj.get("lo"), obj.get("hi")
        for b in (lo, hi):
            if b is not None and not isinstance(b, int):
                raise FormatError("family bounds must be integers or null")
        return CircuitFamily(
            FiniteCircuit(tuple(dart_from_json(d) for d in obj.get("template", []))),
            lo,
            hi,
        )
    if typ == "double-ray":
        return EndCircle((_segment_from_json(obj),))
    if typ == "end-circle":
        return EndCircle(
            tuple(_segment_from_json(s) for s in obj.get("segments", []))
        )
    raise FormatError("unknown circle type %r" % typ)


def decomposition_to_json(dec: CircleDecomposition):
    return {
        "circles": [
            {"coeff": coeff, **piece_to_json(piece)}
            for coeff, piece in dec.entries
        ]
    }


def decomposition_from_json(obj) -> CircleDecomposition:
    if not isinstance(obj, dict) or "circles" not in obj:
        raise FormatError("decomposition must carry a 'circles' list")
    entries = []
    for item in obj["circles"]:
        if not isinstance(item, dict):
            raise FormatError("bad circle entry %r" % (item,))
        coeff = item.get("coeff", 1)
        if not isinstance(coeff, int):
            raise FormatError("circle coefficient must be an integer")
        entries.append((coeff, piece_from_json(item)))
    return CircleDecomposition(tuple(entries))
