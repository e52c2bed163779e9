"""Cycle-space membership with checkable certificates.

decompose() either writes a vector as an explicit thin sum of circles or
raises NotInCycleSpace carrying a violated finite cut. The pipeline:

  1. Every vertex star must sum to zero. Beyond the explicit data the star
     sum of a class is a constant determined by the tails, so one deep probe
     per class and side settles the rest.
  2. The flux toward each end must vanish (a half-space cut; by step 1 its
     value does not depend on the radius).
  3. The tails form a circulation on the quotient multigraph whose nodes are
     the vertex classes. That circulation is peeled into simple quotient
     cycles. Drift-free cycles lift to circuit templates, repeated over a
     shift range. Drifting cycles are either stitched into a drift-free
     composite circuit via connector paths to a hub class, or handed to the
     end stage as explicit rays (strands), one per residue class of the
     drift.
  4. What remains is a finite conservative flow plus ray stubs into ends;
     its cycle decomposition yields finite circuits and end circles.

Steps 1 and 2 are the only obstructions: when both pass, the construction
succeeds, and the result is re-verified by exact sampling before it is
returned."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import cuts
from .circles import (
    CircleDecomposition,
    CircuitFamily,
    EndCircle,
    FiniteCircuit,
    RaySegment,
    decomposition_from_json,
    decomposition_to_json,
)
from .errors import (
    FormatError,
    GraphMismatch,
    InfiniteCut,
    InternalError,
    NotInCycleSpace,
)
from .graph import Dart, EdgeId, EndId, Ray, VertexId, edge_key, vertex_key
from .vectors import EdgeVector, FamilyMember, VectorFamily, thin_sum

_COMPOSITE_COPY_CAP = 64
_COMPOSITE_LEN_CAP = 2000
_STRAND_RETRIES = 3


@dataclass(frozen=True)
class Member:
    decomposition: CircleDecomposition


@dataclass(frozen=True)
class NonMember:
    cut: object
    cut_sum: int


def _data_extent(vec: EdgeVector) -> int:
    out = 0
    for e in vec.vals:
        if e.index is not None:
            out = max(out, abs(e.index))
    for (_c, _d), (t, _v) in vec.tails.items():
        out = max(out, abs(t))
    return out


def is_member(g, vec: EdgeVector):
    """Decide membership in the cycle space; always returns a certificate."""
    try:
        return Member(decompose(g, vec))
    except NotInCycleSpace as ex:
        return NonMember(ex.cut, ex.cut_sum)


def decompose(g, vec: EdgeVector) -> CircleDecomposition:
    if vec.graph.spec is not g.spec and vec.graph.spec != g.spec:
        raise GraphMismatch("vector belongs to a different graph")

    W = g.W
    nb = len(g.spec.cell_classes)
    ext = _data_extent(vec)
    deep = max(ext, g.stabilization_radius) + g.D + 1

    _check_stars(g, vec, deep)
    _check_end_flux(g, vec, deep + 1)

    start = deep + nb * max(g.D, 1) + W + 5
    best = None
    last = None
    for prefer_strands in (False, True):
        try:
            dec, drifted = _assemble(g, vec, start, prefer_strands)
        except InternalError as ex:
            last = ex
            continue
        key = (len(dec.entries), _piece_weight(dec))
        if best is None or key < best[0]:
            best = (key, dec)
        if not drifted:
            # no drifting tails, so the strand pass would repeat this one
            break
    if best is None:
        raise last
    return best[1]


def _piece_weight(dec):
    return sum(
        1 for _c, piece in dec.entries if not isinstance(piece, CircuitFamily)
    )


def _assemble(g, vec, start, prefer_strands):
    """One full pipeline pass; returns (decomposition, saw drifting tails)."""
    for attempt in range(_STRAND_RETRIES):
        try:
            entries, strands, resid, drifted = _peel_tails(
                g, vec, start + 7 * attempt, prefer_strands
            )
            pieces = _finish_finite(g, resid, strands)
            break
        except _RetryStrands:
            if attempt == _STRAND_RETRIES - 1:
                raise InternalError(
                    "could not lay out end rays without overlap"
                )
    dec = CircleDecomposition(tuple(entries + pieces))
    dec.check(g)
    if not _values_agree(g, vec, dec):
        raise InternalError("decomposition does not re-sum to the input")
    return dec, drifted


class _RetryStrands(Exception):
    pass


# -- steps 1 and 2: the obstructions ----------------------------------------


def _check_stars(g, vec, bound):
    verts = list(g.cap_vertices())
    verts.extend(g.cell_vertices_within(-bound - 1, bound + 1))
    for v in sorted(verts, key=vertex_key):
        s = sum(vec.evaluate(d) for d, _w in g.neighbors(v))
        if s != 0:
            raise NotInCycleSpace(cuts.star_cut(v), s)


def _check_end_flux(g, vec, radius):
    for e in g.ends():
        cut = cuts.HalfSpaceCut((e,), radius)
        s = cuts.cut_sum(g, cut, vec)
        if s != 0:
            raise NotInCycleSpace(cut, s)


# -- quotient circulation ----------------------------------------------------


def _tail_circulation(g, vec, direction):
    out = {}
    for ec in g.cell_edge_classes:
        tl = vec.tail_of(ec.name, direction)
        if tl is not None and tl[1]:
            out[ec.name] = tl[1]
    return out


def _flow_cycles(nodes, arcs, weight, order=None):
    """Greedy decomposition of a conservative integer flow into node-simple
    cycles. arcs: key -> (tail, head); nodes must come pre-ordered. Returns
    a list of (weight>0, steps) with steps a tuple of (key, forward)."""
    w = {k: v for k, v in weight.items() if v}
    by_tail = {}
    by_head = {}
    for key in sorted(arcs, key=order):
        t, h = arcs[key]
        by_tail.setdefault(t, []).append(key)
        by_head.setdefault(h, []).append(key)

    def step_from(node, pend):
        # a node-simple walk never revisits an arc, so `pend` holds at most
        # one unit per key; the effective weight decides usability
        for key in by_tail.get(node, ()):
            if w.get(key, 0) - pend.get(key, 0) > 0:
                return key, True
        for key in by_head.get(node, ()):
            if w.get(key, 0) - pend.get(key, 0) < 0:
                return key, False
        return None

    out = []
    for start in nodes:
        if step_from(start, {}) is None:
            continue
        path = []
        pend = {}
        seen = {start: 0}
        node = start
        while True:
            nxt = step_from(node, pend)
            if nxt is None:
                if node == start and not path:
                    break
                raise InternalError(
                    "flow stalled at %r; conservation was violated" % (node,)
                )
            key, fwd = nxt
            t, h = arcs[key]
            pend[key] = pend.get(key, 0) + (1 if fwd else -1)
            node = h if fwd else t
            path.append((key, fwd))
            if node in seen:
                i = seen[node]
                cyc = path[i:]
                m = min(w[k] if f else -w[k] for k, f in cyc)
                for k, f in cyc:
                    w[k] -= m if f else -m
                    pend.pop(k, None)
                out.append((m, tuple(cyc)))
                del path[i:]
                for n in list(seen):
                    if seen[n] > i:
                        del seen[n]
            else:
                seen[node] = len(path)
    return out


def _cycle_drift(g, steps):
    d = 0
    for name, fwd in steps:
        ec = g.edge_classes[name]
        d += (ec.head_pos - ec.tail_pos) if fwd else (ec.tail_pos - ec.head_pos)
    return d


def _canonical(steps):
    best = None
    for i in range(len(steps)):
        rot = steps[i:] + steps[:i]
        if best is None or rot < best:
            best = rot
    return best


def _lift_cycle(g, steps, start_offset=0):
    """Darts of one pass of a quotient cycle, starting at the tail-side
    class of the first step placed at start_offset. Returns (darts, start
    vertex, end vertex)."""
    name0, fwd0 = steps[0]
    ec0 = g.edge_classes[name0]
    cls = ec0.tail_cls if fwd0 else ec0.head_cls
    off = start_offset
    start = VertexId(cls, off)
    darts = []
    for name, fwd in steps:
        ec = g.edge_classes[name]
        if fwd:
            if ec.tail_cls != cls:
                raise InternalError("quotient cycle does not chain")
            base = off - ec.tail_pos
            darts.append(Dart(EdgeId(name, base), True))
            cls, off = ec.head_cls, base + ec.head_pos
        else:
            if ec.head_cls != cls:
                raise InternalError("quotient cycle does not chain")
            base = off - ec.head_pos
            darts.append(Dart(EdgeId(name, base), False))
            cls, off = ec.tail_cls, base + ec.tail_pos
    return darts, start, VertexId(cls, off)


def _normalized_template(g, darts):
    """Shift darts so the smallest edge index is 0; return (circuit, shift
    applied)."""
    mn = min(d.edge.index for d in darts)
    return FiniteCircuit(tuple(g.shift_dart(d, -mn) for d in darts)), -mn


def _class_components(g):
    comp = {c: c for c in g.spec.cell_classes}

    def find(c):
        while comp[c] != c:
            comp[c] = comp[comp[c]]
            c = comp[c]
        return c

    for ec in g.cell_edge_classes:
        a, b = find(ec.tail_cls), find(ec.head_cls)
        if a != b:
            comp[max(a, b)] = min(a, b)
    return {c: find(c) for c in comp}


def _connector_paths(g, comp_of, hub):
    """For every class in hub's component, a dart path from (class, 0) to
    the hub class at some offset, by breadth-first search over
    (class, offset) states."""
    limit = (len(g.spec.cell_classes) + 2) * (g.D + 1) + g.W
    paths = {hub: ((), 0)}
    frontier = [(hub, 0, ())]
    seen = {(hub, 0)}
    # search backwards from the hub so stored paths run class -> hub
    while frontier:
        nxt = []
        for cls, off, trail in frontier:
            for ec in g.cell_edge_classes:
                moves = []
                if ec.head_cls == cls:
                    base = off - ec.head_pos
                    moves.append(
                        (ec.tail_cls, base + ec.tail_pos,
                         Dart(EdgeId(ec.name, base), True))
                    )
                if ec.tail_cls == cls:
                    base = off - ec.tail_pos
                    moves.append(
                        (ec.head_cls, base + ec.head_pos,
                         Dart(EdgeId(ec.name, base), False))
                    )
                for ncls, noff, dart in moves:
                    if abs(noff) > limit or (ncls, noff) in seen:
                        continue
                    seen.add((ncls, noff))
                    ntrail = (dart,) + trail
                    if ncls not in paths:
                        # ntrail runs from (ncls, noff) to (hub, 0); rebase
                        paths[ncls] = (
                            tuple(g.shift_dart(d, -noff) for d in ntrail),
                            -noff,
                        )
                    nxt.append((ncls, noff, ntrail))
        frontier = nxt
    return paths


def _shift_darts(g, darts, k):
    return [g.shift_dart(d, k) for d in darts]


def _reduce_backtracks(darts):
    stack = []
    for d in darts:
        if stack and stack[-1] == d.reverse():
            stack.pop()
        else:
            stack.append(d)
    while len(stack) >= 2 and stack[0] == stack[-1].reverse():
        stack = stack[1:-1]
    return stack


def _balanced_order(copies):
    """Interleave signs so the accumulated drift stays near zero."""
    pending = sorted(copies)
    order = []
    acc = 0
    while pending:
        want_pos = acc <= 0
        pick = next(
            (i for i, (d, _s) in enumerate(pending) if (d > 0) == want_pos),
            0,
        )
        delta, steps = pending.pop(pick)
        order.append((delta, steps))
        acc += delta
    return order, acc


def _stacked_order(copies):
    """Keep copies of one cycle consecutive, so each lands at a fresh
    offset; positive drifts first, then the negatives ride back down."""
    pending = sorted(copies)
    order = [c for c in pending if c[0] > 0]
    order += [c for c in pending if c[0] < 0]
    return order, sum(d for d, _s in order)


def _build_composite(g, copies, comp_of):
    """Stitch unit-weight drifting cycles (total drift zero) into one closed
    drift-free circuit via connector paths to the component's hub class.
    Returns the dart list or None when no edge-injective layout exists."""
    if len(copies) > _COMPOSITE_COPY_CAP:
        return None
    hub = min(
        c
        for c in g.spec.cell_classes
        if comp_of[c] == comp_of[_cycle_class(g, copies[0][1])]
    )
    paths = _connector_paths(g, comp_of, hub)
    for ordering in (_balanced_order, _stacked_order):
        order, acc = ordering(copies)
        if acc != 0:
            raise InternalError("drifting cycles do not balance")
        darts = _assemble_composite(g, order, paths)
        if darts is not None:
            return darts
    return None


def _assemble_composite(g, order, paths):
    darts = []
    off = 0
    for delta, steps in order:
        cls = _cycle_class(g, steps)
        if cls not in paths:
            return None
        road, road_off = paths[cls]
        # hub at `off` down to the cycle class, one pass, and back up
        inbound = [d.reverse() for d in reversed(road)]
        darts.extend(_shift_darts(g, inbound, off - road_off))
        lifted, _s, _e = _lift_cycle(g, steps, off - road_off)
        darts.extend(lifted)
        darts.extend(_shift_darts(g, road, off - road_off + delta))
        off += delta
    darts = _reduce_backtracks(darts)
    if not darts or len(darts) > _COMPOSITE_LEN_CAP:
        return None
    edges = [d.edge for d in darts]
    if len(set(edges)) != len(edges):
        return None
    return darts


def _cycle_class(g, steps):
    name, fwd = steps[0]
    ec = g.edge_classes[name]
    return ec.tail_cls if fwd else ec.head_cls


def _family_vector(g, coeff, template, lo, hi):
    fam = VectorFamily(
        g, periodic=(FamilyMember(coeff, template.vector(g), lo, hi),)
    )
    return thin_sum(fam)


def _peel_tails(g, vec, start, prefer_strands=False):
    """Emit circuit families reproducing the tails; return (entries, strand
    list, finite residue, whether any tail cycle drifts)."""
    entries = []
    strands = []  # (weight, Ray, start VertexId, EndId)
    resid = vec
    comp_of = _class_components(g) if g.spec.cell_classes else {}

    per_dir = {}
    for direction in g.directions():
        sign = 1 if direction == "+" else -1
        tau = _tail_circulation(g, vec, direction)
        if not tau:
            per_dir[sign] = ([], {})
            continue
        arcs = {
            ec.name: (ec.tail_cls, ec.head_cls) for ec in g.cell_edge_classes
        }
        cycles = _flow_cycles(sorted(g.spec.cell_classes), arcs, tau)
        flat, drifting = [], {}
        for wgt, steps in cycles:
            d = _cycle_drift(g, steps)
            if d == 0:
                flat.append((wgt, _canonical(list(steps))))
            else:
                comp = comp_of[_cycle_class(g, steps)]
                drifting.setdefault(comp, []).append(
                    (wgt, d, _canonical(list(steps)))
                )
        per_dir[sign] = (flat, drifting)

    # drift-free cycles: merge mirrored pairs into full-lattice families
    plus_flat = _merge_weights(per_dir.get(1, ([], {}))[0])
    minus_flat = _merge_weights(per_dir.get(-1, ([], {}))[0])
    for key in sorted(set(plus_flat) | set(minus_flat)):
        wp, wm = plus_flat.get(key, 0), minus_flat.get(key, 0)
        steps = list(key)
        lifted, _s, _e = _lift_cycle(g, steps)
        template, _sh = _normalized_template(g, lifted)
        both = min(wp, wm) if (wp > 0 and wm > 0) else 0
        if both:
            fam = CircuitFamily(template, None, None)
            entries.append((both, fam))
            resid = resid - _family_vector(g, both, template, None, None)
            wp -= both
            wm -= both
        if wp:
            fam = CircuitFamily(template, start, None)
            entries.append((wp, fam))
            resid = resid - _family_vector(g, wp, template, start, None)
        if wm:
            fam = CircuitFamily(template, None, -start)
            entries.append((wm, fam))
            resid = resid - _family_vector(g, wm, template, None, -start)

    # drifting cycles: composite circuit when possible, strands otherwise
    plus_drift = per_dir.get(1, ([], {}))[1]
    minus_drift = per_dir.get(-1, ([], {}))[1]
    drifted = bool(plus_drift or minus_drift)
    for comp in sorted(set(plus_drift) | set(minus_drift)):
        cp = sorted(plus_drift.get(comp, []))
        cm = sorted(minus_drift.get(comp, []))
        if cp and cp == cm and not prefer_strands:
            built = _try_composite(g, cp, comp_of)
            if built is not None:
                wgt, template = built
                entries.append((wgt, CircuitFamily(template, None, None)))
                resid = resid - _family_vector(g, wgt, template, None, None)
                continue
        for sign, group in ((1, cp), (-1, cm)):
            if not group:
                continue
            built = (
                None
                if prefer_strands
                else _try_composite(g, group, comp_of)
            )
            if built is not None:
                wgt, template = built
                lo, hi = (start, None) if sign > 0 else (None, -start)
                entries.append((wgt, CircuitFamily(template, lo, hi)))
                resid = resid - _family_vector(g, wgt, template, lo, hi)
            else:
                ent, resid = _emit_strands(g, group, sign, start, resid)
                strands.extend(ent)
    if resid.tails:
        raise InternalError("tails survived the peeling stage")
    return entries, strands, resid, drifted


def _merge_weights(pairs):
    out = {}
    for wgt, key in pairs:
        out[tuple(key)] = out.get(tuple(key), 0) + wgt
    return out


def _unit_copies(group):
    copies = []
    for wgt, delta, steps in group:
        copies.extend([(delta, tuple(steps))] * wgt)
        if len(copies) > _COMPOSITE_COPY_CAP:
            return None
    return copies


def _try_composite(g, group, comp_of):
    """Common weight times one stitched drift-free template, or None."""
    shared = 0
    for wgt, _d, _s in group:
        shared = math.gcd(shared, wgt)
    reduced = [(wgt // shared, delta, steps) for wgt, delta, steps in group]
    copies = _unit_copies(reduced)
    if copies is None:
        return None
    darts = _build_composite(g, copies, comp_of)
    if darts is None:
        return None
    template, _sh = _normalized_template(g, darts)
    return shared, template


def _emit_strands(g, group, sign, start, resid):
    """Turn each drifting quotient cycle into |drift| outward rays starting
    at consecutive shifts; subtract each cycle's group sum (a one-period
    path family) from the residue."""
    out = []
    for wgt, delta, steps in sorted(group):
        if (delta > 0) != (sign > 0):
            steps = [(n, not f) for n, f in reversed(steps)]
            delta = -delta
            wgt = -wgt
        anchor = start if sign > 0 else -start
        lifted, s_v, _e = _lift_cycle(g, steps, anchor)
        base = EdgeVector.from_darts(g, lifted)
        lo, hi = (0, None) if sign > 0 else (None, 0)
        resid = resid - thin_sum(
            VectorFamily(g, periodic=(FamilyMember(wgt, base, lo, hi),))
        )
        for r in range(abs(delta)):
            k = r if sign > 0 else -r
            ray = Ray(
                VertexId(s_v.cls, s_v.index + k),
                (),
                tuple(g.shift_dart(d, k) for d in lifted),
                delta,
            )
            end = g.end_of_ray(ray)
            out.append((wgt, ray, ray.start, end))
    return out, resid


# -- the finite stage --------------------------------------------------------


def _finish_finite(g, resid, strands):
    arcs = {}
    weight = {}
    nodes = set()
    for e, val in resid.vals.items():
        t, h = g.endpoints(e)
        arcs[("e", e)] = (t, h)
        weight[("e", e)] = val
        nodes.add(t)
        nodes.add(h)
    for i, (wgt, ray, start, end) in enumerate(strands):
        arcs[("s", i)] = (start, end)
        weight[("s", i)] = wgt
        nodes.add(start)
        nodes.add(end)

    # conservation must already hold; a failure here is a pipeline bug
    flux = {}
    for key, (t, h) in arcs.items():
        w = weight[key]
        flux[t] = flux.get(t, 0) + w
        flux[h] = flux.get(h, 0) - w
    bad = [n for n, f in flux.items() if f and isinstance(n, VertexId)]
    if bad:
        raise InternalError("finite stage is not conservative at %s"
                            % bad[0].label())
    bad = [n for n, f in flux.items() if f and isinstance(n, EndId)]
    if bad:
        raise InternalError("ray stubs into %s do not balance" % bad[0])

    def sort_key(n):
        if isinstance(n, EndId):
            return (1, n.direction, n.rank)
        return (0,) + vertex_key(n)

    def arc_key(key):
        kind, payload = key
        if kind == "e":
            return (0, edge_key(payload))
        return (1, payload)

    node_list = sorted(nodes, key=sort_key)
    pieces = []
    for m, steps in _flow_cycles(node_list, arcs, weight, order=arc_key):
        piece = _cycle_to_piece(g, arcs, strands, steps)
        pieces.append((m, piece))
    return pieces


def _cycle_to_piece(g, arcs, strands, steps):
    node_seq = []
    node = None
    for key, fwd in steps:
        t, h = arcs[key]
        node = h if fwd else t
        node_seq.append(node)
    virt = [i for i, n in enumerate(node_seq) if isinstance(n, EndId)]
    if not virt:
        darts = []
        for key, fwd in steps:
            kind, payload = key
            if kind != "e":
                raise InternalError("ray stub in a finite circuit")
            darts.append(Dart(payload, fwd))
        return FiniteCircuit(tuple(darts))
    if len(virt) != len(set(node_seq[i] for i in virt)):
        raise InternalError("a circle would pass twice through one end")
    # rotate so the walk begins just after a visit to an end: then it
    # alternates (ray out of the end, middle darts, ray into the next end)
    k = virt[0] + 1
    steps = steps[k:] + steps[:k]
    node_seq = node_seq[k:] + node_seq[:k]
    segments = []
    back_ray = None
    middle = []
    for (key, fwd), node in zip(steps, node_seq):
        if isinstance(node, EndId):
            fwd_ray = _strand_ray(strands, (key, fwd))
            segments.append(RaySegment(back_ray, tuple(middle), fwd_ray))
            middle = []
            back_ray = None
        elif back_ray is None:
            back_ray = _strand_ray(strands, (key, fwd))
        else:
            kind, payload = key
            if kind != "e":
                raise InternalError("unexpected ray stub inside a segment")
            middle.append(Dart(payload, fwd))
    piece = EndCircle(tuple(segments))
    try:
        piece.check(g)
    except FormatError:
        raise _RetryStrands()
    return piece


def _strand_ray(strands, step):
    (kind, idx), _fwd = step
    if kind != "s":
        raise InternalError("expected a ray stub at an end boundary")
    return strands[idx][1]


# -- verification ------------------------------------------------------------


def _cert_extent(dec: CircleDecomposition) -> int:
    out = 0

    def bump(n):
        nonlocal out
        if n is not None:
            out = max(out, abs(n))

    def darts(ds):
        for d in ds:
            bump(d.edge.index)

    for _c, piece in dec.entries:
        if isinstance(piece, FiniteCircuit):
            darts(piece.darts)
        elif isinstance(piece, CircuitFamily):
            darts(piece.template.darts)
            bump(piece.lo)
            bump(piece.hi)
        else:
            for seg in piece.segments:
                darts(seg.middle)
                for ray in (seg.back, seg.fwd):
                    bump(ray.start.index)
                    darts(ray.initial)
                    darts(ray.repeat)
    return out


def _cert_period(dec: CircleDecomposition) -> int:
    p = 1
    for _c, piece in dec.entries:
        if isinstance(piece, EndCircle):
            for seg in piece.segments:
                for ray in (seg.back, seg.fwd):
                    p = p * abs(ray.shift) // math.gcd(p, abs(ray.shift))
    return p


def _values_agree(g, vec, dec) -> bool:
    T = max(_data_extent(vec), _cert_extent(dec)) + g.W + 1
    P = _cert_period(dec)
    for e in g.static_instances():
        if dec.value_on(g, e) != vec.value_on(e):
            return False
    lo = 0 if g.kind == "periodic-n" else -(T + P)
    for ec in g.cell_edge_classes:
        for n in range(lo, T + P + 1):
            e = EdgeId(ec.name, n)
            if dec.value_on(g, e) != vec.value_on(e):
                return False
    return True


def verify_certificate(g, vec: EdgeVector, cert) -> bool:
    """Check a certificate against the vector it claims to describe.

    For Member the decomposition is validated and compared with the vector
    on a window wide enough to cover all data plus one full period of every
    ray, which settles equality everywhere. For NonMember the cut must be
    finite and its crossing sum must match the claim and be nonzero."""
    if isinstance(cert, Member):
        cert.decomposition.check(g)
        return _values_agree(g, vec, cert.decomposition)
    if isinstance(cert, NonMember):
        try:
            s = cuts.cut_sum(g, cert.cut, vec)
        except InfiniteCut:
            return False
        return s == cert.cut_sum and s != 0
    raise FormatError("not a certificate: %r" % (cert,))


def find_violated_cut(g, vec, radius):
    """Search the finite-cut window for a nonzero crossing sum. Returns
    (cut, sum) or None. Exponential in the window size."""
    for cut, darts in cuts.enumerate_finite_cuts(g, radius, with_edges=True):
        s = sum(vec.evaluate(d) for d in darts)
        if s != 0:
            return cut, s
    return None


# -- serialization -----------------------------------------------------------


def certificate_to_json(cert):
    if isinstance(cert, Member):
        return {
            "verdict": "member",
            "decomposition": decomposition_to_json(cert.decomposition),
        }
    if isinstance(cert, NonMember):
        return {
            "verdict": "non-member",
            "cut": cuts.cut_to_json(cert.cut),
            "sum": cert.cut_sum,
        }
    raise FormatError("not a certificate: %r" % (cert,))


def certificate_from_json(g, obj):
    if not isinstance(obj, dict):
        raise FormatError("certificate must be an object")
    verdict = obj.get("verdict")
    if verdict == "member":
        return Member(decomposition_from_json(obj.get("decomposition", {})))
    if verdict == "non-member":
        if not isinstance(obj.get("sum"), int):
            raise FormatError("non-member certificate needs an integer sum")
        return NonMember(cuts.cut_from_json(g, obj.get("cut")), obj["sum"])
    raise FormatError("unknown verdict %r" % verdict)
