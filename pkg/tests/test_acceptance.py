"""Acceptance gate.

One test per advertised guarantee. Each prints a single [PASS]/[FAIL]
line (run with -s to see them) before asserting, so a red run still
reports every verdict. The wall-clock limits are part of the contract:
they catch algorithmic blowups, not machine jitter.
"""

import random
import time

import pytest

from endcycle import chains, circles, cuts, examples
from endcycle.cuts import cut_sum
from endcycle.graph import EdgeId, graph_from_text
from endcycle.membership import Member, NonMember, is_member, verify_certificate
from endcycle.vectors import parse_vector_text

from conftest import (CHORDS, DOUBLE_RAY, LADDER, SINGLE_RAY, THETA,
                      THREE_PARTS, TRIANGLE_CAPS, TRIPLE, random_chain,
                      random_vector)


def _gate(label, ok, detail):
    print()
    print("[%s] %s (%s)" % ("PASS" if ok else "FAIL", label, detail))
    assert ok, "%s: %s" % (label, detail)


def _scaled(g, rep, k):
    finite = tuple((c * k, m) for c, m in rep.finite)
    periodic = tuple(
        chains.PeriodicMember(p.coeff * k, p.template, p.lo, p.hi, p.step)
        for p in rep.periodic
    )
    return chains.ChainRep(g, finite, periodic)


def _merge(g, a, b):
    return chains.ChainRep(g, a.finite + b.finite, a.periodic + b.periodic)


def test_double_ladder_suite():
    docs = examples.example_documents("double-ladder")
    g = examples.example_graph("double-ladder")
    top = parse_vector_text(g, docs["top-rail.vec"])
    diff = parse_vector_text(g, docs["rail-difference.vec"])

    t0 = time.perf_counter()
    cert_top = is_member(g, top)
    cert_diff = is_member(g, diff)
    rails_adhoc = chains.is_cycle_adhoc(
        g, chains.parse_chain_text(g, docs["rails.chain"]))
    squares_adhoc = chains.is_cycle_adhoc(
        g, chains.parse_chain_text(g, docs["squares.chain"]))
    elapsed = time.perf_counter() - t0

    refused = isinstance(cert_top, NonMember)
    recomputed = cut_sum(g, cert_top.cut, top) if refused else 0

    accepted = isinstance(cert_diff, Member)
    probes = mismatches = 0
    if accepted:
        dec = cert_diff.decomposition
        for e in g.truncate(6).edges:
            probes += 1
            if dec.value_on(g, e) != diff.value_on(e):
                mismatches += 1
        for (cname, dirn), (t, v) in diff.tails.items():
            for off in (0, 1, 9, 60, 350):
                i = t + off if dirn == "+" else t - off
                probes += 1
                if dec.value_on(g, EdgeId(cname, i)) != v:
                    mismatches += 1

    ok = (refused and recomputed != 0 and accepted and mismatches == 0
          and not rails_adhoc and squares_adhoc and elapsed < 1.0)
    _gate("double-ladder membership suite", ok,
          "cut sum %d, %d re-evaluation probes, %d mismatches, "
          "adhoc rails=%s squares=%s, %.2fs"
          % (recomputed, probes, mismatches, rails_adhoc, squares_adhoc,
             elapsed))


def test_repeating_walk_family_is_rejected():
    g = graph_from_text(TRIANGLE_CAPS)
    fam = chains.parse_chain_text(g, "periodic 0..inf { walk v0 a v1 b v2 c v0 }")
    t0 = time.perf_counter()
    report = chains.check_admissible(g, fam)
    elapsed = time.perf_counter() - t0
    witness = report.witness.label() if report.witness else "none"
    ok = not report.ok and witness == "v0" and elapsed < 1.0
    _gate("repeating walk family rejected", ok,
          "witness %s, %.2fs" % (witness, elapsed))


def test_double_ray_with_and_without_chords():
    docs = examples.example_documents("intro-chords")
    plain = graph_from_text(docs["intro-plain.graph"])
    chorded = examples.example_graph("intro-chords")

    t0 = time.perf_counter()
    cert_plain = is_member(plain, parse_vector_text(plain, docs["rail-loop.vec"]))
    cert_chorded = is_member(chorded, parse_vector_text(chorded, docs["rail-loop.vec"]))
    passes = chains.parse_chain_text(chorded, docs["rail-passes.chain"])
    jump = chains.parse_chain_text(chorded, docs["endjump-loop.chain"])
    same = chains.homologous(chorded, passes, jump)
    elapsed = time.perf_counter() - t0

    ends = (len(tuple(plain.ends())), len(tuple(chorded.ends())))
    entries = cert_chorded.decomposition.entries if isinstance(cert_chorded, Member) else ()
    single_circle = (len(entries) == 1 and entries[0][0] == 1
                     and isinstance(entries[0][1], circles.EndCircle))
    ok = (ends == (2, 1) and isinstance(cert_plain, NonMember)
          and single_circle and same and elapsed < 1.0)
    _gate("double ray with and without chords", ok,
          "ends %d->%d, plain %s, chorded pieces %d, pass family homologous "
          "to end jump loop %s, %.2fs"
          % (ends[0], ends[1], type(cert_plain).__name__, len(entries),
             same, elapsed))


def test_membership_agrees_with_cut_enumeration():
    pool = [graph_from_text(t) for t in
            (LADDER, CHORDS, TRIPLE, SINGLE_RAY, DOUBLE_RAY, THETA,
             TRIANGLE_CAPS, THREE_PARTS)]
    t0 = time.perf_counter()
    checked = disagreements = members = verified = literal = 0
    for seed in range(26):
        for g in pool:
            rng = random.Random("%d/%s" % (seed, g.spec.name))
            vec = random_vector(g, rng)
            cert = is_member(g, vec)
            radius = 3 + 2 * g.D + 2
            violated = cuts.exhaustive_cut_check(
                g, vec, radius, sample=24, rng=rng)
            if (violated is None) != isinstance(cert, Member):
                disagreements += 1
            checked += 1
            if isinstance(cert, Member):
                members += 1
                if verify_certificate(g, vec, cert):
                    verified += 1
                if seed < 10:
                    # a literal, fully enumerated window as a spot check
                    for cut in cuts.enumerate_finite_cuts(g, 1):
                        literal += 1
                        if cut_sum(g, cut, vec) != 0:
                            disagreements += 1
    elapsed = time.perf_counter() - t0
    ok = (checked >= 200 and len(pool) >= 5 and disagreements == 0
          and members > 0 and verified == members and elapsed < 60.0)
    _gate("membership agrees with cut enumeration", ok,
          "%d vectors over %d graphs, %d members all verified, %d literal "
          "cuts, %d disagreements, %.1fs"
          % (checked, len(pool), members, literal, disagreements, elapsed))


def _cycle_generators():
    ladder = graph_from_text(LADDER)
    chords = graph_from_text(CHORDS)
    theta = graph_from_text(THETA)

    def square(s):
        return ("walk top[%d] rail_top[%d] top[%d] rung[%d] bot[%d] "
                "rail_bot[%d] bot[%d] rung[%d] top[%d]"
                % (s, s, s + 1, s + 1, s + 1, s, s, s, s))

    def quad(s):
        s = max(0, s)
        return ("walk pos[%d] pos_step[%d] pos[%d] chord[%d] neg[%d] "
                "neg_step[%d] neg[%d] chord[%d] pos[%d]"
                % (s, s, s + 1, s + 1, s + 1, s, s, s, s))

    return [
        (ladder, [lambda s: square(s),
                  lambda s: "periodic -inf..inf { %s }" % square(0)]),
        (chords, [lambda s: quad(s),
                  lambda s: "walk origin pos_first pos[0] chord[0] neg[0] "
                            "neg_first origin",
                  lambda s: "endjump origin pos_first+ repeat pos_step[0]+ ; "
                            "origin neg_first- repeat neg_step[0]-"]),
        (theta, [lambda s: "walk u left v mid u",
                 lambda s: "walk u mid v right u"]),
    ]


def test_winding_algebra_on_fuzzed_cycles():
    gens = _cycle_generators()
    rng = random.Random(20260816)
    t0 = time.perf_counter()
    fuzzed = failures = 0
    for trial in range(120):
        g, spawners = gens[trial % len(gens)]

        def combo():
            rep = None
            for _ in range(rng.randint(1, 2)):
                text = rng.choice(spawners)(rng.randint(-2, 2))
                part = _scaled(g, chains.parse_chain_text(g, text),
                               rng.choice([-3, -1, 1, 2]))
                rep = part if rep is None else _merge(g, rep, part)
            return rep

        a, b = combo(), combo()
        va = chains.homology_class(g, a)
        vb = chains.homology_class(g, b)
        linear = chains.homology_class(g, _merge(g, a, b)) == va + vb
        subdivided = chains.homology_class(g, chains.subdivide_to_passes(a)) == va
        faithful = chains.homologous(g, a, b) == (va == vb)
        fuzzed += 1
        if not (linear and subdivided and faithful):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = fuzzed >= 100 and failures == 0
    _gate("winding algebra on fuzzed cycles", ok,
          "%d cycle reps, %d failures, %.1fs" % (fuzzed, failures, elapsed))


def test_component_count_and_higher_ranks():
    one = graph_from_text(LADDER)
    two = examples.example_graph("disjoint-ladder-triangle")
    three = graph_from_text(THREE_PARTS)

    ranks = tuple(chains.h0(g).rank for g in (one, two, three))
    fuzzed = bad_aug = 0
    for seed in range(18):
        for g in (one, two, three, graph_from_text(CHORDS)):
            rep = random_chain(g, random.Random("aug/%d/%s" % (seed, g.spec.name)))
            if any(s != 0 for s in chains.augmentation(g, chains.boundary(rep))):
                bad_aug += 1
            fuzzed += 1
    trivial = all(
        chains.h_n_trivial(g, n).describe() == "0"
        for g in (one, three) for n in (2, 5, 100))
    ok = ranks == (1, 2, 3) and bad_aug == 0 and trivial
    _gate("component count and higher ranks", ok,
          "H0 ranks %s, %d fuzzed boundaries all augment to zero, "
          "higher groups trivial %s" % (list(ranks), fuzzed, trivial))


def test_restriction_to_the_positive_side():
    docs = examples.example_documents("double-ladder")
    g = examples.example_graph("double-ladder")
    pair = chains.parse_pair_text(g, docs["positive-side.pair"])
    squares = chains.parse_chain_text(g, docs["squares.chain"])
    res = chains.restrict_chain(g, pair, squares)
    text = chains.chain_to_text(res)
    expected = ("periodic 1..inf { walk top[0] rail_top[0] top[1] rung[1] "
                "bot[1] rail_bot[0] bot[0] rung[0] top[0] }")
    admissible = chains.check_admissible(g, res).ok
    ok = text == expected and admissible
    _gate("restriction to the positive side", ok,
          "kept members 1..inf, admissible %s" % admissible)
