"""Constructive generators of unknot diagrams and the trefoil builder.

Every generator returns its diagrams together with machine-checkable
certificates: a replay of recorded one-sided cycle collapses, bigon
removals, and a descending residual takes each output back to the trivial
diagram, independently of the polynomial oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import decomp as dc
from . import digon as dg
from . import invariants as iv
from . import planemap as pm
from .errors import (
    InternalInvariantViolation,
    LimitExceeded,
    NotAKnotShadow,
    PreconditionViolated,
    SideIrrelevantForSingletonCycle,
)


def ceil_cbrt(n: int) -> int:
    """Smallest integer k with k**3 >= n."""
    k = 0
    while k ** 3 < n:
        k += 1
    return k


# ---------------------------------------------------------------------------
# Descending diagrams
# ---------------------------------------------------------------------------

def descending_diagram(shadow: pm.Shadow, start_edge: int | None = None,
                       direction: str = "fwd") -> iv.Diagram:
    """First arrival at each crossing goes over, walking from an edge
    midpoint in the chosen direction.  Always an unknot diagram."""
    if shadow.n == 0:
        return iv.trivial_diagram()
    if direction not in ("fwd", "rev"):
        raise PreconditionViolated("direction must be fwd or rev")
    e = min(shadow.edges()) if start_edge is None else start_edge
    d0 = e if direction == "fwd" else shadow.twin[e]
    walk = pm.straight_walk(shadow, d0)
    if len(walk.darts) != 2 * shadow.n:
        raise NotAKnotShadow("descending diagrams need a knot shadow")
    bits = [None] * shadow.n
    for d in walk.darts:
        in_dart = shadow.twin[d]
        w = pm.vertex_of(in_dart)
        if bits[w] is None:
            bits[w] = in_dart & 1
    return iv.Diagram(shadow, tuple(bits))


def all_descending_diagrams(shadow: pm.Shadow):
    """Distinct descending diagrams over every start edge and direction."""
    out = {}
    if shadow.n == 0:
        d = iv.trivial_diagram()
        return [(d, ("descending", None, "fwd"))]
    for e in shadow.edges():
        for direction in ("fwd", "rev"):
            d = descending_diagram(shadow, e, direction)
            out.setdefault(d.bits, (d, ("descending", e, direction)))
    return list(out.values())


# ---------------------------------------------------------------------------
# Lifts over quotient steps
# ---------------------------------------------------------------------------

def lift_over_cycle(diagram: iv.Diagram, step: dc.QuotientStep, side: str,
                    root_bit: int) -> iv.Diagram:
    """Extend a child diagram over a removed straight-ahead cycle.

    The cycle's strand is set entirely over (or under) the rest, making it
    collapsible to its root; the root bit is free.  One-vertex cycles have
    no over/under choice, only the root bit.
    """
    if diagram.shadow != step.child:
        raise PreconditionViolated("diagram is not on the quotient child")
    if side not in (pm.OVER, pm.UNDER):
        raise PreconditionViolated("side must be over or under")
    if len(step.c_slots) == 1 and side == pm.UNDER:
        raise SideIrrelevantForSingletonCycle(
            "a one-vertex cycle admits two lifts, chosen by the root bit")
    bits = [None] * step.parent.n
    for cv, pv in enumerate(step.child_to_parent):
        bits[pv] = diagram.bits[cv]
    root = step.cycle.root
    for v in step.c_slots:
        if v == root:
            bits[v] = root_bit
        else:
            parity = step.cycle_parity(v)
            bits[v] = parity if side == pm.OVER else parity ^ 1
    return iv.Diagram(step.parent, tuple(bits))


# ---------------------------------------------------------------------------
# Generation results and certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenerationResult:
    """Deduplicated diagrams plus per-diagram replay certificates."""

    shadow: pm.Shadow
    method: str
    diagrams: tuple
    certificates: tuple
    context: tuple
    bound: int

    @property
    def count(self) -> int:
        return len(self.diagrams)

    @property
    def bound_satisfied(self) -> bool:
        return self.count >= self.bound

    def to_report(self):
        return {
            "method": self.method,
            "count": self.count,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
            "diagrams": ["".join(map(str, d.bits)) for d in self.diagrams],
            "certificates": {"kind": self.method, "entries": len(self.certificates)},
        }


def _merge(shadow, method, parts, bound):
    """Union of generation results, deduplicated by assignment bits."""
    seen = {}
    for diagrams, certs, context in parts:
        for d, c in zip(diagrams, certs):
            if d.bits not in seen:
                seen[d.bits] = (d, c, context)
    diagrams = tuple(v[0] for v in seen.values())
    certs = tuple(v[1] for v in seen.values())
    contexts = tuple(v[2] for v in seen.values())
    return GenerationResult(shadow, method, diagrams, certs, contexts, bound)


# ---------------------------------------------------------------------------
# Generator 1: cycle decompositions
# ---------------------------------------------------------------------------

def gen_by_cycle_decomposition(shadow: pm.Shadow,
                               dec: dc.CycleDecomposition | None = None,
                               bound: int = 0) -> GenerationResult:
    """All lift combinations backward through a cycle decomposition.

    Output size is exactly the product of per-step factors: 2 for one-vertex
    cycles, 4 otherwise; with p-1 singleton steps that is 2^n.
    """
    if dec is None:
        dec = dc.greedy_cycle_decomposition(shadow)
    if dec.shadow != shadow:
        raise PreconditionViolated("decomposition belongs to a different shadow")
    # compose vertex maps: step i lives on shadow S_i; push names up to S
    to_top = []
    cur = {v: v for v in range(shadow.n)}
    for step in dec.steps:
        to_top.append(dict(cur))
        cur = {cv: cur[pv] for cv, pv in enumerate(step.child_to_parent)}
    step_infos = []
    for step, up in zip(dec.steps, to_top):
        root = up[step.cycle.root]
        removed = [(up[v], step.cycle_parity(v))
                   for v in step.c_slots if v != step.cycle.root]
        step_infos.append((root, tuple(removed)))
    choice_sets = []
    for root, removed in step_infos:
        if removed:
            choice_sets.append([(side, rb) for side in (pm.OVER, pm.UNDER)
                                for rb in (0, 1)])
        else:
            choice_sets.append([(pm.OVER, 0), (pm.OVER, 1)])
    diagrams = []
    certs = []
    for combo in itertools.product(*choice_sets):
        bits = [None] * shadow.n
        for (root, removed), (side, rb) in zip(step_infos, combo):
            bits[root] = rb
            for v, parity in removed:
                bits[v] = parity if side == pm.OVER else parity ^ 1
        if any(b is None for b in bits):
            raise InternalInvariantViolation("cycle steps do not cover all vertices")
        diagrams.append(iv.Diagram(shadow, tuple(bits)))
        certs.append(combo)
    expected = 1
    for cs in choice_sets:
        expected *= len(cs)
    if len({d.bits for d in diagrams}) != expected:
        raise InternalInvariantViolation("lift combinations collided")
    return GenerationResult(shadow, "cycles", tuple(diagrams), tuple(certs),
                            ("cycles", dec), bound)


# ---------------------------------------------------------------------------
# Generator 2: digon structures
# ---------------------------------------------------------------------------

def _split_chain(overlay: dg.MarkedOverlay, stop_m: int):
    """Split avoiding digons until ``stop_m`` shared vertices remain."""
    levels = [overlay]
    lifts = []
    cur = overlay
    while cur.m > stop_m:
        g = dg.digon_avoiding(cur)
        cur, lift = dg.split_digon(cur, g)
        levels.append(cur)
        lifts.append((g, lift))
    return levels, lifts


def _lift_assignments(base_assignments, lifts):
    """Fan each assignment out by two per split, bottom up.

    Returns (bits, sides) pairs where sides records the colour put on top at
    each split, outermost first.
    """
    out = [(bits, ()) for bits in base_assignments]
    for g, lift in reversed(lifts):
        nxt = []
        for bits, sides in out:
            for side, side_bits in (("blue", lift.blue_over_bits),
                                    ("red", lift.red_over_bits)):
                parent_bits = {}
                for cv, pv in enumerate(lift.child_to_parent):
                    parent_bits[pv] = bits[cv]
                parent_bits.update(side_bits)
                n_parent = len(lift.child_to_parent) + 2
                nxt.append((tuple(parent_bits[v] for v in range(n_parent)),
                            (side,) + sides))
        out = nxt
    return out


def gray_residual(shadow: pm.Shadow, blue: dc.StraightAheadCycle,
                  red: dc.StraightAheadCycle):
    """The shadow left after deleting both cycles' edges, with its vertex map."""
    colored = blue.edge_ids(shadow) | red.edge_ids(shadow)
    colored_darts = set()
    for e in colored:
        colored_darts.add(e)
        colored_darts.add(shadow.twin[e])
    through = {}
    dead_extra = set()
    for v in range(shadow.n):
        cds = [pm.dart_at(v, s) for s in range(4)
               if pm.dart_at(v, s) in colored_darts]
        if len(cds) == 4:
            dead_extra.add(v)
        elif len(cds) == 2:
            rest = [pm.dart_at(v, s) for s in range(4)
                    if pm.dart_at(v, s) not in cds]
            through[rest[0]] = rest[1]
            through[rest[1]] = rest[0]
        elif cds:
            raise InternalInvariantViolation("odd colour degree at a vertex")
    ex = pm.excise(shadow, through, frozenset(colored), frozenset(dead_extra))
    return ex


def gen_by_digons(shadow: pm.Shadow, pair: dc.SharedCyclePair,
                  bound: int = 0) -> GenerationResult:
    """Unknot diagrams from two straight-ahead cycles with m common vertices.

    Odd m: the subshadow is the union of the cycles; avoiding digons split
    down to the one-vertex shadow, whose two diagrams lift doubling per
    split.  Even m: the two-curve overlay splits to the crossing-free
    unlink; each unlink assignment extends over the subshadow by putting the
    cycles above the gray strands and finishing with a descending residual.
    Everything then lifts back over the reduction chain.
    """
    if pair.m < 1:
        raise PreconditionViolated("digon generation needs m >= 1")
    t_shadow = pair.subshadow
    overlay = dg.build_overlay(t_shadow, pair.blue, pair.red)

    if overlay.kind == "odd":
        levels, lifts = _split_chain(overlay, 1)
        base = levels[-1]
        if base.shadow.n != 1:
            raise InternalInvariantViolation("odd reduction missed the base")
        assignments = _lift_assignments([(0,), (1,)], lifts)
        t_diagrams = [(iv.Diagram(t_shadow, bits), ("digons-odd", sides))
                      for bits, sides in assignments]
        context = ("digons-odd", pair, tuple(levels), tuple(lifts))
    else:
        levels, lifts = _split_chain(overlay, 0)
        base = levels[-1]
        if base.shadow.n != 0 or base.shadow.free_loops != 2:
            raise InternalInvariantViolation("even reduction missed the unlink")
        assignments = _lift_assignments([()], lifts)
        ext = _even_extension(t_shadow, pair, overlay)
        t_diagrams = []
        for bits, sides in assignments:
            full = list(ext.fixed_bits)
            for ov_v, b in enumerate(bits):
                full[overlay.parent_vertex[ov_v]] = b
            if any(b is None for b in full):
                raise InternalInvariantViolation("extension left unset bits")
            t_diagrams.append((iv.Diagram(t_shadow, tuple(full)),
                               ("digons-even", sides)))
        context = ("digons-even", pair, tuple(levels), tuple(lifts), ext)

    diagrams = []
    certs = []
    for d, cert in t_diagrams:
        lifted = d
        for step in reversed(pair.lift_chain):
            lifted = lift_over_cycle(lifted, step, pm.OVER, 0)
        diagrams.append(lifted)
        certs.append(cert)
    if len({d.bits for d in diagrams}) != len(diagrams):
        raise InternalInvariantViolation("digon lifts collided")
    method = context[0]
    return GenerationResult(shadow, method, tuple(diagrams), tuple(certs),
                            context, bound)


@dataclass(frozen=True)
class EvenExtension:
    """Fixed bits of the even-case extension: colours over gray, descending
    gray residual, zero bits at the two roots.  Overlay vertices stay None
    and are filled per unlink assignment."""

    fixed_bits: tuple
    gray_excision: pm.Excision
    gray_diagram: iv.Diagram
    mixed_bits: dict
    root_bits: dict


def _even_extension(t_shadow, pair, overlay) -> EvenExtension:
    blue_ids = pair.blue.edge_ids(t_shadow)
    red_ids = pair.red.edge_ids(t_shadow)
    colored = blue_ids | red_ids
    colored_darts = set()
    for e in colored:
        colored_darts.add(e)
        colored_darts.add(t_shadow.twin[e])
    bits = [None] * t_shadow.n
    mixed_bits = {}
    for v in range(t_shadow.n):
        cds = [pm.dart_at(v, s) for s in range(4)
               if pm.dart_at(v, s) in colored_darts]
        if len(cds) == 2 and (cds[0] ^ cds[1]) & 3 == 2:
            # one colored pass crossing gray: colour goes on top
            bits[v] = cds[0] & 1
            mixed_bits[v] = bits[v]
    root_bits = {}
    for root in (pair.blue.root, pair.red.root):
        bits[root] = 0
        root_bits[root] = 0
    ex = gray_residual(t_shadow, pair.blue, pair.red)
    gray_diag = descending_diagram(ex.child)
    for gv, tv in enumerate(ex.old_vertex):
        if bits[tv] is not None:
            raise InternalInvariantViolation("gray vertex already assigned")
        bits[tv] = gray_diag.bits[gv]
    return EvenExtension(tuple(bits), ex, gray_diag, mixed_bits, root_bits)


# ---------------------------------------------------------------------------
# The main generator
# ---------------------------------------------------------------------------

def generate_unknots(shadow: pm.Shadow, method: str = "auto") -> GenerationResult:
    """Guaranteed family of unknot diagrams, at least 2^ceil(cbrt(n)) many.

    With a cycle decomposition of size p >= cbrt(n) the lift fan-out
    suffices; otherwise two primary cycles share at least 2*cbrt(n)
    vertices, and the digon route through the reduced subshadow applies.
    """
    report = pm.component_report(shadow)
    if not report.is_knot_shadow:
        raise NotAKnotShadow("generation is defined for knot shadows")
    n = shadow.n
    bound = 1 << ceil_cbrt(n)
    if method == "descending":
        parts = all_descending_diagrams(shadow)
        return _merge(shadow, "descending",
                      [([d for d, _ in parts], [c for _, c in parts],
                        ("descending",))], 0)
    dec = dc.greedy_cycle_decomposition(shadow)
    if method == "cycles":
        return gen_by_cycle_decomposition(shadow, dec, bound)
    if method == "digons" or (method == "auto" and dec.size ** 3 < n):
        r, s, m = dc.find_shared_pair(dec)
        if method == "auto" and m ** 3 < 8 * n:
            raise InternalInvariantViolation(
                f"pigeonhole refuted: p={dec.size}, max shared m={m}, n={n}")
        pair = dc.reduce_to_subshadow(shadow, dec, r, s)
        return gen_by_digons(shadow, pair, bound)
    if method not in ("auto",):
        raise PreconditionViolated(f"unknown method {method!r}")
    return gen_by_cycle_decomposition(shadow, dec, bound)


# ---------------------------------------------------------------------------
# Certificate replay
# ---------------------------------------------------------------------------

def _collapse_step(diagram: iv.Diagram, step: dc.QuotientStep, side: str,
                   root_bit: int | None) -> iv.Diagram:
    """Verify the removed cycle is one-sided and restrict the assignment."""
    for v in step.c_slots:
        if v == step.cycle.root:
            if root_bit is not None and diagram.bits[v] != root_bit:
                raise InternalInvariantViolation("root bit mismatch in replay")
            continue
        parity = step.cycle_parity(v)
        want = parity if side == pm.OVER else parity ^ 1
        if diagram.bits[v] != want:
            raise InternalInvariantViolation("cycle strand is not one-sided")
    bits = tuple(diagram.bits[pv] for pv in step.child_to_parent)
    return iv.Diagram(step.child, bits)


def _replay_splits(diagram: iv.Diagram, levels, lifts, sides) -> iv.Diagram:
    """Verify and apply the recorded bigon removals, outermost first."""
    cur = diagram
    for (g, lift), side, child_level in zip(lifts, sides, levels[1:]):
        shadow = cur.shadow
        bigon = None
        want_edges = {g.blue_edge, g.red_edge}
        for f in pm.faces(shadow):
            if len(f) == 2 and {shadow.edge_id(d) for d in f} == want_edges:
                bigon = f
                break
        if bigon is None:
            raise InternalInvariantViolation("split digon is not a bigon face")
        want = lift.blue_over_bits if side == "blue" else lift.red_over_bits
        for v in (lift.u, lift.v):
            if cur.bits[v] != want[v]:
                raise InternalInvariantViolation("split bits do not match a side")
        bits = tuple(cur.bits[pv] for pv in lift.child_to_parent)
        cur = iv.Diagram(child_level.shadow, bits)
    return cur


def _simplifies_to_trivial(diagram: iv.Diagram) -> bool:
    reduced, _ = iv.simplify(diagram)
    return reduced.n == 0


def replay_certificate(result: GenerationResult, index: int) -> bool:
    """Re-derive the trivial diagram from the recorded construction trail."""
    diagram = result.diagrams[index]
    cert = result.certificates[index]
    context = result.context
    if isinstance(context, tuple) and context and isinstance(context[0], tuple):
        context = context[index]     # merged results carry one per diagram
    kind = context[0]
    if kind == "descending":
        return _simplifies_to_trivial(diagram)
    if kind == "cycles":
        dec = context[1]
        cur = diagram
        for step, (side, root_bit) in zip(dec.steps, cert):
            cur = _collapse_step(cur, step, side, root_bit)
        return cur.shadow.is_trivial()
    if kind in ("digons-odd", "digons-even"):
        pair = context[1]
        levels = context[2]
        lifts = context[3]
        sides = cert[1]
        cur = diagram
        for step in pair.lift_chain:
            cur = _collapse_step(cur, step, pm.OVER, 0)
        if cur.shadow != pair.subshadow:
            raise InternalInvariantViolation("lift chain replay drifted")
        if kind == "digons-odd":
            cur = _replay_splits(cur, levels, lifts, sides)
            return cur.n == 1 and _simplifies_to_trivial(cur)
        ext = context[4]
        for v, b in ext.mixed_bits.items():
            if cur.bits[v] != b:
                raise InternalInvariantViolation("colour-over-gray bit flipped")
        for v, b in ext.root_bits.items():
            if cur.bits[v] != b:
                raise InternalInvariantViolation("root bit flipped")
        for gv, tv in enumerate(ext.gray_excision.old_vertex):
            if cur.bits[tv] != ext.gray_diagram.bits[gv]:
                raise InternalInvariantViolation("gray residual bit flipped")
        if not _simplifies_to_trivial(ext.gray_diagram):
            return False
        overlay0 = levels[0]
        o_bits = tuple(cur.bits[overlay0.parent_vertex[ovv]]
                       for ovv in range(overlay0.shadow.n))
        unlink = _replay_splits(iv.Diagram(overlay0.shadow, o_bits),
                                levels, lifts, sides)
        return unlink.n == 0 and unlink.shadow.free_loops == 2
    raise PreconditionViolated(f"unknown certificate kind {kind!r}")


def replay_all(result: GenerationResult) -> bool:
    return all(replay_certificate(result, i) for i in range(result.count))


# ---------------------------------------------------------------------------
# Trefoil construction
# ---------------------------------------------------------------------------

def trefoil_diagram(shadow: pm.Shadow,
                    limit: int = iv.DEFAULT_LIMIT) -> iv.Diagram | None:
    """A certified trefoil diagram, or None when every vertex is a cut-vertex
    (then every diagram of the shadow is unknot).

    A shadow with a non-cut vertex need not contain a multi-vertex
    straight-ahead cycle directly (curls between essential crossings can
    force every straight-ahead walk through a repeated vertex).  Removing a
    curl never changes any assignment's knot class, so such shadows reduce
    by loop quotients until a usable cycle appears, and the constructed
    diagram lifts back across the removed curls.
    """
    report = pm.component_report(shadow)
    if not report.is_knot_shadow:
        raise NotAKnotShadow("trefoil construction is defined for knot shadows")
    if shadow.n == 0 or pm.all_cut_vertices(shadow):
        return None
    cyc = None
    loop = None
    for cand in dc.enumerate_straight_ahead_cycles(shadow):
        if len(set(cand.vertices())) >= 2:
            cyc = cand
            break
        loop = loop if loop is not None else cand
    if cyc is not None:
        return _trefoil_from_cycle(shadow, cyc, limit)
    if loop is None:
        raise InternalInvariantViolation(
            "nontrivial shadow without any straight-ahead cycle")
    step = dc.quotient(shadow, loop)
    inner = trefoil_diagram(step.child, limit)
    if inner is None:
        raise InternalInvariantViolation(
            "curl removal must preserve the all-unknot verdict")
    return lift_over_cycle(inner, step, pm.OVER, 0)


def _trefoil_from_cycle(shadow, cyc, limit):
    orbit = pm.straight_walk(shadow, cyc.darts[0])
    if orbit.darts[:len(cyc.darts)] != cyc.darts:
        raise InternalInvariantViolation("cycle is not a prefix of its orbit")
    w_darts = orbit.darts[len(cyc.darts):]
    r = cyc.root
    cset = set(cyc.vertices())
    u_idx = next((k for k in range(1, len(w_darts))
                  if pm.vertex_of(w_darts[k]) in cset), None)
    if u_idx is None:
        raise InternalInvariantViolation("complement walk misses the cycle")
    v_idx = next((k for k in range(u_idx + 1, len(w_darts))
                  if pm.vertex_of(w_darts[k]) in cset), None)
    if v_idx is None:
        raise InternalInvariantViolation("complement walk re-enters only once")
    u = pm.vertex_of(w_darts[u_idx])
    v = pm.vertex_of(w_darts[v_idx])
    parts = (w_darts[:u_idx], w_darts[u_idx:v_idx], w_darts[v_idx:])
    for part in parts:
        verts = [pm.vertex_of(d) for d in part]
        first = {}
        for k, z in enumerate(verts):
            if z in first:
                # a repeated vertex encloses a straight-ahead cycle avoiding
                # the frame; quotient it away, solve the smaller shadow, and
                # lift back with the removed strand on top
                sub = part[first[z]:k]
                f_cyc = dc.StraightAheadCycle(z, tuple(sub))
                dc.check_cycle(shadow, f_cyc)
                if {r, u, v} & set(f_cyc.vertices()):
                    raise InternalInvariantViolation(
                        "inner cycle touches the frame vertices")
                step = dc.quotient(shadow, f_cyc)
                inner = trefoil_diagram(step.child, limit)
                if inner is None:
                    raise InternalInvariantViolation(
                        "quotient lost the non-cut structure")
                return lift_over_cycle(inner, step, pm.OVER, 0)
            first[z] = k
    # all three walks are paths: the long way round goes on top and the
    # three frame crossings get searched for a trefoil prescription
    bits = [None] * shadow.n
    w3 = parts[2]
    for k in range(1, len(w3)):
        in_dart = shadow.twin[w3[k - 1]]
        z = pm.vertex_of(in_dart)
        bits[z] = in_dart & 1
    unset = [z for z in range(shadow.n) if bits[z] is None]
    if sorted(unset) != sorted({r, u, v}):
        raise InternalInvariantViolation(
            f"frame vertices {sorted({r, u, v})} vs unset {sorted(unset)}")
    for combo in itertools.product((0, 1), repeat=3):
        for z, b in zip(sorted({r, u, v}), combo):
            bits[z] = b
        cand = iv.Diagram(shadow, tuple(bits))
        cls = iv.classify(cand, limit)
        if cls.kind in ("trefoil_left", "trefoil_right"):
            return cand
        if cls.kind == "unresolved":
            raise LimitExceeded("cannot certify the trefoil at this size")
    raise InternalInvariantViolation(
        "no prescription at the frame vertices yields a trefoil")


# ---------------------------------------------------------------------------
# The doubled-ring family checker
# ---------------------------------------------------------------------------

def _is_doubled_ring(shadow: pm.Shadow, k: int) -> bool:
    """Does the shadow look like the k-ring with every edge doubled?"""
    if shadow.n != k or shadow.free_loops:
        return False
    for v in range(shadow.n):
        nbrs = {}
        for s in range(4):
            w = pm.vertex_of(shadow.twin[pm.dart_at(v, s)])
            nbrs[w] = nbrs.get(w, 0) + 1
        if v in nbrs:
            return False
        if sorted(nbrs.values()) != [2, 2]:
            return False
    return True


def verify_even_family(n: int, limit: int = iv.DEFAULT_LIMIT) -> dict:
    """Census the doubled ring on odd n: no figure-eight class may appear,
    and every non-alternating diagram must admit a bigon removal landing on
    the (n-2)-ring."""
    if n < 3 or n % 2 == 0:
        raise PreconditionViolated("the family is defined for odd n >= 3")
    if n > limit:
        raise LimitExceeded(f"census needs n <= {limit}")
    shadow = pm.cn(n)
    counts = {}
    non_alternating = 0
    rii_verified = 0
    ring_verified = 0
    for diagram in iv.assignments(shadow):
        cls = iv.classify(diagram, limit)
        counts[cls] = counts.get(cls, 0) + 1
        if not iv.is_alternating(diagram):
            non_alternating += 1
            reduced, moves = iv.simplify(diagram)
            if any(m[0] == "r2" for m in moves):
                rii_verified += 1
            pairs = iv.rii_removable_pairs(diagram)
            if pairs:
                child, _ = iv.apply_rii_at(diagram, *pairs[0])
                if n == 3 or _is_doubled_ring(child.shadow, n - 2):
                    ring_verified += 1
    fig8 = sum(c for cls, c in counts.items() if cls.kind == "figure_eight")
    return {
        "n": n,
        "census": counts,
        "figure_eight_count": fig8,
        "non_alternating": non_alternating,
        "rii_verified": rii_verified,
        "ring_verified": ring_verified,
    }
