"""Constructive core: fiber-pair cycles, recursive lifting, triple-fiber
cycles, and the full universal cycle over all affine lines of AG(n,q).

Every construction returns a valid double-window cycle that contains the
affine origin, covers exactly its declared fiber union, and is byte-for-byte
deterministic for fixed (n, q).
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional

from .gf import Field
from .geometry import (
    Direction,
    DegenerateWindowError,
    Subspace,
    affine,
    complementary_hyperplane,
    decode_window,
    enumerate_directions,
    find_coplanar_triplet,
    hyperplane_points,
    in_span,
    infinity,
    line_from,
    normalize_direction,
    pgl_normalizer,
    rref,
    solve2,
    vadd,
    vdot,
    vscale,
)
from .cycles import Cycle, glue_cycles, map_linear, translate


class FiberPlan(NamedTuple):
    """Partition of all directions into one optional coplanar triplet plus pairs."""

    triplet: Optional[tuple[Direction, Direction, Direction]]
    pairs: tuple[tuple[Direction, Direction], ...]


def two_fiber_cycle(d1: Direction, d2: Direction, n: int, F: Field) -> Cycle:
    """Universal cycle on the union of two direction fibers.

    The affine vertices are exactly the points of a hyperplane W transversal
    to both directions, so the cycle contains 0.  For even q the points of W
    alternate with the two infinity vertices; for odd q the lone point w*
    spanning W with the plane of the two directions is excised from the
    alternation and reinserted through the detour 0 -> a*u1 -> w* -> [d1],
    whose three windows restore the two otherwise-missing lines.
    """
    if d1 == d2:
        raise ValueError("directions must be distinct")
    if len(d1.vector) != n or len(d2.vector) != n:
        raise ValueError("direction dimension does not match n")
    W = complementary_hyperplane(d1, d2, F)
    pts = hyperplane_points(W, F)
    i1, i2 = infinity(d1), infinity(d2)

    def alternation(points):
        verts = []
        for i, w in enumerate(points):
            verts.append(affine(w))
            verts.append(i1 if i % 2 == 0 else i2)
        return verts

    if F.q % 2 == 0:
        return Cycle(alternation(pts), F)

    u1, u2 = d1.vector, d2.vector
    f = W.functional
    # W meets span{u1, u2} in the single direction of f(u2)*u1 - f(u1)*u2.
    raw = vadd(
        vscale(vdot(f, u2, F), u1, F),
        vscale(F.neg(vdot(f, u1, F)), u2, F),
        F,
    )
    wstar = normalize_direction(raw, F).vector
    a, b = solve2(u1, u2, wstar, F)
    if a == 0 or b == 0:
        raise AssertionError("w* decomposition produced a zero coefficient")
    verts = alternation([w for w in pts if w != wstar])
    verts[1:1] = [affine(vscale(a, u1, F)), affine(wstar)]
    return Cycle(verts, F)


def lift_cycle(cU: Cycle, U: Subspace, n: int) -> Cycle:
    """Extend a universal cycle on a proper subspace U to the full space.

    All directions of cU are shared by every coset of U, so translating cU to
    each coset and splicing the translates at a common point at infinity
    covers the same fibers in F_q^n.  Coset representatives are the vectors
    supported on the non-pivot coordinates of U's RREF basis, in ascending
    integer order (the zero representative first, keeping 0 in the result).
    """
    F = cU.field
    if U.dim >= n:
        raise ValueError(f"dim U = {U.dim} must be smaller than n = {n}")
    if cU.n != n:
        raise ValueError("cycle vertices must already use ambient coordinates")
    for i, v in enumerate(cU.vertices):
        if in_span(v.coords, U.basis, F) is None:
            kind = "direction" if v.at_infinity else "affine vertex"
            raise ValueError(f"{kind} {v.coords} at position {i} lies outside U")
    origin = affine((0,) * n)
    if origin not in cU.vertices:
        raise ValueError("base cycle must contain the origin")
    anchor = next((v for v in cU.vertices if v.at_infinity), None)
    if anchor is None:
        raise ValueError("base cycle has no point at infinity to splice at")

    pivots = {next(i for i, x in enumerate(row) if x != 0) for row in U.basis}
    free = [j for j in range(n) if j not in pivots]
    parts = []
    for assign in itertools.product(range(F.q), repeat=len(free)):
        rep = [0] * n
        for j, val in zip(free, assign):
            rep[j] = val
        parts.append(translate(cU, tuple(rep)) if any(rep) else cU)
    # Translates live in disjoint cosets, hence are transversal by construction.
    return glue_cycles(parts, anchor, check=False)


# Reference directions of the standard plane: (0,1), (1,0) and (1,1).
_D1 = Direction((0, 1))
_D2 = Direction((1, 0))
_D3 = Direction((1, 1))


def _kernel_targets(F: Field) -> set:
    """The 9 lines indexed by {0,1,2}: verticals x=c, horizontals y=c, and
    slope-one lines with x-intercept c."""
    targets = set()
    for c in (0, 1, 2):
        targets.add(line_from((c, 0), _D1, F))
        targets.add(line_from((0, c), _D2, F))
        targets.add(line_from((c, 0), _D3, F))
    return targets


def _search_kernel(F: Field) -> list:
    """Bounded DFS for a 9-window cycle through (0,0) covering the kernel lines.

    Vertices are restricted to the 3x3 grid over {0,1,2} plus the three
    reference directions; candidates are tried in a fixed order, so the first
    solution found is deterministic.
    """
    targets = _kernel_targets(F)
    cands = [affine((x, y)) for x in (0, 1, 2) for y in (0, 1, 2)]
    cands += [infinity(_D1), infinity(_D2), infinity(_D3)]
    path = [affine((0, 0))]
    used: set = set()

    def step() -> bool:
        if len(path) == 9:
            try:
                wrap = decode_window(path[-1], path[0], F)
            except DegenerateWindowError:
                return False
            return wrap in targets and wrap not in used
        for v in cands:
            if v == path[-1]:
                continue
            try:
                line = decode_window(path[-1], v, F)
            except DegenerateWindowError:
                continue
            if line in targets and line not in used:
                path.append(v)
                used.add(line)
                if step():
                    return True
                path.pop()
                used.remove(line)
        return False

    if not step():
        raise RuntimeError(f"no kernel cycle found for q = {F.q}")
    return path


def kernel_cycle(F: Field) -> Cycle:
    """9-window cycle through (0,0) covering the index-{0,1,2} lines (odd q).

    For q = 3 a fixed explicit sequence works; its slope-one coverage only
    lines up when intercept arithmetic wraps mod 3, so every larger odd q
    uses the searched sequence instead.  Either way the result is checked
    against the 9 target lines before being returned.
    """
    if F.q % 2 == 0 or F.q < 3:
        raise ValueError("kernel cycle requires odd q >= 3")
    if F.q == 3:
        verts = [
            affine((0, 1)),
            affine((0, 2)),
            infinity(_D3),
            affine((2, 0)),
            affine((0, 0)),
            affine((1, 1)),
            infinity(_D1),
            affine((2, 2)),
            infinity(_D2),
        ]
    else:
        verts = _search_kernel(F)
    cyc = Cycle(verts, F)
    w = cyc.windows()
    if set(w) != _kernel_targets(F) or any(c != 1 for c in w.values()):
        raise AssertionError("kernel cycle failed its coverage check")
    return cyc


def triple_base_cycle(F: Field) -> Cycle:
    """Universal cycle on the three standard fibers of F_q^2 (3q windows).

    Even q: the field splits into q/2 pairs {u, u+1}; each pair yields a
    6-window block covering the lines indexed by u and u+1 in all three
    families.  Odd q: a 9-window kernel covers indices {0,1,2} and the
    remaining q-3 elements are paired consecutively into 6-window blocks.
    All parts share the direction vertices and are spliced there.
    """
    q = F.q
    i1, i2, i3 = infinity(_D1), infinity(_D2), infinity(_D3)
    parts: list[Cycle] = []
    if q % 2 == 0:
        seen: set[int] = set()
        for u in range(q):
            if u in seen:
                continue
            v = F.add(u, 1)
            seen.update((u, v))
            parts.append(
                Cycle([affine((u, v)), i1, affine((v, 0)), i3, affine((0, u)), i2], F)
            )
    else:
        parts.append(kernel_cycle(F))
        rest = [c for c in range(q) if c not in (0, 1, 2)]
        for i in range(0, len(rest), 2):
            u, v = rest[i], rest[i + 1]
            parts.append(
                Cycle(
                    [affine((u, u)), i1, affine((v, 0)), i3, affine((F.add(u, v), v)), i2],
                    F,
                )
            )
    if len(parts) == 1:
        return parts[0]
    anchor = next(a for a in (i1, i2, i3) if all(a in p.vertices for p in parts))
    return glue_cycles(parts, anchor)


def triple_fiber_cycle(
    d1: Direction, d2: Direction, d3: Direction, n: int, F: Field
) -> Cycle:
    """Universal cycle on three coplanar fibers in F_q^n (3*q^(n-1) windows).

    The plane spanned by the directions is charted onto F_q^2 so they become
    the three standard directions, the base cycle is carried back through the
    inverse chart, and the result is lifted from the plane to F_q^n.
    """
    iso = pgl_normalizer(d1, d2, d3, F)
    base = triple_base_cycle(F)
    mapped = map_linear(base, iso.matrix, F)
    if n == 2:
        return mapped
    U = Subspace(rref([iso.w1, iso.w2], F))
    return lift_cycle(mapped, U, n)


def plan_fibers(n: int, F: Field) -> FiberPlan:
    """Partition all directions: pairs only when their number is even,
    otherwise one coplanar triplet plus pairs of the rest, consecutively in
    enumeration order."""
    if n < 2:
        raise ValueError("need n >= 2")
    dirs = enumerate_directions(n, F)
    if len(dirs) % 2 == 0:
        triplet = None
        rest = dirs
    else:
        triplet = find_coplanar_triplet(dirs, F)
        chosen = set(triplet)
        rest = [d for d in dirs if d not in chosen]
    pairs = tuple((rest[i], rest[i + 1]) for i in range(0, len(rest), 2))
    return FiberPlan(triplet, pairs)


def universal_cycle(n: int, F: Field) -> Cycle:
    """Universal cycle covering every affine line of AG(n,q) exactly once.

    Builds one cycle per planned fiber pair (and one for the triplet when the
    direction count is odd) and splices them all at the shared origin.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    plan = plan_fibers(n, F)
    parts: list[Cycle] = []
    if plan.triplet is not None:
        parts.append(triple_fiber_cycle(*plan.triplet, n, F))
    for d1, d2 in plan.pairs:
        parts.append(two_fiber_cycle(d1, d2, n, F))
    if len(parts) == 1:
        return parts[0]
    # Fibers of distinct directions are disjoint, so the parts are transversal.
    return glue_cycles(parts, affine((0,) * n), check=False)
