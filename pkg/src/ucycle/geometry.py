"""Points, directions, lines and hyperplanes of AG(n,q) and its projective closure.

Conventions fixed here and relied on everywhere else:

* points are tuples of element codes; tuple comparison (left to right) is the
  lexicographic order used for canonical choices;
* a direction is a nonzero vector normalized so its first nonzero coordinate
  is 1 (the canonical projective representative);
* the canonical form of an affine line is (direction, base) where base is the
  lexicographically smallest point on the line, so line equality is plain
  value equality;
* every enumeration (directions, covectors, hyperplane points, fibers, coset
  representatives) has a fixed deterministic order.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Optional, Sequence

from .gf import Field

Point = tuple[int, ...]
Vector = tuple[int, ...]


class DegenerateWindowError(ValueError):
    """A vertex pair that does not determine an affine line."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class Direction(NamedTuple):
    """Point at infinity of a parallel class; vector is normalized."""

    vector: Vector


class ProjVertex(NamedTuple):
    """Vertex of the projective closure: affine point or point at infinity."""

    at_infinity: bool
    coords: Vector


def affine(coords: Iterable[int]) -> ProjVertex:
    return ProjVertex(False, tuple(coords))


def infinity(d: Direction | Iterable[int]) -> ProjVertex:
    vec = d.vector if isinstance(d, Direction) else tuple(d)
    return ProjVertex(True, vec)


class AffineLine(NamedTuple):
    dir: Direction
    base: Point


class Hyperplane(NamedTuple):
    """Kernel of a normalized nonzero covector."""

    functional: Vector


class Subspace(NamedTuple):
    """Linear subspace given by its reduced-row-echelon basis."""

    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


# -- vector helpers ----------------------------------------------------------

def vadd(a: Vector, b: Vector, F: Field) -> Vector:
    return tuple(F.add(x, y) for x, y in zip(a, b))


def vsub(a: Vector, b: Vector, F: Field) -> Vector:
    return tuple(F.sub(x, y) for x, y in zip(a, b))


def vneg(a: Vector, F: Field) -> Vector:
    return tuple(F.neg(x) for x in a)


def vscale(t: int, a: Vector, F: Field) -> Vector:
    return tuple(F.mul(t, x) for x in a)


def vdot(f: Vector, v: Vector, F: Field) -> int:
    s = 0
    for x, y in zip(f, v):
        s = F.add(s, F.mul(x, y))
    return s


def all_points(n: int, F: Field) -> Iterable[Point]:
    """All q^n points in ascending lexicographic order."""
    return itertools.product(range(F.q), repeat=n)


def normalize_direction(vec: Vector, F: Field) -> Direction:
    for c in vec:
        if c != 0:
            s = F.inv(c)
            return Direction(vscale(s, vec, F))
    raise ValueError("zero vector has no direction")


def mat_apply(M: Sequence[Vector], v: Vector, F: Field) -> Vector:
    """Apply a matrix given as a tuple of rows to a column vector."""
    return tuple(vdot(row, v, F) for row in M)


# -- row reduction -----------------------------------------------------------

def rref(rows: Iterable[Vector], F: Field) -> tuple[Vector, ...]:
    """Reduced row echelon form over GF(q); zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pr = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] != 0:
                pr = r
                break
        if pr is None:
            continue
        mat[pivot_row], mat[pr] = mat[pr], mat[pivot_row]
        s = F.inv(mat[pivot_row][col])
        mat[pivot_row] = [F.mul(s, x) for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(r))


def rank(rows: Iterable[Vector], F: Field) -> int:
    return len(rref(rows, F))


def in_span(v: Vector, basis: Sequence[Vector], F: Field) -> Optional[tuple[int, ...]]:
    """Coefficients of v against an RREF basis, or None if outside the span."""
    res = list(v)
    coeffs = []
    for row in basis:
        piv = next(i for i, x in enumerate(row) if x != 0)
        c = res[piv]
        coeffs.append(c)
        if c != 0:
            res = [F.sub(x, F.mul(c, y)) for x, y in zip(res, row)]
    if any(res):
        return None
    return tuple(coeffs)


def solve2(u: Vector, v: Vector, target: Vector, F: Field) -> tuple[int, int]:
    """Solve a*u + b*v = target for independent u, v."""
    i0 = next((i for i, x in enumerate(u) if x != 0), None)
    if i0 is None:
        raise ValueError("u is zero")
    pinv = F.inv(u[i0])
    r1 = F.mul(v[i0], pinv)
    s1 = F.mul(target[i0], pinv)
    b = None
    for j in range(len(u)):
        if j == i0:
            continue
        coef = F.sub(v[j], F.mul(u[j], r1))
        if coef != 0:
            rhs = F.sub(target[j], F.mul(u[j], s1))
            b = F.mul(rhs, F.inv(coef))
            break
    if b is None:
        raise ValueError("u and v are not independent")
    a = F.sub(s1, F.mul(r1, b))
    if vadd(vscale(a, u, F), vscale(b, v, F), F) != tuple(target):
        raise ValueError("target is outside span{u, v}")
    return a, b


# -- enumeration and canonical lines -----------------------------------------

def direction_scan(n: int, q: int):
    """Normalized vectors in ascending lexicographic order, lazily.

    A normalized vector is zeros, then a 1 at its pivot position, then an
    arbitrary tail; vectors with a later pivot start with more zeros and
    therefore sort first, and within one pivot the tails run in product
    order, so this emits the same order as sorting.
    """
    for piv in range(n - 1, -1, -1):
        head = (0,) * piv + (1,)
        for tail in itertools.product(range(q), repeat=n - 1 - piv):
            yield Direction(head + tail)


def enumerate_directions(n: int, F: Field) -> list[Direction]:
    """All (q^n - 1)/(q - 1) directions, lexicographic on the code vector."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return list(direction_scan(n, F.q))


def line_through(a: Point, b: Point, F: Field) -> AffineLine:
    """Canonical line through two distinct points."""
    if a == b:
        raise DegenerateWindowError(f"equal points {a} determine no line")
    d = normalize_direction(vsub(b, a, F), F)
    return line_from(a, d, F)


def line_from(w: Point, d: Direction, F: Field) -> AffineLine:
    """Canonical form of the line w + <d>."""
    base = w
    for t in range(1, F.q):
        cand = vadd(w, vscale(t, d.vector, F), F)
        if cand < base:
            base = cand
    return AffineLine(d, base)


def line_points(L: AffineLine, F: Field) -> list[Point]:
    return sorted(vadd(L.base, vscale(t, L.dir.vector, F), F) for t in range(F.q))


def decode_window(v1: ProjVertex, v2: ProjVertex, F: Field) -> AffineLine:
    """The affine line represented by a window of two projective vertices."""
    if v1.at_infinity and v2.at_infinity:
        raise DegenerateWindowError("window of two points at infinity")
    if v1.at_infinity:
        return line_from(v2.coords, Direction(v1.coords), F)
    if v2.at_infinity:
        return line_from(v1.coords, Direction(v2.coords), F)
    return line_through(v1.coords, v2.coords, F)


def complementary_hyperplane(d1: Direction, d2: Direction, F: Field) -> Hyperplane:
    """First normalized covector (in direction scan order) nonzero on both."""
    if d1 == d2:
        raise ValueError("directions must be distinct")
    n = len(d1.vector)
    for f in direction_scan(n, F.q):
        if vdot(f.vector, d1.vector, F) != 0 and vdot(f.vector, d2.vector, F) != 0:
            return Hyperplane(f.vector)
    raise RuntimeError("no transversal hyperplane found")  # unreachable for n >= 2


def hyperplane_points(W: Hyperplane, F: Field) -> list[Point]:
    """All q^(n-1) kernel points, ascending lexicographic (0 first)."""
    f = W.functional
    n = len(f)
    piv = next(i for i, x in enumerate(f) if x != 0)
    ipiv = F.inv(f[piv])
    pts = []
    free = [j for j in range(n) if j != piv]
    for assign in itertools.product(range(F.q), repeat=n - 1):
        x = [0] * n
        s = 0
        for j, val in zip(free, assign):
            x[j] = val
            s = F.add(s, F.mul(f[j], val))
        x[piv] = F.mul(F.neg(s), ipiv)
        pts.append(tuple(x))
    pts.sort()
    return pts


def fiber(d: Direction, n: int, F: Field) -> list[AffineLine]:
    """The q^(n-1) lines parallel to d, ordered by base point."""
    seen: set[Point] = set()
    lines = []
    for pt in all_points(n, F):
        if pt in seen:
            continue
        L = line_from(pt, d, F)
        lines.append(L)
        seen.update(vadd(pt, vscale(t, d.vector, F), F) for t in range(F.q))
    return lines


def find_coplanar_triplet(
    dirs: Sequence[Direction], F: Field
) -> tuple[Direction, Direction, Direction]:
    """First three directions (in the given order) inside the span of the first two."""
    basis = rref([dirs[0].vector, dirs[1].vector], F)
    picked = [d for d in dirs if in_span(d.vector, basis, F) is not None]
    if len(picked) < 3:
        raise ValueError("no coplanar triplet available (need q + 1 >= 3)")
    return picked[0], picked[1], picked[2]


class PlaneIso:
    """Coordinate chart on a plane V' = span{d1,d2,d3} of F_q^n.

    Maps the plane onto F_q^2 so that d1, d2, d3 become the directions of
    (0,1), (1,0), (1,1) respectively.  ``matrix`` is the n x 2 matrix of the
    inverse chart: (x, y) in the standard plane maps to x*w1 + y*w2 in V'.
    """

    __slots__ = ("w1", "w2", "field")

    def __init__(self, w1: Vector, w2: Vector, F: Field):
        self.w1 = w1
        self.w2 = w2
        self.field = F

    @property
    def matrix(self) -> tuple[Vector, ...]:
        return tuple((a, b) for a, b in zip(self.w1, self.w2))

    def from_plane(self, xy: Vector) -> Vector:
        F = self.field
        return vadd(vscale(xy[0], self.w1, F), vscale(xy[1], self.w2, F), F)

    def to_plane(self, v: Vector) -> Vector:
        return solve2(self.w1, self.w2, v, self.field)


def pgl_normalizer(d1: Direction, d2: Direction, d3: Direction, F: Field) -> PlaneIso:
    """Chart sending d1, d2, d3 to the directions of (0,1), (1,0), (1,1).

    Basis construction: take v1 from d2 and v2 from d1 (so they map to (1,0)
    and (0,1)), write d3 = a*v1 + b*v2 and rescale the basis to (a*v1, b*v2).
    Both coefficients are necessarily nonzero for three distinct coplanar
    directions; this is asserted rather than assumed.
    """
    if len({d1, d2, d3}) != 3:
        raise ValueError("directions must be distinct")
    v1, v2 = d2.vector, d1.vector
    a, b = solve2(v1, v2, d3.vector, F)
    if a == 0 or b == 0:
        raise AssertionError("coplanar triple produced a zero coefficient")
    return PlaneIso(vscale(a, v1, F), vscale(b, v2, F), F)
