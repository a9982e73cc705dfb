"""Nested universal cycles on the Grassmannians of 2-subspaces.

An affine line of AG(m-1,q) lifts to the 2-subspace of F_q^m spanned by the
homogenized base point (w,1) and direction vector (v,0); this identifies the
affine lines with the "outer shell" of subspaces not contained in the
coordinate hyperplane x_m = 0.  Starting from the classical multiplicative
cycle on G_q(2,3) and splicing in one lifted affine cycle per dimension
yields a chain U_3, U_4, ... in which each cycle is a verbatim contiguous
subcycle of the next, attached at the shared vertex e_1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, NamedTuple

from .gf import Field
from .geometry import AffineLine, DegenerateWindowError, Vector, rref
from .cycles import Cycle
from .constructions import universal_cycle


class Subspace2(NamedTuple):
    """2-dimensional subspace in reduced-row-echelon canonical form."""

    basis: tuple[Vector, Vector]

    def contained_in_last_hyperplane(self) -> bool:
        return all(row[-1] == 0 for row in self.basis)


def span2(v1: Vector, v2: Vector, F: Field) -> Subspace2:
    rows = rref([v1, v2], F)
    if len(rows) != 2:
        raise DegenerateWindowError(f"vectors {v1}, {v2} do not span a plane")
    return Subspace2((rows[0], rows[1]))


class GrassCycle:
    """Cyclic sequence of nonzero vectors whose windows span distinct planes."""

    __slots__ = ("field", "m", "vertices", "_windows")

    def __init__(self, vertices: Iterable[Vector], field: Field):
        vertices = tuple(tuple(v) for v in vertices)
        if len(vertices) < 2:
            raise ValueError("need at least 2 vertices")
        m = len(vertices[0])
        for i, v in enumerate(vertices):
            if len(v) != m:
                raise ValueError(f"vertex {i} has dimension {len(v)}, expected {m}")
            if not any(v):
                raise ValueError(f"vertex {i} is the zero vector")
        self.field = field
        self.m = m
        self.vertices = vertices
        self._windows = None

    def __len__(self):
        return len(self.vertices)

    def windows(self) -> Counter:
        if self._windows is None:
            c = Counter()
            vs = self.vertices
            for i in range(len(vs)):
                a, b = vs[i], vs[(i + 1) % len(vs)]
                try:
                    c[span2(a, b, self.field)] += 1
                except DegenerateWindowError as e:
                    raise DegenerateWindowError(f"window {i}: {e}", index=i) from None
            self._windows = c
        return self._windows

    def __repr__(self):
        return f"GrassCycle({len(self.vertices)} vertices in F_{self.field.q}^{self.m})"


def tau(L: AffineLine, F: Field) -> Subspace2:
    """Outer-shell subspace spanned by the homogenized base point and direction."""
    return span2(L.base + (1,), L.dir.vector + (0,), F)


def lift_affine_cycle(c: Cycle) -> GrassCycle:
    """Homogenize an affine-line cycle: x -> (x,1), [d] -> (d,0).

    Window spans then agree with tau of the decoded lines, so a universal
    cycle on all affine lines of AG(m-1,q) becomes a universal cycle on the
    outer shell of G_q(2,m).
    """
    verts = [
        v.coords + ((0,) if v.at_infinity else (1,)) for v in c.vertices
    ]
    return GrassCycle(verts, c.field)


def _smallest_irreducible_cubic(F: Field) -> tuple[int, int, int]:
    """Coefficients (c0, c1, c2) of the first rootless x^3 + c2 x^2 + c1 x + c0."""
    for c0, c1, c2 in itertools.product(range(F.q), repeat=3):
        ok = True
        for t in range(F.q):
            t2 = F.mul(t, t)
            val = F.add(
                F.add(F.mul(t, t2), F.mul(c2, t2)), F.add(F.mul(c1, t), c0)
            )
            if val == 0:
                ok = False
                break
        if ok:
            return (c0, c1, c2)
    raise RuntimeError("no irreducible cubic found")  # unreachable


def _cubic_mul(a, b, mod, F: Field):
    c0, c1, c2 = mod
    d = [0] * 5
    for i in range(3):
        if a[i] == 0:
            continue
        for j in range(3):
            d[i + j] = F.add(d[i + j], F.mul(a[i], b[j]))
    for deg in (4, 3):
        c = d[deg]
        if c:
            d[deg] = 0
            d[deg - 1] = F.sub(d[deg - 1], F.mul(c, c2))
            d[deg - 2] = F.sub(d[deg - 2], F.mul(c, c1))
            d[deg - 3] = F.sub(d[deg - 3], F.mul(c, c0))
    return (d[0], d[1], d[2])


def singer_cycle(F: Field) -> GrassCycle:
    """Base cycle on G_q(2,3) from the multiplicative group of a cubic extension.

    The extension is built directly over GF(q) with the lexicographically
    smallest irreducible cubic.  With a generator g of the multiplicative
    group, the coordinate vectors of 1, g, g^2, ..., g^(q^2+q) under the
    basis {1, x, x^2} form a cycle whose q^2+q+1 windows are exactly the
    2-subspaces of F_q^3; multiplying the whole extension into itself by g
    permutes those subspaces in a single orbit.  The first vertex, the
    element 1, already has coordinates e_1.
    """
    q = F.q
    mod = _smallest_irreducible_cubic(F)
    one = (1, 0, 0)

    def from_code(code: int):
        return (code % q, (code // q) % q, code // (q * q))

    target = q**3 - 1
    gen = None
    for code in range(1, q**3):
        cand = from_code(code)
        x, order = cand, 1
        while x != one:
            x = _cubic_mul(x, cand, mod, F)
            order += 1
        if order == target:
            gen = cand
            break
    if gen is None:
        raise RuntimeError("no generator found")  # unreachable

    verts = [one]
    x = one
    for _ in range(q * q + q):
        x = _cubic_mul(x, gen, mod, F)
        verts.append(x)
    if verts[0] != (1, 0, 0):
        raise AssertionError("base vertex is not e1")
    return GrassCycle(verts, F)


def embed_cycle(gc: GrassCycle, m: int) -> GrassCycle:
    """Zero-pad every vertex into F_q^m (keeping spans inside x_j = 0, j > gc.m)."""
    if m < gc.m:
        raise ValueError("cannot embed into a smaller dimension")
    if m == gc.m:
        return gc
    pad = (0,) * (m - gc.m)
    return GrassCycle([v + pad for v in gc.vertices], gc.field)


def nested_cycles(n: int, F: Field) -> list[GrassCycle]:
    """Universal cycles U_3 ... U_n with each U_m contiguously inside U_(m+1).

    Each step embeds U_m into the hyperplane x_(m+1) = 0, lifts a universal
    affine-line cycle of AG(m,q) to the outer shell of G_q(2,m+1), and
    splices the two at the shared vertex e_1.  The inner cycle keeps covering
    the subspaces inside the hyperplane, the shell cycle covers the rest, so
    window sets stay disjoint and the union is everything.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    levels = [singer_cycle(F)]
    for m in range(3, n):
        inner = levels[-1]
        shell = lift_affine_cycle(universal_cycle(m, F))
        e1 = (1,) + (0,) * m
        if e1 not in shell.vertices:
            raise AssertionError("shell cycle lacks the shared vertex e1")
        emb = embed_cycle(inner, m + 1)
        if emb.vertices[0] != e1:
            raise AssertionError("inner cycle does not start at e1")
        i = shell.vertices.index(e1)
        levels.append(
            GrassCycle(emb.vertices + shell.vertices[i:] + shell.vertices[:i], F)
        )
    return levels


# -- serialization -----------------------------------------------------------

def grass_to_json_obj(gc: GrassCycle) -> dict:
    return {
        "m": gc.m,
        "q": gc.field.q,
        "vertices": [list(v) for v in gc.vertices],
    }


def subspace_to_json_obj(s: Subspace2) -> dict:
    return {"basis": [list(row) for row in s.basis]}
