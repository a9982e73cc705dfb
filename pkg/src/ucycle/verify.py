"""Brute-force coverage oracle for affine-line and Grassmannian cycles.

The affine oracle enumerates lines by canonicalizing the line through point
pairs, with no code shared with the fiber constructions, and compares the
window multiset of a candidate cycle against it.  Results come back as a
CoverageReport rather than exceptions, so invalid cycles produce failing
reports.  Above a size threshold the same pair enumeration and window
decoding run vectorized on integer line keys; both routes are cross-checked
in the test suite.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .gf import Field
from .geometry import (
    AffineLine,
    DegenerateWindowError,
    Direction,
    ProjVertex,
    decode_window,
    enumerate_directions,
    all_points,
    line_through,
)
from .cycles import Cycle, Segment
from .grassmann import GrassCycle, Subspace2, span2, subspace_to_json_obj

MAX_REPORT_ITEMS = 32

# Above this many points the affine verifier switches to the vectorized path.
_NP_POINT_LIMIT = 500


def gaussian_binomial_2(m: int, q: int) -> int:
    """Number of 2-subspaces of F_q^m."""
    return (q**m - 1) * (q ** (m - 1) - 1) // ((q * q - 1) * (q - 1))


def affine_line_count(n: int, q: int) -> int:
    return q ** (n - 1) * (q**n - 1) // (q - 1)


@dataclass
class CoverageReport:
    """Outcome of an exact-coverage check.

    ``missing``, ``duplicated`` and ``unexpected`` are truncated to
    MAX_REPORT_ITEMS entries each; the *_total fields carry the full counts.
    """

    expected_count: int
    found_count: int
    missing: list = dc_field(default_factory=list)
    duplicated: list = dc_field(default_factory=list)
    unexpected: list = dc_field(default_factory=list)
    degenerate_windows: list = dc_field(default_factory=list)
    missing_total: int = 0
    duplicated_total: int = 0
    unexpected_total: int = 0
    degenerate_total: int = 0
    passed: bool = False

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.found_count}/{self.expected_count} windows"
            f" (missing={self.missing_total} duplicated={self.duplicated_total}"
            f" unexpected={self.unexpected_total} degenerate={self.degenerate_total})"
        )

    def to_json_obj(self) -> dict:
        def item(x):
            if isinstance(x, AffineLine):
                return {"dir": list(x.dir.vector), "base": list(x.base)}
            if isinstance(x, Subspace2):
                return subspace_to_json_obj(x)
            return x

        return {
            "expected_count": self.expected_count,
            "found_count": self.found_count,
            "missing": [item(x) for x in self.missing],
            "duplicated": [{"item": item(x), "count": c} for x, c in self.duplicated],
            "unexpected": [item(x) for x in self.unexpected],
            "degenerate_windows": list(self.degenerate_windows),
            "missing_total": self.missing_total,
            "duplicated_total": self.duplicated_total,
            "unexpected_total": self.unexpected_total,
            "degenerate_total": self.degenerate_total,
            "passed": self.passed,
        }


def _build_report(expected, found: Counter, degenerate: list, window_count: int) -> CoverageReport:
    missing = sorted(k for k in expected if k not in found)
    duplicated = sorted((k, c) for k, c in found.items() if c > 1)
    unexpected = sorted(k for k in found if k not in expected)
    passed = (
        not missing
        and not duplicated
        and not unexpected
        and not degenerate
        and window_count == len(expected)
    )
    return CoverageReport(
        expected_count=len(expected),
        found_count=window_count,
        missing=missing[:MAX_REPORT_ITEMS],
        duplicated=duplicated[:MAX_REPORT_ITEMS],
        unexpected=unexpected[:MAX_REPORT_ITEMS],
        degenerate_windows=degenerate[:MAX_REPORT_ITEMS],
        missing_total=len(missing),
        duplicated_total=len(duplicated),
        unexpected_total=len(unexpected),
        degenerate_total=len(degenerate),
        passed=passed,
    )


def _walk_windows(vertices: Sequence[ProjVertex], F: Field, wrap: bool):
    """Decode every window, collecting degenerate indices instead of raising."""
    found: Counter = Counter()
    degenerate: list[int] = []
    count = len(vertices) if wrap else max(len(vertices) - 1, 0)
    for i in range(count):
        a = vertices[i]
        b = vertices[(i + 1) % len(vertices)]
        try:
            found[decode_window(a, b, F)] += 1
        except DegenerateWindowError:
            degenerate.append(i)
    return found, degenerate, count


# -- affine oracle ------------------------------------------------------------

def all_affine_lines(n: int, F: Field) -> set[AffineLine]:
    """Every affine line of AG(n,q), by canonicalizing all point pairs.

    Independent of the construction machinery: no fibers, no hyperplanes,
    just pairs of points.  Large spaces reuse the vectorized pair scan.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if F.q**n > _NP_POINT_LIMIT:
        return {_unpack_line_key(int(k), n, F) for k in _all_line_keys(n, F)}
    pts = list(all_points(n, F))
    lines: set[AffineLine] = set()
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            lines.add(line_through(a, b, F))
    return lines


def verify_affine(c: Cycle, n: int, F: Field) -> CoverageReport:
    """Exact-coverage report of a cycle against all affine lines of AG(n,q)."""
    if c.n != n or c.field != F:
        raise ValueError("cycle does not live in AG(n,q) for the given n, q")
    if F.q**n > _NP_POINT_LIMIT:
        return _verify_affine_np(c, n, F)
    found, degenerate, count = _walk_windows(c.vertices, F, wrap=True)
    return _build_report(all_affine_lines(n, F), found, degenerate, count)


def verify_subset(
    c: Cycle | Segment | Sequence[ProjVertex],
    expected: Iterable[AffineLine],
    F: Field | None = None,
) -> CoverageReport:
    """Exact-coverage report against an arbitrary target line set.

    Accepts a Cycle, a Segment, or a bare vertex sequence (treated
    cyclically; an empty sequence has no windows, so it passes against an
    empty target).
    """
    if isinstance(c, (Cycle, Segment)):
        vertices, F, wrap = c.vertices, c.field, isinstance(c, Cycle)
    else:
        vertices, wrap = tuple(c), True
        if vertices and F is None:
            raise ValueError("a bare vertex sequence needs an explicit field")
    expected = set(expected)
    if not vertices:
        return _build_report(expected, Counter(), [], 0)
    found, degenerate, count = _walk_windows(vertices, F, wrap=wrap)
    return _build_report(expected, found, degenerate, count)


# -- Grassmannian oracle -------------------------------------------------------

def all_2subspaces(m: int, F: Field) -> set[Subspace2]:
    """All rank-2 RREF row pairs: pivots i < j, free entries enumerated."""
    if m < 2:
        raise ValueError("need m >= 2")
    q = F.q
    out: set[Subspace2] = set()
    for i in range(m):
        for j in range(i + 1, m):
            free1 = [c for c in range(i + 1, m) if c != j]
            free2 = list(range(j + 1, m))
            for vals1 in itertools.product(range(q), repeat=len(free1)):
                row1 = [0] * m
                row1[i] = 1
                for col, v in zip(free1, vals1):
                    row1[col] = v
                for vals2 in itertools.product(range(q), repeat=len(free2)):
                    row2 = [0] * m
                    row2[j] = 1
                    for col, v in zip(free2, vals2):
                        row2[col] = v
                    out.add(Subspace2((tuple(row1), tuple(row2))))
    return out


def verify_grassmann(gc: GrassCycle, m: int, F: Field) -> CoverageReport:
    """Exact-coverage report of a vector cycle against all 2-subspaces of F_q^m."""
    if gc.m != m or gc.field != F:
        raise ValueError("cycle does not live in F_q^m for the given m, q")
    found: Counter = Counter()
    degenerate: list[int] = []
    vs = gc.vertices
    for i in range(len(vs)):
        try:
            found[span2(vs[i], vs[(i + 1) % len(vs)], F)] += 1
        except DegenerateWindowError:
            degenerate.append(i)
    return _build_report(all_2subspaces(m, F), found, degenerate, len(vs))


def verify_nesting(inner: GrassCycle, outer: GrassCycle) -> bool:
    """True iff inner's vertex sequence occurs contiguously in outer, up to
    rotation of the outer cycle only (no reversal)."""
    if inner.m != outer.m:
        raise ValueError(f"ambient dimensions differ: {inner.m} vs {outer.m}")
    if len(inner.vertices) > len(outer.vertices):
        return False
    doubled = outer.vertices + outer.vertices
    seq = inner.vertices
    k = len(seq)
    return any(doubled[i : i + k] == seq for i in range(len(outer.vertices)))


# -- vectorized fast path ------------------------------------------------------

_np_cache: dict = {}


def _np_tables(F: Field):
    key = (F.p, F.k, F.modulus)
    if key not in _np_cache:
        _np_cache[key] = (
            np.array(F._add, dtype=np.int64),
            np.array(F._mul, dtype=np.int64),
            np.array(F._inv, dtype=np.int64),
            np.array(F._neg, dtype=np.int64),
        )
    return _np_cache[key]


def _pack(coords: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return (coords * weights).sum(axis=1)


def _unpack_line_key(key: int, n: int, F: Field) -> AffineLine:
    P = F.q**n
    dkey, bkey = divmod(key, P)

    def digits(x):
        out = []
        for _ in range(n):
            x, r = divmod(x, F.q)
            out.append(r)
        return tuple(reversed(out))

    return AffineLine(Direction(digits(dkey)), digits(bkey))


def _all_line_keys(n: int, F: Field) -> np.ndarray:
    """Packed keys of all canonical lines, via pairs (a, a + d) over all
    points a and canonical difference directions d (scalar-equivalent
    differences skipped)."""
    ADD, MUL, _, _ = _np_tables(F)
    q = F.q
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    pts = np.array(list(all_points(n, F)), dtype=np.int64)
    P = q**n
    parts = []
    for d in enumerate_directions(n, F):
        darr = np.array(d.vector, dtype=np.int64)
        best = _pack(pts, weights)
        for t in range(1, q):
            cand = ADD[pts, MUL[darr, t][None, :]]
            best = np.minimum(best, _pack(cand, weights))
        dkey = int(_pack(darr[None, :], weights)[0])
        parts.append(np.unique(best) + dkey * P)
    return np.concatenate(parts)


def _cycle_window_keys(c: Cycle):
    """Packed line keys of all windows plus the degenerate window indices."""
    F = c.field
    ADD, MUL, INV, NEG = _np_tables(F)
    q, n = F.q, c.n
    N = len(c.vertices)
    inf = np.fromiter((v.at_infinity for v in c.vertices), dtype=bool, count=N)
    crd = np.array([v.coords for v in c.vertices], dtype=np.int64)
    b_inf = np.roll(inf, -1)
    b_crd = np.roll(crd, -1, axis=0)

    both_inf = inf & b_inf
    dirv = np.where(inf[:, None], crd, b_crd)
    pt = np.where(inf[:, None], b_crd, crd)
    equal_affine = np.zeros(N, dtype=bool)

    # affine-affine rows: normalize the difference
    aa = ~inf & ~b_inf
    if aa.any():
        idx = np.nonzero(aa)[0]
        diff = ADD[b_crd[idx], NEG[crd[idx]]]
        zero = ~diff.any(axis=1)
        first = np.argmax(diff != 0, axis=1)
        lead = diff[np.arange(len(idx)), first]
        lead[zero] = 1
        diff = MUL[diff, INV[lead][:, None]]
        dirv[idx] = diff
        equal_affine[idx[zero]] = True

    degenerate_mask = both_inf | equal_affine
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    best = _pack(pt, weights)
    for t in range(1, q):
        cand = ADD[pt, MUL[dirv, t]]
        best = np.minimum(best, _pack(cand, weights))
    keys = _pack(dirv, weights) * (q**n) + best
    return keys[~degenerate_mask], list(np.nonzero(degenerate_mask)[0])


def _verify_affine_np(c: Cycle, n: int, F: Field) -> CoverageReport:
    wkeys, degenerate = _cycle_window_keys(c)
    okeys = np.sort(_all_line_keys(n, F))
    uk, counts = np.unique(wkeys, return_counts=True)
    missing = np.setdiff1d(okeys, uk, assume_unique=True)
    unexpected = np.setdiff1d(uk, okeys, assume_unique=True)
    dup_sel = counts > 1
    dup_keys = uk[dup_sel]
    dup_counts = counts[dup_sel]
    passed = (
        missing.size == 0
        and unexpected.size == 0
        and dup_keys.size == 0
        and not degenerate
        and len(c.vertices) == okeys.size
    )
    unpack = lambda k: _unpack_line_key(int(k), n, F)
    return CoverageReport(
        expected_count=int(okeys.size),
        found_count=len(c.vertices),
        missing=[unpack(k) for k in missing[:MAX_REPORT_ITEMS]],
        duplicated=[
            (unpack(k), int(cnt))
            for k, cnt in zip(dup_keys[:MAX_REPORT_ITEMS], dup_counts[:MAX_REPORT_ITEMS])
        ],
        unexpected=[unpack(k) for k in unexpected[:MAX_REPORT_ITEMS]],
        degenerate_windows=[int(i) for i in degenerate[:MAX_REPORT_ITEMS]],
        missing_total=int(missing.size),
        duplicated_total=int(dup_keys.size),
        unexpected_total=int(unexpected.size),
        degenerate_total=len(degenerate),
        passed=bool(passed),
    )
