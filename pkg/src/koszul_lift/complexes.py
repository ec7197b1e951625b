"""Bounded graded free complexes over Q or R = Q/(f).

A ``FreeComplex`` stores a window [lo, hi] of homological positions, the
generator twists of each position, and the differentials d_n : F_n ->
F_{n-1} for lo < n <= hi.  The ``support`` flag says how to read positions
outside the window:

* ``"window"``: a finite view of a complex that may continue on both sides,
  so nothing is known outside;
* ``"bounded_below"``: F_n = 0 for n < lo, unknown above hi;
* ``"finite"``: F_n = 0 outside [lo, hi].

Differential entries are J-reduced representatives.  Over Q ("over": "Q")
identities hold modulo J; over R they hold modulo (J, f).  A complex
flagged ``is_lift`` is written over Q but only promises d o d in (f): it is
a chosen lift of an R-complex, the raw material for homotopy solving.

Homology of an R-complex is computed degreewise through the exact
sequence-span trick: the degree-d piece of F_n tensor R is V/W with V the
Q-piece and W the span of the f_i-multiples, so ranks of [matrix | span]
blocks give kernel and image dimensions without ever constructing R
itself.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import linalg
from .algebra import GradedRing, Poly, PolyMatrix, mono_mul
from .errors import InvalidInputError, ParseError

SUPPORTS = ("window", "bounded_below", "finite")


def _threads() -> int:
    try:
        n = int(os.environ.get("KOSZUL_LIFT_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


class FreeComplex:
    """Finitely generated graded free complex on a window of positions."""

    def __init__(
        self,
        ring: GradedRing,
        over: str,
        window: tuple[int, int],
        twists,
        diffs,
        support: str = "window",
        is_lift: bool = False,
    ):
        if over not in ("Q", "R"):
            raise InvalidInputError(f"over must be 'Q' or 'R', got {over!r}")
        if support not in SUPPORTS:
            raise InvalidInputError(f"unknown support {support!r}")
        if is_lift and over != "Q":
            raise InvalidInputError("a lift is written over Q")
        lo, hi = int(window[0]), int(window[1])
        if lo > hi:
            raise InvalidInputError(f"empty window {window}")
        self.ring = ring
        self.over = over
        self.window = (lo, hi)
        self.support = support
        self.is_lift = is_lift

        clean_twists = {}
        for n in range(lo, hi + 1):
            if n not in twists:
                raise InvalidInputError(f"missing twists for position {n}")
            clean_twists[n] = tuple(int(a) for a in twists[n])
        if set(twists) - set(clean_twists):
            raise InvalidInputError("twists outside the window")
        self.twists = clean_twists

        clean_diffs = {}
        for n in range(lo + 1, hi + 1):
            mat = diffs.get(n)
            shape = (len(clean_twists[n - 1]), len(clean_twists[n]))
            if mat is None:
                mat = PolyMatrix.zeros(ring, *shape)
            if (mat.nrows, mat.ncols) != shape:
                raise InvalidInputError(
                    f"differential at {n} is {mat.nrows}x{mat.ncols}, "
                    f"expected {shape[0]}x{shape[1]}"
                )
            clean_diffs[n] = mat.map_entries(ring.normal_form)
        if set(diffs) - set(clean_diffs):
            raise InvalidInputError("differential keys outside (lo, hi]")
        self.diffs = clean_diffs

    # -- shape queries -------------------------------------------------------

    def positions(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def known_rank(self, n: int):
        """Rank of F_n, 0 when the support flag forces it, None if unknown."""
        lo, hi = self.window
        if lo <= n <= hi:
            return len(self.twists[n])
        if n < lo:
            return 0 if self.support in ("bounded_below", "finite") else None
        return 0 if self.support == "finite" else None

    def known_twist(self, n: int):
        lo, hi = self.window
        if lo <= n <= hi:
            return self.twists[n]
        return () if self.known_rank(n) == 0 else None

    def rank(self, n: int) -> int:
        r = self.known_rank(n)
        if r is None:
            raise InvalidInputError(f"rank at position {n} is outside the window")
        return r

    def differential(self, n: int):
        """d_n as a matrix; implied zero matrices outside the window where
        the support determines them; None where nothing is known."""
        lo, hi = self.window
        if lo < n <= hi:
            return self.diffs[n]
        src = self.known_rank(n)
        tgt = self.known_rank(n - 1)
        if src is None or tgt is None:
            return None
        return PolyMatrix.zeros(self.ring, tgt, src)

    def interior_positions(self) -> range:
        """Positions where kernel and image are both determined."""
        lo, hi = self.window
        if self.support == "finite":
            return range(lo, hi + 1)
        if self.support == "bounded_below":
            return range(lo, hi)
        return range(lo + 1, hi)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "over": self.over,
            "support": self.support,
            "window": [self.window[0], self.window[1]],
            "twists": {str(n): list(self.twists[n]) for n in self.positions()},
            "diffs": {
                str(n): [[str(p) for p in row] for row in self.diffs[n].rows]
                for n in sorted(self.diffs)
            },
        }
        if self.is_lift:
            out["lift"] = True
        return out

    @classmethod
    def from_json_dict(cls, ring: GradedRing, data) -> "FreeComplex":
        try:
            over = data["over"]
            window = data["window"]
            raw_twists = data["twists"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"complex JSON missing key: {exc}") from exc
        if not isinstance(window, (list, tuple)) or len(window) != 2:
            raise ParseError(f"bad window {window!r}")
        lo, hi = int(window[0]), int(window[1])
        twists = {}
        for key, val in raw_twists.items():
            twists[int(key)] = tuple(int(a) for a in val)
        diffs = {}
        for key, rows in data.get("diffs", {}).items():
            n = int(key)
            if not (lo < n <= hi) or (n - 1) not in twists or n not in twists:
                raise ParseError(f"differential key {n} outside window")
            nrows, ncols = len(twists[n - 1]), len(twists[n])
            parsed = [[ring.parse(cell) for cell in row] for row in rows]
            if len(parsed) != nrows or any(len(r) != ncols for r in parsed):
                raise ParseError(
                    f"differential at {n} has wrong shape for the twists"
                )
            diffs[n] = PolyMatrix(nrows, ncols, parsed)
        return cls(
            ring,
            over,
            (lo, hi),
            twists,
            diffs,
            support=data.get("support", "window"),
            is_lift=bool(data.get("lift", False)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and self.ring == other.ring
            and self.over == other.over
            and self.window == other.window
            and self.support == other.support
            and self.is_lift == other.is_lift
            and self.twists == other.twists
            and self.diffs == other.diffs
        )

    def __repr__(self):
        lo, hi = self.window
        ranks = ",".join(str(len(self.twists[n])) for n in self.positions())
        return (
            f"FreeComplex(over={self.over}, window=[{lo},{hi}], "
            f"support={self.support}, ranks=[{ranks}])"
        )


def lift_to_Q(C: FreeComplex) -> FreeComplex:
    """Read an R-complex's entries as a chosen lift over Q (d^2 lands in
    (f) rather than vanishing)."""
    if C.over != "R":
        raise InvalidInputError("lift_to_Q expects a complex over R")
    return FreeComplex(
        C.ring, "Q", C.window, C.twists, C.diffs, support=C.support, is_lift=True
    )


def reduce_to_R(C: FreeComplex) -> FreeComplex:
    """Reduce a Q-complex modulo (f): same entries, now read over R."""
    if C.over != "Q":
        raise InvalidInputError("reduce_to_R expects a complex over Q")
    return FreeComplex(
        C.ring, "R", C.window, C.twists, C.diffs, support=C.support
    )


@dataclass
class ComplexFailure:
    kind: str  # "homogeneity" or "composite"
    position: int
    entry: tuple
    detail: str


@dataclass
class ComplexReport:
    ok: bool
    failures: list

    def first(self):
        return self.failures[0] if self.failures else None


def check_complex(C: FreeComplex) -> ComplexReport:
    """Structural validation: every entry homogeneous of its forced degree,
    and consecutive differentials compose to zero (over R / for lifts: to
    zero modulo (f))."""
    ring = C.ring
    failures = []
    lo, hi = C.window
    for n in range(lo + 1, hi + 1):
        mat = C.diffs[n]
        src = C.twists[n]
        tgt = C.twists[n - 1]
        for i, j, p in mat.entries():
            if p.is_zero():
                continue
            want = src[j] - tgt[i]
            if not p.is_homogeneous() or p.homogeneous_degree() != want:
                failures.append(
                    ComplexFailure(
                        "homogeneity",
                        n,
                        (i, j),
                        f"entry {p} at ({i},{j}) of d_{n} should be "
                        f"homogeneous of degree {want}",
                    )
                )
    weak = C.over == "R" or C.is_lift
    for n in range(lo + 2, hi + 1):
        comp = C.diffs[n - 1].mul(C.diffs[n], ring)
        for i, j, p in comp.entries():
            if p.is_zero():
                continue
            if weak and ring.in_sequence_ideal(p):
                continue
            failures.append(
                ComplexFailure(
                    "composite",
                    n,
                    (i, j),
                    f"(d_{n-1} d_{n})[{i},{j}] = {p} "
                    + ("not in (f)" if weak else "nonzero"),
                )
            )
    return ComplexReport(not failures, failures)


# -- graded piece machinery ----------------------------------------------------


def module_dim(ring: GradedRing, twists, d: int) -> int:
    return sum(ring.dim(d - a) for a in twists)


def module_basis(ring: GradedRing, twists, d: int):
    """Basis of the degree-d piece of the free module with the given
    twists: pairs (generator index, monomial), generator-major order."""
    out = []
    for j, a in enumerate(twists):
        for m in ring.monomial_basis(d - a):
            out.append((j, m))
    return out


def graded_matrix_rows(
    ring: GradedRing, mat: PolyMatrix, src_twists, tgt_twists, d: int
):
    """The k-linear matrix of a degree-0 module map on degree-d pieces.

    Rows follow module_basis(tgt_twists, d), columns module_basis(src).
    """
    field = ring.field
    nrows = module_dim(ring, tgt_twists, d)
    ncols = module_dim(ring, src_twists, d)
    rows = [[field.zero] * ncols for _ in range(nrows)]
    tgt_offsets = []
    off = 0
    for b in tgt_twists:
        tgt_offsets.append(off)
        off += ring.dim(d - b)
    col = 0
    for j, a in enumerate(src_twists):
        for mu in ring.monomial_basis(d - a):
            for i, b in enumerate(tgt_twists):
                p = mat.rows[i][j]
                if p.is_zero():
                    continue
                index_t = ring.basis_index(d - b)
                for m0, c0 in p.terms.items():
                    m = mono_mul(m0, mu)
                    if ring._mono_is_zero_in_q(m):
                        continue
                    r = tgt_offsets[i] + index_t[m]
                    rows[r][col] = field.add(rows[r][col], c0)
            col += 1
    return rows


def module_span_columns(ring: GradedRing, twists, d: int):
    """Columns spanning the degree-d piece of (f) * F for the free module F
    with the given twists (block-diagonal copies of the scalar spans)."""
    dim = module_dim(ring, twists, d)
    cols = []
    off = 0
    for a in twists:
        block_dim = ring.dim(d - a)
        for col in ring.sequence_span_columns(d - a):
            vec = [ring.field.zero] * dim
            vec[off:off + block_dim] = list(col)
            cols.append(vec)
        off += block_dim
    return cols


def coords_to_column(ring: GradedRing, twists, d: int, vec) -> list[Poly]:
    """Turn a coordinate vector over module_basis(twists, d) into a column
    of polynomials, one per generator."""
    field = ring.field
    out = [dict() for _ in twists]
    for (j, m), c in zip(module_basis(ring, twists, d), vec):
        if not field.is_zero(c):
            out[j][m] = c
    return [Poly(ring, terms) for terms in out]


def shift_coords_by_monomial(ring: GradedRing, twists, d_from: int, vec, mono):
    """Coordinates of (monomial * element) at degree d_from + deg(mono)."""
    field = ring.field
    d_to = d_from + sum(mono)
    out = [field.zero] * module_dim(ring, twists, d_to)
    offsets = []
    off = 0
    for a in twists:
        offsets.append(off)
        off += ring.dim(d_to - a)
    for (j, m), c in zip(module_basis(ring, twists, d_from), vec):
        if field.is_zero(c):
            continue
        mm = mono_mul(m, mono)
        if ring._mono_is_zero_in_q(mm):
            continue
        a = twists[j]
        r = offsets[j] + ring.basis_index(d_to - a)[mm]
        out[r] = field.add(out[r], c)
    return out


def homology_dims(
    C: FreeComplex, positions, degree_bound: int, threads: int | None = None
) -> dict:
    """Graded homology dimensions dim_k H_n(C)_d for the requested interior
    positions and all internal degrees up to ``degree_bound``.

    Over R the computation runs on Q-coordinates: with W the span of the
    f-multiples, dim H_n = dim V_n - rank[d_n | W_{n-1}] + rank W_{n-1}
    - rank[d_{n+1} | W_n].
    """
    if C.is_lift:
        raise InvalidInputError("homology of a lift is not defined; reduce first")
    ring = C.ring
    field = ring.field
    positions = sorted(set(int(n) for n in positions))
    interior = C.interior_positions()
    for n in positions:
        if n not in interior:
            raise InvalidInputError(
                f"position {n} is not interior for support {C.support!r} "
                f"window {list(C.window)}"
            )
    over_r = C.over == "R"
    all_twists = [a for n in C.positions() for a in C.twists[n]]
    if not all_twists:
        return {(n, d): 0 for n in positions for d in range(0, degree_bound + 1)}
    dmin = min(all_twists)
    degrees = range(dmin, degree_bound + 1)

    span_rank_cache: dict = {}
    mw_rank_cache: dict = {}

    def span_cols(n, d):
        if not over_r:
            return []
        tw = C.known_twist(n)
        return module_span_columns(ring, tw, d) if tw else []

    def span_rank(n, d):
        key = (n, d)
        if key not in span_rank_cache:
            cols = span_cols(n, d)
            if not cols:
                span_rank_cache[key] = 0
            else:
                dim = len(cols[0])
                rows = [[col[i] for col in cols] for i in range(dim)]
                span_rank_cache[key] = linalg.rank(field, rows, len(cols))
        return span_rank_cache[key]

    def mw_rank(n, d):
        """rank of [d_n | W_{n-1}] on degree-d pieces."""
        key = (n, d)
        if key not in mw_rank_cache:
            src = C.known_twist(n)
            tgt = C.known_twist(n - 1)
            if src is None or tgt is None:
                raise InvalidInputError(f"differential at {n} undetermined")
            mat = C.differential(n)
            rows = graded_matrix_rows(ring, mat, src, tgt, d)
            wcols = span_cols(n - 1, d)
            if wcols:
                for i, row in enumerate(rows):
                    row.extend(col[i] for col in wcols)
            ncols = module_dim(ring, src, d) + len(wcols)
            mw_rank_cache[key] = linalg.rank(field, rows, ncols)
        return mw_rank_cache[key]

    def one(task):
        n, d = task
        ncols = module_dim(ring, C.known_twist(n), d)
        if ncols == 0:
            return task, 0
        h = ncols - mw_rank(n, d) + span_rank(n - 1, d) - mw_rank(n + 1, d)
        return task, h

    tasks = [(n, d) for n in positions for d in degrees]
    nthreads = _threads() if threads is None else max(1, threads)
    out: dict = {}
    if nthreads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            for task, h in pool.map(one, tasks):
                out[task] = h
    else:
        for task in tasks:
            out[task] = one(task)[1]
    return out


def is_minimal(C: FreeComplex) -> bool:
    """Minimality: no unit appears in any differential, i.e. every entry
    has zero constant term."""
    field = C.ring.field
    for mat in C.diffs.values():
        for _, _, p in mat.entries():
            if not field.is_zero(p.constant_term()):
                return False
    return True
