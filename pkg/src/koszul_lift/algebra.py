"""Graded polynomial algebra over an exact field.

The ambient ring is P = k[x_1..x_n] with the standard grading.  A
``GradedRing`` fixes a monomial ideal J (so Q = P/J keeps a monomial
k-basis in every degree) and a homogeneous sequence f_1..f_c inside Q.
Polynomials are stored as J-reduced representatives in P; arithmetic that
must land back in Q goes through ``GradedRing.normal_form`` or
``GradedRing.mul``.

Monomials are exponent tuples.  The canonical monomial order is total
degree first, then plain tuple comparison; bases and printed terms are
listed in descending order under it.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import InvalidInputError, ParseError
from .fields import Field, field_from_spec
from . import linalg

Monomial = tuple[int, ...]


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_key(m: Monomial):
    return (sum(m), m)


def _monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in descending lex order."""
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


class Poly:
    """Element of P (a J-reduced representative when produced by a ring op).

    ``terms`` maps exponent tuples to nonzero field elements.  Instances are
    treated as immutable.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GradedRing", terms: Mapping[Monomial, object]):
        field = ring.field
        clean = {}
        for m, c in terms.items():
            c = field(c)
            if not field.is_zero(c):
                clean[m] = c
        self.ring = ring
        self.terms = clean

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: Monomial):
        return self.terms.get(m, self.ring.field.zero)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self):
        """Largest total degree among terms, or None for the zero element."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self):
        """Common degree of all terms; None when zero; raises when mixed."""
        degrees = {sum(m) for m in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise ValueError(f"not homogeneous: {self}")
        return degrees.pop()

    # -- ring operations in P (no J reduction) ----------------------------

    def _same_ring(self, other: "Poly") -> bool:
        return self.ring is other.ring or (
            self.ring._signature() == other.ring._signature()
        )

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        assert self._same_ring(other)
        field = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(terms.get(m, field.zero), c)
            if field.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        out = Poly.__new__(Poly)
        out.ring, out.terms = self.ring, terms
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        field = self.ring.field
        out = Poly.__new__(Poly)
        out.ring = self.ring
        out.terms = {m: field.neg(c) for m, c in self.terms.items()}
        return out

    def __mul__(self, other):
        field = self.ring.field
        if isinstance(other, Poly):
            assert self._same_ring(other)
            terms: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    s = field.add(terms.get(m, field.zero), field.mul(c1, c2))
                    if field.is_zero(s):
                        terms.pop(m, None)
                    else:
                        terms[m] = s
            out = Poly.__new__(Poly)
            out.ring, out.terms = self.ring, terms
            return out
        # scalar on the right
        c0 = field(other)
        if field.is_zero(c0):
            return self.ring.zero
        out = Poly.__new__(Poly)
        out.ring = self.ring
        out.terms = {m: field.mul(c, c0) for m, c in self.terms.items()}
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self._same_ring(other)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    """Render in the text grammar, terms in descending canonical order."""
    if not p.terms:
        return "0"
    field = p.ring.field
    names = p.ring.variables
    pieces = []
    for m in sorted(p.terms, key=mono_key, reverse=True):
        c = p.terms[m]
        negative = field.char == 0 and c < 0
        mag = -c if negative else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono_str = "*".join(factors)
        if not mono_str:
            body = field.format(mag)
        elif mag == field.one:
            body = mono_str
        else:
            body = f"{field.format(mag)}*{mono_str}"
        pieces.append(("-" if negative else "+", body))
    sign0, body0 = pieces[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_NUM_RE = re.compile(r"^\d+(/\d+)?$")
_VAR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(ring: "GradedRing", text: str) -> Poly:
    """Parse the grammar ``term (('+'|'-') term)*`` where a term is a
    '*'-separated product of an optional integer-or-a/b coefficient and
    variable powers ``x^k``.  The result is J-reduced."""
    compact = text.replace(" ", "").replace("\t", "")
    if not compact:
        raise ParseError("empty polynomial text")
    # split into signed chunks at top level; exponents never contain '-'
    chunks: list[tuple[int, str]] = []
    sign, start = 1, 0
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        start = 1
    cur = []
    i = start
    while i <= len(compact):
        ch = compact[i] if i < len(compact) else None
        if ch in ("+", "-", None):
            chunk = "".join(cur)
            if not chunk:
                raise ParseError(f"dangling operator in {text!r}")
            chunks.append((sign, chunk))
            cur = []
            sign = -1 if ch == "-" else 1
        else:
            cur.append(ch)
        i += 1

    field = ring.field
    var_index = {name: k for k, name in enumerate(ring.variables)}
    terms: dict[Monomial, object] = {}
    for sgn, chunk in chunks:
        coeff = field.one if sgn > 0 else field.neg(field.one)
        expts = [0] * ring.nvars
        for part in chunk.split("*"):
            if not part:
                raise ParseError(f"empty factor in {text!r}")
            if _NUM_RE.match(part):
                coeff = field.mul(coeff, field(part))
                continue
            mvar = _VAR_RE.match(part)
            if not mvar:
                raise ParseError(f"bad factor {part!r} in {text!r}")
            name, exp = mvar.group(1), mvar.group(2)
            if name not in var_index:
                raise ParseError(
                    f"unknown variable {name!r}; ring has {ring.variables}"
                )
            expts[var_index[name]] += 1 if exp is None else int(exp)
        m = tuple(expts)
        s = field.add(terms.get(m, field.zero), coeff)
        if field.is_zero(s):
            terms.pop(m, None)
        else:
            terms[m] = s
    return ring.normal_form(Poly(ring, terms))


class GradedRing:
    """Q = k[x_1..x_n]/J together with a homogeneous sequence f_1..f_c.

    J must be a monomial ideal, given by generator monomials; each f_i must
    be homogeneous of degree >= 1 and nonzero in Q.  Whether the sequence is
    actually regular is a separate check (see ``koszul.check_regular_up_to``).
    """

    MAX_SEQUENCE = 16

    def __init__(
        self,
        field: Field,
        variables: Iterable[str],
        relations: Iterable = (),
        sequence: Iterable = (),
    ):
        self.field = field
        self.variables = tuple(variables)
        if not self.variables:
            raise InvalidInputError("need at least one variable")
        seen = set()
        for name in self.variables:
            if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
                raise InvalidInputError(f"bad variable name {name!r}")
            if name in seen:
                raise InvalidInputError(f"duplicate variable {name!r}")
            seen.add(name)
        self.nvars = len(self.variables)

        self.relations = self._canonical_relations(relations)
        self._nf_zero_cache: dict[Monomial, bool] = {}
        self._basis_cache: dict[int, tuple[Monomial, ...]] = {}
        self._basis_index_cache: dict[int, dict[Monomial, int]] = {}
        self._span_cache: dict[int, list] = {}
        self._member_cache: dict[int, object] = {}

        seq = []
        for f in sequence:
            if isinstance(f, str):
                f = parse_poly(self, f)
            else:
                f = self.normal_form(f)
            d = f.homogeneous_degree() if f.is_homogeneous() else None
            if d is None or d < 1:
                raise InvalidInputError(
                    "sequence entries must be homogeneous of degree >= 1 "
                    f"and nonzero in Q; got {f}"
                )
            seq.append(f)
        self.sequence = tuple(seq)
        if len(self.sequence) > self.MAX_SEQUENCE:
            raise InvalidInputError(
                f"sequence length {len(self.sequence)} exceeds "
                f"{self.MAX_SEQUENCE}"
            )
        self.seq_degrees = tuple(f.homogeneous_degree() for f in self.sequence)

    def _canonical_relations(self, relations) -> tuple[Monomial, ...]:
        monos = []
        for r in relations:
            if isinstance(r, str):
                m = self._parse_monomial(r)
            else:
                m = tuple(int(e) for e in r)
            if len(m) != self.nvars or any(e < 0 for e in m):
                raise InvalidInputError(f"bad relation exponents {m}")
            if sum(m) < 1:
                raise InvalidInputError("relation generators must have degree >= 1")
            monos.append(m)
        # prune generators divisible by another generator
        monos = sorted(set(monos), key=mono_key)
        kept: list[Monomial] = []
        for m in monos:
            if not any(mono_divides(g, m) for g in kept):
                kept.append(m)
        return tuple(kept)

    def _parse_monomial(self, text: str) -> Monomial:
        # parse without J reduction: a relation generator is a bare monomial
        compact = text.replace(" ", "")
        expts = [0] * self.nvars
        var_index = {name: k for k, name in enumerate(self.variables)}
        for part in compact.split("*"):
            mvar = _VAR_RE.match(part)
            if not mvar or mvar.group(1) not in var_index:
                raise ParseError(f"bad monomial {text!r}")
            expts[var_index[mvar.group(1)]] += (
                1 if mvar.group(2) is None else int(mvar.group(2))
            )
        return tuple(expts)

    # -- structure ---------------------------------------------------------

    @property
    def c(self) -> int:
        return len(self.sequence)

    def _signature(self):
        return (
            self.field.to_spec(),
            self.variables,
            self.relations,
            tuple(
                tuple(sorted(f.terms.items())) for f in getattr(self, "sequence", ())
            ),
        )

    def __eq__(self, other):
        return isinstance(other, GradedRing) and (
            self._signature() == other._signature()
        )

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        rel = ", ".join(self.format_monomial(m) for m in self.relations)
        seq = ", ".join(str(f) for f in self.sequence)
        return (
            f"GradedRing({self.field!r}, vars=({', '.join(self.variables)}), "
            f"J=({rel}), f=({seq}))"
        )

    def format_monomial(self, m: Monomial) -> str:
        factors = []
        for name, e in zip(self.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    # -- element constructors ----------------------------------------------

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def const(self, value) -> Poly:
        return Poly(self, {(0,) * self.nvars: self.field(value)})

    def var(self, name: str) -> Poly:
        k = self.variables.index(name)
        expts = [0] * self.nvars
        expts[k] = 1
        return Poly(self, {tuple(expts): self.field.one})

    def monomial(self, expts: Iterable[int]) -> Poly:
        return self.normal_form(Poly(self, {tuple(expts): self.field.one}))

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)

    # -- Q arithmetic --------------------------------------------------------

    def _mono_is_zero_in_q(self, m: Monomial) -> bool:
        flag = self._nf_zero_cache.get(m)
        if flag is None:
            flag = any(mono_divides(g, m) for g in self.relations)
            self._nf_zero_cache[m] = flag
        return flag

    def normal_form(self, p: Poly) -> Poly:
        """Canonical representative in Q: delete J-divisible monomials."""
        if not self.relations:
            return p if p.ring is self else Poly(self, p.terms)
        terms = {
            m: c for m, c in p.terms.items() if not self._mono_is_zero_in_q(m)
        }
        if len(terms) == len(p.terms) and p.ring is self:
            return p
        return Poly(self, terms)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.normal_form(a * b)

    # -- graded pieces -------------------------------------------------------

    def monomial_basis(self, d: int) -> tuple[Monomial, ...]:
        """Monomials of degree d surviving in Q, descending canonical order."""
        if d < 0:
            return ()
        basis = self._basis_cache.get(d)
        if basis is None:
            basis = tuple(
                m
                for m in _monomials_of_degree(self.nvars, d)
                if not self._mono_is_zero_in_q(m)
            )
            self._basis_cache[d] = basis
        return basis

    def basis_index(self, d: int) -> dict[Monomial, int]:
        index = self._basis_index_cache.get(d)
        if index is None:
            index = {m: i for i, m in enumerate(self.monomial_basis(d))}
            self._basis_index_cache[d] = index
        return index

    def dim(self, d: int) -> int:
        return len(self.monomial_basis(d))

    def coords(self, p: Poly, d: int) -> list:
        """Coordinate vector of a homogeneous degree-d element over the
        monomial basis of Q_d.  The zero element is accepted at any d."""
        p = self.normal_form(p)
        vec = [self.field.zero] * self.dim(d)
        if p.is_zero():
            return vec
        if p.homogeneous_degree() != d:
            raise ValueError(f"{p} is not homogeneous of degree {d}")
        index = self.basis_index(d)
        for m, c in p.terms.items():
            vec[index[m]] = c
        return vec

    def sequence_span_columns(self, d: int) -> list:
        """Coordinate columns spanning (f_1..f_c)_d inside Q_d: all products
        f_i * m with m a basis monomial of degree d - deg(f_i)."""
        cols = self._span_cache.get(d)
        if cols is None:
            cols = []
            for f, fd in zip(self.sequence, self.seq_degrees):
                for m in self.monomial_basis(d - fd):
                    shifted = self.normal_form(
                        Poly(self, {mono_mul(m0, m): c for m0, c in f.terms.items()})
                    )
                    cols.append(tuple(self.coords(shifted, d)))
            self._span_cache[d] = cols
        return cols

    def in_sequence_ideal(self, p: Poly) -> bool:
        """Membership of p (taken mod J) in the ideal (f_1..f_c) of Q."""
        p = self.normal_form(p)
        if p.is_zero():
            return True
        by_degree: dict[int, dict[Monomial, object]] = {}
        for m, c in p.terms.items():
            by_degree.setdefault(sum(m), {})[m] = c
        for d, terms in sorted(by_degree.items()):
            rows = self._member_cache.get(d)
            if rows is None:
                cols = self.sequence_span_columns(d)
                rows = [
                    [col[i] for col in cols] for i in range(self.dim(d))
                ]
                self._member_cache[d] = rows
            vec = self.coords(Poly(self, terms), d)
            ncols = len(rows[0]) if rows else 0
            if linalg.solve_min(self.field, rows, vec, ncols) is None:
                return False
        return True

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "field": self.field.to_spec(),
            "variables": list(self.variables),
            "relations": [self.format_monomial(m) for m in self.relations],
            "sequence": [str(f) for f in self.sequence],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "GradedRing":
        try:
            field = field_from_spec(data["field"])
            variables = data["variables"]
            relations = data.get("relations", [])
            sequence = data.get("sequence", [])
        except KeyError as exc:
            raise ParseError(f"ring JSON missing key {exc}") from exc
        return cls(field, variables, relations, sequence)


class PolyMatrix:
    """Immutable dense matrix of polynomials with an explicit shape, so that
    rank-zero blocks survive composition."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows):
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(
                f"shape mismatch: declared {nrows}x{ncols}, got "
                f"{len(rows)} rows"
            )
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @staticmethod
    def zeros(ring: GradedRing, nrows: int, ncols: int) -> "PolyMatrix":
        z = ring.zero
        return PolyMatrix(nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(ring: GradedRing, n: int) -> "PolyMatrix":
        one, zero = ring.one, ring.zero
        return PolyMatrix(
            n, n, [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_rows(rows, ncols=None) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return PolyMatrix(len(rows), ncols, rows)

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def entries(self):
        for i, row in enumerate(self.rows):
            for j, p in enumerate(row):
                yield i, j, p

    def is_zero(self) -> bool:
        return all(p.is_zero() for _, _, p in self.entries())

    def mul(self, other: "PolyMatrix", ring: GradedRing) -> "PolyMatrix":
        """Matrix product with J-reduction of every entry."""
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = ring.zero
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(ring.normal_form(acc))
            out.append(row)
        return PolyMatrix(self.nrows, other.ncols, out)

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        return PolyMatrix(
            self.nrows,
            self.ncols,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def sub(self, other: "PolyMatrix") -> "PolyMatrix":
        return self.add(other.neg())

    def neg(self) -> "PolyMatrix":
        return PolyMatrix(
            self.nrows, self.ncols, [[-p for p in row] for row in self.rows]
        )

    def scale(self, scalar) -> "PolyMatrix":
        return PolyMatrix(
            self.nrows, self.ncols, [[p * scalar for p in row] for row in self.rows]
        )

    def scale_poly(self, g: Poly, ring: GradedRing) -> "PolyMatrix":
        return PolyMatrix(
            self.nrows,
            self.ncols,
            [[ring.mul(p, g) for p in row] for row in self.rows],
        )

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(
            self.nrows, self.ncols, [[fn(p) for p in row] for row in self.rows]
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def block_matrix(
    ring: GradedRing,
    row_sizes: list[int],
    col_sizes: list[int],
    blocks: Mapping[tuple[int, int], PolyMatrix],
) -> PolyMatrix:
    """Assemble a matrix from a sparse grid of blocks; absent blocks are 0."""
    nrows = sum(row_sizes)
    ncols = sum(col_sizes)
    zero = ring.zero
    out = [[zero] * ncols for _ in range(nrows)]
    row_offsets = [0]
    for s in row_sizes:
        row_offsets.append(row_offsets[-1] + s)
    col_offsets = [0]
    for s in col_sizes:
        col_offsets.append(col_offsets[-1] + s)
    for (bi, bj), blk in blocks.items():
        if blk.nrows != row_sizes[bi] or blk.ncols != col_sizes[bj]:
            raise ValueError(
                f"block ({bi},{bj}) is {blk.nrows}x{blk.ncols}, expected "
                f"{row_sizes[bi]}x{col_sizes[bj]}"
            )
        r0, c0 = row_offsets[bi], col_offsets[bj]
        for i in range(blk.nrows):
            for j in range(blk.ncols):
                out[r0 + i][c0 + j] = blk.rows[i][j]
    return PolyMatrix(nrows, ncols, out)


def solve_graded_linear(
    ring: GradedRing,
    unknown_degrees: Mapping[object, int],
    constraints: Iterable[tuple[list, Poly]],
) -> dict | None:
    """Solve a Q-linear system whose unknowns are homogeneous elements of Q
    of forced degrees.

    ``unknown_degrees`` maps an unknown's name to its degree (iteration
    order fixes the column order).  Each constraint is ``(terms, rhs)``
    with ``terms`` a list of ``(coefficient, name)`` pairs, asserting
    sum(coefficient * unknown) == rhs in Q.  Coefficients and rhs must be
    homogeneous.

    Returns the assignment from the reduced row echelon solution with all
    free variables set to zero, or None when inconsistent.  Unknowns whose
    degree admits no monomials are assigned zero.
    """
    field = ring.field
    names = list(unknown_degrees.keys())
    col_owner: list[tuple[object, Monomial]] = []
    col_start: dict[object, int] = {}
    for name in names:
        col_start[name] = len(col_owner)
        d = unknown_degrees[name]
        if d >= 0:
            for m in ring.monomial_basis(d):
                col_owner.append((name, m))
    ncols = len(col_owner)

    a_rows: list[list] = []
    b: list = []
    for terms, rhs in constraints:
        rhs = ring.normal_form(rhs)
        live = []
        target = None
        for coeff, name in terms:
            coeff = ring.normal_form(coeff)
            if coeff.is_zero():
                continue
            t = coeff.homogeneous_degree() + unknown_degrees[name]
            if target is None:
                target = t
            elif target != t:
                raise ValueError("constraint mixes target degrees")
            live.append((coeff, name))
        if not rhs.is_zero():
            t = rhs.homogeneous_degree()
            if target is None:
                target = t
            elif target != t:
                raise ValueError("constraint mixes target degrees")
        if target is None:
            continue  # 0 == 0
        basis_t = ring.monomial_basis(target)
        index_t = ring.basis_index(target)
        block = [[field.zero] * ncols for _ in range(len(basis_t))]
        for coeff, name in live:
            du = unknown_degrees[name]
            if du < 0:
                continue
            start = col_start[name]
            for k, mu in enumerate(ring.monomial_basis(du)):
                for m0, c0 in coeff.terms.items():
                    m = mono_mul(m0, mu)
                    if ring._mono_is_zero_in_q(m):
                        continue
                    row = index_t[m]
                    block[row][start + k] = field.add(block[row][start + k], c0)
        rhs_vec = ring.coords(rhs, target)
        if not basis_t:
            continue  # the whole graded piece is zero
        a_rows.extend(block)
        b.extend(rhs_vec)

    solution = linalg.solve_min(field, a_rows, b, ncols)
    if solution is None:
        return None
    out: dict = {}
    for name in names:
        d = unknown_degrees[name]
        if d < 0:
            out[name] = ring.zero
            continue
        start = col_start[name]
        basis_d = ring.monomial_basis(d)
        terms = {
            m: solution[start + k]
            for k, m in enumerate(basis_d)
            if not field.is_zero(solution[start + k])
        }
        out[name] = Poly(ring, terms)
    return out
