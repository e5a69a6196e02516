"""Exact linear algebra over Z, Q and F_p.

Matrices are immutable and stored sparsely as one ``{col: value}`` dict per
row.  Scalars are Python ``int`` (Z and F_p, reduced into ``[0, p)``) or
``fractions.Fraction`` (Q).  Nothing in here ever touches floating point.

The homology of a chain complex is read off from ranks (over a field) or
from the Smith normal form of the incoming differential (over Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import CompositionNonzero, ShapeMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """One of ``Z``, ``Q`` or ``F_p``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F" and not _is_prime(self.p):
            raise ValueError(f"F_p needs p prime, got {self.p}")
        if self.kind != "F" and self.p != 0:
            raise ValueError("only prime fields carry a characteristic")

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Parse ``Z``, ``Q`` or ``F<p>`` (e.g. ``F2``)."""
        text = text.strip()
        if text in ("Z", "Q"):
            return cls(text)
        if text.startswith("F") and text[1:].isdigit():
            return cls("F", int(text[1:]))
        raise ValueError(f"cannot parse ring {text!r}; expected Z, Q or F<p>")

    def __str__(self):
        return f"F{self.p}" if self.kind == "F" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p

    def coerce(self, value) -> int | Fraction:
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            if self.kind == "Z":
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                return int(value)
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if self.kind == "Z":
            return int(value)
        return int(value) % self.p

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        s = a + b
        return s % self.p if self.kind == "F" else s

    def mul(self, a, b):
        s = a * b
        return s % self.p if self.kind == "F" else s

    def neg(self, a):
        return -a % self.p if self.kind == "F" else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "F":
            return pow(a, -1, self.p)
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def format(self, a) -> str:
        if isinstance(a, Fraction) and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def parse_scalar(self, text: str):
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("F", p)


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Immutable sparse matrix; ``data[r]`` maps column index to nonzero entry."""

    ring: Ring
    rows: int
    cols: int
    data: tuple = field(repr=False)

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "ExactMatrix":
        return cls(ring, rows, cols, tuple({} for _ in range(rows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ExactMatrix":
        one = ring.one()
        return cls(ring, n, n, tuple({i: one} for i in range(n)))

    @classmethod
    def from_dense(cls, ring: Ring, entries: Sequence[Sequence], cols: int | None = None):
        entries = [list(r) for r in entries]
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for r in entries:
            if len(r) != cols:
                raise ShapeMismatch("ragged rows in dense matrix")
            row = {}
            for j, v in enumerate(r):
                v = ring.coerce(v)
                if v != 0:
                    row[j] = v
            data.append(row)
        return cls(ring, len(entries), cols, tuple(data))

    @classmethod
    def from_triplets(cls, ring: Ring, rows: int, cols: int, triplets: Iterable):
        """Sum ``(row, col, value)`` triplets into a matrix; duplicates add up."""
        data = [dict() for _ in range(rows)]
        for r, c, v in triplets:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeMismatch(f"triplet ({r}, {c}) outside {rows}x{cols}")
            row = data[r]
            s = ring.add(row.get(c, ring.zero()), ring.coerce(v))
            if s == 0:
                row.pop(c, None)
            else:
                row[c] = s
        return cls(ring, rows, cols, tuple(data))

    @classmethod
    def from_columns(cls, ring: Ring, rows: int, columns: Sequence[dict]):
        """Build from a list of sparse column vectors ``{row: value}``."""
        return cls.from_triplets(
            ring, rows, len(columns),
            ((r, c, v) for c, col in enumerate(columns) for r, v in col.items()),
        )

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r].get(c, self.ring.zero())

    def to_dense(self) -> list[list]:
        z = self.ring.zero()
        return [[row.get(c, z) for c in range(self.cols)] for row in self.data]

    def nnz(self) -> int:
        return sum(len(r) for r in self.data)

    def is_zero(self) -> bool:
        return all(not r for r in self.data)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and all(a == b for a, b in zip(self.data, other.data)))

    def __hash__(self):
        return hash((self.ring, self.shape, tuple(tuple(sorted(r.items())) for r in self.data)))

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {self.rows}x{self.cols}, nnz={self.nnz()})"

    # arithmetic ---------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        data = [dict() for _ in range(self.cols)]
        for r, row in enumerate(self.data):
            for c, v in row.items():
                data[c][r] = v
        return ExactMatrix(self.ring, self.cols, self.rows, tuple(data))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.ring != other.ring:
            raise ShapeMismatch("ring mismatch")
        ring = self.ring
        out = []
        for row in self.data:
            acc: dict = {}
            for k, a in row.items():
                for c, b in other.data[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            if ring.kind == "F":
                acc = {c: v % ring.p for c, v in acc.items()}
            out.append({c: v for c, v in acc.items() if v != 0})
        return ExactMatrix(ring, self.rows, other.cols, tuple(out))

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.shape != other.shape or self.ring != other.ring:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        ring = self.ring
        out = []
        for a, b in zip(self.data, other.data):
            row = dict(a)
            for c, v in b.items():
                s = row.get(c, 0) + sign * v
                if ring.kind == "F":
                    s %= ring.p
                if s == 0:
                    row.pop(c, None)
                else:
                    row[c] = s
            out.append(row)
        return ExactMatrix(ring, self.rows, self.cols, tuple(out))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        ring = self.ring
        c = ring.coerce(c)
        if c == 0:
            return ExactMatrix.zero(ring, self.rows, self.cols)
        return ExactMatrix(ring, self.rows, self.cols,
                           tuple({k: ring.mul(v, c) for k, v in r.items()} for r in self.data))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Row ``i`` of the result is row ``row_perm[i]``; likewise for columns."""
        inv_col = {old: new for new, old in enumerate(col_perm)}
        data = tuple({inv_col[c]: v for c, v in self.data[r].items()} for r in row_perm)
        return ExactMatrix(self.ring, self.rows, self.cols, data)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector ``{index: value}``."""
        ring = self.ring
        out = {}
        for r, row in enumerate(self.data):
            s = 0
            for c, v in row.items():
                w = vec.get(c)
                if w:
                    s += v * w
            if ring.kind == "F":
                s %= ring.p
            if s != 0:
                out[r] = s
        return out

    def change_ring(self, ring: Ring) -> "ExactMatrix":
        data = []
        for row in self.data:
            new = {}
            for c, v in row.items():
                v = ring.coerce(v)
                if v != 0:
                    new[c] = v
            data.append(new)
        return ExactMatrix(ring, self.rows, self.cols, tuple(data))


# ---------------------------------------------------------------------------
# row reduction over a field


def _row_reduce(m: ExactMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form over a field: (pivot rows, pivot columns)."""
    ring = m.ring
    if not ring.is_field:
        raise ValueError("row reduction needs a field; use smith_normal_form over Z")
    pivots: dict[int, dict] = {}  # pivot column -> normalized row
    for src in m.data:
        row = dict(src)
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                break
            col = hit[0]
            prow = pivots[col]
            f = row[col]
            for c, v in prow.items():
                s = row.get(c, 0) - f * v
                if ring.kind == "F":
                    s %= ring.p
                if s == 0:
                    row.pop(c, None)
                else:
                    row[c] = s
        if not row:
            continue
        col = min(row)
        inv = ring.inv(row[col])
        row = {c: ring.mul(v, inv) for c, v in row.items()}
        # keep earlier pivot rows reduced against the new pivot
        for pcol, prow in pivots.items():
            f = prow.get(col)
            if f:
                for c, v in row.items():
                    s = prow.get(c, 0) - f * v
                    if ring.kind == "F":
                        s %= ring.p
                    if s == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = s
        pivots[col] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def rank(m: ExactMatrix) -> int:
    """Rank over the ring's fraction field (Q for integer matrices)."""
    if m.ring.kind == "Z":
        return _rank_integer(m)
    return _rank_field(m)


def _rank_field(m: ExactMatrix) -> int:
    ring = m.ring
    pivots: dict[int, dict] = {}
    for src in m.data:
        row = dict(src)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = ring.inv(row[col])
                pivots[col] = {c: ring.mul(v, inv) for c, v in row.items()}
                break
            f = row[col]
            for c, v in prow.items():
                s = row.get(c, 0) - f * v
                if ring.kind == "F":
                    s %= ring.p
                if s == 0:
                    row.pop(c, None)
                else:
                    row[c] = s
    return len(pivots)


def _rank_integer(m: ExactMatrix) -> int:
    # fraction-free elimination; rows are divided by their content to stay small
    pivots: dict[int, dict] = {}
    for src in m.data:
        row = dict(src)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[col] = {c: v // g for c, v in row.items()}
                break
            a, b = prow[col], row[col]
            new = {}
            for c in set(row) | set(prow):
                s = a * row.get(c, 0) - b * prow.get(c, 0)
                if s:
                    new[c] = s
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return len(pivots)


def kernel_basis(m: ExactMatrix) -> list[dict]:
    """Basis of the null space ``{x : m x = 0}`` as sparse vectors."""
    if not m.ring.is_field:
        raise ValueError("kernel_basis needs a field")
    ring = m.ring
    rows, pcols = _row_reduce(m)
    pset = set(pcols)
    basis = []
    for free in range(m.cols):
        if free in pset:
            continue
        vec = {free: ring.one()}
        for prow, pc in zip(rows, pcols):
            v = prow.get(free)
            if v:
                vec[pc] = ring.neg(v)
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


def _invariant_chain(diag: list[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into a divisibility chain."""
    d = sorted(abs(x) for x in diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a // g * b
    return d


def smith_normal_form(m: ExactMatrix) -> tuple[list[int], int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix, and ``r``.

    Pivots are chosen as an entry of smallest absolute value.  Once a pivot's
    row and column are cleared the pair is dropped; the collected diagonal is
    then normalised into the divisibility chain.
    """
    if m.ring.kind != "Z":
        raise ValueError("smith_normal_form expects an integer matrix")
    rows: dict[int, dict[int, int]] = {r: dict(row) for r, row in enumerate(m.data) if row}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def set_entry(r, c, v):
        row = rows.setdefault(r, {})
        if v:
            row[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]
            if not row:
                del rows[r]

    def row_op(target, src, q):
        # row[target] -= q * row[src]
        for c, v in list(rows[src].items()):
            set_entry(target, c, rows.get(target, {}).get(c, 0) - q * v)

    def col_op(target, src, q):
        # col[target] -= q * col[src]
        for r in list(cols.get(src, ())):
            v = rows[r][src]
            set_entry(r, target, rows[r].get(target, 0) - q * v)

    diag: list[int] = []
    while rows:
        # smallest nonzero magnitude overall
        pr, pc, pv = None, None, None
        for r, row in rows.items():
            for c, v in row.items():
                if pv is None or abs(v) < pv:
                    pr, pc, pv = r, c, abs(v)
                    if pv == 1:
                        break
            if pv == 1:
                break
        while True:
            p = rows[pr][pc]
            moved = False
            for r in list(cols[pc]):
                if r == pr:
                    continue
                q = rows[r][pc] // p
                row_op(r, pr, q)
                if r in rows and pc in rows[r]:
                    moved = True
            for c in list(rows[pr]):
                if c == pc:
                    continue
                q = rows[pr][c] // p
                col_op(c, pc, q)
                if c in rows[pr]:
                    moved = True
            if not moved:
                break
            # a remainder smaller than the pivot is left in its row or column
            best = (abs(p), pr, pc)
            for r in cols[pc]:
                v = abs(rows[r][pc])
                if v < best[0]:
                    best = (v, r, pc)
            for c, v in rows[pr].items():
                if abs(v) < best[0]:
                    best = (abs(v), pr, c)
            _, pr, pc = best
        diag.append(rows[pr][pc])
        set_entry(pr, pc, 0)
    factors = _invariant_chain(diag)
    return factors, len(factors)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    """``free_rank`` copies of the ring plus cyclic torsion ``Z/d``."""

    ring: Ring
    free_rank: int
    torsion: tuple[int, ...] = ()

    def render(self) -> str:
        r = self.free_rank
        if self.ring.kind == "Z":
            parts = [f"Z^{r}"] if r or not self.torsion else []
            parts += [f"Z/{d}" for d in self.torsion]
            return " (+) ".join(parts) if parts else "Z^0"
        name = "Q" if self.ring.kind == "Q" else f"F_{self.ring.p}"
        return f"{name}^{r}"

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def homology_at(d_in: ExactMatrix, d_out: ExactMatrix, check: bool = True) -> HomologyGroup:
    """Homology of ``C_{n+1} --d_in--> C_n --d_out--> C_{n-1}`` at ``C_n``."""
    if d_in.rows != d_out.cols:
        raise ShapeMismatch(
            f"d_in has {d_in.rows} rows but d_out has {d_out.cols} columns")
    if d_in.ring != d_out.ring:
        raise ShapeMismatch("ring mismatch between differentials")
    if check and not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out . d_in != 0")
    ring = d_in.ring
    n = d_in.rows
    r_out = rank(d_out)
    if ring.is_field:
        return HomologyGroup(ring, n - r_out - rank(d_in))
    factors, r_in = smith_normal_form(d_in)
    torsion = tuple(d for d in factors if d != 1)
    return HomologyGroup(ring, n - r_out - r_in, torsion)
