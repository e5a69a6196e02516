"""Bar constructions, Loday operators and homology of involutive algebras.

A basis tensor of ``M (x) A^{(x) n}`` is a tuple ``(i_0, i_1, ..., i_n)`` with
``i_0`` indexing the basis of ``M`` and the rest indexing ``A``.  Flattening
is lexicographic, the same order as ``itertools.product``.

Homology is computed from explicit chain models:

* Hochschild: the unnormalised complex with ``b = sum (-1)^i d_i``.
* Reflexive: the C2-hyperhomology bicomplex, Hochschild columns joined by
  ``1 - y`` and ``1 + y`` where ``y_n = (-1)^{n(n+1)/2} r_{n+1}``.
* Cyclic: the ``(b, b', 1 - t, N)`` bicomplex with ``t_n = (-1)^n`` times
  the rotation.
* Dihedral (over Q only): invariants of an involution of the cyclic total
  complex; ``y`` on even columns, ``y t`` on odd ones, with column signs
  ``+, -, -, +, +, -, ...``.  Invariants are exact when 2 is invertible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (CompositionNonzero, IndexOutOfRange, NotBased, RingNotRational,
                     ShapeMismatch, SizeMismatch)
from .exactlinalg import ExactMatrix, HomologyGroup, Ring, homology_at, rank
from .invalg import InvolutiveAlgebra, InvolutiveBimodule
from .ncsets import NCMorphism

Index = tuple[int, ...]


# ---------------------------------------------------------------------------
# tensors


@dataclass(frozen=True, eq=False)
class TensorElement:
    """Finite linear combination of basis tensors in ``M (x) A^{(x) n}``."""

    ring: Ring
    degree: int
    module_rank: int
    algebra_rank: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree + 1:
                raise ShapeMismatch(f"index {idx} has wrong length for degree {self.degree}")
            if not 0 <= idx[0] < self.module_rank or any(
                    not 0 <= k < self.algebra_rank for k in idx[1:]):
                raise ShapeMismatch(f"index {idx} out of range")
            c = self.ring.coerce(c)
            if c != 0:
                clean[idx] = self.ring.add(clean.get(idx, self.ring.zero()), c)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})

    @classmethod
    def basis(cls, ring, module_rank, algebra_rank, idx) -> "TensorElement":
        return cls(ring, len(idx) - 1, module_rank, algebra_rank, {tuple(idx): 1})

    def _like(self, degree, coeffs):
        return TensorElement(self.ring, degree, self.module_rank, self.algebra_rank, coeffs)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.ring == other.ring and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = self.ring.add(out.get(k, self.ring.zero()), v)
        return self._like(self.degree, out)

    def scale(self, c):
        c = self.ring.coerce(c)
        return self._like(self.degree, {k: self.ring.mul(v, c) for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        terms = " + ".join(f"{self.ring.format(c)}*{k}" for k, c in sorted(self.coeffs.items()))
        return f"TensorElement(deg={self.degree}, {terms or '0'})"


def _expand(ring: Ring, slots: Sequence[Sequence], coeff) -> dict:
    """Tensor product of slot vectors, scaled by ``coeff``."""
    terms = {(): coeff}
    for vec in slots:
        nz = [(k, c) for k, c in enumerate(vec) if c != 0]
        if not nz:
            return {}
        terms = {idx + (k,): ring.mul(v, c) for idx, v in terms.items() for k, c in nz}
    return terms


def _accumulate(ring: Ring, out: dict, terms: dict):
    for idx, c in terms.items():
        s = ring.add(out.get(idx, ring.zero()), c)
        if s == 0:
            out.pop(idx, None)
        else:
            out[idx] = s


def _linear_map(x: TensorElement, degree: int, basis_fn: Callable[[Index], dict],
                module_rank: int | None = None) -> TensorElement:
    out: dict = {}
    ring = x.ring
    for idx, c in x.coeffs.items():
        img = basis_fn(idx)
        _accumulate(ring, out, {k: ring.mul(v, c) for k, v in img.items()})
    return TensorElement(ring, degree, module_rank or x.module_rank, x.algebra_rank, out)


# ---------------------------------------------------------------------------
# bar constructions


def _factor(a: InvolutiveAlgebra, k: int, z: bool):
    e = a.basis(k)
    return a.involve(e) if z else e


def _product(a: InvolutiveAlgebra, factors):
    acc = a.unit
    for f in factors:
        acc = a.multiply(acc, f)
    return acc


def bar_basis_image(a: InvolutiveAlgebra, f: NCMorphism, idx: Index) -> dict:
    slots = [_product(a, (_factor(a, idx[j], z) for j, z in p)) for p in f.preimages]
    return _expand(a.ring, slots, a.ring.one())


def bar_apply(a: InvolutiveAlgebra, f: NCMorphism, x: TensorElement) -> TensorElement:
    """Hyperoctahedral bar construction ``H_A(f)`` on ``A^{(x) n+1}``."""
    if x.degree != f.source_n:
        raise SizeMismatch(f"tensor has degree {x.degree}, morphism starts at [{f.source_n}]")
    if x.module_rank != a.dim or x.algebra_rank != a.dim:
        raise ShapeMismatch("bar_apply needs a tensor in A^{(x) n+1}")
    return _linear_map(x, f.target_m, lambda idx: bar_basis_image(a, f, idx))


def based_bar_basis_image(a: InvolutiveAlgebra, mm: InvolutiveBimodule, f: NCMorphism,
                          idx: Index) -> dict:
    slots = []
    for i, p in enumerate(f.preimages):
        if i > 0:
            slots.append(_product(a, (_factor(a, idx[j], z) for j, z in p)))
            continue
        pos = next(k for k, (j, _) in enumerate(p) if j == 0)
        left = _product(a, (_factor(a, idx[j], z) for j, z in p[:pos]))
        right = _product(a, (_factor(a, idx[j], z) for j, z in p[pos + 1:]))
        m = mm.basis(idx[0])
        if p[pos][1]:
            m = mm.involve(m)
        slots.append(mm.act_right(mm.act_left(left, m), right))
    return _expand(a.ring, slots, a.ring.one())


def based_bar_apply(a: InvolutiveAlgebra, mm: InvolutiveBimodule, f: NCMorphism,
                    x: TensorElement) -> TensorElement:
    """``R(A, M)(f)`` on ``M (x) A^{(x) n}``; slot 0 holds the bimodule factor."""
    if not f.is_based:
        raise NotBased(f"morphism sends 0 to {f(0)}")
    if x.degree != f.source_n:
        raise SizeMismatch(f"tensor has degree {x.degree}, morphism starts at [{f.source_n}]")
    return _linear_map(x, f.target_m, lambda idx: based_bar_basis_image(a, mm, f, idx))


# ---------------------------------------------------------------------------
# Loday functor operators, straight from their formulas


def _face_basis(a, mm, i, idx):
    n = len(idx) - 1
    e = [mm.basis(idx[0])] + [a.basis(k) for k in idx[1:]]
    if i == 0:
        slots = [mm.act_right(e[0], e[1])] + e[2:]
    elif i < n:
        slots = e[:i] + [a.multiply(e[i], e[i + 1])] + e[i + 2:]
    else:
        slots = [mm.act_left(e[n], e[0])] + e[1:n]
    return _expand(a.ring, slots, a.ring.one())


def _degeneracy_basis(a, mm, j, idx):
    e = [mm.basis(idx[0])] + [a.basis(k) for k in idx[1:]]
    return _expand(a.ring, e[:j + 1] + [a.unit] + e[j + 1:], a.ring.one())


def _reflection_basis(a, mm, idx):
    slots = [mm.involve(mm.basis(idx[0]))] + [a.involve(a.basis(k)) for k in reversed(idx[1:])]
    return _expand(a.ring, slots, a.ring.one())


def _rotation_basis(a, idx):
    slots = [a.basis(idx[-1])] + [a.basis(k) for k in idx[:-1]]
    return _expand(a.ring, slots, a.ring.one())


def loday_face(a: InvolutiveAlgebra, mm: InvolutiveBimodule, i: int, x: TensorElement):
    n = x.degree
    if n < 1 or not 0 <= i <= n:
        raise IndexOutOfRange(f"no face d_{i} in degree {n}")
    return _linear_map(x, n - 1, lambda idx: _face_basis(a, mm, i, idx))


def loday_degeneracy(a: InvolutiveAlgebra, mm: InvolutiveBimodule, j: int, x: TensorElement):
    n = x.degree
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"no degeneracy s_{j} in degree {n}")
    return _linear_map(x, n + 1, lambda idx: _degeneracy_basis(a, mm, j, idx))


def reflexive_action(a: InvolutiveAlgebra, mm: InvolutiveBimodule, x: TensorElement):
    """Unsigned ``r(m, a_1, ..., a_n) = (m*, a_n*, ..., a_1*)``."""
    return _linear_map(x, x.degree, lambda idx: _reflection_basis(a, mm, idx))


def cyclic_action(a: InvolutiveAlgebra, x: TensorElement):
    """Unsigned rotation ``(a_0, ..., a_n) -> (a_n, a_0, ..., a_{n-1})``."""
    return _linear_map(x, x.degree, lambda idx: _rotation_basis(a, idx))


# ---------------------------------------------------------------------------
# matrices


def _degree_basis(module_rank: int, algebra_rank: int, n: int) -> list[Index]:
    return list(itertools.product(range(module_rank), *([range(algebra_rank)] * n)))


def _flat(idx: Index, module_rank: int, algebra_rank: int) -> int:
    k = idx[0]
    for x in idx[1:]:
        k = k * algebra_rank + x
    return k


def operator_matrix(ring: Ring, module_rank: int, algebra_rank: int, n_in: int, n_out: int,
                    basis_fn: Callable[[Index], dict], sign=1) -> ExactMatrix:
    """Matrix of a basis-level operator from degree ``n_in`` to ``n_out``."""
    cols = _degree_basis(module_rank, algebra_rank, n_in)
    rows = module_rank * algebra_rank ** n_out
    trip = []
    for c, idx in enumerate(cols):
        for out, v in basis_fn(idx).items():
            trip.append((_flat(out, module_rank, algebra_rank), c, v * sign))
    return ExactMatrix.from_triplets(ring, rows, len(cols), trip)


def face_matrix(a, mm, i: int, n: int) -> ExactMatrix:
    return operator_matrix(a.ring, mm.dim, a.dim, n, n - 1, lambda idx: _face_basis(a, mm, i, idx))


def degeneracy_matrix(a, mm, j: int, n: int) -> ExactMatrix:
    return operator_matrix(a.ring, mm.dim, a.dim, n, n + 1,
                           lambda idx: _degeneracy_basis(a, mm, j, idx))


def bar_matrix(a: InvolutiveAlgebra, f: NCMorphism) -> ExactMatrix:
    return operator_matrix(a.ring, a.dim, a.dim, f.source_n, f.target_m,
                           lambda idx: bar_basis_image(a, f, idx))


def based_bar_matrix(a, mm, f: NCMorphism) -> ExactMatrix:
    if not f.is_based:
        raise NotBased(f"morphism sends 0 to {f(0)}")
    return operator_matrix(a.ring, mm.dim, a.dim, f.source_n, f.target_m,
                           lambda idx: based_bar_basis_image(a, mm, f, idx))


def hochschild_boundary(a, mm, n: int) -> ExactMatrix:
    """``b_n = sum_{i=0}^{n} (-1)^i d_i``; for ``n = 0`` the zero map to 0."""
    if n == 0:
        return ExactMatrix.zero(a.ring, 0, mm.dim)
    out = face_matrix(a, mm, 0, n)
    for i in range(1, n + 1):
        f = face_matrix(a, mm, i, n)
        out = out - f if i % 2 else out + f
    return out


def bprime_boundary(a, n: int) -> ExactMatrix:
    """``b'_n = sum_{i=0}^{n-1} (-1)^i d_i`` on ``A^{(x) n+1}``."""
    mm = a.as_bimodule()
    out = ExactMatrix.zero(a.ring, a.dim ** n, a.dim ** (n + 1)) if n else \
        ExactMatrix.zero(a.ring, 0, a.dim)
    for i in range(n):
        f = face_matrix(a, mm, i, n)
        out = out - f if i % 2 else out + f
    return out


def reflexive_operator(a, mm, n: int) -> ExactMatrix:
    """``y_n = (-1)^{n(n+1)/2} r_{n+1}``, a chain involution of the Hochschild complex."""
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    return operator_matrix(a.ring, mm.dim, a.dim, n, n,
                           lambda idx: _reflection_basis(a, mm, idx), sign)


def cyclic_operator(a, n: int) -> ExactMatrix:
    """``t_n = (-1)^n`` times the rotation on ``A^{(x) n+1}``."""
    sign = -1 if n % 2 else 1
    return operator_matrix(a.ring, a.dim, a.dim, n, n, lambda idx: _rotation_basis(a, idx), sign)


def norm_operator(a, n: int) -> ExactMatrix:
    t = cyclic_operator(a, n)
    power = ExactMatrix.identity(a.ring, t.rows)
    out = power
    for _ in range(n):
        power = t @ power
        out = out + power
    return out


def dihedral_column_operator(a, n: int, column: int) -> ExactMatrix:
    """The involution used on column ``column`` of the cyclic bicomplex."""
    mm = a.as_bimodule()
    y = reflexive_operator(a, mm, n)
    op = y if column % 2 == 0 else y @ cyclic_operator(a, n)
    return op.scale(-1) if ((column + 1) // 2) % 2 else op


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class ChainComplex:
    """``differentials[n]: C_n -> C_{n-1}``; ``differentials[0]`` has zero rows."""

    ring: Ring
    ranks: tuple
    differentials: tuple

    def __post_init__(self):
        if len(self.ranks) != len(self.differentials):
            raise ShapeMismatch("need one differential per degree")
        for n, d in enumerate(self.differentials):
            want = (self.ranks[n - 1] if n else 0, self.ranks[n])
            if d.shape != want:
                raise ShapeMismatch(f"d_{n} has shape {d.shape}, expected {want}")
        for n in range(2, len(self.ranks)):
            if not (self.differentials[n - 1] @ self.differentials[n]).is_zero():
                raise CompositionNonzero(f"d_{n - 1} d_{n} != 0")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def homology(self, n: int) -> HomologyGroup:
        """Homology in degree ``n``; needs ``n < top`` so ``d_{n+1}`` is present."""
        if not 0 <= n < self.top:
            raise IndexOutOfRange(f"H_{n} needs the complex up to degree {n + 1}")
        return homology_at(self.differentials[n + 1], self.differentials[n], check=False)

    def homology_groups(self) -> list[HomologyGroup]:
        return [self.homology(n) for n in range(self.top)]


def hochschild_complex(a: InvolutiveAlgebra, mm: InvolutiveBimodule, top: int) -> ChainComplex:
    ranks = tuple(mm.dim * a.dim ** n for n in range(top + 1))
    diffs = tuple(hochschild_boundary(a, mm, n) for n in range(top + 1))
    return ChainComplex(a.ring, ranks, diffs)


def _total_complex(ring: Ring, cell_rank: Callable[[int], int], top: int,
                   vertical: Callable[[int, int], ExactMatrix],
                   horizontal: Callable[[int, int], ExactMatrix | None]) -> ChainComplex:
    """Totalise a first-quadrant bicomplex with cells ``(column c, row q)``.

    ``cell_rank(q)`` is the rank of every cell in row ``q``; ``vertical(c, q)``
    maps ``(c, q) -> (c, q-1)`` and ``horizontal(c, q)`` maps ``(c, q) -> (c-1, q)``.
    Both must already carry the signs making the total differential square to 0.
    """
    def cells(n):
        out, off = [], 0
        for c in range(n + 1):
            q = n - c
            out.append((c, q, off))
            off += cell_rank(q)
        return out, off

    layout = [cells(n) for n in range(top + 1)]
    ranks = tuple(size for _, size in layout)
    diffs = [ExactMatrix.zero(ring, 0, ranks[0])]
    for n in range(1, top + 1):
        src, _ = layout[n]
        dst = {(c, q): off for c, q, off in layout[n - 1][0]}
        trip = []
        for c, q, off in src:
            if q > 0:
                for r, row in enumerate(vertical(c, q).data):
                    base = dst[c, q - 1]
                    trip.extend((base + r, off + k, v) for k, v in row.items())
            if c > 0:
                h = horizontal(c, q)
                if h is not None:
                    base = dst[c - 1, q]
                    for r, row in enumerate(h.data):
                        trip.extend((base + r, off + k, v) for k, v in row.items())
        diffs.append(ExactMatrix.from_triplets(ring, ranks[n - 1], ranks[n], trip))
    return ChainComplex(ring, ranks, tuple(diffs))


class _Cache(dict):
    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, key):
        v = self[key] = self.fn(key)
        return v


def reflexive_bicomplex(a: InvolutiveAlgebra, mm: InvolutiveBimodule, top: int) -> ChainComplex:
    """Total complex of ``C_q`` in column ``c``, joined by ``1 - y`` (odd c) / ``1 + y`` (even c)."""
    b = _Cache(lambda q: hochschild_boundary(a, mm, q))
    y = _Cache(lambda q: reflexive_operator(a, mm, q))
    ident = _Cache(lambda q: ExactMatrix.identity(a.ring, mm.dim * a.dim ** q))

    def vertical(c, q):
        return b[q].scale(-1) if c % 2 else b[q]

    def horizontal(c, q):
        return ident[q] - y[q] if c % 2 else ident[q] + y[q]

    return _total_complex(a.ring, lambda q: mm.dim * a.dim ** q, top, vertical, horizontal)


def cyclic_bicomplex(a: InvolutiveAlgebra, top: int) -> ChainComplex:
    mm = a.as_bimodule()
    b = _Cache(lambda q: hochschild_boundary(a, mm, q))
    bp = _Cache(lambda q: bprime_boundary(a, q))
    t = _Cache(lambda q: cyclic_operator(a, q))
    nrm = _Cache(lambda q: norm_operator(a, q))
    ident = _Cache(lambda q: ExactMatrix.identity(a.ring, a.dim ** (q + 1)))

    def vertical(c, q):
        return bp[q].scale(-1) if c % 2 else b[q]

    def horizontal(c, q):
        return ident[q] - t[q] if c % 2 else nrm[q]

    return _total_complex(a.ring, lambda q: a.dim ** (q + 1), top, vertical, horizontal)


def _block_diag(ring: Ring, blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    trip, off = [], 0
    for m in blocks:
        for r, row in enumerate(m.data):
            trip.extend((off + r, off + k, v) for k, v in row.items())
        off += m.rows
    return ExactMatrix.from_triplets(ring, off, off, trip)


def dihedral_total_involution(a: InvolutiveAlgebra, n: int) -> ExactMatrix:
    """Involution of the cyclic total complex in total degree ``n``."""
    return _block_diag(a.ring, [dihedral_column_operator(a, n - c, c) for c in range(n + 1)])


# ---------------------------------------------------------------------------
# homology


def _require_top(top: int):
    if top < 0:
        raise ValueError("degree bound must be nonnegative")


def hochschild_homology(a, mm, top: int) -> list[HomologyGroup]:
    _require_top(top)
    return hochschild_complex(a, mm, top + 1).homology_groups()


def reflexive_homology(a, mm, top: int) -> list[HomologyGroup]:
    _require_top(top)
    return reflexive_bicomplex(a, mm, top + 1).homology_groups()


def cyclic_homology(a, top: int) -> list[HomologyGroup]:
    _require_top(top)
    return cyclic_bicomplex(a, top + 1).homology_groups()


def invariant_homology(cx: ChainComplex, projectors: Sequence[ExactMatrix]) -> list[HomologyGroup]:
    """Homology of the image of idempotent chain maps ``projectors[n]``, over a field.

    ``dim H_n = rank P_n - rank(d_n P_n) - rank(d_{n+1} P_{n+1})``.
    """
    if not cx.ring.is_field:
        raise ValueError("invariant_homology needs a field")
    out = []
    for n in range(cx.top):
        dim_v = rank(projectors[n])
        r_out = rank(cx.differentials[n] @ projectors[n])
        r_in = rank(cx.differentials[n + 1] @ projectors[n + 1])
        out.append(HomologyGroup(cx.ring, dim_v - r_out - r_in))
    return out


def _half(ring: Ring, ident: ExactMatrix, inv: ExactMatrix, sign: int) -> ExactMatrix:
    return (ident + inv.scale(sign)).scale(Fraction(1, 2))


def dihedral_homology_rational(a: InvolutiveAlgebra, top: int, sign: int = 1) -> list[HomologyGroup]:
    """``HD`` over Q as invariants of the cyclic bicomplex; ``sign=-1`` gives the
    anti-invariant part, so that the two add up to cyclic homology."""
    _require_top(top)
    if a.ring.kind != "Q":
        raise RingNotRational(f"dihedral homology needs 2 invertible; refusing over {a.ring}")
    cx = cyclic_bicomplex(a, top + 1)
    proj = []
    for n in range(top + 2):
        ident = ExactMatrix.identity(a.ring, cx.ranks[n])
        proj.append(_half(a.ring, ident, dihedral_total_involution(a, n), sign))
    return invariant_homology(cx, proj)


def reflexive_homology_invariants(a, mm, top: int, sign: int = 1) -> list[HomologyGroup]:
    """Over Q: homology of the ``y``-(anti-)invariant part of the Hochschild complex."""
    if a.ring.kind != "Q":
        raise RingNotRational("the invariant model needs 2 invertible")
    cx = hochschild_complex(a, mm, top + 1)
    proj = []
    for n in range(top + 2):
        ident = ExactMatrix.identity(a.ring, cx.ranks[n])
        proj.append(_half(a.ring, ident, reflexive_operator(a, mm, n), sign))
    return invariant_homology(cx, proj)


THEORIES = ("hochschild", "reflexive", "cyclic", "dihedral")


def compute_homology(theory: str, a: InvolutiveAlgebra, top: int,
                     mm: InvolutiveBimodule | None = None) -> list[HomologyGroup]:
    mm = mm or a.as_bimodule()
    if theory == "hochschild":
        return hochschild_homology(a, mm, top)
    if theory == "reflexive":
        return reflexive_homology(a, mm, top)
    if theory == "cyclic":
        return cyclic_homology(a, top)
    if theory == "dihedral":
        return dihedral_homology_rational(a, top)
    raise ValueError(f"unknown theory {theory!r}; choose from {', '.join(THEORIES)}")


def render_table(groups: Sequence[HomologyGroup]) -> str:
    return "\n".join(f"H_{n} = {g.render()}" for n, g in enumerate(groups))


def render_machine(groups: Sequence[HomologyGroup], header: dict | None = None) -> str:
    blocks = []
    if header:
        blocks.append("\n".join(f"{k} = {v}" for k, v in header.items()))
    for n, g in enumerate(groups):
        blocks.append(f"degree = {n}\nfree_rank = {g.free_rank}\n"
                      f"torsion = {','.join(str(d) for d in g.torsion)}")
    return "\n\n".join(blocks) + "\n"
