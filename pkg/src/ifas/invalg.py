"""Involutive algebras and bimodules given by structure constants.

Vectors are tuples of ring scalars of length ``dim``.  ``mult[i][j]`` is the
product of basis elements ``e_i e_j``; ``involution[i]`` is the image of
``e_i``.  A bimodule stores ``left[i][j] = a_i . m_j`` and
``right[j][i] = m_j . a_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ShapeMismatch, UnknownName
from .exactlinalg import ExactMatrix, Ring

Vector = tuple


def _vec(ring: Ring, values) -> Vector:
    return tuple(ring.coerce(v) for v in values)


def _basis(ring: Ring, dim: int, i: int) -> Vector:
    return tuple(ring.one() if k == i else ring.zero() for k in range(dim))


def _axpy(ring: Ring, acc: list, c, v: Vector):
    for k, x in enumerate(v):
        if x:
            acc[k] = ring.add(acc[k], ring.mul(c, x))


def _bilinear(ring: Ring, table, x: Vector, y: Vector, out_dim: int) -> Vector:
    acc = [ring.zero()] * out_dim
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if b:
                _axpy(ring, acc, ring.mul(a, b), table[i][j])
    return tuple(acc)


def _linear(ring: Ring, images, x: Vector, out_dim: int) -> Vector:
    acc = [ring.zero()] * out_dim
    for i, a in enumerate(x):
        if a:
            _axpy(ring, acc, a, images[i])
    return tuple(acc)


@dataclass(frozen=True)
class InvolutiveAlgebra:
    ring: Ring
    dim: int
    mult: tuple  # mult[i][j] -> Vector
    unit: Vector
    involution: tuple  # involution[i] -> Vector
    basis_names: tuple = ()
    name: str = ""

    def __post_init__(self):
        d, ring = self.dim, self.ring
        if len(self.mult) != d or any(len(r) != d for r in self.mult):
            raise ShapeMismatch("multiplication table must be dim x dim")
        object.__setattr__(self, "mult", tuple(tuple(_vec(ring, v) for v in r) for r in self.mult))
        object.__setattr__(self, "unit", _vec(ring, self.unit))
        object.__setattr__(self, "involution", tuple(_vec(ring, v) for v in self.involution))
        if len(self.involution) != d or any(len(v) != d for r in self.mult for v in r) \
                or any(len(v) != d for v in self.involution):
            raise ShapeMismatch("involution must be dim x dim")
        if len(self.unit) != d:
            raise ShapeMismatch("unit must have length dim")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(d)))

    def basis(self, i: int) -> Vector:
        return _basis(self.ring, self.dim, i)

    def zero(self) -> Vector:
        return (self.ring.zero(),) * self.dim

    def multiply(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeMismatch(f"expected vectors of length {self.dim}")
        return _bilinear(self.ring, self.mult, x, y, self.dim)

    def involve(self, x: Vector) -> Vector:
        if len(x) != self.dim:
            raise ShapeMismatch(f"expected a vector of length {self.dim}")
        return _linear(self.ring, self.involution, x, self.dim)

    def involution_matrix(self) -> ExactMatrix:
        # column i is the image of e_i
        return ExactMatrix.from_triplets(
            self.ring, self.dim, self.dim,
            ((r, c, v) for c, col in enumerate(self.involution) for r, v in enumerate(col) if v))

    def as_bimodule(self) -> "InvolutiveBimodule":
        right = tuple(tuple(self.mult[j][i] for i in range(self.dim)) for j in range(self.dim))
        return InvolutiveBimodule(self, self.dim, self.mult, right, self.involution, self.basis_names)


def multiply(a: InvolutiveAlgebra, x, y) -> Vector:
    return a.multiply(tuple(x), tuple(y))


def involve(a: InvolutiveAlgebra, x) -> Vector:
    return a.involve(tuple(x))


@dataclass(frozen=True)
class InvolutiveBimodule:
    algebra: InvolutiveAlgebra
    dim: int
    left: tuple   # left[i][j]  = a_i . m_j
    right: tuple  # right[j][i] = m_j . a_i
    involution: tuple
    basis_names: tuple = ()

    def __post_init__(self):
        ring = self.algebra.ring
        object.__setattr__(self, "left", tuple(tuple(_vec(ring, v) for v in r) for r in self.left))
        object.__setattr__(self, "right", tuple(tuple(_vec(ring, v) for v in r) for r in self.right))
        object.__setattr__(self, "involution", tuple(_vec(ring, v) for v in self.involution))
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"m{i}" for i in range(self.dim)))

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def basis(self, i: int) -> Vector:
        return _basis(self.ring, self.dim, i)

    def act_left(self, a: Vector, m: Vector) -> Vector:
        return _bilinear(self.ring, self.left, a, m, self.dim)

    def act_right(self, m: Vector, a: Vector) -> Vector:
        return _bilinear(self.ring, self.right, m, a, self.dim)

    def involve(self, m: Vector) -> Vector:
        return _linear(self.ring, self.involution, m, self.dim)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)  # (axiom, witness indices)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, axiom: str, *witness):
        self.failures.append((axiom, witness))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"{ax} fails at {w}" for ax, w in self.failures)


def validate(a: InvolutiveAlgebra) -> ValidationReport:
    rep = ValidationReport()
    d = a.dim
    e = [a.basis(i) for i in range(d)]
    for i, j, k in itertools.product(range(d), repeat=3):
        if a.multiply(a.multiply(e[i], e[j]), e[k]) != a.multiply(e[i], a.multiply(e[j], e[k])):
            rep.add("associativity", i, j, k)
    for i in range(d):
        if a.multiply(a.unit, e[i]) != e[i]:
            rep.add("left unit", i)
        if a.multiply(e[i], a.unit) != e[i]:
            rep.add("right unit", i)
        if a.involve(a.involve(e[i])) != e[i]:
            rep.add("involutivity", i)
    for i, j in itertools.product(range(d), repeat=2):
        lhs = a.involve(a.multiply(e[i], e[j]))
        rhs = a.multiply(a.involve(e[j]), a.involve(e[i]))
        if lhs != rhs:
            rep.add("anti-multiplicativity", i, j)
    if a.involve(a.unit) != a.unit:
        rep.add("unit fixed")
    return rep


def validate_bimodule(mm: InvolutiveBimodule) -> ValidationReport:
    rep = ValidationReport()
    a = mm.algebra
    ea = [a.basis(i) for i in range(a.dim)]
    em = [mm.basis(i) for i in range(mm.dim)]
    for i, j, k in itertools.product(range(a.dim), range(a.dim), range(mm.dim)):
        if mm.act_left(a.multiply(ea[i], ea[j]), em[k]) != mm.act_left(ea[i], mm.act_left(ea[j], em[k])):
            rep.add("left associativity", i, j, k)
        if mm.act_right(em[k], a.multiply(ea[i], ea[j])) != mm.act_right(mm.act_right(em[k], ea[i]), ea[j]):
            rep.add("right associativity", k, i, j)
    for i, k, j in itertools.product(range(a.dim), range(mm.dim), range(a.dim)):
        lhs = mm.act_right(mm.act_left(ea[i], em[k]), ea[j])
        if lhs != mm.act_left(ea[i], mm.act_right(em[k], ea[j])):
            rep.add("bimodule compatibility", i, k, j)
        rhs = mm.act_right(mm.act_left(a.involve(ea[j]), mm.involve(em[k])), a.involve(ea[i]))
        if mm.involve(lhs) != rhs:
            rep.add("involution compatibility", i, k, j)
    for k in range(mm.dim):
        if mm.act_left(a.unit, em[k]) != em[k] or mm.act_right(em[k], a.unit) != em[k]:
            rep.add("unital action", k)
        if mm.involve(mm.involve(em[k])) != em[k]:
            rep.add("involutivity", k)
    return rep


# ---------------------------------------------------------------------------
# built-in catalogue


def _from_rules(ring, name, names, product, inv, unit):
    """Build an algebra from a basis-product rule ``product(i, j) -> {k: c}``."""
    d = len(names)

    def vec(rule):
        v = [0] * d
        for k, c in rule.items():
            v[k] += c
        return v

    mult = [[vec(product(i, j)) for j in range(d)] for i in range(d)]
    return InvolutiveAlgebra(ring, d, mult, vec(unit), [vec(inv(i)) for i in range(d)],
                             tuple(names), name)


def _ground(ring):
    return _from_rules(ring, "ground", ["1"], lambda i, j: {0: 1}, lambda i: {0: 1}, {0: 1})


def _group_c2(ring):
    # basis e, g with g^2 = e; inversion is the identity on C2
    return _from_rules(ring, "group_c2", ["e", "g"], lambda i, j: {(i + j) % 2: 1},
                       lambda i: {i: 1}, {0: 1})


def _dual(sign):
    def build(ring):
        def prod(i, j):
            return {i + j: 1} if i + j < 2 else {}
        name = "dual_numbers_plus" if sign > 0 else "dual_numbers_minus"
        return _from_rules(ring, name, ["1", "x"], prod,
                           lambda i: {i: sign if i == 1 else 1}, {0: 1})
    return build


def _mat2(ring):
    # E_ab at index 2a + b; transpose swaps E_01 and E_10
    def prod(i, j):
        a, b = divmod(i, 2)
        c, e = divmod(j, 2)
        return {2 * a + e: 1} if b == c else {}
    return _from_rules(ring, "mat2_transpose", ["E00", "E01", "E10", "E11"], prod,
                       lambda i: {2 * (i % 2) + i // 2: 1}, {0: 1, 3: 1})


def _trunc3(ring):
    return _from_rules(ring, "trunc_poly_3", ["1", "x", "x2"],
                       lambda i, j: {i + j: 1} if i + j < 3 else {},
                       lambda i: {i: 1}, {0: 1})


BUILTINS = {
    "ground": _ground,
    "group_c2": _group_c2,
    "dual_numbers_plus": _dual(1),
    "dual_numbers_minus": _dual(-1),
    "mat2_transpose": _mat2,
    "trunc_poly_3": _trunc3,
}


def builtin(name: str, ring: Ring, with_bimodule: bool = False):
    """A catalogue algebra over ``ring``; optionally with ``M = A``."""
    try:
        a = BUILTINS[name](ring)
    except KeyError:
        raise UnknownName(f"unknown algebra {name!r}; choose from {', '.join(BUILTINS)}") from None
    rep = validate(a)
    if not rep.ok:
        raise AssertionError(f"builtin {name} over {ring} is invalid: {rep}")
    return (a, a.as_bimodule()) if with_bimodule else a


# ---------------------------------------------------------------------------
# file format


def format_algebra(a: InvolutiveAlgebra) -> str:
    ring = a.ring
    fmt = lambda v: " ".join(ring.format(c) for c in v)  # noqa: E731
    lines = [f"ring {ring}", f"dim {a.dim}", "basis " + " ".join(a.basis_names),
             f"unit {fmt(a.unit)}"]
    for i in range(a.dim):
        for j in range(a.dim):
            lines.append(f"mult {i} {j} : {fmt(a.mult[i][j])}")
    for i in range(a.dim):
        lines.append(f"inv {i} : {fmt(a.involution[i])}")
    return "\n".join(lines) + "\n"


def parse_algebra(text: str, name: str = "") -> InvolutiveAlgebra:
    ring = dim = names = unit = None
    mult: dict = {}
    inv: dict = {}

    def coeffs(tok_list, ln, col):
        if dim is None or ring is None:
            raise ParseError("'ring' and 'dim' must come first", ln, col)
        if len(tok_list) != dim:
            raise ParseError(f"expected {dim} coefficients, got {len(tok_list)}", ln, col)
        try:
            return tuple(ring.parse_scalar(t) for t in tok_list)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient: {exc}", ln, col) from None

    def index(tok, ln, col):
        if not tok.isdigit() or int(tok) >= (dim or 0):
            raise ParseError(f"bad basis index {tok!r}", ln, col)
        return int(tok)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        key = toks[0]
        col = raw.index(key) + 1
        if key == "ring":
            try:
                ring = Ring.parse(toks[1] if len(toks) == 2 else "")
            except ValueError as exc:
                raise ParseError(str(exc), ln, col) from None
        elif key == "dim":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise ParseError("expected 'dim <d>' with d >= 1", ln, col)
            dim = int(toks[1])
        elif key == "basis":
            if dim is None or len(toks) - 1 != dim:
                raise ParseError("basis needs exactly dim names", ln, col)
            names = tuple(toks[1:])
        elif key == "unit":
            unit = coeffs(toks[1:], ln, col)
        elif key in ("mult", "inv"):
            try:
                colon = toks.index(":")
            except ValueError:
                raise ParseError(f"missing ':' in {key} line", ln, col) from None
            idx = tuple(index(t, ln, col) for t in toks[1:colon])
            if len(idx) != (2 if key == "mult" else 1):
                raise ParseError(f"wrong number of indices in {key} line", ln, col)
            target = mult if key == "mult" else inv
            if idx in target:
                raise ParseError(f"duplicate {key} entry {idx}", ln, col)
            target[idx] = coeffs(toks[colon + 1:], ln, col)
        else:
            raise ParseError(f"unknown directive {key!r}", ln, col)
    end = len(text.splitlines()) + 1
    for key, val in (("ring", ring), ("dim", dim), ("unit", unit)):
        if val is None:
            raise ParseError(f"missing '{key}' line", end, 1)
    missing = [(i, j) for i in range(dim) for j in range(dim) if (i, j) not in mult]
    if missing:
        raise ParseError(f"missing mult lines for {missing}", end, 1)
    missing = [i for i in range(dim) if (i,) not in inv]
    if missing:
        raise ParseError(f"missing inv lines for {missing}", end, 1)
    return InvolutiveAlgebra(
        ring, dim,
        tuple(tuple(mult[i, j] for j in range(dim)) for i in range(dim)),
        unit, tuple(inv[(i,)] for i in range(dim)), names or (), name)


def load_algebra(path) -> InvolutiveAlgebra:
    with open(path) as fh:
        return parse_algebra(fh.read(), name=str(path))


def random_vector(a: InvolutiveAlgebra, rng, lo: int = -3, hi: int = 3) -> Vector:
    if a.ring.kind == "Q":
        return tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(a.dim))
    return tuple(a.ring.coerce(rng.randint(lo, hi)) for _ in range(a.dim))
