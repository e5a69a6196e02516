"""Hyperoctahedral groups as signed permutations.

An element of ``H_{n+1} = C_2^{n+1} x| Sigma_{n+1}`` is a pair ``(z; sigma)``
where ``sigma`` permutes ``[n] = {0..n}`` and ``z`` is a vector of ``C_2``
labels, encoded as booleans (``True`` is the generator ``t``).

Labels are indexed by *target* position: ``g`` moves ``j`` to ``sigma(j)``
and the sign picked up on the way is ``z[sigma(j)]``.  With this reading the
product is

    (z; sigma)(z'; sigma') = (z . sigma(z'); sigma sigma'),
    sigma(z')_i = z'_{sigma^{-1}(i)},

which applies the right-hand factor first, like composition of maps.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceeded, SizeMismatch

DEFAULT_CAP = 10**6


@dataclass(frozen=True, order=True)
class SignedPermutation:
    sigma: tuple[int, ...]
    labels: tuple[bool, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"{self.sigma} is not a permutation of [0..{len(self.sigma) - 1}]")
        if len(self.labels) != len(self.sigma):
            raise ValueError("need one label per point")
        object.__setattr__(self, "labels", tuple(bool(z) for z in self.labels))

    @property
    def size(self) -> int:
        """Number of points, i.e. ``n + 1``."""
        return len(self.sigma)

    @property
    def n(self) -> int:
        return len(self.sigma) - 1

    @classmethod
    def identity(cls, size: int) -> "SignedPermutation":
        return cls(tuple(range(size)), (False,) * size)

    def is_identity(self) -> bool:
        return self.sigma == tuple(range(self.size)) and not any(self.labels)

    def __call__(self, j: int) -> tuple[int, bool]:
        """Image of ``j`` together with the sign acquired."""
        i = self.sigma[j]
        return i, self.labels[i]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "SignedPermutation":
        base = self if k >= 0 else inverse(self)
        out = SignedPermutation.identity(self.size)
        for _ in range(abs(k)):
            out = compose(base, out)
        return out

    def render(self) -> str:
        """``[sigma(0)^+, sigma(1)^-, ...]``; ``-`` marks the label ``t``."""
        parts = []
        for j in range(self.size):
            i, z = self(j)
            parts.append(f"{i}^{'-' if z else '+'}")
        return "[" + ", ".join(parts) + "]"

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected [..], got {text!r}")
        body = body[1:-1].strip()
        if not body:
            return cls((), ())
        sigma, labels = [], {}
        for tok in body.split(","):
            tok = tok.strip()
            i, _, s = tok.partition("^")
            if s not in ("+", "-"):
                raise ValueError(f"bad entry {tok!r}")
            sigma.append(int(i))
            labels[int(i)] = s == "-"
        return cls(tuple(sigma), tuple(labels.get(i, False) for i in range(len(sigma))))

    def __str__(self):
        return self.render()


def compose(g: SignedPermutation, h: SignedPermutation) -> SignedPermutation:
    """``g o h``: apply ``h`` first, then ``g``."""
    if g.size != h.size:
        raise SizeMismatch(f"cannot compose elements of H_{g.size} and H_{h.size}")
    sg, sh = g.sigma, h.sigma
    inv_g = [0] * g.size
    for j, i in enumerate(sg):
        inv_g[i] = j
    labels = tuple(g.labels[i] ^ h.labels[inv_g[i]] for i in range(g.size))
    return SignedPermutation(tuple(sg[sh[j]] for j in range(g.size)), labels)


def inverse(g: SignedPermutation) -> SignedPermutation:
    # (z; s)^{-1} = (s^{-1}(z); s^{-1}), with labels re-indexed by new targets
    inv = [0] * g.size
    for j, i in enumerate(g.sigma):
        inv[i] = j
    return SignedPermutation(tuple(inv), tuple(g.labels[g.sigma[j]] for j in range(g.size)))


def canonical_R(n: int) -> SignedPermutation:
    """The reflection ``(t, ..., t; i -> n - i)``."""
    return SignedPermutation(tuple(n - i for i in range(n + 1)), (True,) * (n + 1))


def canonical_T(n: int) -> SignedPermutation:
    """The rotation ``(1, ..., 1; i -> i + 1 mod n + 1)``."""
    return SignedPermutation(tuple((i + 1) % (n + 1) for i in range(n + 1)), (False,) * (n + 1))


class GroupFamily(enum.Enum):
    REFLEXIVE = "reflexive"
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    SYMMETRIC = "symmetric"
    HYPEROCTAHEDRAL = "hyperoctahedral"
    BASED_HYPEROCTAHEDRAL = "based"


def generated_subgroup(gens: list[SignedPermutation]) -> frozenset[SignedPermutation]:
    size = gens[0].size
    seen = {SignedPermutation.identity(size)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


_subgroup_cache: dict[tuple[GroupFamily, int], frozenset] = {}


def _small_subgroup(fam: GroupFamily, n: int) -> frozenset[SignedPermutation]:
    key = (fam, n)
    if key not in _subgroup_cache:
        if fam is GroupFamily.DIHEDRAL:
            gens = [canonical_R(n), canonical_T(n)]
        elif fam is GroupFamily.CYCLIC:
            gens = [canonical_T(n)]
        else:
            gens = [canonical_R(n)]
        _subgroup_cache[key] = generated_subgroup(gens)
    return _subgroup_cache[key]


def is_member(g: SignedPermutation, fam: GroupFamily) -> bool:
    if fam is GroupFamily.HYPEROCTAHEDRAL:
        return True
    if fam is GroupFamily.BASED_HYPEROCTAHEDRAL:
        return g.sigma[0] == 0 and not g.labels[0]
    if fam is GroupFamily.SYMMETRIC:
        return not any(g.labels)
    return g in _small_subgroup(fam, g.n)


def order(fam: GroupFamily, n: int) -> int:
    size = n + 1
    if fam is GroupFamily.HYPEROCTAHEDRAL:
        return 2**size * math.factorial(size)
    if fam is GroupFamily.BASED_HYPEROCTAHEDRAL:
        return 2**n * math.factorial(n)
    if fam is GroupFamily.SYMMETRIC:
        return math.factorial(size)
    return len(_small_subgroup(fam, n))


def _all_labels(size: int) -> Iterator[tuple[bool, ...]]:
    return itertools.product((False, True), repeat=size)


def enumerate_group(fam: GroupFamily, n: int, cap: int = DEFAULT_CAP) -> list[SignedPermutation]:
    """All elements of the family's group on ``[n]``, in a fixed order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if fam in (GroupFamily.REFLEXIVE, GroupFamily.CYCLIC, GroupFamily.DIHEDRAL):
        return sorted(_small_subgroup(fam, n))
    total = order(fam, n)
    if total > cap:
        raise CapExceeded(f"|{fam.value} group on [{n}]| = {total} exceeds cap {cap}; lower n")
    size = n + 1
    out = []
    if fam is GroupFamily.BASED_HYPEROCTAHEDRAL:
        for rest in itertools.permutations(range(1, size)):
            for z in _all_labels(n):
                out.append(SignedPermutation((0,) + rest, (False,) + z))
    elif fam is GroupFamily.SYMMETRIC:
        for p in itertools.permutations(range(size)):
            out.append(SignedPermutation(p, (False,) * size))
    else:
        for p in itertools.permutations(range(size)):
            for z in _all_labels(size):
                out.append(SignedPermutation(p, z))
    return out


def random_element(n: int, rng: random.Random) -> SignedPermutation:
    p = list(range(n + 1))
    rng.shuffle(p)
    return SignedPermutation(tuple(p), tuple(rng.random() < 0.5 for _ in range(n + 1)))
