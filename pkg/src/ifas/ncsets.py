"""Involutive non-commutative sets.

A morphism ``f: [n] -> [m]`` is stored preimage-first: for every target point
``i`` a tuple of ``(source, label)`` pairs listed in their total order.  The
underlying set map is derived from that data.

Text format, one morphism per line::

    n -> m ; 0: j+ j- ... ; 1: ... ; m: ...

``+`` is the trivial label, ``-`` is ``t``, and ``.`` stands for an empty
preimage.  A caret between element and sign (``j^+``) is accepted on input.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NotMonotone, ParseError, SizeMismatch
from .groups import SignedPermutation

Entry = tuple[int, bool]
Preimage = tuple[Entry, ...]


def star_action(a: bool, p: Sequence[Entry]) -> Preimage:
    """``t * {j1 < ... < jr} = {jr < ... < j1}`` with every label flipped."""
    if not a:
        return tuple(p)
    return tuple((j, not z) for j, z in reversed(p))


@dataclass(frozen=True)
class NCMorphism:
    source_n: int
    target_m: int
    preimages: tuple[Preimage, ...]

    def __post_init__(self):
        pre = tuple(tuple((int(j), bool(z)) for j, z in p) for p in self.preimages)
        object.__setattr__(self, "preimages", pre)
        if len(pre) != self.target_m + 1:
            raise ValueError(f"need {self.target_m + 1} preimages, got {len(pre)}")
        seen = sorted(j for p in pre for j, _ in p)
        if seen != list(range(self.source_n + 1)):
            raise ValueError(f"preimages do not partition [0..{self.source_n}]: {pre}")

    @classmethod
    def identity(cls, n: int) -> "NCMorphism":
        return cls(n, n, tuple(((i, False),) for i in range(n + 1)))

    @property
    def underlying_map(self) -> tuple[int, ...]:
        f = [0] * (self.source_n + 1)
        for i, p in enumerate(self.preimages):
            for j, _ in p:
                f[j] = i
        return tuple(f)

    def __call__(self, j: int) -> int:
        for i, p in enumerate(self.preimages):
            for k, _ in p:
                if k == j:
                    return i
        raise IndexError(j)

    def labels(self) -> tuple[bool, ...]:
        """Label carried by each source element."""
        out = [False] * (self.source_n + 1)
        for p in self.preimages:
            for j, z in p:
                out[j] = z
        return tuple(out)

    @property
    def is_based(self) -> bool:
        return any(j == 0 for j, _ in self.preimages[0])

    def __mul__(self, other: "NCMorphism") -> "NCMorphism":
        return compose(self, other)

    def render(self) -> str:
        return format_morphism(self)

    def __str__(self):
        return format_morphism(self)


def compose(g: NCMorphism, f: NCMorphism) -> NCMorphism:
    """``g o f``: ordered disjoint union of ``alpha * f^{-1}(j)`` over ``j^alpha`` in ``g^{-1}(i)``."""
    if f.target_m != g.source_n:
        raise SizeMismatch(f"cannot compose [{g.source_n}]->[{g.target_m}] "
                           f"after [{f.source_n}]->[{f.target_m}]")
    fp = f.preimages
    pre = []
    for p in g.preimages:
        block: list[Entry] = []
        for j, a in p:
            block.extend(star_action(a, fp[j]))
        pre.append(tuple(block))
    return NCMorphism(f.source_n, g.target_m, tuple(pre))


# ---------------------------------------------------------------------------
# embeddings


def embed_group(g: SignedPermutation) -> NCMorphism:
    """Bijection ``j -> sigma(j)`` carrying the sign ``z[sigma(j)]``."""
    pre = [()] * g.size
    for j in range(g.size):
        i, z = g(j)
        pre[i] = ((j, z),)
    return NCMorphism(g.n, g.n, tuple(pre))


def group_of(f: NCMorphism) -> SignedPermutation:
    """Inverse of :func:`embed_group` on bijective morphisms."""
    if f.source_n != f.target_m or any(len(p) != 1 for p in f.preimages):
        raise ValueError("not a bijection")
    sigma = [0] * (f.source_n + 1)
    labels = [False] * (f.source_n + 1)
    for i, ((j, z),) in enumerate(f.preimages):
        sigma[j] = i
        labels[i] = z
    return SignedPermutation(tuple(sigma), tuple(labels))


def is_monotone(phi: Sequence[int], m: int) -> bool:
    return all(0 <= x <= m for x in phi) and all(a <= b for a, b in zip(phi, phi[1:]))


def embed_delta(phi: Sequence[int], m: int) -> NCMorphism:
    """Order-preserving ``phi: [n] -> [m]`` with increasing, unlabelled preimages."""
    phi = tuple(phi)
    if not is_monotone(phi, m):
        raise NotMonotone(f"{phi} is not an order-preserving map into [0..{m}]")
    pre = [[] for _ in range(m + 1)]
    for j, i in enumerate(phi):
        pre[i].append((j, False))
    return NCMorphism(len(phi) - 1, m, tuple(tuple(p) for p in pre))


def embed_reflection(n: int) -> NCMorphism:
    """The based reflection: ``0 <- {0^t}`` and ``i <- {(n - i + 1)^t}`` for ``i > 0``."""
    pre = [((0, True),)] + [((n - i + 1, True),) for i in range(1, n + 1)]
    return NCMorphism(n, n, tuple(pre))


def loday_face_morphism(i: int, n: int) -> NCMorphism:
    """The face ``d_i: [n] -> [n-1]`` of the simplicial Loday object.

    ``d_i`` multiplies slots ``i`` and ``i + 1`` for ``i < n``; ``d_n`` moves the
    last slot in front of slot 0, so its preimage of 0 is ``{n < 0}``.
    """
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"no face d_{i} on [{n}]")
    if i == n:
        pre = [((n, False), (0, False))] + [((j, False),) for j in range(1, n)]
        return NCMorphism(n, n - 1, tuple(pre))
    phi = [j if j <= i else j - 1 for j in range(n + 1)]
    return embed_delta(phi, n - 1)


def loday_degeneracy_morphism(j: int, n: int) -> NCMorphism:
    """The degeneracy ``s_j: [n] -> [n+1]`` inserting a unit after slot ``j``."""
    if not 0 <= j <= n:
        raise ValueError(f"no degeneracy s_{j} on [{n}]")
    phi = [k if k <= j else k + 1 for k in range(n + 1)]
    return embed_delta(phi, n + 1)


# ---------------------------------------------------------------------------
# categories


class CategoryTag(enum.Enum):
    FAS = "Fas"
    IFAS = "IFas"
    GAMMA_AS = "GammaAs"
    IGAMMA_AS = "IGammaAs"
    DELTA = "Delta"
    DELTA_R_OP = "DeltaR_op"


def is_in(f: NCMorphism, c: CategoryTag) -> bool:
    labelled = any(f.labels())
    if c is CategoryTag.IFAS:
        return True
    if c is CategoryTag.FAS:
        return not labelled
    if c is CategoryTag.GAMMA_AS:
        return not labelled and f.is_based
    if c is CategoryTag.IGAMMA_AS:
        return f.is_based
    if c is CategoryTag.DELTA:
        if labelled:
            return False
        if any(list(p) != sorted(p) for p in f.preimages):
            return False
        return is_monotone(f.underlying_map, f.target_m)
    # decided by the unique factorisation: based, with a dihedral group part
    from .factorize import is_reflexive_op
    return is_reflexive_op(f)


# ---------------------------------------------------------------------------
# enumeration


def hom_size(n: int, m: int) -> int:
    """``|Hom_{IF(as)}([n], [m])|`` by direct count over set maps."""
    total = 0
    for f in itertools.product(range(m + 1), repeat=n + 1):
        w = 1
        for i in range(m + 1):
            w *= math.factorial(f.count(i))
        total += w
    return total * 2 ** (n + 1)


def enumerate_hom(n: int, m: int, based: bool = False, labelled: bool = True,
                  cap: int = 10**6) -> Iterator[NCMorphism]:
    """Every morphism ``[n] -> [m]``: each set map, each ordering of each fibre,
    each labelling.  Independent of any factorisation."""
    from .errors import CapExceeded

    if hom_size(n, m) > cap:
        raise CapExceeded(f"|Hom([{n}], [{m}])| = {hom_size(n, m)} exceeds cap {cap}")
    label_choices = (False, True) if labelled else (False,)
    for fmap in itertools.product(range(m + 1), repeat=n + 1):
        if based and fmap[0] != 0:
            continue
        fibres = [[j for j in range(n + 1) if fmap[j] == i] for i in range(m + 1)]
        for orders in itertools.product(*(itertools.permutations(fb) for fb in fibres)):
            for labels in itertools.product(label_choices, repeat=n + 1):
                yield NCMorphism(n, m, tuple(tuple((j, labels[j]) for j in o) for o in orders))


def random_morphism(n: int, m: int, rng: random.Random, based: bool = False) -> NCMorphism:
    fmap = [rng.randrange(m + 1) for _ in range(n + 1)]
    if based:
        fmap[0] = 0
    fibres = [[j for j in range(n + 1) if fmap[j] == i] for i in range(m + 1)]
    for fb in fibres:
        rng.shuffle(fb)
    return NCMorphism(n, m, tuple(tuple((j, rng.random() < 0.5) for j in fb) for fb in fibres))


# ---------------------------------------------------------------------------
# text format


def format_morphism(f: NCMorphism) -> str:
    parts = [f"{f.source_n} -> {f.target_m}"]
    for i, p in enumerate(f.preimages):
        body = " ".join(f"{j}{'-' if z else '+'}" for j, z in p) if p else "."
        parts.append(f"{i}: {body}")
    return " ; ".join(parts)


_HEAD = re.compile(r"\s*(\d+)\s*->\s*(\d+)\s*$")
_ENTRY = re.compile(r"(\d+)\^?([+-])$")


def parse_morphism(text: str, line: int = 1) -> NCMorphism:
    """Parse one morphism line; errors report 1-based line and column."""
    raw = text.rstrip("\n")
    segments = raw.split(";")
    offsets, pos = [], 0
    for seg in segments:
        offsets.append(pos)
        pos += len(seg) + 1
    head = _HEAD.match(segments[0])
    if not head:
        raise ParseError("expected '<n> -> <m>'", line, 1)
    n, m = int(head.group(1)), int(head.group(2))
    if len(segments) - 1 != m + 1:
        raise ParseError(f"expected {m + 1} preimage blocks, found {len(segments) - 1}",
                         line, len(raw) + 1)
    pre = []
    seen: set[int] = set()
    for i, (seg, off) in enumerate(zip(segments[1:], offsets[1:])):
        label, colon, body = seg.partition(":")
        col = off + 1 + (len(label) - len(label.lstrip()))
        if not colon or label.strip() != str(i):
            raise ParseError(f"expected block '{i}:'", line, col)
        body_off = off + len(label) + 2
        entries: list[Entry] = []
        toks = [(mt.group(), mt.start()) for mt in re.finditer(r"\S+", body)]
        if len(toks) == 1 and toks[0][0] == ".":
            pre.append(())
            continue
        if not toks:
            raise ParseError("empty preimage must be written '.'", line, body_off)
        for tok, start in toks:
            c = body_off + start
            em = _ENTRY.match(tok)
            if not em:
                raise ParseError(f"bad entry {tok!r}; expected <j>+ or <j>-", line, c)
            j = int(em.group(1))
            if j > n:
                raise ParseError(f"source element {j} outside [0..{n}]", line, c)
            if j in seen:
                raise ParseError(f"source element {j} listed twice", line, c)
            seen.add(j)
            entries.append((j, em.group(2) == "-"))
        pre.append(tuple(entries))
    if len(seen) != n + 1:
        missing = sorted(set(range(n + 1)) - seen)
        raise ParseError(f"source elements {missing} have no image", line, len(raw) + 1)
    return NCMorphism(n, m, tuple(pre))


def parse_morphisms(text: str) -> list[NCMorphism]:
    """Parse a file of morphisms; blank lines and ``#`` comments are skipped."""
    out = []
    for k, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip() or ln.lstrip().startswith("#"):
            continue
        out.append(parse_morphism(ln, k))
    return out


def reflexive_generators(max_n: int) -> list[NCMorphism]:
    """Faces, degeneracies and based reflections living on objects ``[0..max_n]``."""
    gens = []
    for n in range(max_n + 1):
        gens.append(embed_reflection(n))
        gens.extend(loday_face_morphism(i, n) for i in range(n + 1) if n >= 1)
        if n < max_n:
            gens.extend(loday_degeneracy_morphism(j, n) for j in range(n + 1))
    return gens


def generate_reflexive_subcategory(max_n: int) -> frozenset[NCMorphism]:
    """Closure of :func:`reflexive_generators` under composition, by search.

    Every morphism of the reflexive category between objects of size at most
    ``max_n`` factors through objects no larger than its ends, so the closure
    restricted to ``[0..max_n]`` is complete there.
    """
    gens = reflexive_generators(max_n)
    by_source: dict[int, list[NCMorphism]] = {}
    for g in gens:
        by_source.setdefault(g.source_n, []).append(g)
    seen = {NCMorphism.identity(n) for n in range(max_n + 1)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in by_source.get(f.target_m, ()):
                h = compose(g, f)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)
