"""Normal forms for the decompositions of IF(as) and IGamma(as).

A decomposition ``C = A o B`` means every morphism of ``C`` is uniquely a
``B``-morphism followed by an ``A``-morphism; every factorisation here
returns its parts in that order, ``(A-part, B-part)``.

* ``IF(as) = Delta o H``       -- :func:`factor_delta_h`
* ``H = D o H+``               -- :func:`factor_d_hplus`
* ``IGamma(as) = DeltaR^op o H+`` -- :func:`factor_reflexive`

The right module ``B`` has ``B([n])`` free on ``H+_{n+1}`` (a groupoid has no
morphisms between distinct objects).  A morphism ``f: [n] -> [m]`` acts on
``h in H+_{m+1}`` by pre-composition followed by projection: factor
``h o f = rho o h'`` with ``rho`` in ``Delta D`` and ``h'`` in ``H+_{n+1}``,
and return ``h'``.  The projection is what keeps the result inside the
groupoid; uniqueness of the factorisation makes it a right action.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotBased, SizeMismatch
from .groups import GroupFamily, SignedPermutation, canonical_R, compose as gcompose, is_member
from .ncsets import NCMorphism, compose, embed_delta, embed_group


@dataclass(frozen=True)
class DeltaHFactorization:
    phi: tuple[int, ...]
    target_m: int
    g: SignedPermutation

    def reconstruct(self) -> NCMorphism:
        return compose(embed_delta(self.phi, self.target_m), embed_group(self.g))


@dataclass(frozen=True)
class DHplusFactorization:
    d: SignedPermutation
    h: SignedPermutation

    def reconstruct(self) -> SignedPermutation:
        return gcompose(self.d, self.h)


@dataclass(frozen=True)
class ReflexiveFactorization:
    rho: NCMorphism
    h: SignedPermutation
    # the (phi, d) pieces that make up rho
    phi: tuple[int, ...]
    d: SignedPermutation

    def reconstruct(self) -> NCMorphism:
        return compose(self.rho, embed_group(self.h))


def factor_delta_h(f: NCMorphism) -> DeltaHFactorization:
    # concatenating the fibres in target order lists the source in the order
    # the group part must put it; phi then collapses each block
    sigma = [0] * (f.source_n + 1)
    labels = [False] * (f.source_n + 1)
    phi = []
    pos = 0
    for i, p in enumerate(f.preimages):
        for j, z in p:
            sigma[j] = pos
            labels[pos] = z
            phi.append(i)
            pos += 1
    return DeltaHFactorization(tuple(phi), f.target_m, SignedPermutation(tuple(sigma), tuple(labels)))


def _rotation(n: int, k: int) -> SignedPermutation:
    return SignedPermutation(tuple((i + k) % (n + 1) for i in range(n + 1)), (False,) * (n + 1))


def factor_d_hplus(g: SignedPermutation) -> DHplusFactorization:
    """Split ``g`` as a dihedral element after a based one.

    With ``k = sigma(0)``: if ``z_k = 1`` then ``g = T^k o h`` where ``h`` has
    labels ``(z_k, z_{k+1}, ..., z_{k-1})`` and permutation ``tau^{-k} sigma``.
    Otherwise ``g = R o T^{n-k} o h`` with labels ``(1, t z_{k-1}, ..., t z_{k+1})``
    and permutation ``tau^{-(n-k)} r sigma``.
    """
    n = g.n
    size = n + 1
    k = g.sigma[0]
    z = g.labels
    if not z[k]:
        d = _rotation(n, k)
        labels = tuple(z[(i + k) % size] for i in range(size))
        sigma = tuple((s - k) % size for s in g.sigma)
    else:
        d = gcompose(canonical_R(n), _rotation(n, n - k))
        labels = tuple(not z[(k - i) % size] for i in range(size))
        sigma = tuple((n - s - (n - k)) % size for s in g.sigma)
    return DHplusFactorization(d, SignedPermutation(sigma, labels))


def factor_reflexive(f: NCMorphism) -> ReflexiveFactorization:
    if not f.is_based:
        raise NotBased(f"f(0) = {f(0)}, expected 0")
    dh = factor_delta_h(f)
    dhp = factor_d_hplus(dh.g)
    rho = compose(embed_delta(dh.phi, dh.target_m), embed_group(dhp.d))
    assert rho.is_based, "Delta D part of a based morphism must be based"
    return ReflexiveFactorization(rho, dhp.h, dh.phi, dhp.d)


def is_reflexive_op(f: NCMorphism) -> bool:
    """Membership in DeltaR^op, i.e. in ``Delta D`` and based."""
    if not f.is_based:
        return False
    return is_member(factor_delta_h(f).g, GroupFamily.DIHEDRAL)


def b_module_action(f: NCMorphism, h: SignedPermutation) -> SignedPermutation:
    """``B(f)(h)`` for ``f: [n] -> [m]`` and ``h`` in ``H+_{m+1}``; lands in ``H+_{n+1}``."""
    if h.n != f.target_m:
        raise SizeMismatch(f"h acts on [{h.n}] but f lands in [{f.target_m}]")
    if not is_member(h, GroupFamily.BASED_HYPEROCTAHEDRAL):
        raise ValueError(f"{h} is not in H+")
    g = factor_delta_h(compose(embed_group(h), f)).g
    return factor_d_hplus(g).h


def b_module_apply(f: NCMorphism, element: dict) -> dict:
    """Linear extension of :func:`b_module_action` to ``{h: coefficient}``."""
    out: dict = {}
    for h, c in element.items():
        img = b_module_action(f, h)
        s = out.get(img, 0) + c
        if s == 0:
            out.pop(img, None)
        else:
            out[img] = s
    return out

