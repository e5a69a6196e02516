"""Independent brute-force oracles.

Nothing here imports the package.  Matrices are plain nested lists, ranks come
from sympy over Q and from a small elimination routine over F_p.
"""

from itertools import product

import sympy


def rank_q(rows, ncols):
    if not rows or not ncols:
        return 0
    return sympy.Matrix(rows).rank()


def rank_mod_p(rows, ncols, p):
    m = [[v % p for v in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[r])]
        r += 1
    return r


def betti(dims, boundaries, rank):
    """``boundaries[n]`` maps degree n to n-1 (dense rows, dims[n-1] x dims[n])."""
    out = []
    for n in range(len(dims) - 1):
        r_out = rank(boundaries[n], dims[n]) if n else 0
        r_in = rank(boundaries[n + 1], dims[n + 1])
        out.append(dims[n] - r_out - r_in)
    return out


# --- ground ring k: every chain group A^{(x) q+1} is one-dimensional ------


def _b(q):
    return 1 if q % 2 == 0 else 0        # sum_{i=0}^{q} (-1)^i


def _bprime(q):
    return 1 if q % 2 == 1 else 0        # sum_{i=0}^{q-1} (-1)^i


def _t(q):
    return -1 if q % 2 else 1


def _norm(q):
    return sum(_t(q) ** i for i in range(q + 1))


def _y(q):
    return -1 if (q * (q + 1) // 2) % 2 else 1


def _total(top, vertical, horizontal, columns_from=0):
    """Dense total complex of a first-quadrant bicomplex with 1-dim cells."""
    cells = {n: [(c, n - c) for c in range(columns_from, n + 1)] for n in range(top + 1)}
    dims = [len(cells[n]) for n in range(top + 1)]
    bds = [[]]
    for n in range(1, top + 1):
        tgt = {cell: i for i, cell in enumerate(cells[n - 1])}
        mat = [[0] * dims[n] for _ in range(dims[n - 1])]
        for j, (c, q) in enumerate(cells[n]):
            if q >= 1:
                mat[tgt[(c, q - 1)]][j] += vertical(c, q)
            if c >= 1 and (c - 1, q) in tgt:
                mat[tgt[(c - 1, q)]][j] += horizontal(c, q)
        bds.append(mat)
    return dims, bds


def ground_hochschild(top):
    dims = [1] * (top + 1)
    bds = [[]] + [[[_b(q)]] for q in range(1, top + 1)]
    return dims, bds


def ground_reflexive(top):
    return _total(top, lambda c, q: (-1) ** c * _b(q),
                  lambda c, q: 1 - _y(q) if c % 2 else 1 + _y(q))


def ground_cyclic(top):
    return _total(top, lambda c, q: _b(q) if c % 2 == 0 else -_bprime(q),
                  lambda c, q: 1 - _t(q) if c % 2 else _norm(q))


def square_is_zero(dims, bds):
    for n in range(2, len(dims)):
        a, b = bds[n - 1], bds[n]
        for i in range(dims[n - 2]):
            for j in range(dims[n]):
                if sum(a[i][k] * b[k][j] for k in range(dims[n - 1])):
                    return False
    return True


# --- dense Hochschild complex of a small algebra ---------------------------


def hochschild_dense(table, dim, top):
    """``table[(i, j)] = {k: c}`` structure constants; returns dims and dense b."""
    bases = [list(product(range(dim), repeat=q + 1)) for q in range(top + 1)]
    index = [{t: i for i, t in enumerate(bs)} for bs in bases]
    bds = [[]]
    for q in range(1, top + 1):
        mat = [[0] * len(bases[q]) for _ in range(len(bases[q - 1]))]
        for col, t in enumerate(bases[q]):
            for i in range(q + 1):
                sign = -1 if i % 2 else 1
                if i < q:
                    left, right = t[i], t[i + 1]
                    for k, c in table[(left, right)].items():
                        new = t[:i] + (k,) + t[i + 2:]
                        mat[index[q - 1][new]][col] += sign * c
                else:
                    for k, c in table[(t[q], t[0])].items():
                        new = (k,) + t[1:q]
                        mat[index[q - 1][new]][col] += sign * c
        bds.append(mat)
    return [len(b) for b in bases], bds


# k[x]/(x^2) with basis 1, x
DUAL_NUMBERS = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
# k[C2] with basis e, g
GROUP_C2 = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}
