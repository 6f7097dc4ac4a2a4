"""Random foliated Lie algebras that satisfy Jacobi by construction.

Three families, all unimodular (so every invariant basic 1-form is
basic-coclosed, as on a compact quotient):

* ``two_step``: 2-step nilpotent ``V + Z`` with ``[V, V] in Z``, ``Z`` central.
  Leaves are ideals, so these are all taut.
* ``solvable``: ``a`` abelian acting diagonally on a weighted 2-step
  nilpotent ideal; weights are projected onto the trace-free subspace.
* ``rotational``: ``a`` acting on planes by (dilation + rotation) and on lines
  by dilation.  Pure-rotation generators may sit in the leaf, which gives
  Riemannian foliations whose leaves are not ideals.

Each sample is finally expressed in a random orthonormal frame adapted to
the leaf/normal split and shuffled.
"""

from __future__ import annotations

import itertools

import numpy as np

from .lie_frame import LieFrameAlgebra, change_frame, permute_frame
from .transverse import FoliationSpec, mean_curvature_form

MAX_DIM = 7
FAMILIES = ("two_step", "solvable", "rotational")


def _random_subset(rng, items, min_size=0, max_size=None):
    items = list(items)
    max_size = len(items) if max_size is None else max_size
    size = int(rng.integers(min_size, max_size + 1))
    return sorted(rng.choice(items, size=size, replace=False).tolist()) if size else []


def _haar_orthogonal(rng, m):
    if m == 0:
        return np.zeros((0, 0))
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


def _scramble(rng, c, leaf):
    """Rotate within the leaf and normal blocks, then shuffle the frame."""
    n = c.shape[0]
    leaf = sorted(leaf)
    normal = [i for i in range(n) if i not in leaf]
    o = np.zeros((n, n))
    o[np.ix_(leaf, leaf)] = _haar_orthogonal(rng, len(leaf))
    o[np.ix_(normal, normal)] = _haar_orthogonal(rng, len(normal))
    alg = change_frame(LieFrameAlgebra(c), o)
    order = rng.permutation(n)
    alg = permute_frame(alg, order)
    inverse = np.argsort(order)
    return alg, FoliationSpec.from_leaf([int(inverse[i]) for i in leaf], n)


def _nilpotent_brackets(rng, m, r, pairs_per_z=None):
    """Random ``[v_i, v_j] = sum c z`` on V of size m, Z of size r."""
    pairs = list(itertools.combinations(range(m), 2))
    out = []
    for z in range(r):
        for i, j in pairs:
            if pairs_per_z is None and rng.random() < 0.6:
                out.append((i, j, z, rng.standard_normal()))
    return out


def two_step(rng):
    m = int(rng.integers(2, MAX_DIM))
    r = int(rng.integers(1, MAX_DIM - m + 1))
    n = m + r
    V, Z = list(range(m)), list(range(m, n))
    c = np.zeros((n, n, n))
    for i, j, z, value in _nilpotent_brackets(rng, m, r):
        c[i, j, m + z] = value
        c[j, i, m + z] = -value
    if rng.random() < 0.5:
        leaf = _random_subset(rng, Z, 1)
    else:
        leaf = Z + _random_subset(rng, V, 0, m - 1)
    return _scramble(rng, c, leaf)


def _is_ideal(c, subset, ambient):
    subset = set(subset)
    for a in subset:
        for u in ambient:
            images = np.nonzero(np.abs(c[a, u]) > 0)[0]
            if any(int(k) not in subset for k in images):
                return False
    return True


def solvable(rng):
    s = int(rng.integers(1, 3))
    m = int(rng.integers(1, MAX_DIM - s + 1))
    # one pair per central element keeps the weight constraints consistent
    pairs = list(itertools.combinations(range(m), 2))
    r_max = min(len(pairs), MAX_DIM - s - m)
    r = int(rng.integers(0, r_max + 1)) if r_max > 0 else 0
    chosen = [pairs[i] for i in rng.choice(len(pairs), size=r, replace=False)] if r else []
    n = s + m + r
    T = list(range(s))
    V = list(range(s, s + m))
    Z = list(range(s + m, n))

    # weights of z are sums of its pair's weights, so trace = (row of counts) . w
    counts = np.ones(m)
    for i, j in chosen:
        counts[i] += 1
        counts[j] += 1
    w = rng.standard_normal((s, m))
    w -= np.outer(w @ counts, counts) / (counts @ counts)

    c = np.zeros((n, n, n))
    for t in range(s):
        for v in range(m):
            c[T[t], V[v], V[v]] = w[t, v]
            c[V[v], T[t], V[v]] = -w[t, v]
        for z, (i, j) in enumerate(chosen):
            c[T[t], Z[z], Z[z]] = w[t, i] + w[t, j]
            c[Z[z], T[t], Z[z]] = -(w[t, i] + w[t, j])
    for z, (i, j) in enumerate(chosen):
        value = rng.standard_normal() + np.sign(rng.standard_normal())
        c[V[i], V[j], Z[z]] = value
        c[V[j], V[i], Z[z]] = -value

    nil = V + Z
    while True:
        leaf = _random_subset(rng, nil, 1)
        if _is_ideal(c, leaf, range(n)):
            break
    return _scramble(rng, c, leaf)


def rotational(rng):
    s = int(rng.integers(1, 3))
    room = MAX_DIM - s
    blocks = []
    while room > 0 and (not blocks or rng.random() < 0.7):
        size = 2 if room >= 2 and rng.random() < 0.7 else 1
        blocks.append(size)
        room -= size
    n = MAX_DIM - room
    T = list(range(s))
    starts = np.cumsum([s] + blocks[:-1]).tolist()

    pure = [t for t in T if rng.random() < 0.4]
    c = np.zeros((n, n, n))
    for t in T:
        dil = np.zeros(len(blocks)) if t in pure else rng.standard_normal(len(blocks))
        sizes = np.array(blocks, dtype=float)
        if t not in pure:
            dil -= (dil @ sizes) / (sizes @ sizes) * sizes
        for b, (start, size) in enumerate(zip(starts, blocks)):
            act = dil[b] * np.eye(size)
            if size == 2:
                theta = rng.standard_normal()
                act = act + theta * np.array([[0.0, -1.0], [1.0, 0.0]])
            idx = list(range(start, start + size))
            # [t, e_col] = sum_row act[row, col] e_row
            for ci, col in enumerate(idx):
                for ri, row in enumerate(idx):
                    c[t, col, row] = act[ri, ci]
                    c[col, t, row] = -act[ri, ci]

    block_sets = [list(range(st, st + sz)) for st, sz in zip(starts, blocks)]
    while True:
        chosen = [b for b in block_sets if rng.random() < 0.5]
        leaf = sorted(_random_subset(rng, pure) + [i for b in chosen for i in b])
        if 0 < len(leaf) < n:
            break
    return _scramble(rng, c, leaf)


def random_foliated_algebra(rng, family: str | None = None):
    """Draw ``(algebra, foliation)``; nontaut samples have ``|kappa_b| >= 0.05``."""
    if family is None:
        family = FAMILIES[int(rng.integers(len(FAMILIES)))]
    make = {"two_step": two_step, "solvable": solvable, "rotational": rotational}[family]
    while True:
        alg, fol = make(rng)
        norm = float(np.linalg.norm(mean_curvature_form(alg, fol)))
        # keep clear of the tolerance band where the tautness verdict is ill-conditioned
        if norm < 1e-10 or norm >= 0.05:
            return alg, fol
