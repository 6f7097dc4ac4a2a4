"""Brute-force reference computations, written with explicit loops over
vectors so they share no code path with the vectorized engine."""

import itertools
import math

import numpy as np


def unit(n, i):
    e = np.zeros(n)
    e[i] = 1.0
    return e


def bracket(c, x, y):
    n = len(x)
    out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if x[i] and y[j]:
                for k in range(n):
                    out[k] += x[i] * y[j] * c[i][j][k]
    return out


def jacobi_sum(c, i, j, l):
    """Cyclic sum [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] as a vector."""
    n = len(c)
    ei, ej, el = unit(n, i), unit(n, j), unit(n, l)
    return bracket(c, bracket(c, ei, ej), el) + bracket(c, bracket(c, ej, el), ei) + bracket(c, bracket(c, el, ei), ej)


def max_jacobi(c):
    n = len(c)
    return max(
        (float(np.max(np.abs(jacobi_sum(c, i, j, l)))) for i, j, l in itertools.product(range(n), repeat=3)),
        default=0.0,
    )


def koszul(c):
    """g(D_{e_i} e_j, e_k) from 2g(D_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)."""
    n = len(c)
    out = np.zeros((n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        X, Y, Z = unit(n, i), unit(n, j), unit(n, k)
        out[i, j, k] = 0.5 * (bracket(c, X, Y) @ Z - bracket(c, Y, Z) @ X + bracket(c, Z, X) @ Y)
    return out


def mean_curvature_trace(c, leaf, normal):
    """kappa(e_x) = sum_a g(D_{e_a} e_a, e_x) = sum_a g([e_x, e_a], e_a) for an orthonormal leaf frame."""
    n = len(c)
    return np.array([sum(bracket(c, unit(n, x), unit(n, a))[a] for a in leaf) for x in normal])


def quotient_structure(c, normal):
    """Brackets of the quotient algebra g / L in the normal frame (L an ideal)."""
    q = len(normal)
    return [[[c[normal[x]][normal[y]][normal[z]] for z in range(q)] for y in range(q)] for x in range(q)]


def standard_riemann(cq):
    """Levi-Civita curvature of a left-invariant metric with orthonormal frame.

    Returns ``Rm[x, y, z, w] = g(R(e_x, e_y) e_z, e_w)`` with the usual sign
    ``R(X, Y) = [D_X, D_Y] - D_[X, Y]``.
    """
    q = len(cq)
    G = koszul(cq)

    def D(x_vec, y_vec):
        out = np.zeros(q)
        for i in range(q):
            for j in range(q):
                out += x_vec[i] * y_vec[j] * G[i, j]
        return out

    rm = np.zeros((q, q, q, q))
    for x, y, z in itertools.product(range(q), repeat=3):
        X, Y, Z = unit(q, x), unit(q, y), unit(q, z)
        r = D(X, D(Y, Z)) - D(Y, D(X, Z)) - D(bracket(cq, X, Y), Z)
        rm[x, y, z] = r
    return rm


def transverse_curvature_via_quotient(c, normal):
    """For a leaf that is an ideal, R^Q(x,y,z,w) = -Rm_quotient(x,y,z,w) under
    the engine's sign (nabla_Y nabla_X first)."""
    rm = standard_riemann(quotient_structure(c, normal))
    ric = np.zeros((len(normal),) * 2)
    for y, z, x in itertools.product(range(len(normal)), repeat=3):
        # Ric(Y, Z) = sum_x g(R(e_x, Y) Z, e_x)
        ric[y, z] += rm[x, y, z, x]
    return -rm, ric


def divergence_sym2_loops(nabla_rows, v):
    """(div v)(e_y) = sum_x (nabla_x v)(e_x, e_y) via the Leibniz rule, for constant v.

    ``nabla_rows[x][y]`` is the vector nabla_{e_x} e_y over the normal frame.
    """
    q = len(v)
    out = np.zeros(q)
    for y in range(q):
        total = 0.0
        for x in range(q):
            dxx = nabla_rows[x][x]
            dxy = nabla_rows[x][y]
            total -= sum(dxx[k] * v[k][y] for k in range(q))
            total -= sum(dxy[k] * v[x][k] for k in range(q))
        out[y] = total
    return out


def carriere_log_rho(trace=3):
    return math.log((trace + math.sqrt(trace * trace - 4)) / 2)
