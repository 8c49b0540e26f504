"""Independent reference implementations used only by the tests.

Nothing here imports the library's arithmetic; everything works on plain
integer lists so it can check the library from the outside.
"""

from __future__ import annotations

import itertools

import numpy as np


# -- polynomials as lists -----------------------------------------------------

def pmul(a, b, n, p):
    out = [0] * n
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if i + j < n:
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def padd(a, b, n, p):
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x + y) % p for x, y in zip(a[:n], b[:n])]


def psub(a, b, n, p):
    return padd(a, [(-x) % p for x in b], n, p)


def ppow(a, e, n, p):
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = pmul(out, a, n, p)
    return out


def naive_inverse(a, n, p):
    """Inverse mod x^n by solving the triangular system term by term."""
    inv0 = pow(a[0], -1, p)
    u = [0] * n
    u[0] = inv0
    for i in range(1, n):
        acc = sum(a[j] * u[i - j] for j in range(1, min(i, len(a) - 1) + 1))
        u[i] = (-acc * inv0) % p
    return u


def share(rs, s, y, k, n, p):
    """sum_j r_j y^j + s y^(k-1) mod x^n, straight from the definition."""
    out = [0] * n
    for j in range(k - 1):
        out = padd(out, pmul(rs[j], ppow(y, j, n, p), n, p), n, p)
    return padd(out, pmul(s, ppow(y, k - 1, n, p), n, p), n, p)


# -- codes from string formatting ----------------------------------------------

def gamma_str(t):
    b = bin(t)[2:]
    return "0" * (len(b) - 1) + b


def delta_str(t):
    b = bin(t)[2:]
    return gamma_str(len(b)) + b[1:]


def m1_str(t, p):
    d = np.base_repr(t, p)
    return "0" * (len(d) - 1) + d


def m2_str(t, p):
    d = np.base_repr(t, p)
    return m1_str(len(d), p) + d


def code_str(name, t, p):
    return {"gamma": lambda: gamma_str(t), "delta": lambda: delta_str(t),
            "m1": lambda: m1_str(t, p), "m2": lambda: m2_str(t, p)}[name]()


# -- linear algebra over F_p ----------------------------------------------------

def rref(M, p):
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    M = [list(r) for r in M]
    rows, cols = len(M), len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def solve_fp(A, b, p):
    """One solution of A u = b over F_p plus the free columns, or None."""
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, p)
    if n in pivots:
        return None
    u = [0] * n
    for row, c in zip(R, pivots):
        u[c] = row[n]
    free = [c for c in range(n) if c not in pivots]
    return u, free, R, pivots


def flat_reconstruct(ys, zs, k, ell, p):
    """Secret from k shares by flattening the share system to F_p.

    Unknowns: the first n_max coefficients of each r_j, then ell
    coefficients of s.  Returns s as a list, or None if s is not pinned
    down by the shares.
    """
    n_max = max(len(z) for z in zs)
    A, b = [], []
    for y, z in zip(ys, zs):
        n = len(z)
        powers = [ppow(y, j, n, p) for j in range(k)]
        for i in range(n):
            row = []
            for j in range(k - 1):
                row += [powers[j][i - c] if i - c >= 0 else 0 for c in range(n_max)]
            row += [powers[k - 1][i - c] if i - c >= 0 else 0 for c in range(ell)]
            A.append(row)
            b.append(z[i])
    sol = solve_fp(A, b, p)
    if sol is None:
        return None
    u, free, R, pivots = sol
    s_cols = range((k - 1) * n_max, (k - 1) * n_max + ell)
    # s is determined iff no free column feeds any s pivot row
    for row, c in zip(R, pivots):
        if c in s_cols and any(row[f] for f in free):
            return None
    if any(c in s_cols for c in free):
        return None
    return [u[c] for c in s_cols]


# -- exhaustive search --------------------------------------------------------

def brute_divide(f, h, kmod, ell, p):
    """All g of length ell with f g = h mod x^kmod."""
    out = []
    for g in itertools.product(range(p), repeat=ell):
        if pmul(f, list(g), kmod, p) == list(h[:kmod]):
            out.append(list(g))
    return out


def brute_distribution(ys, s, k, ell, p):
    """Coalition share-tuple counts by running over every randomness vector."""
    ns = [(len(y) - 1) * (k - 1) + ell for y in ys]
    n_max = max(ns)
    counts = {}
    for flat in itertools.product(range(p), repeat=(k - 1) * n_max):
        rs = [list(flat[j * n_max:(j + 1) * n_max]) for j in range(k - 1)]
        key = tuple("".join(map(str, share(rs, s, y, k, n, p))) for y, n in zip(ys, ns))
        counts[key] = counts.get(key, 0) + 1
    return counts


def sign_free_f2(ys, zs, k, ell):
    """Binary reconstruction with no cofactor signs, solved by exhaustive search."""
    p = 2
    m = len(ys)
    width = max(len(y) for y in ys)
    ext = [list(y) + [0] * (width - len(y)) for y in ys]
    L = {}
    for u, v in itertools.combinations(range(m), 2):
        d = psub(ext[u], ext[v], width, p)
        L[u, v] = next(i for i, c in enumerate(d) if c)
    alpha = min(len(zs[q]) + sum(x for (u, v), x in L.items() if q not in (u, v)) for q in range(m))
    denom = [1] + [0] * (alpha - 1)
    for u, v in itertools.combinations(range(m), 2):
        denom = pmul(denom, psub(ext[u], ext[v], width, p), alpha, p)
    numer = [0] * alpha
    for q in range(m):
        h = [1] + [0] * (alpha - 1)
        for u, v in itertools.combinations(range(m), 2):
            if q not in (u, v):
                h = pmul(h, psub(ext[u], ext[v], width, p), alpha, p)
        # Z_q is only known to len(zs[q]); h has enough x-factors to cover it
        numer = padd(numer, pmul(h, list(zs[q]), alpha, p), alpha, p)
    sols = brute_divide(denom, numer, alpha, ell, p)
    return sols
