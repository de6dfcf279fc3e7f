"""Restricted roots, Hecke parameters and semismallness of the real Springer map.

Restricted roots are computed numerically: a basis of the real Lie algebra
and a maximal split abelian subspace ``a`` are written down explicitly, the
operators ``ad(H)`` for ``H`` in ``a`` are diagonalized together, and the
dimensions of the joint eigenspaces are the multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import UnsupportedForm
from .ks import conjugate, partitions

__all__ = [
    "HECKE_FAMILIES",
    "RestrictedRootData",
    "HeckePresentation",
    "restricted_roots",
    "hecke_parameters",
    "semismall_check_gl",
    "springer_fiber_dim_numeric",
]

HECKE_FAMILIES = ("gl_split", "sl_split", "sl_complex", "su_pq")


@dataclass(frozen=True, eq=False)
class RestrictedRootData:
    family: str
    n: int
    p: int | None
    roots: np.ndarray          # rows: root functionals on the basis of a
    multiplicities: tuple
    simple: tuple              # indices into roots
    rank: int

    def multiplicity_of(self, alpha) -> int:
        for r, m in zip(self.roots, self.multiplicities):
            if np.allclose(r, alpha, atol=1e-8):
                return m
        return 0

    def is_reduced(self) -> bool:
        return not any(self.multiplicity_of(2 * r) for r in self.roots)

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "p": self.p,
                "roots": self.roots.tolist(), "multiplicities": list(self.multiplicities),
                "simple": list(self.simple), "rank": self.rank,
                "reduced": self.is_reduced()}


@dataclass(frozen=True)
class HeckePresentation:
    generators: tuple
    d: tuple
    braid: tuple               # Coxeter matrix rows
    kind: str

    def relations(self) -> list:
        out = [f"(T_{s} - 1)(T_{s} {'+' if d % 2 == 0 else '-'} 1) = 0"
               for s, d in zip(self.generators, self.d)]
        m = len(self.generators)
        for i in range(m):
            for j in range(i + 1, m):
                k = self.braid[i][j]
                si, sj = self.generators[i], self.generators[j]
                lhs = " ".join(f"T_{si if t % 2 == 0 else sj}" for t in range(k))
                rhs = " ".join(f"T_{sj if t % 2 == 0 else si}" for t in range(k))
                out.append(f"{lhs} = {rhs}")
        return out

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "d": list(self.d),
                "braid": [list(r) for r in self.braid], "kind": self.kind,
                "relations": self.relations()}


def _E(n, i, j):
    A = np.zeros((n, n), dtype=complex)
    A[i, j] = 1
    return A


def _algebra(family: str, n: int, p: int | None) -> tuple:
    """Real basis of the Lie algebra and a basis of ``a``."""
    if family in ("gl_split", "sl_split"):
        basis = [_E(n, i, j) for i in range(n) for j in range(n) if i != j]
        diag = [_E(n, i, i) for i in range(n)]
        if family == "sl_split":
            diag = [_E(n, i, i) - _E(n, i + 1, i + 1) for i in range(n - 1)]
        return basis + diag, diag
    if family == "sl_complex":
        off = [_E(n, i, j) for i in range(n) for j in range(n) if i != j]
        diag = [_E(n, i, i) - _E(n, i + 1, i + 1) for i in range(n - 1)]
        basis = off + [1j * A for A in off] + diag + [1j * A for A in diag]
        return basis, diag
    if family == "su_pq":
        q = n - p
        if p > q:
            raise UnsupportedForm("su_pq is tabulated for p <= q")
        D = np.diag(np.concatenate([np.ones(p), -np.ones(q)]))
        # real basis of u(p,q): X with X^+ D + D X = 0
        cand = []
        for i in range(n):
            for j in range(n):
                for c in (1, 1j):
                    A = c * _E(n, i, j)
                    cand.append(0.5 * (A - D @ A.conj().T @ D))
        V = np.array([np.concatenate([A.real.ravel(), A.imag.ravel()]) for A in cand])
        trace_row = np.concatenate([np.eye(n).ravel(), np.zeros(n * n)])
        trace_im = np.concatenate([np.zeros(n * n), np.eye(n).ravel()])
        # restrict to trace zero
        P = np.eye(2 * n * n) - np.outer(trace_im, trace_im) / n - np.outer(trace_row, trace_row) / n
        V = V @ P
        _, s, vh = np.linalg.svd(V)
        r = int(np.sum(s > 1e-10 * s[0]))
        basis = [(w[:n * n] + 1j * w[n * n:]).reshape(n, n) for w in vh[:r]]
        a = [_E(n, j, p + j) + _E(n, p + j, j) for j in range(p)]
        return basis, a
    raise UnsupportedForm(f"restricted roots not tabulated for {family!r}")


def restricted_roots(family: str, n: int, p: int | None = None, seed: int = 0) -> RestrictedRootData:
    """Restricted root system and multiplicities of a real form.

    Parameters
    ----------
    family : {"gl_split", "sl_split", "sl_complex", "su_pq"}
        ``sl_complex`` is ``sl_n(C)`` viewed as a real Lie algebra.
    n : int
    p : int, optional
        Signature for ``su_pq`` (``p <= n - p``).
    seed : int
        Seed for the generic element used to separate joint eigenspaces.

    Raises
    ------
    UnsupportedForm
    """
    if family not in HECKE_FAMILIES:
        raise UnsupportedForm(f"restricted roots not tabulated for {family!r}")
    if family == "su_pq" and (p is None or not 0 <= p <= n):
        raise UnsupportedForm("su_pq needs a signature p")
    basis, a = _algebra(family, n, p)
    if not a:
        return RestrictedRootData(family, n, p, np.zeros((0, 0)), (), (), 0)
    coords = np.array([np.concatenate([B.real.ravel(), B.imag.ravel()]) for B in basis]).T
    pinv = np.linalg.pinv(coords)

    def ad(H):
        cols = []
        for B in basis:
            C = H @ B - B @ H
            cols.append(pinv @ np.concatenate([C.real.ravel(), C.imag.ravel()]))
        return np.array(cols).T

    ads = [ad(H) for H in a]
    rng = np.random.default_rng(seed)
    c = rng.uniform(1.0, 2.0, size=len(a))
    A = sum(ci * Ai for ci, Ai in zip(c, ads))
    w, V = np.linalg.eig(A)
    w = w.real
    # joint eigenvalues: project each ad(H_j) on the eigenvectors
    Vi = np.linalg.pinv(V)
    joint = np.array([np.real(np.diag(Vi @ Aj @ V)) for Aj in ads]).T
    roots, mults = [], []
    for row in joint:
        if np.linalg.norm(row) < 1e-8:
            continue
        for k, r in enumerate(roots):
            if np.allclose(r, row, atol=1e-7):
                mults[k] += 1
                break
        else:
            roots.append(np.round(row, 10))
            mults.append(1)
    if not roots:
        return RestrictedRootData(family, n, p, np.zeros((0, len(a))), (), (), 0)
    roots = np.array(roots)
    order = np.lexsort(roots.T[::-1])
    roots, mults = roots[order], [mults[i] for i in order]
    # positive system from a generic element of a
    g = rng.uniform(1.0, 2.0, size=len(a)) * (1 + np.arange(len(a)))[::-1] ** 2
    pos = [i for i, r in enumerate(roots) if r @ g > 0]
    simple = []
    for i in pos:
        decomposable = any(np.allclose(roots[i], roots[j] + roots[k], atol=1e-7)
                           for j in pos for k in pos)
        if not decomposable:
            simple.append(i)
    simple.sort(key=lambda i: -float(roots[i] @ g))
    return RestrictedRootData(family, n, p, roots, tuple(int(m) for m in mults),
                              tuple(simple), len(simple))


def _gram(a: list) -> np.ndarray:
    return np.array([[np.real(np.trace(X @ Y)) for Y in a] for X in a])


def _order_chain(data: RestrictedRootData) -> list:
    """Order simple roots along the Dynkin diagram (all supported types are chains)."""
    S = list(data.simple)
    if len(S) <= 2:
        return S
    R = data.roots

    def linked(i, j):
        return any(np.allclose(R[i] + R[j], r, atol=1e-7) for r in R)

    ends = [i for i in S if sum(linked(i, j) for j in S if j != i) == 1]
    chain = [min(ends)]
    while len(chain) < len(S):
        nxt = [j for j in S if j not in chain and linked(chain[-1], j)]
        chain.append(nxt[0])
    return chain


def hecke_parameters(family: str, n: int, p: int | None = None) -> HeckePresentation:
    """Quadratic parameters ``d_s`` and braid data of the specialized Hecke algebra.

    ``d_s`` sums the multiplicities of the simple root ``alpha`` and of
    ``2 alpha`` when the latter is a root.
    """
    data = restricted_roots(family, n, p)
    chain = _order_chain(data)
    R = data.roots
    d = [data.multiplicity_of(R[i]) + data.multiplicity_of(2 * R[i]) for i in chain]
    m = len(chain)
    braid = [[1] * m for _ in range(m)]
    # the pairing uses the Killing-normalized inner product on a*
    _, a = _algebra(family, n, p)
    G = np.linalg.inv(_gram(a))
    for i in range(m):
        for j in range(m):
            if i != j:
                ri, rj = R[chain[i]], R[chain[j]]
                cos = ri @ G @ rj / np.sqrt((ri @ G @ ri) * (rj @ G @ rj))
                ang = np.arccos(np.clip(cos, -1, 1))
                braid[i][j] = int(round(np.pi / (np.pi - ang)))
    if not d:
        kind = "trivial"
    elif all(x % 2 == 0 for x in d):
        kind = "group algebra C[W]"
    elif all(x % 2 == 1 for x in d):
        kind = "Hecke algebra at q = -1"
    else:
        kind = "mixed parameters"
    return HeckePresentation(tuple(f"s{i + 1}" for i in range(m)), tuple(d),
                             tuple(tuple(r) for r in braid), kind)


def semismall_check_gl(n: int) -> list:
    """Semismallness table for the real Springer map of ``GL_n(R)``.

    For each partition: orbit dimension ``n^2 - sum(conj(lam)_i^2)``, fiber
    dimension ``(n^2 - n - dim O) / 2`` and the bound
    ``(dim N - dim O) / 2``.
    """
    if not 1 <= n <= 6:
        raise ValueError("semismall table supported for 1 <= n <= 6")
    dimN = n * n - n
    rows = []
    for lam in partitions(n):
        dimO = n * n - sum(c * c for c in conjugate(lam))
        fiber = (dimN - dimO) // 2
        bound = (dimN - dimO) / 2
        rows.append({"partition": list(lam), "orbit_dim": dimO, "fiber_dim": fiber,
                     "bound": bound, "holds": fiber <= bound, "equality": fiber == bound})
    return rows


def _flag_equations(l, perm, e):
    n = e.shape[0]
    L = np.eye(n)
    L[np.tril_indices(n, -1)] = l
    W = np.eye(n)[:, perm]
    F = np.linalg.solve(L, W.T @ e @ W @ L)
    return F[np.tril_indices(n)], F, L


def springer_fiber_dim_numeric(e, starts: int = 12, seed: int = 0) -> int:
    """Dimension of the real flag variety fixed by a nilpotent ``e``.

    A flag is ``g = W L`` with ``W`` a permutation and ``L`` lower
    unitriangular; it is fixed when ``g^-1 e g`` is strictly upper
    triangular.  Solutions are found by least squares from seeded random
    starts in every chart, and the local dimension at a solution is the
    number of parameters minus the rank of the exact Jacobian.  The maximum
    over all solutions is returned.
    """
    from itertools import permutations

    e = np.asarray(e, dtype=float)
    n = e.shape[0]
    npar = n * (n - 1) // 2
    rng = np.random.default_rng(seed)
    best = -1
    for perm in permutations(range(n)):
        perm = list(perm)
        for _ in range(starts):
            l0 = rng.normal(size=npar)
            sol = least_squares(lambda l: _flag_equations(l, perm, e)[0], l0,
                                xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
            res, F, L = _flag_equations(sol.x, perm, e)
            if np.linalg.norm(res) > 1e-9:
                continue
            Li = np.linalg.inv(L)
            cols = []
            for i, j in zip(*np.tril_indices(n, -1)):
                K = Li[:, [i]] @ np.eye(n)[[j], :]
                dF = F @ K - K @ F
                cols.append(dF[np.tril_indices(n)])
            Jm = np.array(cols).T if cols else np.zeros((0, 0))
            rank = int(np.sum(np.linalg.svd(Jm, compute_uv=False) > 1e-7)) if Jm.size else 0
            best = max(best, npar - rank)
    return best
