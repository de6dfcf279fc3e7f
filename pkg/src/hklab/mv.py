"""Matrix <-> quiver dictionary on the ``v = (n, ..., 1)``, ``w = (n, 0, ..., 0)`` instance.

``encode`` builds a representative of the closed ``GL(V)``-orbit over a
matrix with real spectrum, ``balance`` moves it onto ``mu_R = 0`` inside its
orbit, and ``decode`` reads the matrix back as ``kappa * y @ x``.

Level convention: for eigenvalues ``lam_1, ..., lam_n`` in the chosen order,
``c_j = -lam_j / kappa``, ``zeta_1 = c_1``, ``zeta_j = c_j - c_{j-1}`` and the
complex moment map is pinned to ``mu_C,k = -zeta_k * I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DivergingFlow, MaxIterExceeded, TemplateResidual
from .linalg import SpectralData, Tolerances, as_matrix, eig_real_check
from .quiver import (
    STANDARD,
    Conventions,
    DimensionVector,
    QuiverRep,
    dag,
    direct_sum,
    gauge_act,
    mu,
    mu_real_hermitian,
    rep_norm,
)

__all__ = [
    "BalanceReport",
    "EncodedPoint",
    "zeta_tuple",
    "spectral_level",
    "level_residual",
    "encode",
    "decode",
    "balance",
    "closed_orbit_reduction",
]


@dataclass(frozen=True)
class BalanceReport:
    """Outcome of a Kempf-Ness balancing run.

    ``step_history`` holds ``(step, residual)`` for accepted steps only, so
    residuals are strictly decreasing.
    """

    iterations: int
    final_residual: float
    step_history: tuple = ()
    converged: bool = False
    target: float = 0.0
    initial_residual: float = float("nan")

    def to_json(self) -> dict:
        return {"iterations": self.iterations, "final_residual": self.final_residual,
                "step_history": [list(s) for s in self.step_history],
                "converged": self.converged, "target": self.target,
                "initial_residual": self.initial_residual}

    @classmethod
    def from_json(cls, obj: dict) -> "BalanceReport":
        return cls(int(obj["iterations"]), float(obj["final_residual"]),
                   tuple((float(a), float(b)) for a, b in obj["step_history"]),
                   bool(obj["converged"]), float(obj.get("target", 0.0)),
                   float(obj.get("initial_residual", float("nan"))))


@dataclass(frozen=True, eq=False)
class EncodedPoint:
    """A balanced quiver representative together with its level data."""

    rep: QuiverRep
    zeta: SpectralData
    balance: BalanceReport
    kappa: complex = 1j
    order: tuple = ()
    level_residual: float = 0.0
    framed_dims: tuple = ()

    def to_json(self) -> dict:
        k = complex(self.kappa)
        return {"rep": self.rep.to_json(), "zeta": self.zeta.to_json(),
                "balance": self.balance.to_json(), "kappa": [k.real, k.imag],
                "order": list(self.order), "level_residual": self.level_residual,
                "framed_dims": list(self.framed_dims)}

    @classmethod
    def from_json(cls, obj: dict) -> "EncodedPoint":
        kre, kim = obj["kappa"]
        return cls(QuiverRep.from_json(obj["rep"]), SpectralData.from_json(obj["zeta"]),
                   BalanceReport.from_json(obj["balance"]), complex(kre, kim),
                   tuple(float(v) for v in obj.get("order", ())),
                   float(obj.get("level_residual", 0.0)),
                   tuple(int(v) for v in obj.get("framed_dims", ())))


def zeta_tuple(lams, conv: Conventions = STANDARD) -> np.ndarray:
    """Level parameters ``zeta_k`` from an ordered eigenvalue tuple."""
    c = -np.asarray(lams, dtype=float) / conv.kappa
    return np.diff(np.concatenate([[0.0], c]))


def spectral_level(zeta: SpectralData, order="decreasing",
                   conv: Conventions = STANDARD) -> list:
    """Per-vertex scalar matrices prescribing ``mu_C``.

    Returns ``[-zeta_k * I_{n-k}]`` for ``k = 0, ..., n-1``.
    """
    lams = zeta.expanded(order)
    z = zeta_tuple(lams, conv)
    n = lams.size
    return [-z[k] * np.eye(n - k) for k in range(n)]


def level_residual(rep: QuiverRep, level: list, conv: Conventions = STANDARD) -> float:
    C = mu(rep, conv).complex
    return float(np.sqrt(sum(np.linalg.norm(c - t) ** 2 for c, t in zip(C, level))))


def decode(rep: QuiverRep, conv: Conventions = STANDARD) -> np.ndarray:
    return conv.kappa * (rep.y @ rep.x)


# ---------------------------------------------------------------- construction

def _null_basis(A: np.ndarray, cutoff: float) -> np.ndarray:
    """Orthonormal basis of the numerical kernel of ``A`` (columns)."""
    ncols = A.shape[1]
    if A.shape[0] == 0 or ncols == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(A)
    r = int(np.sum(s > cutoff))
    return dag(vh)[:, r:]


def _complement(B: np.ndarray, dim: int) -> np.ndarray:
    if B.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    return _null_basis(dag(B), 0.5)


def _flag_rep(M: np.ndarray, lams: np.ndarray, conv: Conventions) -> QuiverRep:
    """Stable representative with ``x = I`` and surjective ``X_k``.

    ``A_k = Y_k X_k`` is forced by the level equation; each ``A_k`` is
    singular, so ``X_k`` projects away one kernel direction and
    ``Y_k = A_k X_k^+``.
    """
    n = M.shape[0]
    z = zeta_tuple(lams, conv)
    x = np.eye(n, dtype=complex)
    y = M / conv.kappa
    A = conv.complex_frame_sign * (x @ y) + z[0] * np.eye(n)
    Xs, Ys = [], []
    for k in range(n - 1):
        _, _, vh = np.linalg.svd(A)
        kv = dag(vh)[:, -1:]
        Q = _complement(kv, A.shape[0])
        Xk, Yk = dag(Q), A @ Q
        Xs.append(Xk)
        Ys.append(Yk)
        A = Xk @ Yk + z[k + 1] * np.eye(n - k - 1)
    return QuiverRep(DimensionVector.mv(n), tuple(Xs), tuple(Ys), x, y)


def _invariant_kernel_part(rep: QuiverRep, cutoff: float) -> list:
    """Largest graded subspace ``S`` with ``S_0 in ker y`` stable under X and Y."""
    v = rep.dims.v
    m = len(v)
    B = [_null_basis(rep.y, cutoff)] + [np.eye(v[k], dtype=complex) for k in range(1, m)]
    changed = True
    while changed:
        changed = False
        for k in range(m):
            if B[k].shape[1] == 0:
                continue
            rows = []
            if k < m - 1:
                P = np.eye(v[k + 1]) - B[k + 1] @ dag(B[k + 1])
                rows.append(P @ rep.X[k] @ B[k])
            if k > 0:
                P = np.eye(v[k - 1]) - B[k - 1] @ dag(B[k - 1])
                rows.append(P @ rep.Y[k - 1] @ B[k])
            if not rows:
                continue
            c = _null_basis(np.vstack(rows), cutoff)
            if c.shape[1] < B[k].shape[1]:
                B[k], _ = np.linalg.qr(B[k] @ c) if c.shape[1] else (B[k][:, :0], None)
                changed = True
    return B


def closed_orbit_reduction(rep: QuiverRep, cutoff: float) -> tuple:
    """Quotient of ``rep`` by its largest invariant subspace inside ``ker y``.

    Returns ``(framed_rep, kernel_dims)``.  The framed quotient is
    generated by the image of ``x`` and carries the same ``y @ x``.
    """
    B = _invariant_kernel_part(rep, cutoff)
    v = rep.dims.v
    m = len(v)
    Q = [_complement(B[k], v[k]) for k in range(m)]
    dims = DimensionVector(tuple(q.shape[1] for q in Q), rep.dims.w)
    fr = QuiverRep(dims,
                   tuple(dag(Q[k + 1]) @ rep.X[k] @ Q[k] for k in range(m - 1)),
                   tuple(dag(Q[k]) @ rep.Y[k] @ Q[k + 1] for k in range(m - 1)),
                   dag(Q[0]) @ rep.x, rep.y @ Q[0])
    return fr, tuple(b.shape[1] for b in B)


def _interval_decomposition(beta: tuple, lams: np.ndarray) -> list:
    """Split ``beta`` into intervals ``[j, k]`` with ``lam_k == lam_{j-1}``.

    Vertices are 0-based and ``lam_{-1} = 0``; such intervals are exactly the
    dimension vectors carrying a one-dimensional unframed module on the level.
    """
    ext = np.concatenate([[0.0], lams])
    m = len(beta)
    ok = [[ext[k + 1] == ext[j] for k in range(m)] for j in range(m)]

    def rec(b):
        if not any(b):
            return []
        j = next(i for i, d in enumerate(b) if d)
        for k in range(m - 1, j - 1, -1):
            if ok[j][k] and all(b[i] > 0 for i in range(j, k + 1)):
                nb = list(b)
                for i in range(j, k + 1):
                    nb[i] -= 1
                rest = rec(tuple(nb))
                if rest is not None:
                    return [(j, k)] + rest
        return None

    return rec(tuple(beta))


def _interval_module(j: int, k: int, z: np.ndarray, m: int) -> QuiverRep:
    """Balanced one-dimensional module supported on vertices ``j..k``.

    With ``p_l = zeta_j + ... + zeta_l`` the level forces ``X_l Y_l = p_l``;
    ``|X_l| = |Y_l|`` makes ``mu_R`` vanish.
    """
    v = tuple(1 if j <= i <= k else 0 for i in range(m))
    Xs, Ys = [], []
    p = 0.0
    for l in range(m - 1):
        shape_x = (v[l + 1], v[l])
        if j <= l < k:
            p = p + z[l] if l > j else z[l]
            r = np.sqrt(abs(p))
            Xs.append(np.full(shape_x, r, dtype=complex))
            Ys.append(np.full(shape_x[::-1], p / r if r > 0 else 0.0, dtype=complex))
        else:
            Xs.append(np.zeros(shape_x, dtype=complex))
            Ys.append(np.zeros(shape_x[::-1], dtype=complex))
    return QuiverRep(DimensionVector(v, (0,) * m), tuple(Xs), tuple(Ys),
                     np.zeros((v[0], 0)), np.zeros((0, v[0])))


def encode(M, tol: Tolerances = Tolerances(), *, conv: Conventions = STANDARD,
           order="decreasing", balanced: bool = True, max_iter: int = 2000) -> EncodedPoint:
    """Encode a matrix with real spectrum as a balanced quiver point.

    Parameters
    ----------
    M : array_like
        Square matrix with real eigenvalues.
    tol : Tolerances
    conv : Conventions
        Decode constant and moment-map signs.  The construction always
        follows the standard recursion; the level certificate is checked
        under ``conv``.
    order : str or sequence of int
        Eigenvalue ordering used for the level (see
        :meth:`SpectralData.expanded`).
    balanced : bool
        Run :func:`balance` on the result.

    Returns
    -------
    EncodedPoint

    Raises
    ------
    NotRealSpectrum, NonSquare
        Input validation.
    TemplateResidual
        The level certificate or the round trip failed.
    BalanceFailure
        Propagated from :func:`balance`.
    """
    A = as_matrix(M, square=True)
    n = A.shape[0]
    zeta = eig_real_check(A, tol)
    lams = zeta.expanded(order)
    scale = tol.scale(A)
    if n == 0:
        raise TemplateResidual("empty matrix")
    flag = _flag_rep(A, lams, conv)
    cutoff = 10 * tol.rank_rel * (1.0 + rep_norm(flag))
    framed, beta = closed_orbit_reduction(flag, cutoff)
    z = zeta_tuple(lams, conv)
    rep = framed
    if any(beta):
        parts = _interval_decomposition(beta, lams)
        if parts is None:
            raise TemplateResidual(f"kernel dimension vector {beta} has no root decomposition")
        for j, k in parts:
            rep = direct_sum(rep, _interval_module(j, k, z, n))
    level = spectral_level(zeta, order, conv)
    res = level_residual(rep, level, conv)
    if not res <= tol.residual * scale:
        raise TemplateResidual(f"level residual {res:.3e} exceeds {tol.residual * scale:.3e}")
    back = decode(rep, conv)
    if np.linalg.norm(back - A) > 1e-8 * scale:
        raise TemplateResidual("decode does not reproduce the input")
    if balanced:
        rep, report = balance(rep, tol, max_iter, conv=conv)
    else:
        r0 = _mu_r(rep, conv)
        report = BalanceReport(0, r0, (), r0 <= tol.residual, tol.residual, r0)
    return EncodedPoint(rep, zeta, report, conv.kappa, tuple(float(l) for l in lams),
                        res, framed.dims.v)


# ------------------------------------------------------------------- balancing

def _mu_r(rep: QuiverRep, conv: Conventions) -> float:
    H = mu_real_hermitian(rep, conv)
    return 0.5 * float(np.sqrt(sum(np.linalg.norm(h) ** 2 for h in H)))


@lru_cache(maxsize=None)
def _herm_basis(m: int) -> np.ndarray:
    """Columns are row-major vectorized orthonormal hermitian basis matrices."""
    cols = []
    r2 = 1 / np.sqrt(2)
    for i in range(m):
        E = np.zeros((m, m), dtype=complex)
        E[i, i] = 1
        cols.append(E.ravel())
        for j in range(i + 1, m):
            E = np.zeros((m, m), dtype=complex)
            E[i, j] = E[j, i] = r2
            cols.append(E.ravel())
            E = np.zeros((m, m), dtype=complex)
            E[i, j], E[j, i] = 1j * r2, -1j * r2
            cols.append(E.ravel())
    T = np.array(cols).T if cols else np.zeros((0, 0), dtype=complex)
    T.setflags(write=False)
    return T


def _gauge_jacobian(rep: QuiverRep, conv: Conventions) -> np.ndarray:
    """Real Jacobian of ``A -> A . rep`` over per-vertex hermitian ``A``.

    Infinitesimal action: ``dX_k = A_{k+1} X_k - X_k A_k``,
    ``dY_k = A_k Y_k - Y_k A_{k+1}``, ``dx = A_0 x``, ``dy = -y A_0``.
    """
    v = rep.dims.v
    m = len(v)
    blocks = rep.blocks()
    offs = np.cumsum([0] + [b.size for b in blocks])
    N = offs[-1]
    ix = {("X", k): k for k in range(m - 1)}
    ix.update({("Y", k): m - 1 + k for k in range(m - 1)})
    ix["x"], ix["y"] = 2 * (m - 1), 2 * (m - 1) + 1
    cols = []
    for k in range(m):
        d = v[k]
        G = np.zeros((N, d * d), dtype=complex)

        def put(key, mat):
            i = ix[key]
            G[offs[i]:offs[i + 1]] += mat

        I = np.eye(d)
        if k > 0:
            X, Y = rep.X[k - 1], rep.Y[k - 1]
            put(("X", k - 1), np.kron(I, X.T))           # A_k X_{k-1}
            put(("Y", k - 1), -np.kron(Y, I))            # -Y_{k-1} A_k
        if k < m - 1:
            X, Y = rep.X[k], rep.Y[k]
            put(("X", k), -np.kron(X, I))                # -X_k A_k
            put(("Y", k), np.kron(I, Y.T))               # A_k Y_k
        if k == 0:
            put("x", np.kron(I, rep.x.T))
            put("y", -np.kron(rep.y, I))
        cols.append(G @ _herm_basis(d))
    Jc = np.hstack(cols)
    return np.vstack([Jc.real, Jc.imag])


def _unpack(c: np.ndarray, v: tuple) -> list:
    out, pos = [], 0
    for d in v:
        out.append((_herm_basis(d) @ c[pos:pos + d * d]).reshape(d, d))
        pos += d * d
    return out


def _exp_pair(A: list, eps: float) -> tuple:
    g, gi = [], []
    for a in A:
        a = 0.5 * (a + dag(a))
        w, U = np.linalg.eigh(a)
        g.append((U * np.exp(eps * w)) @ dag(U))
        gi.append((U * np.exp(-eps * w)) @ dag(U))
    return g, gi


def balance(rep: QuiverRep, tol: Tolerances = Tolerances(), max_iter: int = 2000, *,
            conv: Conventions = STANDARD, raise_on_failure: bool = True,
            target: float | None = None) -> tuple:
    """Move ``rep`` within its ``GL(V)``-orbit to ``mu_R = 0``.

    Each iteration picks a hermitian direction ``A`` per vertex and applies
    ``g = exp(eps A)``.  The direction is the Gauss-Newton step for the
    squared norm of the orbit point, a preconditioned form of the
    Kempf-Ness gradient ``-H``; when it fails to descend the plain gradient
    direction is used.  ``eps`` is chosen by Armijo backtracking on
    ``||mu_R||**2`` (factor 0.5, sufficient decrease ``1e-4 * eps``).

    Returns
    -------
    rep : QuiverRep
    report : BalanceReport

    Raises
    ------
    MaxIterExceeded
        ``max_iter`` reached or no descent step found; carries the report.
    DivergingFlow
        Residual increased over 20 consecutive accepted steps.
    """
    target = tol.residual if target is None else target
    cur = rep
    R = _mu_r(cur, conv)
    r0 = R
    hist = []
    grew = 0
    it = 0
    while R > target:
        if it >= max_iter:
            report = BalanceReport(it, R, tuple(hist), False, target, r0)
            if raise_on_failure:
                raise MaxIterExceeded(f"balance stopped at {R:.3e} after {it} iterations", report)
            return cur, report
        it += 1
        v = cur.dims.v
        Jr = _gauge_jacobian(cur, conv)
        z = cur.to_vector()
        rv = np.concatenate([z.real, z.imag])
        # stabilizer directions of a polystable point are only approximately null
        # away from the balanced point; truncating them keeps the step bounded
        c = np.linalg.lstsq(Jr, -0.5 * rv, rcond=1e-8)[0]
        H = mu_real_hermitian(cur, conv)
        directions = [(_unpack(c, v), 1.0),
                      ([-h for h in H], 0.1 / (1 + rep_norm(cur) ** 2))]
        accepted = False
        for A, eps in directions:
            # keep the exponent within [-2, 2] so a poor far-field step cannot overflow
            spread = max((float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (a + dag(a))))))
                          for a in A if a.size), default=0.0)
            if spread > 0:
                eps = min(eps, 2.0 / spread)
            while eps > 1e-12:
                g, gi = _exp_pair(A, eps)
                cand = gauge_act(cur, g, gi, check=False)
                R2 = _mu_r(cand, conv)
                if np.isfinite(R2) and R2 ** 2 < R ** 2 * (1 - 1e-4 * eps):
                    accepted = True
                    break
                eps *= 0.5
            if accepted:
                break
        if not accepted:
            report = BalanceReport(it, R, tuple(hist), False, target, r0)
            if raise_on_failure:
                raise MaxIterExceeded(f"no descent step at residual {R:.3e}", report)
            return cur, report
        grew = grew + 1 if R2 > R else 0
        if grew >= 20:
            raise DivergingFlow("residual grew for 20 accepted steps",
                                BalanceReport(it, R2, tuple(hist), False, target, r0))
        cur, R = cand, R2
        hist.append((float(eps), float(R)))
    return cur, BalanceReport(it, R, tuple(hist), True, target, r0)
