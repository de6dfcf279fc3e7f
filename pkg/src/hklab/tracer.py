"""Continuation along the ``alpha_a``-fixed locus from real to symmetric matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import CorrectorStall, InputError, StepFloorReached
from .involution import alpha_gl
from .linalg import (
    JordanType,
    Tolerances,
    as_matrix,
    charpoly_drift,
    eig_real_check,
    jordan_type,
    matrix_from_json,
    matrix_to_json,
)

__all__ = ["TracePath", "corrector", "trace", "verify_ks_endpoint", "fixed_residual"]


@dataclass(frozen=True, eq=False)
class TracePath:
    """Sampled fixed points ``(a, M(a))`` from ``a = 0`` to ``a = 1``."""

    samples: tuple
    source: np.ndarray
    target: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def a_values(self) -> np.ndarray:
        return np.array([a for a, _ in self.samples])

    def to_json(self) -> dict:
        return {"samples": [{"a": a, "M": matrix_to_json(M)} for a, M in self.samples],
                "source": matrix_to_json(self.source),
                "target": matrix_to_json(self.target),
                "diagnostics": self.diagnostics}

    @classmethod
    def from_json(cls, obj: dict) -> "TracePath":
        return cls(tuple((float(s["a"]), matrix_from_json(s["M"])) for s in obj["samples"]),
                   matrix_from_json(obj["source"]), matrix_from_json(obj["target"]),
                   dict(obj.get("diagnostics", {})))


def fixed_residual(M, a, tol: Tolerances = Tolerances()) -> float:
    A = as_matrix(M, square=True)
    return float(np.linalg.norm(alpha_gl(A, a, tol) - A))


def _ad_solve(M: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Minimum-norm ``delta`` with ``delta M - M delta = D`` (least squares)."""
    n = M.shape[0]
    I = np.eye(n)
    L = np.kron(I, M.T) - np.kron(M, I)
    d = np.linalg.lstsq(L, D.ravel(), rcond=1e-10)[0]
    return d.reshape(n, n)


def corrector(M, a, tol: Tolerances = Tolerances(), max_iter: int = 30) -> tuple:
    """Pull ``M`` onto the fixed set of ``alpha_a`` inside its similarity orbit.

    Each iteration solves ``[delta, M] = alpha_a(M) - M`` in the minimum-norm
    sense and replaces ``M`` by ``exp(delta/2) M exp(-delta/2)``, which to
    first order is the average ``(M + alpha_a(M)) / 2`` but never leaves the
    orbit, so the spectrum does not drift.

    Returns
    -------
    M : ndarray
    info : dict
        ``residuals`` per iteration and ``iterations``.

    Raises
    ------
    CorrectorStall
        Start point too far from the fixed set, or the residual stops
        decreasing above ``tol.residual * (1 + ||M||)``.
    """
    cur = as_matrix(M, square=True)
    goal = tol.residual * tol.scale(cur)
    D = alpha_gl(cur, a, tol) - cur
    r = float(np.linalg.norm(D))
    hist = [r]
    if r > 0.1 * tol.scale(cur):
        raise CorrectorStall(f"start residual {r:.3e} outside the corrector basin")
    it = 0
    while r > goal:
        if it >= max_iter:
            raise CorrectorStall(f"no convergence after {it} iterations, residual {r:.3e}")
        it += 1
        delta = _ad_solve(cur, D)
        step = 0.5
        while True:
            g = sla.expm(step * delta)
            cand = g @ cur @ np.linalg.inv(g)
            D2 = alpha_gl(cand, a, tol) - cand
            r2 = float(np.linalg.norm(D2))
            if r2 < 0.9 * r:
                break
            step *= 0.5
            if step < 1e-3:
                raise CorrectorStall(f"residual plateau at {r:.3e}")
        cur, D, r = cand, D2, r2
        hist.append(r)
    return cur, {"residuals": hist, "iterations": it}


def trace(M0, steps: int = 16, tol: Tolerances = Tolerances()) -> TracePath:
    """Follow the fixed point of ``alpha_a`` from a real ``M0`` to ``a = 1``.

    The path is traced for ``M0 / ||M0||`` and rescaled.  Steps of size
    ``1/steps`` are halved on :class:`CorrectorStall` down to a floor of
    ``1/(64 steps)``; a successful step restores the nominal size.

    Raises
    ------
    InputError
        ``M0`` is not real-entried or has non-real spectrum.
    StepFloorReached
        Continuation failed; the partial path is attached as ``.path``.
    """
    A = as_matrix(M0, square=True)
    if np.linalg.norm(A.imag) > 1e-12 * tol.scale(A):
        raise InputError("trace needs a real-entried source matrix")
    A = A.real.astype(complex)
    eig_real_check(A, tol)
    s = float(np.linalg.norm(A))
    if s == 0.0:
        Z = np.zeros_like(A)
        return TracePath(((0.0, Z), (1.0, Z)), Z, Z,
                         {"corrector_residuals": [0.0, 0.0], "spectral_drift": [0.0, 0.0],
                          "corrector_iterations": [0, 0], "halvings": 0,
                          "steps": steps, "norm": 0.0,
                          "source_type": jordan_type(A, tol).to_json()})
    jt0 = jordan_type(A, tol)
    cur = A / s
    h0 = 1.0 / steps
    floor = h0 / 64
    h = h0
    a = 0.0
    samples = [(0.0, A.copy())]
    res_hist = [float(np.linalg.norm(cur.conj() - cur))]
    drift = [0.0]
    iters = [0]
    halvings = 0

    def partial(msg):
        path = TracePath(tuple(samples), A.copy(), samples[-1][1],
                         {"corrector_residuals": res_hist, "spectral_drift": drift,
                          "corrector_iterations": iters, "halvings": halvings,
                          "failed_at": a + h, "message": msg})
        return StepFloorReached(msg, path.diagnostics, path)

    while a < 1.0:
        a_next = min(1.0, a + h)
        try:
            nxt, info = corrector(cur, a_next, tol)
        except CorrectorStall as exc:
            h *= 0.5
            halvings += 1
            if h < floor:
                raise partial(f"step floor reached at a={a:.6f}: {exc}") from None
            continue
        cur, a = nxt, a_next
        samples.append((a, s * cur))
        res_hist.append(info["residuals"][-1])
        iters.append(info["iterations"])
        drift.append(charpoly_drift(cur, A / s))
        h = min(h0, 2 * h)
    target = samples[-1][1]
    diag = {"corrector_residuals": res_hist, "spectral_drift": drift,
            "corrector_iterations": iters, "halvings": halvings, "steps": steps,
            "norm": s, "source_type": jt0.to_json()}
    return TracePath(tuple(samples), A.copy(), target, diag)


def verify_ks_endpoint(path: TracePath, tol: Tolerances = Tolerances(),
                       check_samples: bool = True) -> dict:
    """Endpoint checks: symmetry, spectral drift and Jordan-type agreement."""
    src, tgt = path.source, path.target
    scale = tol.scale(src)
    sym = float(np.linalg.norm(tgt - tgt.T))
    jt_s = jordan_type(src, tol)
    jt_t = jordan_type(tgt, tol)
    same = jt_s.matches(jt_t, atol=1e-6)
    along = True
    if check_samples:
        along = all(jordan_type(M, tol).matches(jt_s, atol=1e-6) for _, M in path.samples)
    drift = charpoly_drift(tgt, src)
    nilpotent = list(jt_s.blocks) == [0.0]
    report = {
        "symmetry_residual": sym,
        "symmetric": sym <= 10 * tol.residual * scale,
        "source_real": float(np.linalg.norm(np.imag(src))) == 0.0,
        "spectral_drift": drift,
        "max_path_drift": float(max(path.diagnostics.get("spectral_drift", [drift]))),
        "jordan_source": jt_s.to_json(),
        "jordan_target": jt_t.to_json(),
        "jordan_equal": bool(same),
        "jordan_constant": bool(along),
        "ks_label": list(jt_s.blocks[0.0]) if nilpotent else None,
    }
    report["ok"] = bool(report["symmetric"] and same and along and drift <= 1e-6)
    return report
