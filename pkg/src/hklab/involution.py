"""The interpolating involutions ``alpha_a`` and their classical-type variants.

``alpha_a`` is evaluated on a balanced quiver representative: conjugate every
block, rotate by ``cos(s) I + sin(s) K`` with ``s = a*pi/2`` and decode.  At
``a = 0`` this is entrywise conjugation and at ``a = 1`` transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WrongAlgebra
from .linalg import Tolerances, as_matrix, charpoly_drift, random_orthogonal
from .mv import EncodedPoint, decode, encode
from .quiver import STANDARD, Conventions, rotate_rep

__all__ = [
    "InvolutionParam",
    "RealFormSpec",
    "FAMILIES",
    "alpha_gl",
    "alpha_gl_details",
    "beta_gl",
    "theta_form",
    "membership_residual",
    "alpha_classical",
    "equivariance_suite",
    "I_pq",
    "S_m",
    "K_pq",
]

FAMILIES = ("gl_split", "sl_split", "sl_quaternionic", "su_pq",
            "so_pq", "so_star", "sp_split", "sp_pq")


@dataclass(frozen=True)
class InvolutionParam:
    a: float

    def __post_init__(self):
        a = float(self.a)
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"a must lie in [0, 1], got {a}")
        object.__setattr__(self, "a", a)

    @property
    def s(self) -> float:
        return 0.5 * np.pi * self.a


@dataclass(frozen=True)
class RealFormSpec:
    family: str
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        even = self.family in ("sl_quaternionic", "so_star", "sp_split", "sp_pq")
        if even and self.n % 2:
            raise ValueError(f"{self.family} needs even n")
        if self.family in ("su_pq", "so_pq"):
            if self.p is None or not 0 <= self.p <= self.n:
                raise ValueError("signature p must satisfy 0 <= p <= n")
        if self.family == "sp_pq":
            if self.p is None or not 0 <= self.p <= self.n // 2:
                raise ValueError("signature p must satisfy 0 <= p <= n/2")

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "p": self.p}


def _param(a) -> float:
    return a.a if isinstance(a, InvolutionParam) else InvolutionParam(a).a


def I_pq(p: int, q: int) -> np.ndarray:
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def S_m(m: int) -> np.ndarray:
    """``[[0, -I], [I, 0]]``."""
    Z, I = np.zeros((m, m)), np.eye(m)
    return np.block([[Z, -I], [I, Z]])


def K_pq(p: int, q: int) -> np.ndarray:
    D = I_pq(p, q)
    Z = np.zeros_like(D)
    return np.block([[D, Z], [Z, D]])


def alpha_gl_details(M, a, tol: Tolerances = Tolerances(), *, conv: Conventions = STANDARD,
                     order="decreasing", decode_conv: Conventions | None = None) -> tuple:
    """``alpha_a(M)`` together with the encoded point and the rotated rep.

    ``decode_conv`` overrides the conventions used for the final decode
    only; it exists for negative controls.
    """
    a = _param(a)
    A = as_matrix(M, square=True)
    target = min(tol.residual, 1e-12 * (1.0 + float(np.linalg.norm(A, 2))))
    pt = encode(A, tol.with_residual(target), conv=conv, order=order)
    rot = rotate_rep(pt.rep, a)
    out = decode(rot, decode_conv or conv)
    return out, pt, rot


def alpha_gl(M, a, tol: Tolerances = Tolerances(), *, conv: Conventions = STANDARD,
             order="decreasing") -> np.ndarray:
    """Interpolating involution on matrices with real spectrum.

    Parameters
    ----------
    M : array_like
        Square matrix with real eigenvalues.
    a : float or InvolutionParam
        Interpolation parameter in ``[0, 1]``.
    tol : Tolerances
    conv : Conventions
    order : str or sequence
        Eigenvalue ordering for the level; the output does not depend on it.

    Returns
    -------
    ndarray
        ``conj(M)`` at ``a = 0``, ``M.T`` at ``a = 1``; in between a matrix
        with the same Jordan type as ``M``.
    """
    return alpha_gl_details(M, a, tol, conv=conv, order=order)[0]


def beta_gl(M) -> np.ndarray:
    return -np.asarray(M).T


def membership_residual(form: RealFormSpec, M) -> float:
    """Distance of ``M`` from the complex Lie algebra of ``form``."""
    A = as_matrix(M, square=True)
    if A.shape[0] != form.n:
        return float("inf")
    fam = form.family
    if fam == "gl_split":
        return 0.0
    if fam in ("sl_split", "sl_quaternionic", "su_pq"):
        return float(abs(np.trace(A)))
    if fam in ("so_pq", "so_star"):
        return float(np.linalg.norm(A + A.T))
    S = S_m(form.n // 2)
    return float(np.linalg.norm(A.T @ S + S @ A))


def theta_form(form: RealFormSpec, M, tol: Tolerances = Tolerances()) -> np.ndarray:
    """Holomorphic Cartan involution of the chosen real form.

    Raises
    ------
    WrongAlgebra
        ``M`` is not in the complex Lie algebra of ``form``.
    """
    A = as_matrix(M, square=True)
    res = membership_residual(form, A)
    if not res <= 1e-8 * tol.scale(A):
        raise WrongAlgebra(f"membership residual {res:.3e} for {form.family}")
    fam, n, p = form.family, form.n, form.p
    if fam in ("gl_split", "sl_split"):
        return -A.T
    if fam == "sl_quaternionic":
        S = S_m(n // 2)
        return -S @ A.T @ np.linalg.inv(S)
    if fam in ("su_pq", "so_pq"):
        D = I_pq(p, n - p)
        return D @ A @ D
    if fam in ("so_star", "sp_split"):
        S = S_m(n // 2)
        return S @ A @ np.linalg.inv(S)
    K = K_pq(p, n // 2 - p)
    return K @ A @ K


def alpha_classical(form: RealFormSpec, M, a, tol: Tolerances = Tolerances(), *,
                    conv: Conventions = STANDARD) -> np.ndarray:
    """``alpha_a(beta(theta(M)))``; reduces to ``eta`` at ``a = 0`` and ``-theta`` at ``a = 1``."""
    return alpha_gl(beta_gl(theta_form(form, M, tol)), a, tol, conv=conv)


def equivariance_suite(M, a, trials: int = 20, seed: int = 0,
                       tol: Tolerances = Tolerances()) -> dict:
    """Maximum residuals of the symmetry properties of ``alpha_a`` at ``M``.

    Group elements are seeded Haar orthogonal matrices and scalars
    ``t = exp(u)``, ``u`` uniform in ``[-1, 1]``.  Only ``t > 0`` is
    sampled: negative scalars are not symmetries of ``alpha_a`` for
    ``0 < a < 1``.
    """
    A = as_matrix(M, square=True)
    n = A.shape[0]
    rng = np.random.default_rng(seed)
    base = alpha_gl(A, a, tol)
    s = 1.0 + float(np.linalg.norm(A, 2))
    orth = scal = 0.0
    for _ in range(trials):
        k = random_orthogonal(n, int(rng.integers(2 ** 31)))
        orth = max(orth, float(np.linalg.norm(alpha_gl(k @ A @ k.T, a, tol) - k @ base @ k.T)))
        t = float(np.exp(rng.uniform(-1, 1)))
        scal = max(scal, float(np.linalg.norm(alpha_gl(t * A, a, tol) - t * base)))
    beta = float(np.linalg.norm(alpha_gl(beta_gl(A), a, tol) - beta_gl(base)))
    invol = float(np.linalg.norm(alpha_gl(base, a, tol) - A))
    return {"orthogonal": orth / s, "scaling": scal / s, "beta": beta / s,
            "involutivity": invol / s, "charpoly": charpoly_drift(base, A),
            "trials": trials, "a": float(_param(a))}
