"""Framed type-A quiver representations and their hyper-Kahler structure.

A point of ``M(v, w)`` is a tuple ``(X, Y, x, y)`` with ``X_k : V_k -> V_{k+1}``,
``Y_k : V_{k+1} -> V_k``, ``x : W -> V_1`` and ``y : V_1 -> W``.  Only the
first vertex carries framing.  Vertex indices are 0-based in code.

Moment maps, per vertex ``k`` (see ``docs/conventions.md``)::

    mu_R,k = (i/2) (X_{k-1} X_{k-1}^+ - Y_{k-1}^+ Y_{k-1} + Y_k Y_k^+ - X_k^+ X_k)
             + (i/2) s_R (x x^+ - y^+ y)            [k = 0 only]
    mu_C,k = X_{k-1} Y_{k-1} - Y_k X_k + s_C x y     [x y at k = 0 only]

with ``s_R = s_C = +1`` in the standard :class:`Conventions`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, SingularGauge
from .linalg import matrix_from_json, matrix_to_json

__all__ = [
    "Conventions",
    "STANDARD",
    "DimensionVector",
    "QuiverRep",
    "MomentValue",
    "mu",
    "mu_real_hermitian",
    "mu_real_norm",
    "apply_I",
    "apply_J",
    "apply_K",
    "conj_rep",
    "rotate_rep",
    "gauge_act",
    "glW_act",
    "rep_norm",
    "scale",
    "add_reps",
    "direct_sum",
]


def dag(A: np.ndarray) -> np.ndarray:
    return A.conj().T


@dataclass(frozen=True)
class Conventions:
    """Sign and phase conventions tying matrices to quiver data.

    Attributes
    ----------
    kappa : complex
        Decode constant, ``M = kappa * y @ x``.
    real_frame_sign, complex_frame_sign : int
        Signs of the framing terms in ``mu_R`` and ``mu_C``.  Both are
        ``+1`` in the standard conventions; flipping one is used only as a
        negative control.
    """

    kappa: complex = 1j
    real_frame_sign: int = 1
    complex_frame_sign: int = 1

    def to_json(self) -> dict:
        k = complex(self.kappa)
        return {"kappa": [k.real, k.imag], "real_frame_sign": self.real_frame_sign,
                "complex_frame_sign": self.complex_frame_sign}


STANDARD = Conventions()


@dataclass(frozen=True)
class DimensionVector:
    v: tuple
    w: tuple

    def __post_init__(self):
        v = tuple(int(a) for a in self.v)
        w = tuple(int(a) for a in self.w)
        if len(v) != len(w):
            raise ShapeMismatch("v and w must have equal length")
        if any(a < 0 for a in v + w):
            raise ShapeMismatch("dimensions must be nonnegative")
        if any(w[1:]):
            raise ShapeMismatch("framing is supported at the first vertex only")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @classmethod
    def mv(cls, n: int) -> "DimensionVector":
        """The instance ``v = (n, n-1, ..., 1)``, ``w = (n, 0, ..., 0)``."""
        return cls(tuple(range(n, 0, -1)), (n,) + (0,) * (n - 1))

    @property
    def nverts(self) -> int:
        return len(self.v)


def _frozen(A, shape, name) -> np.ndarray:
    B = np.array(A, dtype=complex, copy=True)
    if B.shape != tuple(shape):
        raise ShapeMismatch(f"{name} has shape {B.shape}, expected {tuple(shape)}")
    if not np.all(np.isfinite(B)):
        raise ShapeMismatch(f"{name} has non-finite entries")
    B.setflags(write=False)
    return B


@dataclass(frozen=True, eq=False)
class QuiverRep:
    """Immutable quiver data ``(X, Y, x, y)`` with validated shapes."""

    dims: DimensionVector
    X: tuple
    Y: tuple
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        v, w = self.dims.v, self.dims.w
        m = len(v)
        if len(self.X) != max(m - 1, 0) or len(self.Y) != max(m - 1, 0):
            raise ShapeMismatch(f"expected {m - 1} X and Y maps")
        X = tuple(_frozen(A, (v[k + 1], v[k]), f"X[{k}]") for k, A in enumerate(self.X))
        Y = tuple(_frozen(A, (v[k], v[k + 1]), f"Y[{k}]") for k, A in enumerate(self.Y))
        w0 = w[0] if m else 0
        v0 = v[0] if m else 0
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "x", _frozen(self.x, (v0, w0), "x"))
        object.__setattr__(self, "y", _frozen(self.y, (w0, v0), "y"))

    @classmethod
    def zero(cls, dims: DimensionVector) -> "QuiverRep":
        v, w = dims.v, dims.w
        m = len(v)
        return cls(dims,
                   tuple(np.zeros((v[k + 1], v[k])) for k in range(m - 1)),
                   tuple(np.zeros((v[k], v[k + 1])) for k in range(m - 1)),
                   np.zeros((v[0], w[0])), np.zeros((w[0], v[0])))

    def blocks(self) -> list:
        return list(self.X) + list(self.Y) + [self.x, self.y]

    def map_blocks(self, f) -> "QuiverRep":
        return QuiverRep(self.dims, tuple(f(A) for A in self.X),
                         tuple(f(A) for A in self.Y), f(self.x), f(self.y))

    def to_vector(self) -> np.ndarray:
        return np.concatenate([A.ravel() for A in self.blocks()])

    def allclose(self, other: "QuiverRep", atol: float = 1e-12) -> bool:
        return (self.dims == other.dims
                and float(np.linalg.norm(self.to_vector() - other.to_vector())) <= atol)

    def to_json(self) -> dict:
        return {"v": list(self.dims.v), "w": list(self.dims.w),
                "X": [matrix_to_json(A) for A in self.X],
                "Y": [matrix_to_json(A) for A in self.Y],
                "x": matrix_to_json(self.x), "y": matrix_to_json(self.y)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuiverRep":
        try:
            dims = DimensionVector(tuple(obj["v"]), tuple(obj["w"]))
            return cls(dims, tuple(matrix_from_json(A) for A in obj["X"]),
                       tuple(matrix_from_json(A) for A in obj["Y"]),
                       matrix_from_json(obj["x"]), matrix_from_json(obj["y"]))
        except (KeyError, TypeError) as exc:
            raise ShapeMismatch(f"malformed rep object: {exc}") from None


@dataclass(frozen=True, eq=False)
class MomentValue:
    """Per-vertex moment map values; ``real`` blocks are skew-hermitian."""

    real: tuple
    complex: tuple

    def real_norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(A) ** 2 for A in self.real)))

    def complex_norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(A) ** 2 for A in self.complex)))


def mu_real_hermitian(rep: QuiverRep, conv: Conventions = STANDARD) -> list:
    """Hermitian blocks ``H_k = -2i mu_R,k``."""
    v = rep.dims.v
    m = len(v)
    H = []
    for k in range(m):
        h = np.zeros((v[k], v[k]), dtype=complex)
        if k > 0:
            A, B = rep.X[k - 1], rep.Y[k - 1]
            h += A @ dag(A) - dag(B) @ B
        if k < m - 1:
            A, B = rep.X[k], rep.Y[k]
            h += B @ dag(B) - dag(A) @ A
        if k == 0:
            h += conv.real_frame_sign * (rep.x @ dag(rep.x) - dag(rep.y) @ rep.y)
        H.append(h)
    return H


def _mu_complex(rep: QuiverRep, conv: Conventions) -> list:
    v = rep.dims.v
    m = len(v)
    C = []
    for k in range(m):
        c = np.zeros((v[k], v[k]), dtype=complex)
        if k > 0:
            c += rep.X[k - 1] @ rep.Y[k - 1]
        if k < m - 1:
            c -= rep.Y[k] @ rep.X[k]
        if k == 0:
            c += conv.complex_frame_sign * (rep.x @ rep.y)
        C.append(c)
    return C


def mu(rep: QuiverRep, conv: Conventions = STANDARD) -> MomentValue:
    """Real and complex moment maps, vertex by vertex."""
    H = mu_real_hermitian(rep, conv)
    return MomentValue(tuple(0.5j * h for h in H), tuple(_mu_complex(rep, conv)))


def mu_real_norm(rep: QuiverRep, conv: Conventions = STANDARD) -> float:
    """Frobenius norm of ``mu_R`` summed over vertices."""
    return 0.5 * float(np.sqrt(sum(np.linalg.norm(h) ** 2
                                   for h in mu_real_hermitian(rep, conv))))


def apply_I(rep: QuiverRep) -> QuiverRep:
    return rep.map_blocks(lambda A: 1j * A)


def apply_J(rep: QuiverRep) -> QuiverRep:
    """``J(X, Y, x, y) = (-Y^+, X^+, -y^+, x^+)``."""
    return QuiverRep(rep.dims, tuple(-dag(B) for B in rep.Y),
                     tuple(dag(A) for A in rep.X), -dag(rep.y), dag(rep.x))


def apply_K(rep: QuiverRep) -> QuiverRep:
    return apply_I(apply_J(rep))


def conj_rep(rep: QuiverRep) -> QuiverRep:
    return rep.map_blocks(np.conj)


def add_reps(r1: QuiverRep, r2: QuiverRep, c1: complex = 1.0, c2: complex = 1.0) -> QuiverRep:
    """Linear combination ``c1*r1 + c2*r2`` of reps with equal dims."""
    if r1.dims != r2.dims:
        raise ShapeMismatch("dimension vectors differ")
    return QuiverRep(r1.dims,
                     tuple(c1 * A + c2 * B for A, B in zip(r1.X, r2.X)),
                     tuple(c1 * A + c2 * B for A, B in zip(r1.Y, r2.Y)),
                     c1 * r1.x + c2 * r2.x, c1 * r1.y + c2 * r2.y)


def rotate_rep(rep: QuiverRep, a: float) -> QuiverRep:
    """Apply ``(cos s I + sin s K)`` after conjugation, ``s = a*pi/2``."""
    s = 0.5 * np.pi * float(a)
    c = conj_rep(rep)
    return add_reps(apply_I(c), apply_K(c), np.cos(s), np.sin(s))


def _check_invertible(g: np.ndarray, name: str) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeMismatch(f"{name} must be square")
    if g.size and not np.isfinite(np.linalg.cond(g)):
        raise SingularGauge(f"{name} is singular")
    if g.size and np.linalg.cond(g) > 1e14:
        raise SingularGauge(f"{name} is numerically singular")
    return g


def gauge_act(rep: QuiverRep, g, g_inv=None, check: bool = True) -> QuiverRep:
    """``X_k -> g_{k+1} X_k g_k^-1``, ``Y_k -> g_k Y_k g_{k+1}^-1``, ``x -> g_0 x``,
    ``y -> y g_0^-1``.  ``g_inv`` may be supplied when already known;
    ``check=False`` skips the invertibility test."""
    v = rep.dims.v
    if len(g) != len(v):
        raise ShapeMismatch(f"gauge has {len(g)} blocks, expected {len(v)}")
    if check:
        g = [_check_invertible(gk, f"g[{k}]") for k, gk in enumerate(g)]
    else:
        g = [np.asarray(gk, dtype=complex) for gk in g]
    for k, gk in enumerate(g):
        if gk.shape[0] != v[k]:
            raise ShapeMismatch(f"g[{k}] has size {gk.shape[0]}, expected {v[k]}")
    gi = g_inv if g_inv is not None else [np.linalg.inv(gk) if gk.size else gk for gk in g]
    m = len(v)
    return QuiverRep(rep.dims,
                     tuple(g[k + 1] @ rep.X[k] @ gi[k] for k in range(m - 1)),
                     tuple(g[k] @ rep.Y[k] @ gi[k + 1] for k in range(m - 1)),
                     g[0] @ rep.x, rep.y @ gi[0])


def glW_act(rep: QuiverRep, gp) -> QuiverRep:
    """Framing action ``x -> x g'^-1``, ``y -> g' y``."""
    gp = _check_invertible(gp, "g'")
    if gp.shape[0] != rep.dims.w[0]:
        raise ShapeMismatch("g' size does not match w")
    return QuiverRep(rep.dims, rep.X, rep.Y, rep.x @ np.linalg.inv(gp), gp @ rep.y)


def rep_norm(rep: QuiverRep) -> float:
    return float(np.linalg.norm(rep.to_vector()))


def scale(rep: QuiverRep, t: float) -> QuiverRep:
    return rep.map_blocks(lambda A: t * A)


def direct_sum(r1: QuiverRep, r2: QuiverRep) -> QuiverRep:
    """Vertexwise direct sum; framing dimensions add."""
    if r1.dims.nverts != r2.dims.nverts:
        raise ShapeMismatch("different numbers of vertices")

    def bd(A, B):
        out = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=complex)
        out[:A.shape[0], :A.shape[1]] = A
        out[A.shape[0]:, A.shape[1]:] = B
        return out

    dims = DimensionVector(tuple(a + b for a, b in zip(r1.dims.v, r2.dims.v)),
                           tuple(a + b for a, b in zip(r1.dims.w, r2.dims.w)))
    return QuiverRep(dims, tuple(bd(A, B) for A, B in zip(r1.X, r2.X)),
                     tuple(bd(A, B) for A, B in zip(r1.Y, r2.Y)),
                     bd(r1.x, r2.x), bd(r1.y, r2.y))
