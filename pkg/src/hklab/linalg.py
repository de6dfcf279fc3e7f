"""Tolerance-aware dense linear algebra.

Eigenvalue clustering, numerical rank, Jordan-type extraction, random group
elements and the matrix JSON codec.  Matrices are plain ``numpy`` arrays;
everything here is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import pdist

from .errors import NonSquare, NotRealSpectrum, RankAmbiguous, ShapeMismatch

__all__ = [
    "Tolerances",
    "SpectralData",
    "JordanType",
    "as_matrix",
    "eig_real_check",
    "jordan_type",
    "rank_tol",
    "random_orthogonal",
    "jordan_block",
    "jordan_matrix",
    "charpoly",
    "charpoly_drift",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance policy.

    Parameters
    ----------
    rank_rel : float
        Relative singular-value cutoff for rank decisions.
    eig_real : float
        Allowed ``|Im|`` of an eigenvalue cluster center, relative to
        ``1 + ||M||``.
    cluster : float
        Single-linkage clustering radius for eigenvalues, relative to
        ``1 + ||M||``.  Must absorb the ``eps**(1/m)`` splitting of a
        size-``m`` Jordan block, hence much larger than ``eig_real``.
    residual : float
        Target for moment-map and fixed-point residuals.
    """

    rank_rel: float = 1e-9
    eig_real: float = 1e-8
    cluster: float = 1e-2
    residual: float = 1e-10

    def __post_init__(self):
        for name in ("rank_rel", "eig_real", "cluster", "residual"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"tolerance {name} must be positive, got {val}")
        if self.rank_rel >= 1:
            raise ValueError("rank_rel must be < 1")

    def scale(self, M) -> float:
        return 1.0 + float(np.linalg.norm(M, 2)) if np.size(M) else 1.0

    def with_residual(self, residual: float) -> "Tolerances":
        return Tolerances(self.rank_rel, self.eig_real, self.cluster, residual)

    def to_json(self) -> dict:
        return {"rank_rel": self.rank_rel, "eig_real": self.eig_real,
                "cluster": self.cluster, "residual": self.residual}

    @classmethod
    def from_json(cls, obj: dict) -> "Tolerances":
        return cls(**{k: float(v) for k, v in obj.items()})


@dataclass(frozen=True)
class SpectralData:
    """Real eigenvalue multiset: distinct cluster centers with multiplicities."""

    values: tuple
    multiplicities: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        mults = tuple(int(m) for m in self.multiplicities)
        if len(vals) != len(mults):
            raise ValueError("values and multiplicities differ in length")
        if any(m <= 0 for m in mults):
            raise ValueError("multiplicities must be positive")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly increasing")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "multiplicities", mults)

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    def expanded(self, order="decreasing") -> np.ndarray:
        """Eigenvalues repeated by multiplicity.

        ``order`` is ``"decreasing"``, ``"increasing"`` or an explicit
        permutation of ``range(n)`` applied to the decreasing tuple.
        """
        lam = np.repeat(np.asarray(self.values, dtype=float),
                        self.multiplicities)[::-1].copy()
        if isinstance(order, str):
            if order == "decreasing":
                return lam
            if order == "increasing":
                return lam[::-1].copy()
            raise ValueError(f"unknown order {order!r}")
        perm = np.asarray(order, dtype=int)
        if sorted(perm.tolist()) != list(range(lam.size)):
            raise ValueError("order must be a permutation")
        return lam[perm]

    def to_json(self) -> dict:
        return {"values": list(self.values),
                "multiplicities": list(self.multiplicities)}

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralData":
        return cls(tuple(obj["values"]), tuple(obj["multiplicities"]))


@dataclass(frozen=True)
class JordanType:
    """Per-eigenvalue partitions; ``blocks`` maps center -> partition tuple."""

    blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, part in self.blocks.items():
            part = tuple(int(p) for p in part)
            if any(p <= 0 for p in part) or list(part) != sorted(part, reverse=True):
                raise ValueError(f"not a partition: {part}")
            clean[float(lam)] = part
        object.__setattr__(self, "blocks", dict(sorted(clean.items())))

    @property
    def n(self) -> int:
        return sum(sum(p) for p in self.blocks.values())

    def spectral_data(self) -> SpectralData:
        return SpectralData(tuple(self.blocks), tuple(sum(p) for p in self.blocks.values()))

    def partitions(self) -> tuple:
        return tuple(self.blocks.values())

    def matches(self, other: "JordanType", atol: float = 1e-6) -> bool:
        """Same partitions at matching centers (centers compared to ``atol``)."""
        a, b = list(self.blocks.items()), list(other.blocks.items())
        if len(a) != len(b):
            return False
        return all(abs(la - lb) <= atol * (1 + abs(la)) and pa == pb
                   for (la, pa), (lb, pb) in zip(a, b))

    def to_json(self) -> dict:
        return {"blocks": [[lam, list(p)] for lam, p in self.blocks.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "JordanType":
        return cls({float(lam): tuple(p) for lam, p in obj["blocks"]})


def as_matrix(M, *, square: bool = False) -> np.ndarray:
    """Coerce to a finite complex 2-D array."""
    A = np.asarray(M)
    if A.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got ndim={A.ndim}")
    A = A.astype(complex)
    if not np.all(np.isfinite(A)):
        raise ShapeMismatch("matrix has non-finite entries")
    if square and A.shape[0] != A.shape[1]:
        raise NonSquare(f"matrix is {A.shape[0]}x{A.shape[1]}")
    return A


def _clusters(eigs: np.ndarray, radius: float) -> list:
    if eigs.size == 1:
        return [np.array([0])]
    pts = np.column_stack([eigs.real, eigs.imag])
    labels = fcluster(linkage(pdist(pts), method="single"), t=radius, criterion="distance")
    groups = [np.flatnonzero(labels == lab) for lab in np.unique(labels)]
    return sorted(groups, key=lambda g: eigs[g].real.mean())


def eig_real_check(M, tol: Tolerances = Tolerances()) -> SpectralData:
    """Cluster the eigenvalues of ``M`` and verify that they are real.

    Eigenvalues are grouped by single linkage in the complex plane with
    radius ``tol.cluster * (1 + ||M||)``.  A cluster is accepted when the
    imaginary part of its mean is at most ``tol.eig_real * (1 + ||M||)``.
    Centers within the clustering radius of zero are snapped to zero.

    Raises
    ------
    NotRealSpectrum
        Some cluster center is not real.
    NonSquare
        ``M`` is not square.
    """
    A = as_matrix(M, square=True)
    n = A.shape[0]
    if n == 0:
        return SpectralData((), ())
    s = tol.scale(A)
    radius = tol.cluster * s
    eigs = np.linalg.eigvals(A)
    values, mults = [], []
    for g in _clusters(eigs, radius):
        c = eigs[g].mean()
        if abs(c.imag) > tol.eig_real * s:
            raise NotRealSpectrum(f"eigenvalue cluster at {c:.6g} is not real")
        values.append(0.0 if abs(c.real) <= radius else float(c.real))
        mults.append(len(g))
    # snapping can merge a cluster into zero; fold duplicates
    merged = {}
    for v, m in zip(values, mults):
        merged[v] = merged.get(v, 0) + m
    vals = sorted(merged)
    return SpectralData(tuple(vals), tuple(merged[v] for v in vals))


def rank_tol(M, tol: Tolerances = Tolerances()) -> int:
    """Numerical rank: singular values above ``rank_rel * sigma_max``."""
    A = np.asarray(M)
    if A.size == 0:
        return 0
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol.rank_rel * sv[0]))


def jordan_type(M, tol: Tolerances = Tolerances()) -> JordanType:
    """Jordan type of a matrix with real spectrum.

    For each cluster center ``lam`` the generalized eigenspace is isolated
    by a reordered Schur form.  The nullities of powers of the nilpotent
    part ``N = T11 - lam*I`` are read off a staircase deflation (split off
    ``ker N``, recurse on the induced map of the quotient), so every rank
    decision is a single SVD with cutoff ``rank_rel * max(||N||, ||M||)``.
    The partition follows by conjugation.

    Raises
    ------
    RankAmbiguous
        A singular value lies within a factor 10 of the cutoff, or the
        measured nullities are inconsistent with the multiplicity.
    """
    A = as_matrix(M, square=True)
    spec = eig_real_check(A, tol)
    n = A.shape[0]
    if n == 0:
        return JordanType({})
    radius = tol.cluster * tol.scale(A)
    normM = float(np.linalg.norm(A, 2))
    blocks = {}
    for lam, m in zip(spec.values, spec.multiplicities):
        T, _, sdim = sla.schur(A, output="complex",
                               sort=lambda z, lam=lam: abs(z - lam) <= radius)
        if sdim != m:
            raise RankAmbiguous(f"Schur reordering isolated {sdim} eigenvalues, expected {m}")
        N = T[:m, :m] - lam * np.eye(m)
        ref = max(float(np.linalg.norm(N, 2)), normM)
        if ref == 0.0:
            blocks[lam] = (1,) * m
            continue
        cutoff = tol.rank_rel * ref
        nullity = [0]
        B = N
        while nullity[-1] < m:
            # staircase step: split off ker B and recurse on the induced map on the quotient
            _, sv, Vh = np.linalg.svd(B)
            amb = (sv > cutoff / 10) & (sv < cutoff * 10)
            if np.any(amb):
                raise RankAmbiguous(
                    f"singular value {sv[amb][0]:.3g} within a factor 10 of cutoff {cutoff:.3g}")
            r = int(np.sum(sv > cutoff))
            if r == B.shape[0]:
                raise RankAmbiguous(f"nullity sequence {nullity} stalls at {lam}")
            nullity.append(nullity[-1] + B.shape[0] - r)
            Q = Vh.conj().T
            B = (Vh @ B @ Q)[:r, :r]
        ge = np.diff(nullity)  # number of blocks of size >= k
        if np.any(np.diff(ge) > 0):
            raise RankAmbiguous(f"nullity sequence {nullity} is not concave")
        conj = [int(x) for x in ge]
        blocks[lam] = tuple(sum(1 for c in conj if c > i) for i in range(conj[0]))
    return JordanType(blocks)


def random_orthogonal(n: int, seed) -> np.ndarray:
    """Seeded Haar-distributed real orthogonal matrix (QR with sign fix)."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d


def jordan_block(lam: float, m: int) -> np.ndarray:
    return lam * np.eye(m) + np.eye(m, k=1)


def jordan_matrix(jt: JordanType) -> np.ndarray:
    """Block-diagonal Jordan normal form, centers ascending, parts descending."""
    blocks = [jordan_block(lam, p) for lam, part in jt.blocks.items() for p in part]
    if not blocks:
        return np.zeros((0, 0))
    return sla.block_diag(*blocks)


def charpoly(M) -> np.ndarray:
    """Characteristic polynomial coefficients, leading coefficient 1."""
    A = as_matrix(M, square=True)
    return np.poly(A) if A.shape[0] else np.ones(1)


def charpoly_drift(A, B) -> float:
    """Relative coefficient drift ``max_k |a_k - b_k| / (1 + ||B||)**k``."""
    ca, cb = charpoly(A), charpoly(B)
    s = 1.0 + float(np.linalg.norm(as_matrix(B), 2))
    w = s ** np.arange(ca.size)
    return float(np.max(np.abs(ca - cb) / w))


def matrix_to_json(M) -> dict:
    A = np.asarray(M)
    if A.ndim != 2:
        raise ShapeMismatch("expected a 2-D matrix")
    if np.isrealobj(A) or not np.any(A.imag):
        data = [float(z) for z in np.real(A).ravel()]
    else:
        data = [[float(z.real), float(z.imag)] for z in A.astype(complex).ravel()]
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "data": data}


def matrix_from_json(obj) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; bare numbers are real entries."""
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch(f"malformed matrix object: {exc}") from None
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise ShapeMismatch(f"data length {len(data)} != {rows}x{cols}")
    vals = []
    for z in data:
        if isinstance(z, (list, tuple)):
            if len(z) != 2:
                raise ShapeMismatch("complex entries must be [re, im] pairs")
            vals.append(complex(float(z[0]), float(z[1])))
        else:
            vals.append(complex(float(z), 0.0))
    A = np.array(vals, dtype=complex).reshape(rows, cols)
    if not np.all(np.isfinite(A)):
        raise ShapeMismatch("matrix has non-finite entries")
    return A
