"""Partitions, dominance order and the orbit correspondence table for gl_n."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .errors import SizeMismatch
from .linalg import JordanType, Tolerances, jordan_type

__all__ = [
    "partitions",
    "conjugate",
    "dominance_leq",
    "OrbitPoset",
    "KSTable",
    "ks_table_gl",
    "orbit_label",
    "poset_to_dot",
    "table_text",
]


def partitions(n: int) -> list:
    """All partitions of ``n`` in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return list(gen(n, n))


def conjugate(lam) -> tuple:
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominance_leq(lam, mu) -> bool:
    """``lam <= mu`` in dominance order (partial sums of ``lam`` bounded by ``mu``)."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise SizeMismatch(f"|{lam}| != |{mu}|")
    k = max(len(lam), len(mu))
    a = list(accumulate(lam + (0,) * (k - len(lam))))
    b = list(accumulate(mu + (0,) * (k - len(mu))))
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class OrbitPoset:
    """Orbits labelled by partitions with the closure (dominance) relation."""

    labels: tuple
    leq: np.ndarray

    def check_axioms(self) -> dict:
        R = np.asarray(self.leq, dtype=bool)
        refl = bool(np.all(np.diag(R)))
        anti = bool(not np.any(R & R.T & ~np.eye(len(R), dtype=bool)))
        Ri = R.astype(int)
        trans = bool(np.all(~((Ri @ Ri) > 0) | R))
        return {"reflexive": refl, "antisymmetric": anti, "transitive": trans}

    def covers(self) -> list:
        """Hasse-diagram edges ``(i, j)`` with ``labels[i] < labels[j]`` covering."""
        R = np.asarray(self.leq, dtype=bool)
        m = len(self.labels)
        out = []
        for i in range(m):
            for j in range(m):
                if i != j and R[i, j] and not any(
                        k not in (i, j) and R[i, k] and R[k, j] for k in range(m)):
                    out.append((i, j))
        return out


@dataclass(frozen=True, eq=False)
class KSTable:
    n: int
    pairs: tuple
    real_poset: OrbitPoset
    symmetric_poset: OrbitPoset

    def to_json(self) -> dict:
        return {"n": self.n,
                "pairs": [[list(a), list(b)] for a, b in self.pairs],
                "closure_edges": [[list(self.real_poset.labels[i]),
                                   list(self.real_poset.labels[j])]
                                  for i, j in self.real_poset.covers()]}


def _poset(labels) -> OrbitPoset:
    R = np.array([[dominance_leq(a, b) for b in labels] for a in labels], dtype=bool)
    return OrbitPoset(tuple(labels), R)


def ks_table_gl(n: int) -> KSTable:
    """Real nilpotent orbits and symmetric nilpotent orbits of gl_n, paired.

    Both sides are labelled by partitions and the correspondence is the
    identity on labels; the pairing is cross-checked elsewhere against
    traced endpoints.
    """
    if n < 1:
        raise ValueError("n must be positive")
    labels = partitions(n)
    return KSTable(n, tuple((p, p) for p in labels), _poset(labels), _poset(labels))


def orbit_label(M, tol: Tolerances = Tolerances()) -> JordanType:
    return jordan_type(M, tol)


def poset_to_dot(poset: OrbitPoset, name: str = "closure") -> str:
    def lab(p):
        return "(" + ",".join(str(x) for x in p) + ")"

    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for p in poset.labels:
        lines.append(f'  "{lab(p)}";')
    for i, j in poset.covers():
        lines.append(f'  "{lab(poset.labels[i])}" -> "{lab(poset.labels[j])}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def table_text(table: KSTable) -> str:
    w = max(len(str(a)) for a, _ in table.pairs)
    rows = [f"{'real orbit':<{max(w, 10)}}  symmetric orbit"]
    rows += [f"{str(a):<{max(w, 10)}}  {b}" for a, b in table.pairs]
    return "\n".join(rows) + "\n"
