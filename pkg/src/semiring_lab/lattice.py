"""Finite lattices given by their order relation.

Used for ideal, congruence and kernel lattices. Nodes are integers
``0..size-1``; ``labels`` carries whatever the caller wants printed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence


class NotALattice(ValueError):
    pass


@dataclass(frozen=True)
class FiniteLattice:
    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    hasse: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    @property
    def bottom(self) -> int:
        return next(a for a in range(self.size) if all(self.leq[a]))

    @property
    def top(self) -> int:
        return next(a for a in range(self.size) if all(row[a] for row in self.leq))

    def is_chain(self) -> bool:
        return all(self.leq[a][b] or self.leq[b][a] for a in range(self.size) for b in range(self.size))


def _bound(leq, a, b, upper: bool) -> int:
    n = len(leq)
    if upper:
        cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
        # the least upper bound, if any, has the smallest down-set
        best = min(cands, key=lambda c: sum(leq[d][c] for d in range(n)), default=None)
        ok = best is not None and all(leq[best][d] for d in cands)
    else:
        cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
        best = min(cands, key=lambda c: sum(leq[c]), default=None)
        ok = best is not None and all(leq[d][best] for d in cands)
    if not ok:
        kind = "join" if upper else "meet"
        raise NotALattice(f"no unique {kind} for nodes {a}, {b}")
    return best


def hasse_edges(leq: Sequence[Sequence[bool]]) -> list[tuple[int, int]]:
    """Covering pairs (lower, upper): the transitive reduction of a partial order."""
    n = len(leq)
    edges = []
    for a, b in itertools.permutations(range(n), 2):
        if leq[a][b] and not any(
            c != a and c != b and leq[a][c] and leq[c][b] for c in range(n)
        ):
            edges.append((a, b))
    return sorted(edges)


def build_lattice(
    labels: Sequence[str],
    leq: Callable[[int, int], bool],
    join: Callable[[int, int], int] | None = None,
    meet: Callable[[int, int], int] | None = None,
) -> FiniteLattice:
    """Tabulate a lattice from an order predicate.

    If ``join``/``meet`` are supplied they are used to fill the tables (and the
    results are checked against the order); otherwise bounds are found by search.
    """
    n = len(labels)
    rel = tuple(tuple(bool(leq(a, b)) for b in range(n)) for a in range(n))
    jt, mt = [], []
    for a in range(n):
        jrow, mrow = [], []
        for b in range(n):
            j = join(a, b) if join else _bound(rel, a, b, True)
            m = meet(a, b) if meet else _bound(rel, a, b, False)
            if join and j != _bound(rel, a, b, True):
                raise NotALattice(f"supplied join of {a}, {b} is not the least upper bound")
            if meet and m != _bound(rel, a, b, False):
                raise NotALattice(f"supplied meet of {a}, {b} is not the greatest lower bound")
            jrow.append(j)
            mrow.append(m)
        jt.append(tuple(jrow))
        mt.append(tuple(mrow))
    return FiniteLattice(tuple(labels), rel, tuple(jt), tuple(mt), tuple(hasse_edges(rel)))


def is_modular(L: FiniteLattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Check a <= b implies a v (x ^ b) == (a v x) ^ b; witness is (a, b, x)."""
    J, M = L.join, L.meet
    for a, b in itertools.product(range(L.size), repeat=2):
        if not L.leq[a][b]:
            continue
        for x in range(L.size):
            if J[a][M[x][b]] != M[J[a][x]][b]:
                return False, (a, b, x)
    return True, None


def is_distributive(L: FiniteLattice) -> tuple[bool, tuple[int, int, int] | None]:
    J, M = L.join, L.meet
    for a, b, c in itertools.product(range(L.size), repeat=3):
        if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
            return False, (a, b, c)
    return True, None


def find_pentagon(L: FiniteLattice) -> tuple[int, int, int, int, int] | None:
    """Return (bottom, top, x, y, z) spanning an N5 sublattice, or None.

    x < y, z incomparable to both, x v z = y v z = top, x ^ z = y ^ z = bottom.
    """
    J, M = L.join, L.meet
    for x, y in itertools.product(range(L.size), repeat=2):
        if not L.lt(x, y):
            continue
        for z in range(L.size):
            if L.leq[z][y] or L.leq[y][z] or L.leq[z][x] or L.leq[x][z]:
                continue
            top, bottom = J[x][z], M[x][z]
            if J[y][z] == top and M[y][z] == bottom:
                return bottom, top, x, y, z
    return None


def to_dot(L: FiniteLattice, name: str = "lattice") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i, label in enumerate(L.labels):
        lines.append(f'  n{i} [label="{label}"];')
    for lo, hi in L.hasse:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
