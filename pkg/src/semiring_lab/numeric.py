"""Principal ideals of products a1N x a2N of numeric semirings.

The ideal generated by g is gN + g(a1N x a2N), i.e. all pairs
(k*g1 + g1*s1, k*g2 + g2*s2) with k >= 0 and s_i in a_iN.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class NumericProduct:
    a1: int
    a2: int

    def __post_init__(self):
        if self.a1 < 1 or self.a2 < 1:
            raise DomainError("bases must be positive integers")

    @property
    def bases(self) -> tuple[int, int]:
        return self.a1, self.a2

    def check_carrier(self, pair: tuple[int, int], label: str = "element") -> None:
        for value, base in zip(pair, self.bases):
            if value < 0 or value % base:
                raise DomainError(f"{label} {pair} is not in {self.a1}N x {self.a2}N")


def principal_membership(ctx: NumericProduct, g: tuple[int, int], q: tuple[int, int]) -> bool:
    """Is q in the ideal generated by g?

    Coordinate i needs q_i = g_i * (k + s_i) with s_i a multiple of a_i. For
    g_i > 0 that forces k <= q_i // g_i, so k ranges over a finite interval;
    g_i == 0 only admits q_i == 0.
    """
    ctx.check_carrier(g, "generator")
    ctx.check_carrier(q, "query")
    bounds = []
    for gi, qi in zip(g, q):
        if gi == 0:
            if qi != 0:
                return False
        else:
            if qi % gi:
                return False
            bounds.append(qi // gi)
    if not bounds:
        return True
    for k in range(min(bounds) + 1):
        if all(
            gi == 0 or (qi // gi - k) % ai == 0
            for gi, qi, ai in zip(g, q, ctx.bases)
        ):
            return True
    return False


def closed_form_membership(ctx: NumericProduct, q: tuple[int, int]) -> bool:
    """Membership in I(4,6) of 2N x 2N via (8N x 12N) u ((4+8N) x (6+12N))."""
    if ctx.bases != (2, 2):
        raise DomainError("the closed form is stated for 2N x 2N only")
    ctx.check_carrier(q, "query")
    q1, q2 = q
    if q1 % 8 == 0 and q2 % 12 == 0:
        return True
    return q1 >= 4 and (q1 - 4) % 8 == 0 and q2 >= 6 and (q2 - 6) % 12 == 0
