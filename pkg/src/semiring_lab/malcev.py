"""Terms over {+, *, 0, 1}, exhaustive identity checking and Mal'cev schemes."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence, Union

from .core import FiniteSemiring, is_unitary

ALIASES = {"x": 1, "y": 2, "z": 3, "u": 4, "v": 5}
_ALIAS_OF = {k: name for name, k in ALIASES.items()}


class SignatureError(ValueError):
    """A term uses the constant 1 on a semiring without unit."""


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    k: int

    def __str__(self):
        return _ALIAS_OF.get(self.k, f"x{self.k}")


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Plus:
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left}+{self.right}"


@dataclass(frozen=True)
class Times:
    left: Term
    right: Term

    def __str__(self):
        def wrap(t):
            return f"({t})" if isinstance(t, Plus) else str(t)
        return f"{wrap(self.left)}*{wrap(self.right)}"


Term = Union[Var, Zero, One, Plus, Times]


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.k}
    if isinstance(t, (Plus, Times)):
        return variables(t.left) | variables(t.right)
    return set()


def uses_one(t: Term) -> bool:
    if isinstance(t, One):
        return True
    if isinstance(t, (Plus, Times)):
        return uses_one(t.left) or uses_one(t.right)
    return False


def substitute(t: Term, args: Sequence[Term]) -> Term:
    """Replace variable k by ``args[k-1]``."""
    if isinstance(t, Var):
        if t.k > len(args):
            raise ValueError(f"variable {t} outside arity {len(args)}")
        return args[t.k - 1]
    if isinstance(t, Plus):
        return Plus(substitute(t.left, args), substitute(t.right, args))
    if isinstance(t, Times):
        return Times(substitute(t.left, args), substitute(t.right, args))
    return t


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x\d+)|([xyzuv])|([01])|([+*()]))")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected input at {text[pos:]!r}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return tokens


def parse_term(text: str) -> Term:
    """Parse e.g. ``x*z + y*u``; ``*`` binds tighter than ``+``."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermSyntaxError(f"unexpected end of term {text!r}")
        pos += 1
        return tok

    def atom():
        tok = take()
        if tok == "(":
            t = expr()
            if take() != ")":
                raise TermSyntaxError(f"missing ')' in {text!r}")
            return t
        if tok == "0":
            return Zero()
        if tok == "1":
            return One()
        if tok in ALIASES:
            return Var(ALIASES[tok])
        if tok.startswith("x"):
            k = int(tok[1:])
            if k < 1:
                raise TermSyntaxError("variables are numbered from x1")
            return Var(k)
        raise TermSyntaxError(f"unexpected {tok!r} in {text!r}")

    def product():
        t = atom()
        while peek() == "*":
            take()
            t = Times(t, atom())
        return t

    def expr():
        t = product()
        while peek() == "+":
            take()
            t = Plus(t, product())
        return t

    result = expr()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input {tokens[pos:]} in {text!r}")
    return result


# -- evaluation ----------------------------------------------------------------

def _require_signature(S: FiniteSemiring, terms: Sequence[Term]) -> int | None:
    one = is_unitary(S)
    if one is None and any(uses_one(t) for t in terms):
        raise SignatureError(f"{S.name} has no unit but a term uses the constant 1")
    return one


def _eval(S: FiniteSemiring, t: Term, assignment: Sequence[int], one: int | None) -> int:
    if isinstance(t, Var):
        return assignment[t.k - 1]
    if isinstance(t, Zero):
        return S.zero
    if isinstance(t, One):
        return one  # type: ignore[return-value]
    left = _eval(S, t.left, assignment, one)
    right = _eval(S, t.right, assignment, one)
    table = S.add if isinstance(t, Plus) else S.mul
    return table[left][right]


def eval_term(S: FiniteSemiring, t: Term, assignment: Sequence[int]) -> int:
    one = _require_signature(S, [t])
    needed = max(variables(t), default=0)
    if len(assignment) < needed:
        raise ValueError(f"term {t} needs {needed} variables, got {len(assignment)}")
    return _eval(S, t, assignment, one)


def check_identity(
    S: FiniteSemiring, lhs: Term, rhs: Term, arity: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Evaluate both sides under all n**arity assignments; first failure is returned."""
    one = _require_signature(S, [lhs, rhs])
    if max(variables(lhs) | variables(rhs), default=0) > arity:
        raise ValueError(f"identity {lhs} = {rhs} uses more than {arity} variables")
    for assignment in itertools.product(range(S.n), repeat=arity):
        if _eval(S, lhs, assignment, one) != _eval(S, rhs, assignment, one):
            return False, assignment
    return True, None


# -- schemes -------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityResult:
    name: str
    holds: bool
    witness: dict[str, str] | None = None


@dataclass(frozen=True)
class SchemeReport:
    scheme: str
    identities: tuple[IdentityResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.identities)

    def failures(self) -> list[IdentityResult]:
        return [r for r in self.identities if not r.holds]


X, Y = Var(1), Var(2)


def _check(S: FiniteSemiring, name: str, lhs: Term, rhs: Term) -> IdentityResult:
    # identities below are in x, y only; the witness names just the variables that occur
    ok, assignment = check_identity(S, lhs, rhs, 2)
    if ok:
        return IdentityResult(name, True)
    used = sorted(variables(lhs) | variables(rhs))
    return IdentityResult(name, False, {str(Var(k)): S.elem_names[assignment[k - 1]] for k in used})


def verify_dist0_scheme(S: FiniteSemiring, terms: Sequence[Term]) -> SchemeReport:
    """Identities characterising distributivity at 0 for binary terms t0..tn."""
    n = len(terms) - 1
    if n < 1:
        raise ValueError("need at least two terms t0, t1")
    _require_signature(S, terms)

    def t(i, a, b):
        return substitute(terms[i], [a, b])

    results = [_check(S, "t0(x,y) = 0", terms[0], Zero())]
    results += [_check(S, f"t{i}(0,y) = 0", t(i, Zero(), Y), Zero()) for i in range(n + 1)]
    for i in range(n):
        if i % 2 == 0:
            results.append(_check(S, f"t{i}(x,0) = t{i + 1}(x,0)", t(i, X, Zero()), t(i + 1, X, Zero())))
        else:
            results.append(_check(S, f"t{i}(x,x) = t{i + 1}(x,x)", t(i, X, X), t(i + 1, X, X)))
    results.append(_check(S, f"t{n}(x,y) = x", terms[n], X))
    return SchemeReport("dist0", tuple(results))


def verify_ddck_scheme(
    S: FiniteSemiring, s: Sequence[Term], t: Sequence[Term], u: Sequence[Term]
) -> SchemeReport:
    """Identities for directly decomposable congruence kernels.

    ``s`` and ``t`` hold m binary terms each, ``u`` holds n terms of arity m+2.
    """
    m, n = len(s), len(u)
    if m < 1 or n < 1 or len(t) != m:
        raise ValueError("need m >= 1 terms in s and in t, and n >= 1 terms in u")
    _require_signature(S, [*s, *t, *u])
    s_xy = [substitute(term, [X, Y]) for term in s]
    t_xy = [substitute(term, [X, Y]) for term in t]

    def U(i, a, b, tail):
        return substitute(u[i - 1], [a, b, *tail])

    results = [
        _check(S, "u1(x,y,s) = x", U(1, X, Y, s_xy), X),
        _check(S, "u1(y,x,t) = x", U(1, Y, X, t_xy), X),
    ]
    for i in range(1, n):
        results.append(_check(S, f"u{i}(y,x,s) = u{i + 1}(x,y,s)", U(i, Y, X, s_xy), U(i + 1, X, Y, s_xy)))
    for i in range(1, n):
        results.append(_check(S, f"u{i}(x,y,t) = u{i + 1}(y,x,t)", U(i, X, Y, t_xy), U(i + 1, Y, X, t_xy)))
    results += [
        _check(S, f"u{n}(y,x,s) = x", U(n, Y, X, s_xy), X),
        _check(S, f"u{n}(x,y,t) = y", U(n, X, Y, t_xy), Y),
    ]
    return SchemeReport("ddck", tuple(results))


DIST0_IDEMPOTENT = ("0", "x*y", "x")
DDCK_UNITARY = {
    "s": ("1", "0", "0"),
    "t": ("0", "1", "y"),
    "u": ("x*z + y*u", "y*z + v"),
}


def idempotent_dist0_terms() -> list[Term]:
    return [parse_term(s) for s in DIST0_IDEMPOTENT]


def unitary_ddck_terms() -> tuple[list[Term], list[Term], list[Term]]:
    return tuple([parse_term(x) for x in DDCK_UNITARY[k]] for k in ("s", "t", "u"))  # type: ignore[return-value]
