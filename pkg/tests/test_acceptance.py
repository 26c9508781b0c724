"""Acceptance suite: one check per criterion, each reporting a PASS/FAIL line.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import SMALL_PAIRS, blocks, brute_congruences, brute_ideals  # noqa: E402

from semiring_lab import congruences as cg  # noqa: E402
from semiring_lab import products as pr  # noqa: E402
from semiring_lab.cli import main as cli_main  # noqa: E402
from semiring_lab.core import BUILTIN_NAMES, builtin, direct_product  # noqa: E402
from semiring_lab.ideals import enumerate_ideal_masks, ideal_lattice  # noqa: E402
from semiring_lab.lattice import find_pentagon  # noqa: E402
from semiring_lab.malcev import (  # noqa: E402
    SignatureError,
    idempotent_dist0_terms,
    unitary_ddck_terms,
    verify_dist0_scheme,
    verify_ddck_scheme,
)
from semiring_lab.numeric import NumericProduct, closed_form_membership, principal_membership  # noqa: E402

# eleven covering pairs: the vertical runs {0,d} < {0,d,f} < {0,d,e,f,g} and
# {0,b,d,f} < {0,b,d,e,f,g} < S each contribute two covers
S8_IDEALS = {"0", "0b", "0d", "0df", "0bdf", "0abc", "0defg", "0bdefg", "0abcdefg"}
S8_EDGES = {
    ("0", "0b"), ("0", "0d"), ("0b", "0abc"), ("0b", "0bdf"), ("0d", "0df"),
    ("0df", "0bdf"), ("0df", "0defg"), ("0bdf", "0bdefg"), ("0defg", "0bdefg"),
    ("0abc", "0abcdefg"), ("0bdefg", "0abcdefg"),
}

R4D2_SKEW = [
    [("0", "0"), ("0", "1"), ("a", "1")],
    [("0", "0"), ("0", "1"), ("b", "1")],
    [("0", "0"), ("0", "1"), ("c", "1")],
    [("0", "0"), ("0", "1"), ("a", "1"), ("b", "1"), ("c", "1")],
    [("0", "0"), ("a", "0"), ("0", "1"), ("a", "1"), ("b", "1"), ("c", "1")],
    [("0", "0"), ("b", "0"), ("0", "1"), ("a", "1"), ("b", "1"), ("c", "1")],
    [("0", "0"), ("c", "0"), ("0", "1"), ("a", "1"), ("b", "1"), ("c", "1")],
]


class Failed(Exception):
    pass


def require(cond, message):
    if not cond:
        raise Failed(message)


def _product(a, b):
    return direct_product(builtin(a), builtin(b))


def _cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def criterion_1():
    S8 = builtin("S8")
    code, out = _cli("ideals", "builtin:S8", "--lattice")
    require(code == 0, f"exit code {code}")
    require(out.startswith("S8: 9 ideals") and "modular: false" in out, "CLI summary")
    IL = ideal_lattice(S8)
    names = ["".join(S8.names_of(m)) for m in IL.ideals]
    require(set(names) == S8_IDEALS, f"ideals {names}")
    edges = {(names[a], names[b]) for a, b in IL.lattice.hasse}
    require(edges == S8_EDGES, f"hasse edges differ: {sorted(edges ^ S8_EDGES)}")
    pent = find_pentagon(IL.lattice)
    require(pent is not None, "no pentagon")
    return f"9 ideals, {len(edges)} covering edges, pentagon {[names[i] for i in pent]}"


def criterion_2():
    D3 = builtin("D3")
    congs = cg.enumerate_congruences(D3)
    require([str(c) for c in congs] == ["{0}|{a}|{1}", "{0,a}|{1}", "{0}|{a,1}", "{0,a,1}"],
            f"congruences {congs}")
    fam = cg.enumerate_kernels(D3, congs)
    require(fam.lattice.size == 3 and fam.lattice.is_chain(), "kernels are not a 3-chain")
    t, p = cg.kernel_map_join_failure(D3, congs)
    require((str(t), str(p)) == ("{0,a}|{1}", "{0}|{a,1}"), f"witness {t}, {p}")
    require(cg.kernel(cg.join(t, p)) == D3.full_mask, "join kernel is not D3")
    require(D3.format_set(fam.join(cg.kernel(t), cg.kernel(p))) == "{0,a}", "kernel-lattice join")
    return "Con D3 = {Delta, Theta1, Theta2, Nabla}; [0](Theta1 v Theta2) = D3 != {0,a}"


def criterion_3():
    P = _product("R2", "D2")
    IL = ideal_lattice(P.base)
    require(len(IL.ideals) == 5, f"{len(IL.ideals)} ideals")
    require(find_pentagon(IL.lattice) is not None, "no pentagon")
    skew = pr.skew_ideals(P)
    require(skew == [P.mask_of_pairs([("0", "0"), ("0", "1"), ("1", "1")])], f"skew {skew}")
    return "5 ideals forming N5, unique skew ideal {(0,0),(0,1),(1,1)}"


def criterion_4():
    P = _product("R4", "D2")
    n = len(enumerate_ideal_masks(P.base))
    require(n == 17, f"{n} ideals")
    got = set(pr.skew_ideals(P))
    expected = {P.mask_of_pairs(s) for s in R4D2_SKEW}
    require(got == expected, "skew set differs")
    return "17 ideals, the listed 7 skew"


def criterion_5():
    total = 0
    for a, b in [("R2", "D2"), ("R4", "D2"), ("D2", "D2"), ("D2", "D3"), ("S8", "Z2F")]:
        audit = pr.audit_theorem1(_product(a, b))  # raises on a broken chain
        for row in audit.rows:
            c = row.conditions
            require(c["T1.iii"] == c["T1.i"], f"{a}x{b} {row.subject}: (iii) != (i)")
            require(not c["T1.i"] or c["T1.iv"], f"{a}x{b} {row.subject}: (i) without (iv)")
            require(not c["T1.iv"] or c["T1.ii"], f"{a}x{b} {row.subject}: (iv) without (ii)")
        total += len(audit.rows)
    P = _product("R4", "D2")
    target = P.mask_of_pairs([("0", "0"), ("0", "1"), ("a", "1")])
    row = next(r for r in pr.audit_theorem1(P).rows if r.mask == target)
    require(row.conditions["T1.ii"] and not row.conditions["T1.iii"], "strictness witness")
    return f"chain holds on {total} ideals; {row.subject} has (ii) true, (iii) false"


def criterion_6():
    checked = 0
    for a, b in [("R2", "D2"), ("R2", "R2"), ("D2", "D2"), ("D2", "D3"), ("R4", "D2")]:
        P = _product(a, b)
        congs = cg.enumerate_congruences(P.base)
        require({blocks(c) for c in congs} == brute_congruences(P.base), f"{a}x{b}: congruence oracle")
        for theta in congs:
            K = set(P.base.members(cg.kernel(theta)))
            proj = pr.projection_pair(P, theta)
            z1 = P.left.members(cg.kernel(proj.theta1))
            z2 = P.right.members(cg.kernel(proj.theta2))
            strong_def = K == {P.index_of(x, y) for x in z1 for y in z2}
            p1 = {P.pair_of[k][0] for k in K}
            p2 = {P.pair_of[k][1] for k in K}
            direct_def = K == {P.index_of(x, y) for x in p1 for y in p2}
            strong, _ = pr.kernel_strongly_decomposable(P, theta)
            direct, _ = pr.kernel_directly_decomposable(P, theta)
            t4, _ = pr.theorem4_sufficient(P, theta)
            require(strong == strong_def, f"{a}x{b} {theta}: strong condition")
            require(direct == direct_def, f"{a}x{b} {theta}: direct condition")
            require(not t4 or strong, f"{a}x{b} {theta}: sufficient condition without strong")
            checked += 1
    return f"{checked} congruences checked"


def criterion_7():
    for a, b in [("D2", "D2"), ("D2", "D3"), ("Z2F", "Z2F"), ("Z2F", "D2"), ("R2", "Z2F"), ("S8", "Z2F")]:
        require(pr.skew_ideals(_product(a, b)) == [], f"{a}x{b} has skew ideals")
    for name in ("Z2F", "Z3F"):
        require(len(enumerate_ideal_masks(builtin(name))) == 2, f"{name} ideal count")
    require(pr.field_proposition_check(builtin("S8"), builtin("Z2F")), "field check")
    return "no skew ideals in the six products; fields have 2 ideals"


def criterion_8():
    dist0 = idempotent_dist0_terms()
    for name in ("D2", "D3"):
        require(verify_dist0_scheme(builtin(name), dist0).passed, f"dist0 on {name}")
        require(cg.is_distributive_at_zero(builtin(name))[0], f"{name} not distributive at 0")
    fails = verify_dist0_scheme(builtin("R2"), dist0).failures()
    require([f.witness for f in fails] == [{"x": "1"}], f"R2 failures {fails}")
    s, t, u = unitary_ddck_terms()
    for name in ("D2", "D3", "Z2F"):
        require(verify_ddck_scheme(builtin(name), s, t, u).passed, f"ddck on {name}")
    try:
        verify_ddck_scheme(builtin("R2"), s, t, u)
    except SignatureError:
        pass
    else:
        raise Failed("no signature error on R2")
    return "dist0 passes D2, D3, fails R2 at x=1; ddck passes D2, D3, Z2F; R2 signature error"


def criterion_9():
    ctx = NumericProduct(2, 2)
    g = (4, 6)
    require(not principal_membership(ctx, g, (4, 0)), "(4,0) accepted")
    require(not principal_membership(ctx, g, (0, 6)), "(0,6) accepted")
    count = 0
    for q1 in range(0, 241, 2):
        for q2 in range(0, 241, 2):
            require(principal_membership(ctx, g, (q1, q2)) == closed_form_membership(ctx, (q1, q2)),
                    f"disagreement at {(q1, q2)}")
            count += 1
    return f"(4,0), (0,6) rejected; closed form agrees on {count} points"


def criterion_10():
    algebras = [builtin(n) for n in BUILTIN_NAMES] + [_product(a, b).base for a, b in SMALL_PAIRS]
    ideal_checked = cong_checked = 0
    for S in algebras:
        got = {frozenset(S.members(m)) for m in enumerate_ideal_masks(S)}
        require(got == brute_ideals(S), f"{S.name}: ideal oracle")
        ideal_checked += 1
        if S.n <= 8:
            require({blocks(c) for c in cg.enumerate_congruences(S)} == brute_congruences(S),
                    f"{S.name}: congruence oracle")
            cong_checked += 1
    return f"ideals on {ideal_checked} algebras, congruences on {cong_checked}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def evaluate(k: int) -> tuple[bool, str]:
    fn = CRITERIA[k - 1]
    try:
        return True, fn()
    except (Failed, AssertionError) as exc:
        return False, str(exc)


def report_line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, detail = evaluate(k)
    with capsys.disabled():
        print("\n" + report_line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [evaluate(k) for k in range(1, len(CRITERIA) + 1)]
    for k, (ok, detail) in enumerate(results, 1):
        print(report_line(k, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
