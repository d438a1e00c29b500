"""Acceptance criteria 1-12, each exercised through the command-line front end.

Run with pytest, or directly (python3 tests/test_acceptance.py) for the
pass/fail lines alone.
"""
import os
import sys
import tempfile

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from mph import filtration, presentation, strata
from mph.algebra import Field, box_degrees, leq
from mph.frames import frame_of_presentation
from mph.onepar import classic_barcode

from conftest import complex_corpus, corpus, data_path, run_cli, run_json

RESULTS = {}
_TMP = []


def tmpdir():
    if not _TMP:
        _TMP.append(tempfile.mkdtemp(prefix="mph-acceptance-"))
    return _TMP[0]


def write(name, text):
    path = os.path.join(tmpdir(), name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def terms(d):
    """Numerator JSON ({"1,2": c}) as {(1, 2): c}."""
    return {tuple(int(x) for x in k.split(",")): v for k, v in d.items()}


def inf_sorted(pairs):
    return sorted(pairs, key=lambda t: (t[0], float("inf") if t[1] is None else t[1]))


def bar_pairs(report, key="barcode"):
    return inf_sorted([(b["birth"], b["death"]) for b in report[key]])


def hf_at(report, u):
    return {tuple(e["degree"]): e["dim"] for e in report["hf"]}[tuple(u)]


def degs(lst):
    return {tuple(d) for d in lst}


def betti(report, i):
    return {tuple(b["degree"]): b["multiplicity"] for b in report["betti"] if b["i"] == i}


class Checker:
    """Collects named sub-checks so a failing criterion says which part failed."""

    def __init__(self):
        self.failed = []

    def check(self, label, cond):
        if not cond:
            self.failed.append(label)


def record(n, c):
    ok = not c.failed
    line = "criterion %d: %s" % (n, "PASS" if ok else "FAIL (%s)" % "; ".join(c.failed))
    RESULTS[n] = line
    print(line)
    assert ok, line


# ------------------------------------------------------------------ criteria

def criterion_1():
    c = Checker()
    rep = run_json("homology", data_path("fig2.mfsc"), "-i", "1")
    c.check("generator degrees", degs(rep["presentation"]["gens"]) == {(1, 1), (1, 2), (2, 2)})
    c.check("relation degrees", degs(rep["presentation"]["rels"]) == {(3, 1), (2, 2)})
    # [[x1^2, 0], [0, x1], [0, 0]] with columns at (3,1) and (2,2)
    expected = write("c1.gpres", "r 2\nfield q\ngens (1,1) (1,2) (2,2)\nrel (3,1) : 1=1\nrel (2,2) : 2=1\n")
    cmp = run_json("canon", data_path("fig2.mfsc"), "-i", "1", "--compare", expected)
    c.check("canonical form", cmp["equal"] is True)
    summands = {s["description"] for s in rep["decomposition"]["summands"]}
    c.check("decomposition", summands == {"S(-2,-2)", "S(-1,-1)/x1^2", "S(-1,-2)/x1"})
    return c


def criterion_2():
    c = Checker()
    coned = data_path("coned.mfsc")
    rep = run_json("hilbert", coned, "-i", "1")
    c.check("numerator", terms(rep["numerator"]) == {(1, 1): 1, (3, 1): -1, (1, 2): 1, (1, 3): -1, (2, 3): 1})
    c.check("rank", rep["rank"] == 1)
    D = rep["decomposition"]
    c.check("C", D["C"] == 1)
    alpha = {i: a for i, a in enumerate(D["alphas"]) if a}
    beta = {j: b for j, b in enumerate(D["betas"]) if b}
    c.check("t1 terms (t1+t1^2)/(1-t2)", alpha == {1: 1, 2: 1} and beta == {})
    c.check("remainder", terms(D["remainder"]) == {(1, 0): -1, (2, 0): -1, (1, 2): 1})
    hom = run_json("homology", coned, "-i", "1")
    third = [s for s in hom["decomposition"]["summands"] if s["description"] == "S(-1,-2)/<x1,x2>"]
    c.check("third summand", len(third) == 1 and degs(third[0]["deaths"]) == {(2, 2), (1, 3)})
    return c


def criterion_3():
    c = Checker()
    src = data_path("onepar_mixed.gpres")
    rep = run_json("hilbert", src)
    c.check("numerator 1+t^2", terms(rep["numerator"]) == {(0,): 1, (2,): 1})
    c.check("rank", rep["rank"] == 2)
    bc = run_json("restrict", "--dir", "1", src)
    expected = [(2, None), (3, None), (1, 3), (0, 1)]
    c.check("barcode", bar_pairs(bc) == inf_sorted(expected))
    return c


def criterion_4():
    c = Checker()
    src = data_path("sphere.mfsc")
    hom = run_json("homology", src, "-i", "1")
    c.check("H1 = S/<x1^2,x1x2^2>", hom["decomposition"]["text"] == "S/<x1^2,x1*x2^2>")
    res = run_json("resolve", src, "-i", "1")
    c.check("resolution", [betti(res, i) for i in range(3)]
            == [{(0, 0): 1}, {(2, 0): 1, (1, 2): 1}, {(2, 2): 1}])
    hil = run_json("hilbert", src, "-i", "1")
    c.check("numerator", terms(hil["numerator"]) == {(0, 0): 1, (2, 0): -1, (1, 2): -1, (2, 2): 1})
    st = run_json("strata", src, "-i", "1")
    (omega,) = st["elements"]
    c.check("born (0,0)", omega["birth"] == [0, 0])
    c.check("deaths", degs(omega["deaths"]) == {(2, 0), (1, 2)})
    c.check("support dimension", omega["support_dimension"] == 1)
    c.check("radical <x1>", omega["minimal_primes"] == ["⟨x_1⟩"])
    return c


def criterion_5():
    c = Checker()
    a = data_path("triangle_filled.mfsc")
    b = data_path("triangle_open.mfsc")
    c.check("M_A = S/<x1,x2>", run_json("homology", a, "-i", "1")["decomposition"]["text"] == "S/<x1,x2>")
    ha = run_json("hilbert", a, "-i", "1")
    c.check("M_A numerator", terms(ha["numerator"]) == {(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1})
    c.check("HS(M_A) = 1", [(tuple(e["degree"]), e["dim"]) for e in ha["hf"] if e["dim"]] == [((0, 0), 1)])
    hb = run_json("hilbert", b, "-i", "1")
    c.check("M_B numerator", terms(hb["numerator"]) == {(1, 0): 1, (0, 1): 1, (1, 1): -2})
    return c


def criterion_6():
    c = Checker()
    M, N = data_path("free_pair.gpres"), data_path("four_strata.gpres")
    hm, hn = run_json("hilbert", M), run_json("hilbert", N)
    want = {(1, 1): 1, (2, 2): 1}
    c.check("numerators", terms(hm["numerator"]) == want == terms(hn["numerator"]))
    c.check("Ass(M)", run_json("ass", M)["ass"] == ["(0)"])
    c.check("Ass(N)", run_json("ass", N)["ass"] == ["(0)", "⟨x_1⟩", "⟨x_2⟩", "⟨x_1,x_2⟩"])
    chains = run_json("strata", N)["chains"]
    c.check("chains", sorted(chains) == [["(0)", "⟨x_1⟩", "⟨x_1,x_2⟩"], ["(0)", "⟨x_2⟩", "⟨x_1,x_2⟩"]])
    for name, rep in (("M", hm), ("N", hn)):
        D = rep["decomposition"]
        c.check("C=2 for " + name, D["C"] == 2)
        c.check("terms for " + name, D["alphas"] == [0, 1] and D["betas"] == [0, 1]
                and terms(D["remainder"]) == {(1, 0): -1, (0, 1): -1, (1, 1): -1})
    return c


def criterion_7():
    c = Checker()
    got = [run_json("cprank", "--prime", "x1", data_path(n + ".gpres"))["cp_rank"]
           for n in ("shifted_x1", "x1_squared", "x1_twice")]
    c.check("cp ranks %s" % got, got == [1, 2, 2])
    return c


def criterion_8():
    c = Checker()
    # (t1^2 t2 + 2 t1 t2^2)/(1-t2) + t1 t2, over the common denominator (1-t2)
    want = {(2, 1): 1, (1, 2): 1, (1, 1): 1}
    for src in (["-i", "1", data_path("fig2.mfsc")], [data_path("fig2_h1.gpres")]):
        rep = run_json("cprank", "--prime", "x1", *src)
        c.check("H0 series", terms(rep["h0_numerator"]) == want)
        c.check("cp_rank", rep["cp_rank"] == 3)
    return c


def criterion_9():
    c = Checker()
    M, N = data_path("lw_M.gpres"), data_path("lw_N.gpres")
    same = True
    for u in box_degrees((3, 3)):
        for v in box_degrees((3, 3)):
            if leq(u, v):
                a = run_json("rankinv", "--from", ",".join(map(str, u)), "--to", ",".join(map(str, v)), M)
                b = run_json("rankinv", "--from", ",".join(map(str, u)), "--to", ",".join(map(str, v)), N)
                same = same and a["rank"] == b["rank"]
    c.check("rank invariants agree", same)
    c.check("Ass = {(0)}", run_json("ass", M)["ass"] == ["(0)"] == run_json("ass", N)["ass"])
    dm, dn = run_json("diagonal", M), run_json("diagonal", N)
    c.check("diagonal(M) = {[1,inf),[2,inf),[1,2)}",
            bar_pairs(dm) == inf_sorted([(1, None), (2, None), (1, 2)]))
    c.check("diagonal(N) = {[1,inf),[2,inf)} as stated; computed %s"
            % bar_pairs(dn), bar_pairs(dn) == inf_sorted([(1, None), (2, None)]))
    c.check("beta1(M)", betti(run_json("resolve", M), 1) == {(1, 1): 1})
    c.check("beta1(N)", betti(run_json("resolve", N), 1) == {})
    return c


def criterion_10():
    c = Checker()
    src = data_path("diagonal_only.gpres")
    c.check("line restriction is zero", run_json("restrict", "--dir", "1,1", src)["barcode"] == [])
    rep = run_json("diagonal", src)
    c.check("diagonal bar [3,4)", rep["barcode"] == [{"birth": 3, "death": 4}])
    c.check("not isomorphic", rep["isomorphic_to_line_restriction"] is False)
    return c


def criterion_11():
    c = Checker()
    qq = corpus()
    paths = [write("p%03d.gpres" % k, presentation.dumps(P)) for k, P in enumerate(qq)]
    ok_a = ok_b = True
    for P, path in zip(qq, paths):
        h = run_json("hilbert", path)
        ones = sum(terms(h["numerator"]).values())
        d = run_json("diagonal", path)
        ok_a = ok_a and h["rank"] == hf_at(h, h["box"]) == ones == d["infinite_bars"]
        r = run_json("resolve", path)
        ok_b = ok_b and r["euler_check"] is True and r["resolution"]["length"] <= P.r
    c.check("(a) rank triple agreement", ok_a)
    c.check("(b) resolution length and Euler identity", ok_b)

    f2 = Field(2)
    ok_c, checked = True, 0
    for k, P in enumerate(corpus(seed=99, field=f2)):
        M = frame_of_presentation(P)
        if M.total_dimension() > 30:
            continue
        path = write("f%03d.gpres" % k, presentation.dumps(P))
        rep = run_json("ass", path, "--field", "f2")
        ok_c = ok_c and rep["ass"] == [str(p) for p in strata.brute_force_ass(M).primes]
        checked += 1
    c.check("(c) brute-force Ass over F2", ok_c and checked > 0)

    ok_d = True
    for P, path in zip(qq, paths):
        M = frame_of_presentation(P)
        ass = strata.associated_primes(M)
        ok_d = ok_d and run_json("ass", path)["ass"] == [str(p) for p in ass.primes]
        degs_ = list(box_degrees(M.top))
        ok_d = ok_d and all(strata.prop_rank_drop_holds(M, ass, u, v)
                            for u in degs_ for v in degs_ if leq(u, v))
    c.check("(d) rank drop implies an associated prime", ok_d)

    ok_e = True
    for k, K in enumerate(complex_corpus()):
        path = write("k%03d.mfsc" % k, filtration.dumps(K))
        for i in range(2):
            rep = run_json("restrict", "--dir", "1", "-i", i, path)
            ok_e = ok_e and rep["barcode"] == classic_barcode(K, i).to_json()
    c.check("(e) one-parameter oracle", ok_e)
    return c


def criterion_12():
    c = Checker()
    src = data_path("rp2.mfsc")
    q = run_json("resolve", src, "-i", "1")
    f = run_json("resolve", src, "-i", "1", "--field", "f2")
    c.check("fields reported", q["field"] == "QQ" and f["field"] == "F2")
    c.check("Betti numbers differ", q["betti"] != f["betti"])
    return c


CRITERIA = {n: globals()["criterion_%d" % n] for n in range(1, 13)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    record(n, CRITERIA[n]())


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        try:
            record(n, CRITERIA[n]())
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
