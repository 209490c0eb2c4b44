"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline.
Tolerances and runtime budgets are pinned here; nothing is deferred to
later calibration.
"""

import cmath
import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import jsonschema
import numpy as np

from conftest import basis_words_up_to, random_element
from qheis.algebra import (
    A,
    B,
    BasisWord,
    C,
    Element,
    I,
    bracket,
    element_power,
    multiply,
    multiply_cascade,
    normalize,
)
from qheis.cli import main
from qheis.expr import element_text, evaluate
from qheis.lie import (
    LaurentPoly,
    calkin_image,
    decompose,
    gamma,
    is_compact,
    lie_surrogate,
    surrogate_residual,
    verify_fredholm_relations,
    verify_identity_suite,
)
from qheis.ratfun import RF_ONE_MINUS_Q, RF_Q, RatFun
from qheis.rewrite import FreeElement, RuleSet, check_confluence
from qheis.schemas import OUTPUT_SCHEMA
from qheis.spectral import (
    NumericQ,
    apply_numeric,
    coherent_vector,
    lower_index_est,
    matrix,
    op_norm,
    spectral_radius_est,
    spectrum_facts,
)
from test_cli import COMMANDS

ONE = RatFun.one()
INV = ONE / RF_ONE_MINUS_Q
HALF = NumericQ(Fraction(1, 2))
SQRT2 = math.sqrt(2)


@contextmanager
def criterion(number: int, description: str, budget: float = None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {description}")
        raise
    elapsed = time.monotonic() - start
    if budget is not None:
        assert elapsed < budget, (
            f"criterion {number} exceeded its runtime budget: "
            f"{elapsed:.2f}s >= {budget}s"
        )
    print(f"PASS criterion {number}: {description} ({elapsed:.2f}s)")


def test_criterion_01_defining_relations():
    with criterion(1, "defining relations normalize to zero exactly", budget=1.0):
        assert normalize(multiply(A, B) - RF_Q * multiply(B, A) - I).is_zero()
        assert normalize(multiply(A, B) - multiply(B, A) - C).is_zero()
        assert normalize(multiply(A, C) - RF_Q * multiply(C, A)).is_zero()
        assert normalize(multiply(C, B) - RF_Q * multiply(B, C)).is_zero()


def test_criterion_02_oracle_equivalence():
    with criterion(
        2, "engine product equals cascade product on all monomial pairs, b,k,a <= 3",
        budget=30.0,
    ):
        words = basis_words_up_to(3)
        assert len(words) == 28
        for x in words:
            ex = Element({x: ONE})
            for y in words:
                ey = Element({y: ONE})
                assert multiply(ex, ey) == multiply_cascade(ex, ey), (x, y)


def test_criterion_03_confluence(capsys):
    with criterion(
        3,
        "printed rules fail confluence exactly at BAC/CBA; completed rules "
        "are confluent through length 6",
        budget=30.0,
    ):
        printed = check_confluence(RuleSet.printed(), 3)
        assert [r.word_text for r in printed.unresolvable] == ["BAC", "CBA"]
        stuck = FreeElement({("B", "C", "A"): RF_Q})
        reduced = FreeElement({("C",): INV, ("C", "C"): -INV})
        for rep in printed.unresolvable:
            assert set(rep.outcomes) == {stuck, reduced}
        completed = check_confluence(RuleSet.completed(), 6)
        assert completed.unresolvable == ()
        assert completed.confluent_up_to_length

        # the same verdicts through the command-line surface
        code = main(["verify", "confluence", "--rules", "printed", "--maxlen", "3", "--json"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["result"]["unresolvable"] == ["BAC", "CBA"]
        bac = next(a for a in doc["result"]["ambiguities"] if a["word"] == "BAC")
        assert len(bac["outcomes"]) == 2
        code = main(["verify", "confluence", "--rules", "completed", "--maxlen", "6", "--json"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["result"]["confluent"] is True
        assert doc["result"]["unresolvable"] == []


def test_criterion_04_bracket_identities():
    with criterion(
        4,
        "monomial rebuilds hold exactly for k,l <= 3; gamma reports carry "
        "exact differences and match the numeric diagonal oracle to 1e-12",
        budget=10.0,
    ):
        reports = verify_identity_suite(3, 3)
        by_id = {}
        for r in reports:
            by_id.setdefault(r.identity, []).append(r)
        assert all(r.verdict for r in by_id["ck-al-bracket-build"])
        assert all(r.verdict for r in by_id["bl-ck-bracket-build"])
        assert len(by_id["gamma-closed-form"]) == 4
        assert len(by_id["ck-from-gamma-sum"]) == 4
        for r in by_id["gamma-closed-form"] + by_id["ck-from-gamma-sum"]:
            assert r.difference == r.lhs - r.rhs  # exact difference present

        # independent numeric oracle: rebuild gamma(k) from floating matrix
        # commutators and compare diagonals with the symbolic result
        N = 25
        ma = matrix(A, HALF, N).data
        mb = matrix(B, HALF, N).data
        mc = ma @ mb - mb @ ma

        def mbracket(x, y):
            return x @ y - y @ x

        for k in range(4):
            g = gamma(k)
            assert all(bw.b == 0 and bw.a == 0 for bw in g.terms)  # diagonal
            t = mbracket(mc, ma)
            for _ in range(k):
                t = -mbracket(mc, t)
            num = mbracket(mb, t)
            for n in range(11):
                sym = apply_numeric(g, n, HALF).get(n, 0.0)
                assert abs(num[n, n] - sym) < 1e-12, (k, n)


def test_criterion_05_surrogate_residuals():
    with criterion(
        5,
        "surrogate residuals are exactly the zero ket image for "
        "l in 2..4, k in 1..3, n in 0..6, both sides",
        budget=5.0,
    ):
        for side in ("A", "B"):
            for l in (2, 3, 4):
                for k in (1, 2, 3):
                    for n in range(7):
                        assert surrogate_residual(ONE, side, l, n, k).is_zero()
                        y = lie_surrogate(ONE, side, l, n, k)
                        assert decompose(y).e_part.is_zero()


def test_criterion_06_calkin_algebra():
    with criterion(
        6,
        "Laurent image is a homomorphism with kernel the compact elements; "
        "image of A and the invertibility relations are exact",
    ):
        rng = random.Random(20260810)
        for _ in range(100):
            x, y = random_element(rng), random_element(rng)
            assert calkin_image(multiply(x, y)) == calkin_image(x) * calkin_image(y)
        assert calkin_image(A) == LaurentPoly.monomial(-1, INV)
        left, right = verify_fredholm_relations()
        assert left.verdict and right.verdict
        for _ in range(200):
            x = random_element(rng)
            assert is_compact(x) == calkin_image(x).is_zero()


def test_criterion_07_spectral_numerics():
    with criterion(
        7,
        "diagonals, norms, spectral radius, and lower index at q = 1/2 all "
        "match their closed forms at the pinned tolerances",
        budget=60.0,
    ):
        for k in range(1, 4):
            m = matrix(element_power(C, k), HALF, 50)
            diag = np.diag(m.data)
            expected = np.array([0.5 ** (k * n) for n in range(50)])
            assert np.max(np.abs(diag - expected)) < 1e-12
        for l in range(1, 4):
            value = op_norm(element_power(B, l), HALF, 200)
            assert abs(value - 2.0 ** (l / 2)) < 1e-8, (l, value)
        for k in range(1, 4):
            assert abs(op_norm(element_power(C, k), HALF, 50) - 1.0) < 1e-12
        radius = spectral_radius_est(HALF, 50, 500)
        assert abs(radius[-1] - SQRT2) < 1e-6
        lower = lower_index_est(HALF, 500, 520)
        assert abs(lower[499] - SQRT2) / SQRT2 < 0.01


def test_criterion_08_point_spectrum_witnesses():
    with criterion(
        8,
        "eigenvector residuals vanish inside the disk and the spectral "
        "descriptors are exactly as stated",
    ):
        for c in (0.0, 0.7, 1.0, 0.9 * SQRT2 * cmath.exp(1j * math.pi / 3)):
            w = coherent_vector(c, HALF, 300)
            assert w.residual < 1e-8, c
            assert not w.outside_disk
        b = spectrum_facts("B", q0=HALF)
        assert b.point_spectrum == "empty"
        assert b.approx_point_spectrum == "circle"
        assert b.compression_spectrum == "open-disk"
        assert b.radius_sq == INV
        a = spectrum_facts("A", q0=HALF)
        assert a.point_spectrum == "open-disk"
        assert a.approx_point_spectrum == "closed-disk"
        assert a.compression_spectrum == "empty"
        assert a.radius_sq == INV
        for k in (1, 2, 3):
            ck = spectrum_facts("C", k=k, q0=HALF)
            assert ck.point_spectrum == "eigenvalue-list"
            assert ck.approx_point_spectrum == "closure-of-eigenvalues"
            assert ck.radius_sq == ONE
            assert ck.eigenvalues[:4] == tuple(0.5 ** (k * n) for n in range(4))


def test_criterion_09_structure_theorems():
    with criterion(
        9,
        "commutator-algebra closure, the Lie-ideal property, and the "
        "compact = derived-part equivalence hold exactly",
    ):
        lie_words = [bw for bw in basis_words_up_to(3) if bw.k >= 1] + [
            BasisWord(0, 0, 1),
            BasisWord(1, 0, 0),
        ]
        for x in lie_words:
            for y in lie_words:
                br = bracket(Element({x: ONE}), Element({y: ONE}))
                assert decompose(br).e_part.is_zero(), (x, y)
        derived_words = [bw for bw in basis_words_up_to(3) if bw.k >= 1]
        for x in derived_words:
            for y in basis_words_up_to(3):
                br = bracket(Element({x: ONE}), Element({y: ONE}))
                assert all(bw.k >= 1 for bw in br.terms), (x, y)
        rng = random.Random(424242)
        for _ in range(200):
            x = random_element(rng)
            assert is_compact(x) == (x == decompose(x).derived)


def test_criterion_10_parser_and_cli(capsys):
    with criterion(
        10,
        "parser round-trips, the five ambiguity words evaluate, and every "
        "CLI command emits schema-valid JSON",
    ):
        rng = random.Random(31337)
        for _ in range(200):
            x = random_element(rng)
            assert evaluate(element_text(x)) == x
        for text in ("B*A*B", "A*B*A", "B*A*C", "C*B*A", "A*C*B"):
            value = evaluate(text)
            assert normalize(value) == value
            assert not value.is_zero()
        for argv in COMMANDS:
            code = main(argv + ["--json"])
            captured = capsys.readouterr()
            assert code == 0, argv
            doc = json.loads(captured.out)
            jsonschema.validate(doc, OUTPUT_SCHEMA)
