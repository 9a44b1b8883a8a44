"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line, shown in pytest's terminal summary.
Run directly (``python tests/test_acceptance.py``) to print the lines without pytest.
"""
import functools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from chiralkit import affine, galilean, orthogonal, poincare
from chiralkit.affine import AffineIsometry
from chiralkit.classify import DIRECT, INDIRECT, ClassifiedGroup, expected_class, square_closure
from chiralkit.galilean import Event, GalileanIsometry
from chiralkit.objects import CandidateFamily, VerdictKind, chirality_verdict, is_invariant, spinning_cone
from chiralkit.orthogonal import OrthogonalMap
from chiralkit.quadspace import QuadraticSpace

from conftest import ACCEPTANCE_LINES, SESSION_START, random_galilean, random_member

FLOAT_TOL = 1e-9
RECON_TOL = 1e-8
ACTION_TOL = 1e-12
SUITE_BUDGET_S = 60.0


def record(number, title, ok, detail):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# ---------------------------------------------------------------- shared suites

@functools.lru_cache(maxsize=None)
def euclidean_suite():
    rng = np.random.default_rng(1)
    out = []
    for i in range(1000):
        n = (2, 3, 4)[i % 3]
        out.append(random_member(QuadraticSpace.of(n, 0), rng))
    return tuple(out)


EXACT_BETAS = ("3/5", "4/5", "5/13", "-8/17", "12/13")
EXACT_COS_SIN = (("3/5", "4/5"), ("5/13", "-12/13"), ("0", "1"), ("-1", "0"))


def _random_word(rng):
    names = []
    for _ in range(int(rng.integers(1, 9))):
        kind = str(rng.choice(["P", "T", "PT", "boost", "rotation", "translation"]))
        axis = str(rng.choice(list("xyz")))
        if kind == "boost":
            names.append(("boost", {"axis": axis, "rapidity": float(rng.normal(scale=1.5))}))
        elif kind == "rotation":
            names.append(("rotation", {"axis": axis, "angle": float(rng.uniform(-math.pi, math.pi))}))
        elif kind == "translation":
            names.append(("translation", {"translation": rng.normal(size=4)}))
        else:
            names.append(kind)
    return names


@functools.lru_cache(maxsize=None)
def minkowski_words():
    rng = np.random.default_rng(2)
    return tuple(_random_word(rng) for _ in range(1000))


RECON_SIGNATURES = ((1, 1), (1, 3), (2, 2), (3, 1), (2, 3))


@functools.lru_cache(maxsize=None)
def reconstruction_suite():
    rng = np.random.default_rng(3)
    return tuple(random_member(QuadraticSpace.of(*RECON_SIGNATURES[i % 5]), rng) for i in range(500))


def _squares_product(witnesses, n):
    out = np.eye(n)
    for w in witnesses:
        w = np.asarray(w, float)
        out = out @ w @ w
    return out


# ---------------------------------------------------------------- criteria

def test_criterion_1_euclidean_agreement():
    suite = euclidean_suite()
    t0 = time.perf_counter()
    mismatches = sum((orthogonal.classify(m) is DIRECT) != (np.linalg.det(m.matrix) > 0)
                     for m in suite)
    elapsed = time.perf_counter() - t0
    record(1, "Euclidean agreement", mismatches == 0 and elapsed < 5.0,
           f"{len(suite)} elements of O(2..4), {mismatches} mismatches, {elapsed:.2f} s (< 5 s)")


def test_criterion_2_minkowski_table():
    problems = []
    for conv in poincare.CONVENTIONS:
        gen = functools.partial(poincare.generator, convention=conv, exact=True)
        for name in ("P", "T", "PT"):
            if poincare.classify(gen(name)) is not INDIRECT:
                problems.append(f"{name} in {conv}")
        directs = [gen("I"), gen("translation", translation=["1/2", -3, "7/5", 0])]
        for axis in "xyz":
            directs += [gen("boost", axis=axis, beta=b) for b in EXACT_BETAS]
            directs += [gen("rotation", axis=axis, cos_sin=cs) for cs in EXACT_COS_SIN]
        problems += [f"{g!r} in {conv}" for g in directs if poincare.classify(g) is not DIRECT]
    words = minkowski_words()
    word_mismatch = 0
    for names in words:
        for conv in poincare.CONVENTIONS:
            g = poincare.word(names, conv)
            if (poincare.classify(g) is DIRECT) != g.is_proper_orthochronous():
                word_mismatch += 1
    record(2, "Minkowski table", not problems and word_mismatch == 0,
           f"P/T/PT indirect and exact boosts/rotations/translations direct in both conventions "
           f"({len(problems)} failures); {len(words)} random words x 2 conventions vs proper "
           f"orthochronous: {word_mismatch} mismatches")


def test_criterion_3_reconstruction():
    worst, over_bound, too_long = 0.0, 0, 0
    for m in reconstruction_suite():
        f = orthogonal.decompose(m)
        err = float(np.max(np.abs(f.reconstruct() - m.matrix)))
        worst = max(worst, err)
        over_bound += err > RECON_TOL
        too_long += len(f) > 2 * m.space.n
    record(3, "Reconstruction and bound", over_bound == 0 and too_long == 0,
           f"500 elements over {RECON_SIGNATURES}, max error {worst:.2e} (<= 1e-8), "
           f"{too_long} factorizations longer than 2n")


def test_criterion_4_parity_stability():
    rng = np.random.default_rng(4)
    sigs = RECON_SIGNATURES + ((3, 0), (0, 3))
    unstable, exceptions = 0, 0
    for i in range(50):
        m = random_member(QuadraticSpace.of(*sigs[i % len(sigs)]), rng)
        ref = orthogonal.parity_pair(m)
        for _ in range(200):
            try:
                unstable += orthogonal.parity_pair(m, rng.permutation(m.space.n)) != ref
            except Exception:  # noqa: BLE001 - any exception counts against the criterion
                exceptions += 1
    record(4, "Parity-pair stability", unstable == 0 and exceptions == 0,
           f"50 matrices x 200 shuffled pivot orders, {unstable} differing pairs, {exceptions} exceptions")


def test_criterion_5_witness_soundness():
    worst, failures, checked = 0.0, 0, 0
    elements = list(euclidean_suite()) + list(reconstruction_suite())
    elements += [poincare.word(names).linear for names in minkowski_words()]
    for m in elements:
        if orthogonal.classify(m) is not DIRECT:
            continue
        checked += 1
        prod = _squares_product([w.matrix for w in orthogonal.direct_witness(m)], m.space.n)
        err = float(np.max(np.abs(prod - m.matrix)))
        worst = max(worst, err)
        failures += err > RECON_TOL
    for names in minkowski_words():
        g = poincare.word(names)
        if poincare.classify(g) is DIRECT:
            checked += 1
            prod = affine.affine_group(g.space).product(
                [affine.compose(w, w) for w in affine.direct_witness(g)])
            failures += not prod.equals(g, RECON_TOL)

    halving = []
    s = QuadraticSpace.of(1, 3, exact=True)
    t = s.vector(["1/3", "-7/2", 5, 0])
    w = affine.direct_witness(AffineIsometry.translation_only(s, t))
    halving.append(len(w) == 1 and (w[0].translation == t / 2).all())
    v = np.array([Fraction(2, 3), Fraction(-1), Fraction(5, 7)], dtype=object)
    w = galilean.direct_witness(galilean.boost(v, exact=True))
    halving.append(len(w) == 1 and w[0].equals(galilean.boost(v / 2, exact=True), 0))
    w = galilean.direct_witness(galilean.translation(Fraction(9, 4), v, exact=True))
    halving.append(len(w) == 1 and w[0].equals(galilean.translation(Fraction(9, 8), v / 2, exact=True), 0))
    # irrational half-parameters: rotations and Lorentz boosts agree to float rounding
    for theta in (0.3, 1.7, -2.9):
        c, sn = math.cos(theta), math.sin(theta)
        w = orthogonal.direct_witness(OrthogonalMap(QuadraticSpace.of(2, 0), [[c, -sn], [sn, c]]))
        half = [[math.cos(theta / 2), -math.sin(theta / 2)], [math.sin(theta / 2), math.cos(theta / 2)]]
        halving.append(len(w) == 1 and np.allclose(w[0].matrix, half, rtol=0, atol=1e-12))
    for phi in (0.4, -1.3, 2.2):
        w = orthogonal.direct_witness(poincare.generator("boost", rapidity=phi).linear)
        halving.append(len(w) == 1 and np.allclose(
            w[0].matrix, poincare.generator("boost", rapidity=phi / 2).linear.matrix, rtol=0, atol=1e-12))
    record(5, "Witness soundness", failures == 0 and all(halving),
           f"{checked} direct elements from suites 1-3 and the word suite, max error {worst:.2e} "
           f"(<= 1e-8), {failures} failures; half-parameter witnesses {sum(halving)}/{len(halving)} "
           f"(translations and Galilean boosts exact, rotations and boosts to 1e-12)")


def _rule_violations(G: ClassifiedGroup, pool, rng, n_pairs=10_000):
    classes = [G.classify(g) for g in pool]
    violations = ii_checked = 0
    for i, j in rng.integers(0, len(pool), size=(n_pairs, 2)):
        want = expected_class(classes[i], classes[j], G.euclidean_mode)
        got = G.classify(G.compose(pool[i], pool[j]))
        violations += not want.admits(got)
        ii_checked += G.euclidean_mode and classes[i] is INDIRECT and classes[j] is INDIRECT
    return violations, ii_checked


def test_criterion_6_rule_table():
    rng = np.random.default_rng(6)
    groups = []
    for sig in ((3, 0), (1, 3), (2, 2)):
        space = QuadraticSpace.of(*sig)
        pool = [random_member(space, rng) for _ in range(500)]
        groups.append((orthogonal.orthogonal_group(space), pool))
    for sig in ((3, 0), (1, 3)):
        space = QuadraticSpace.of(*sig)
        pool = [AffineIsometry(space, random_member(space, rng), rng.normal(size=space.n))
                for _ in range(500)]
        groups.append((affine.affine_group(space), pool))
    groups.append((galilean.galilean_group(), [random_galilean(rng) for _ in range(500)]))
    tower = galilean.tower()
    groups.append((tower, [galilean.to_tower(random_galilean(rng)) for _ in range(500)]))
    details, total = [], 0
    for G, pool in groups:
        v, ii = _rule_violations(G, pool, rng)
        total += v
        details.append(f"{G.name}: {v}" + (f" ({ii} I.I pairs in Euclidean mode)" if G.euclidean_mode else ""))
    record(6, "Rule table", total == 0,
           "10000 pairs per group, violations per group: " + "; ".join(details))


def test_criterion_7_galilean_structure():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        g1, g2 = random_galilean(rng), random_galilean(rng)
        g = galilean.compose(g1, g2)
        for _ in range(100):
            e = Event(float(rng.normal()), rng.normal(size=3))
            a, b = g(e), g1(g2(e))
            worst = max(worst, abs(a.t - b.t), float(np.max(np.abs(a.x - b.x))))
    s = Fraction(-5, 3)
    z = np.array([Fraction(1, 2), Fraction(4), Fraction(-2, 7)], dtype=object)
    v = np.array([Fraction(3), Fraction(-1, 5), Fraction(1, 9)], dtype=object)
    omega = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    tau = galilean.translation(s, z, exact=True)
    q = galilean.spatial(omega, exact=True)
    b = galilean.boost(v, exact=True)
    identities = [
        galilean.conjugate(tau, b).equals(galilean.translation(s, z + s * v, exact=True), 0),
        galilean.conjugate(tau, q).equals(galilean.translation(s, omega @ z, exact=True), 0),
        galilean.conjugate(b, q).equals(galilean.boost(omega @ v, exact=True), 0),
    ]
    record(7, "Galilean structure", worst <= ACTION_TOL and all(identities),
           f"100 pairs x 100 events, max deviation from action {worst:.2e} (<= 1e-12); "
           f"exact conjugation identities {sum(identities)}/3")


def test_criterion_8_klein_oracle():
    K = galilean.klein_group(exact=True)
    closure = square_closure(K, galilean.compose, lambda a, b: a.equals(b, 0))
    closure_ok = len(closure) == 1 and closure[0].equals(galilean.identity(exact=True), 0)
    nonid_indirect = all(galilean.classify(g) is INDIRECT for g in K[1:])
    s13 = QuadraticSpace.of(1, 3, exact=True)
    mats = [OrthogonalMap(s13, np.diag(d)) for d in ([1, 1, 1, 1], [1, -1, -1, -1], [-1, 1, 1, 1], [-1, -1, -1, -1])]
    mclosure = square_closure(mats, lambda a, b: a @ b, lambda a, b: a.equals(b, 0))
    matrix_ok = len(mclosure) == 1 and all(orthogonal.classify(m) is INDIRECT for m in mats[1:])
    rng = np.random.default_rng(8)
    bad = 0
    for _ in range(1000):
        g = random_galilean(rng)
        g = GalileanIsometry(1, g.omega * np.sign(np.linalg.det(g.omega)), g.v, g.s, g.z)
        if galilean.classify(g) is not DIRECT:
            bad += 1
            continue
        prod = galilean.identity()
        for w in galilean.direct_witness(g):
            prod = galilean.compose(prod, galilean.compose(w, w))
        bad += not prod.equals(g, RECON_TOL)
    record(8, "Klein oracle", closure_ok and nonid_indirect and matrix_ok and bad == 0,
           f"square closure of K is {{I}}: {closure_ok and matrix_ok}; P, T, PT indirect: {nonid_indirect}; "
           f"1000 elements with sigma=+1, det=+1 direct with valid witnesses: {1000 - bad}/1000")


N111 = np.ones(3) / math.sqrt(3)
PLANE_REFLECTION = np.eye(3) - 2 * np.outer(N111, N111)


def test_criterion_9_cone_verdicts():
    static = spinning_cone(spin=1.0)
    v1 = chirality_verdict(static, tol=FLOAT_TOL)
    ok1 = (v1.kind is VerdictKind.ACHIRAL and v1.witness.sigma == -1
           and galilean.classify(v1.witness) is INDIRECT
           and np.allclose(v1.witness.omega, PLANE_REFLECTION, rtol=0, atol=1e-12)
           and is_invariant(v1.witness, static, FLOAT_TOL))
    u = 0.7
    moving = spinning_cone(speed=u, base_point=(0.3, 0.5, -0.2))
    v2 = chirality_verdict(moving, CandidateFamily(allow_boosts=True), tol=FLOAT_TOL)
    ok2 = (v2.kind is VerdictKind.ACHIRAL and galilean.classify(v2.witness) is INDIRECT
           and np.allclose(v2.witness.v, 2 * u * moving.axis, rtol=0, atol=1e-12)
           and is_invariant(v2.witness, moving, FLOAT_TOL))
    v3 = chirality_verdict(moving, CandidateFamily(allow_boosts=False), tol=FLOAT_TOL)
    ok3 = v3.kind is VerdictKind.CHIRAL_WITHIN_FAMILY
    record(9, "Cone verdicts", ok1 and ok2 and ok3,
           f"static cone {v1.kind.value} via {v1.witness_label}; translating cone with boosts "
           f"{v2.kind.value} (v = 2u a: {ok2}); without boosts {v3.kind.value}")


@pytest.mark.runs_last
def test_criterion_9_suite_runtime():
    elapsed = time.perf_counter() - SESSION_START.get("t", time.perf_counter())
    record(9, "Full suite runtime", elapsed < SUITE_BUDGET_S,
           f"{elapsed:.1f} s for every test collected in this session (< 60 s)")


if __name__ == "__main__":
    SESSION_START["t"] = time.perf_counter()
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
