"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are repeated in the "acceptance criteria" section of the pytest
terminal summary.  Time limits are part of each criterion.
"""
import io
import itertools
import json
from fractions import Fraction

from cdlab.algebra import (
    ComplexScalar,
    Element,
    basis_product,
    complex_scale,
    i_element,
    inner_product_real,
    make_element,
    multiply,
    multiply_recursive,
)
from cdlab.cli import main
from cdlab.constructions import (
    a5_family,
    ann_bound,
    assoc_pair_with_dim,
    element_with_ann_dim,
    top_zero_divisor,
)
from cdlab.documents import parse_element
from cdlab.linalg import rank_by_columns
from cdlab.operators import annihilator_dim, associator_dim, left_mul_matrix
from cdlab.sampling import (
    Rng,
    random_a4_pair,
    random_complex,
    random_complex_perp,
    random_element,
    random_orthonormal_imaginary,
    random_rotation,
)
from cdlab.verify import SUITES, SuiteSpec, run_suite

from oracles import basis, cd_mul

SEED = 20240601

# e_p e_q = sign(t) e_{|t| - 1} for each entry t, from the list-based oracle
OCTONION_TABLE = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, 6, -5, -8, 7],
    [3, -4, -1, 2, 7, 8, -5, -6],
    [4, 3, -2, -1, 8, -7, 6, -5],
    [5, -6, -7, -8, -1, 2, 3, 4],
    [6, 5, -8, 7, -2, -1, -4, 3],
    [7, 8, 5, -6, -3, 4, -1, -2],
    [8, -7, 6, 5, -4, -3, 2, -1],
]

QUATERNION_TABLE = {
    ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
    ("i", "1"): "i", ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
    ("j", "1"): "j", ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
    ("k", "1"): "k", ("k", "i"): "j", ("k", "j"): "-i", ("k", "k"): "-1",
}


def _signed_basis(level, entry):
    sign = -1 if entry.startswith("-") else 1
    return make_element(level, {"1ijk".index(entry.lstrip("-")): sign})


def _kernel_dim_by_columns(x):
    """Nullity of L_x by column-order elimination, independent of the kernel code."""
    m = left_mul_matrix(x)
    return x.dim - rank_by_columns(m.num.tolist())


def test_c01_multiplication_fidelity(criterion):
    with criterion(1, "multiplication tables and basis_product", 10) as c:
        for (p, q), r in QUATERNION_TABLE.items():
            got = multiply(_signed_basis(2, p), _signed_basis(2, q))
            c.check(got == _signed_basis(2, r), f"{p}{q} != {r}")
        for p, q in itertools.product(range(8), repeat=2):
            t = OCTONION_TABLE[p][q]
            want = make_element(3, {abs(t) - 1: 1 if t > 0 else -1})
            c.check(multiply(Element.basis(3, p), Element.basis(3, q)) == want, f"A_3 e{p} e{q}")
        compared = 0
        for n in range(0, 7):
            for p, q in itertools.product(range(1 << n), repeat=2):
                sign, r = basis_product(n, p, q)
                want = make_element(n, {r: sign})
                x, y = Element.basis(n, p), Element.basis(n, q)
                ok = multiply(x, y) == want and multiply_recursive(x, y) == want
                if n <= 4:
                    ok = ok and cd_mul(basis(n, p), basis(n, q)) == list(want.coeffs)
                c.check(ok, f"level {n} e{p} e{q}")
                compared += 1
        c.note(f"{compared} basis pairs")
    assert not c.problems, c.problems


def test_c02_ann_dim_multiple_of_four(criterion):
    with criterion(2, "dim Ann(x) = 0 mod 4 (random and constructed)", 120) as c:
        seen = {}
        for n in range(2, 7):
            for t in range(200):
                rng = Rng(SEED, n, t)
                # half dense, half with a few coordinates
                sparsity = None if t % 2 == 0 else Fraction(rng.randint(1, 4), 1 << n)
                x = random_element(rng, n, 9, sparsity=sparsity)
                if x.is_zero():
                    continue
                d = annihilator_dim(x)
                seen.setdefault(n, set()).add(d)
                c.check(d % 4 == 0, f"level {n} trial {t}: dim {d}")
        constructed = []
        for n in range(2, 7):
            constructed += [element_with_ann_dim(n, d).element for d in range(0, ann_bound(n) + 1, 4)]
        for n in range(4, 7):
            for signs in itertools.product((1, -1), repeat=n - 4):
                constructed.append(top_zero_divisor(n, signs).element)
        for alpha in ({3: 1}, {1: 1}, {0: 2}):
            constructed.append(a5_family(make_element(2, alpha)).element)
        for x in constructed:
            d = annihilator_dim(x)
            c.check(d % 4 == 0, f"constructed level {x.level}: dim {d}")
        c.note(f"{len(constructed)} constructed; random dims seen {dict(sorted((k, sorted(v)) for k, v in seen.items()))}")
    assert not c.problems, c.problems


def test_c03_every_dimension_constructed_and_bound(criterion):
    with criterion(3, "construct --ann-dim d for all valid d, n = 4..7; bound holds", 300) as c:
        count = 0
        for n in range(4, 8):
            bound = ann_bound(n)
            for d in range(0, bound + 1, 4):
                buf = io.StringIO()
                code = main(["construct", "--level", str(n), "--ann-dim", str(d), "--no-witness"], buf)
                doc = json.loads(buf.getvalue())
                x = parse_element(json.dumps(doc["element"]))
                got = _kernel_dim_by_columns(x)
                c.check(code == 0 and doc["self_check"] == "pass", f"({n},{d}) exit {code}")
                c.check(got == d, f"({n},{d}) kernel dim {got}")
                count += 1
            for bad in (bound + 4, 2):
                code = main(["construct", "--level", str(n), "--ann-dim", str(bad)], io.StringIO())
                c.check(code == 2, f"({n},{bad}) should be rejected")
            for t in range(20):
                rng = Rng(SEED, 3, n, t)
                x = random_element(rng, n, 9, sparsity=Fraction(rng.randint(1, 6), 1 << n))
                c.check(annihilator_dim(x) <= bound, f"sample at level {n} exceeds the bound")
            for signs in itertools.product((1, -1), repeat=n - 4):
                c.check(annihilator_dim(top_zero_divisor(n, signs).element) <= bound, "top exceeds bound")
        c.note(f"{count} (level, d) pairs")
    assert not c.problems, c.problems


def _orthonormal_pair(rng):
    u, v = random_orthonormal_imaginary(rng, 3, 2, 5)
    m = rng.randint(1, 5)
    return u.scale(m), v.scale(m), m


def test_c04_a4_characterization(criterion):
    with criterion(4, "A_4: (a1, a2) zero-divisor iff orthogonal imaginary equal norm", 30) as c:
        for t in range(200):
            rng = Rng(SEED, 4, t)
            if t % 2 == 0:
                a1, a2 = random_a4_pair(rng)
            else:
                a1, a2, _ = _orthonormal_pair(rng)
            d = annihilator_dim(Element.pair(a1, a2))
            c.check(d == 4, f"valid pair {t}: dim {d}")
        kinds = {"not orthogonal": 0, "not imaginary": 0, "unequal norm": 0}
        one = make_element(3, {0: 1})
        for t in range(200):
            rng = Rng(SEED, 44, t)
            a1, a2, m = _orthonormal_pair(rng)
            cs, sn = random_rotation(rng)
            kind = list(kinds)[t % 3]
            if kind == "not orthogonal":
                b2 = a2.scale(cs) + a1.scale(sn)
            elif kind == "not imaginary":
                b2 = a2.scale(cs) + one.scale(sn * m)
            else:
                b2 = a2.scale(Fraction(rng.randint(2, 4), rng.randint(5, 7)))
            broken = [
                inner_product_real(a1, b2) != 0,
                not b2.is_imaginary(),
                a1.norm2() != b2.norm2(),
            ]
            c.check(sum(broken) == 1, f"perturbation {t} breaks {sum(broken)} hypotheses")
            d = annihilator_dim(Element.pair(a1, b2))
            c.check(d == 0, f"perturbed pair {t} ({kind}): dim {d}")
            kinds[kind] += 1
        c.note("perturbations " + ", ".join(f"{k} x{v}" for k, v in kinds.items()))
    assert not c.problems, c.problems


def test_c05_complex_doubling(criterion):
    with criterion(5, "dims of (alpha a, beta a), (a, +-i a), (a, alpha a) over A_4", 60) as c:
        i4 = i_element(4)
        zero_divisors = 0
        for t in range(50):
            rng = Rng(SEED, 5, t)
            if t % 2 == 0:
                a = Element.pair(*random_a4_pair(rng, 5))
            else:
                a = random_complex_perp(rng, 4, 9, sparsity=Fraction(rng.randint(1, 8), 14))
            d = annihilator_dim(a)
            zero_divisors += d > 0
            while True:
                alpha, beta = random_complex(rng), random_complex(rng)
                if not (alpha * alpha + beta * beta).is_zero():
                    break
            got = annihilator_dim(Element.pair(complex_scale(alpha, a), complex_scale(beta, a)))
            c.check(got == 2 * d, f"trial {t}: (alpha a, beta a) dim {got}, want {2 * d}")
            for s in (1, -1):
                got = annihilator_dim(Element.pair(a, multiply(i4, a).scale(s)))
                c.check(got == 12 + d, f"trial {t}: (a, {s} i a) dim {got}, want {12 + d}")
            if d:
                alphas = [ComplexScalar(0, 1), ComplexScalar(0, -1), random_complex(rng), ComplexScalar(0, 2), ComplexScalar(3, 0)]
                for al in alphas:
                    got = annihilator_dim(Element.pair(a, complex_scale(al, a)))
                    want = 16 if al in (ComplexScalar(0, 1), ComplexScalar(0, -1)) else 8
                    c.check(got == want, f"trial {t}: alpha {al} dim {got}, want {want}")
        c.check(0 < zero_divisors < 50, "sample did not mix zero-divisors and others")
        c.note(f"{zero_divisors}/50 zero-divisors")
    assert not c.problems, c.problems


# case table: 16 for +-k, 12 for other imaginary units, 8 otherwise
A5_CASES = [
    ({3: 1}, 16),
    ({3: -1}, 16),
    ({1: 1}, 12),
    ({1: -1}, 12),
    ({2: 1}, 12),
    ({2: -1}, 12),
    ({1: Fraction(3, 5), 2: Fraction(4, 5)}, 12),
    ({1: Fraction(-5, 13), 2: Fraction(12, 13)}, 12),
    ({1: 1, 2: 1}, 8),
    ({1: 2, 2: 2}, 8),
    ({0: 1}, 8),
    ({0: 2}, 8),
    ({0: 1, 3: 1}, 8),
]


def test_c06_a5_trichotomy(criterion):
    with criterion(6, "A_5 family dims 16/12/8", 30) as c:
        for coeffs, want in A5_CASES:
            x = a5_family(make_element(2, coeffs)).element
            got = annihilator_dim(x)
            c.check(got == want, f"alpha {coeffs}: dim {got}, want {want}")
        c.note(f"{len(A5_CASES)} values of alpha")
    assert not c.problems, c.problems


def test_c07_associator_recursions(criterion):
    with criterion(7, "associator recursions (levels 3-5) and constructed pairs (3-6)", 120) as c:
        z = lambda n: Element.zero(n)
        checked = 0
        for n in range(3, 6):
            for p, q in itertools.combinations(range(1, 1 << n), 2):
                a, b = Element.basis(n, p), Element.basis(n, q)
                ass, anti = associator_dim(a, b), associator_dim(a, b, anti=True)
                if n == 3:
                    c.check(ass == 4 and anti == 4, f"octonion base ({p},{q}): {ass}/{anti}")
                a0, b0, zb = Element.pair(a, z(n)), Element.pair(b, z(n)), Element.pair(z(n), b)
                c.check(associator_dim(a0, b0) == 2 * ass - 4, f"Ass[(a,0),(b,0)] at {n},{p},{q}")
                c.check(associator_dim(a0, zb, anti=True) == 2 * ass - 4, f"Ass'[(a,0),(0,b)] at {n},{p},{q}")
                c.check(associator_dim(a0, zb) == 2 * anti + 4, f"Ass[(a,0),(0,b)] at {n},{p},{q}")
                c.check(associator_dim(a0, b0, anti=True) == 2 * anti + 4, f"Ass'[(a,0),(b,0)] at {n},{p},{q}")
                checked += 1
        reached = 0
        for n in range(3, 7):
            for d in range(4, (1 << (n - 1)) + 1, 8):
                for anti in (False, True):
                    a, b = assoc_pair_with_dim(n, d, anti)
                    got = associator_dim(a, b, anti=anti)
                    c.check(got == d, f"assoc_pair_with_dim({n},{d},{anti}) gives {got}")
                    reached += 1
        c.note(f"{checked} basis pairs x 4 recursions; {reached} constructed pairs")
    assert not c.problems, c.problems


def test_c08_top_families(criterion):
    with criterion(8, "top-dimensional families, disjointness, not-top bound", 300) as c:
        built = 0
        for n in range(4, 8):
            plus, minus = [], []
            for signs in itertools.product((1, -1), repeat=n - 4):
                x = top_zero_divisor(n, signs).element
                got = annihilator_dim(x)
                c.check(got == ann_bound(n), f"level {n} signs {signs}: dim {got}")
                built += 1
                if signs:
                    (plus if signs[-1] == 1 else minus).append(x)
            for t in range(4):
                rng = Rng(SEED, 8, n, t)
                seed_pair = random_a4_pair(rng, 4)
                for signs in itertools.product((1, -1), repeat=n - 4):
                    if signs:
                        (plus if signs[-1] == 1 else minus).append(top_zero_divisor(n, signs, seed_pair).element)
            c.check(not any(x == y for x in plus for y in minus), f"level {n}: the +/- families meet")
            if n >= 5:
                i = i_element(n - 1)
                for t in range(50):
                    rng = Rng(SEED, 88, n, t)
                    a = random_complex_perp(rng, n - 1, 5)
                    b = a if t % 2 else random_complex_perp(rng, n - 1, 5)
                    c.check(Element.pair(a, multiply(i, a)) != Element.pair(b, -multiply(i, b)), "sampled overlap")
        worst = {}
        for n in (5, 6):
            i = i_element(n - 2)
            limit = (1 << n) - 8 * n + 20
            for t in range(50):
                rng = Rng(SEED, 888, n, t)
                if n - 2 == 4 and t % 2 == 0:
                    a, b = Element.pair(*random_a4_pair(rng, 4)), Element.pair(*random_a4_pair(rng, 4))
                else:
                    a, b = random_complex_perp(rng, n - 2, 5), random_complex_perp(rng, n - 2, 5)
                s = 1 if t % 4 < 2 else -1
                x = Element.pair(Element.pair(a, multiply(i, a).scale(s)), Element.pair(b, multiply(i, b).scale(-s)))
                d = annihilator_dim(x)
                worst[n] = max(worst.get(n, 0), d)
                c.check(d <= limit, f"not-top level {n} trial {t}: dim {d} > {limit}")
        c.note(f"{built} top certificates; largest mixed-sign dims {worst}")
    assert not c.problems, c.problems


STRUCTURAL = [
    ("ann_structure", 5),
    ("hermitian", 5),
    ("antilinear", 5),
    ("core", 5),
    ("complex", 5),
    ("normed_low", 3),
]


def test_c09_structural_lemmas(criterion):
    with criterion(9, "structural lemma suites, 100 trials each", 120) as c:
        total = 0
        for name, level in STRUCTURAL:
            report = run_suite(SuiteSpec(name, level, 100, SEED))
            total += report.checks_run
            c.check(report.ok, f"{name}: {len(report.failures)} failures, first {report.failures[:1]}")
        c.note(f"{total} checks over {len(STRUCTURAL)} suites")
    assert not c.problems, c.problems


def test_c10_alternator_spectrum(criterion, tmp_path):
    with criterion(10, "A_5 alternator spectrum, structured, budget 5000", 600) as c:
        buf = io.StringIO()
        code = main(["spectrum", "--level", "5", "--target", "alt", "--strategy", "structured", "--budget", "5000",
                     "--seed", "3", "--exemplar-dir", str(tmp_path)], buf)
        doc = json.loads(buf.getvalue())
        hist = {int(k): v for k, v in doc["histogram"].items()}
        c.check(code == 0, f"exit {code}")
        c.check(sum(hist.values()) == 5000, "budget not spent")
        c.check(all(d % 4 == 0 for d in hist), f"non-multiple of 4 in {sorted(hist)}")
        c.check(32 in hist, "32 not observed")
        for d, path in doc["exemplar_files"].items():
            x = parse_element(open(path).read())
            c.check(x.level == 5, f"exemplar {path}")
        found = sorted(d for d in hist if d in (4, 8, 12, 16, 24))
        c.note(f"found {found} of [4, 8, 12, 16, 24]; histogram {dict(sorted(hist.items()))}")
    assert not c.problems, c.problems


def test_c11_determinism_and_replay(criterion, tmp_path):
    with criterion(11, "byte-identical reports; injected failure replays", 60) as c:
        for name, suite in sorted(SUITES.items()):
            spec = SuiteSpec(name, suite.min_level, 8, SEED)
            c.check(run_suite(spec).body() == run_suite(spec).body(), f"{name} differs between runs")
        argv = ["verify", "--suite", "c_ann", "--level", "4", "--trials", "10", "--seed", "5", "--jobs", "2"]
        first, second = io.StringIO(), io.StringIO()
        main(argv, first)
        main(argv, second)
        c.check(first.getvalue() == second.getvalue(), "CLI report differs between runs")
        report = tmp_path / "report.json"
        buf = io.StringIO()
        code = main(["verify", "--suite", "ann_mod4", "--level", "5", "--trials", "5", "--inject-fault", "--output", str(report)], buf)
        c.check(code == 1, f"injected fault gave exit {code}")
        buf = io.StringIO()
        code = main(["verify", "--replay", str(report)], buf)
        results = json.loads(buf.getvalue())
        c.check(code == 1 and len(results) == 1 and results[0]["reproduced"], f"replay gave {code} {results}")
    assert not c.problems, c.problems
