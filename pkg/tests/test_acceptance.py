"""Exit criteria. Each test carries an ``acceptance(N)`` marker; the summary
printed at the end of the run reports one PASS/FAIL line per criterion."""

import itertools
import math
import os
import subprocess
import sys
import time

import pytest

from torusroots.classify import (
    classify,
    classify_by_catalog,
    classify_by_criteria,
    classify_subsystem,
    conjugate_pairs,
    simple_roots,
    type_string,
)
from torusroots.configuration import SignAssignment, new_configuration
from torusroots.fan import (
    CATALOG_NAMES,
    catalog_fan,
    fan_roots,
    minimal_nonfaces,
    nonface_invariance_check,
    symmetry_report,
)
from torusroots.lattice import IntegerMatrix, determinant
from torusroots.rootsys import cartan_integer, compute_roots, compute_signed_roots, dual, oracle_roots, verify_closure

from support import a_roots_with_units, b_roots, basis, cp_config, random_configurations, std_config

HERE = os.path.dirname(__file__)


def lattice_index(vectors):
    """gcd of the maximal minors of the configuration."""
    n = len(vectors[0])
    g = 0
    for rows in itertools.combinations(vectors, n):
        g = math.gcd(g, determinant(IntegerMatrix(list(rows))))
    return g


LADDER = {
    "m2": (new_configuration(2, [(1, 0), (0, 1)]), "B2"),
    "cp2": (new_configuration(2, [(1, 0), (0, 1), (-1, -1)]), "A2"),
    "h1": (new_configuration(2, [(1, 0), (0, 1), (-1, 1), (0, -1)]), "A1"),
    "cp1xcp1": (new_configuration(2, [(1, 0), (0, 1), (-1, 0), (0, -1)]), "A1 x A1"),
}
SURFACES = ["pentagon"] + [n for n in CATALOG_NAMES if n.startswith("surface")]
FAN_CATALOG = ["cp%d" % n for n in range(1, 6)] + ["cp1xcp1", "cp1xcp2"] + \
    ["hirzebruch%d" % k for k in range(4)] + ["pentagon"]


def corpus():
    """Every full root system examined by criteria 1 to 4."""
    systems = []
    for n in range(1, 7):
        systems.append(compute_roots(std_config(n)))
        systems.append(compute_roots(cp_config(n)))
    systems += [compute_roots(V) for V, _ in LADDER.values()]
    systems += [fan_roots(catalog_fan(name)) for name in SURFACES]
    for n in range(2, 6):
        systems.append(compute_signed_roots(std_config(n), SignAssignment.trivial(n)))
    systems += [compute_roots(V) for V in random_configurations(200)]
    return systems


@pytest.fixture(scope="module")
def systems():
    return corpus()


@pytest.mark.acceptance(1)
def test_example_families():
    start = time.perf_counter()
    for n in range(1, 7):
        R = compute_roots(std_config(n))
        assert len(R) == 2 * n * n
        assert type_string(classify(R)) == ("A1" if n == 1 else "B%d" % n)
        P = compute_roots(cp_config(n))
        assert len(P) == n * (n + 1)
        assert type_string(classify(P)) == "A%d" % n
    for n in (2, 3):
        assert set(compute_roots(std_config(n)).alphas) == b_roots(n)
        assert set(compute_roots(cp_config(n)).alphas) == a_roots_with_units(n)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2)
def test_rank_two_ladder():
    start = time.perf_counter()
    for V, expected in LADDER.values():
        assert type_string(classify(compute_roots(V))) == expected
    for name in SURFACES:
        F = catalog_fan(name)
        assert F.rank == 2 and 5 <= F.m <= 8
        assert len(fan_roots(F)) == 0
    assert {catalog_fan(n).m for n in SURFACES} == {5, 6, 7, 8}
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(3)
def test_signed_examples():
    start = time.perf_counter()
    for n in range(2, 6):
        R = compute_signed_roots(std_config(n), SignAssignment.trivial(n))
        e = basis(n)
        expected = {tuple(a - b for a, b in zip(e[i], e[j])) for i, j in itertools.permutations(range(n), 2)}
        assert set(R.alphas) == expected
        assert type_string(classify(R)) == "A%d" % (n - 1)
    for n in range(1, 6):
        V = cp_config(n)
        assert set(compute_signed_roots(V, SignAssignment.trivial(V.m)).alphas) == set(compute_roots(V).alphas)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(4)
def test_oracle_equivalence():
    start = time.perf_counter()
    configs = random_configurations(200, max_rank=4, max_vectors=8, max_entry=3)
    assert len(configs) == 200
    for V in configs:
        assert V.rank <= 4 and V.m <= 8 and all(abs(x) <= 3 for v in V.vectors for x in v)
        assert set(compute_roots(V).alphas) == set(oracle_roots(V).alphas), V
    assert time.perf_counter() - start < 30.0


@pytest.mark.acceptance(5)
def test_closure_suite(systems):
    for R in systems:
        assert verify_closure(R).closed
        for a in R:
            assert a.norm in (1, 2)
            for b in R:
                assert cartan_integer(b, a) in (0, 1, -1, 2, -2)


@pytest.mark.acceptance(6)
def test_full_systems_are_a_or_b(systems):
    failures = []
    for R in systems:
        comps = classify(R)
        assert all(c.label.family in ("A", "B") for c in comps)
        if not any(r.kind == 1 for r in R):
            assert all(c.label.family == "A" for c in comps)
        for a, b in conjugate_pairs(R):
            for s in (1, -1):
                v = tuple(x + s * y for x, y in zip(a.alpha, b.alpha))
                half = R.get(tuple(x // 2 for x in v)) if all(x % 2 == 0 for x in v) else None
                if half is None or half.kind != 1:
                    failures.append((R.configuration.vectors, a.alpha, b.alpha, s))
    if failures:
        bad = sorted({f[0] for f in failures})
        detail = "; ".join("%s (lattice index %d)" % (list(map(list, v)), lattice_index(v)) for v in bad)
        pytest.fail("half-sum/half-difference of a conjugate pair is not a type-1 root for %d pairs "
                    "in %d configurations: %s" % (len(failures), len(bad), detail))


@pytest.mark.acceptance(7)
def test_catalog_matches_criteria(systems):
    extra = []
    for n in (4, 5):
        R = compute_roots(std_config(n))
        comps = classify_subsystem(R, [r for r in R if r.kind == 2])
        assert type_string(comps) == "D%d" % n
        extra.extend(c.roots for c in comps)
    groups = [c.roots for R in systems for c in classify(R)] + extra
    for roots in groups:
        s = simple_roots(roots)
        assert classify_by_catalog(s) == classify_by_criteria(s)


@pytest.mark.acceptance(8)
def test_dual_suite():
    for n in range(2, 6):
        assert type_string(classify(dual(compute_roots(std_config(n))))) == "C%d" % n
    for n in range(1, 6):
        assert type_string(classify(dual(compute_roots(cp_config(n))))) == "A%d" % n
    for R in corpus():
        assert dual(dual(R)).roots == R.roots


@pytest.mark.acceptance(9)
def test_fan_catalog():
    start = time.perf_counter()
    for name in FAN_CATALOG:
        F = catalog_fan(name)  # validates
        R = fan_roots(F)
        for r in R:
            assert sorted(x for x in r.pairing if x) == [-1, 1]
        nonfaces = minimal_nonfaces(F)
        assert all(nonface_invariance_check(F, r, nonfaces) for r in R)
        assert symmetry_report(F).consistent
        full = set(R.alphas)
        omegas = itertools.product((1, -1), repeat=F.m) if F.m <= 6 else \
            [SignAssignment.block(q, F.m).signs for q in range(F.m + 1)]
        for signs in omegas:
            assert set(fan_roots(F, SignAssignment(tuple(signs))).alphas) <= full
    assert time.perf_counter() - start < 5.0


@pytest.mark.acceptance(10)
def test_cli_determinism():
    script = os.path.join(HERE, "cli_battery.py")
    outputs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, script], capture_output=True, env=env, check=True)
        outputs.append(proc.stdout)
    assert len(outputs[0]) > 100_000
    assert outputs[0] == outputs[1]
