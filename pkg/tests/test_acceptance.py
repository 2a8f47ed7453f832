"""Acceptance gate: twelve end-to-end criteria, one printed pass/fail line
each.  All comparisons are exact; the stated runtime bounds are enforced."""

import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

from cellblocks import degrees, kl, lietype, verify
from cellblocks.coxeter import CoxeterSystem
from cellblocks.gf import spin
from cellblocks.hecke import (HeckeAlgebra, decomposition_matrix,
                              specialize_reduce)
from cellblocks.meataxe import FFModule, _split


def _report(capsys, num, ok, desc):
    with capsys.disabled():
        print(f"\ncriterion {num:2d}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num}: {desc}"


def _is_permuted_identity(entries: np.ndarray) -> bool:
    return (entries.shape[0] == entries.shape[1]
            and (entries.sum(axis=0) == 1).all()
            and (entries.sum(axis=1) == 1).all()
            and set(entries.ravel().tolist()) <= {0, 1})


def oracle_factor_dims(module: FFModule):
    """Composition-factor dimensions by exhaustive submodule search."""
    F = module.field
    n = module.dim
    assert n <= 6, "oracle is exhaustive; keep it small"
    if n == 1:
        return [1]
    best = None
    for coeffs in itertools.product(range(F.order), repeat=n):
        if not any(coeffs):
            continue
        v = np.array(coeffs, dtype=np.int64)
        S = spin(F, [v], module.generators, n)
        if best is None or S.shape[0] < best.shape[0]:
            best = S
        if best.shape[0] == 1:
            break
    if best.shape[0] == n:
        return [n]
    sub, quo = _split(module, best)
    return sorted(oracle_factor_dims(sub) + oracle_factor_dims(quo))


@pytest.fixture(scope="module")
def decomposition_grid():
    """All default-grid scenarios for the five types, with wall time."""
    t0 = time.monotonic()
    frags = {sc.key: verify.verify_decomposition_triangularity(sc)
             for sc in verify.default_grid()}
    return frags, time.monotonic() - t0


def test_criterion_01_cell_structure(capsys):
    t0 = time.monotonic()
    ok = True
    for label, count in [("A1", 2), ("A2", 3), ("A3", 5), ("A4", 7),
                         ("C2", 3), ("G2", 3)]:
        W = CoxeterSystem(label)
        part = kl.two_sided_cells(W)
        ok = ok and len(part.blocks) == count
        singles = [b for b in part.blocks if len(b) == 1]
        ok = ok and frozenset({W.identity.index}) in singles
        ok = ok and frozenset({W.longest.index}) in singles
    a3 = kl.two_sided_cells(CoxeterSystem("A3"))
    ok = ok and set(a3.a_values) == {0, 1, 2, 3, 6}
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 10
    _report(capsys, 1, ok,
            f"two-sided cell counts, singleton extremes, A3 a-values "
            f"({elapsed:.1f}s < 10s)")


def test_criterion_02_cell_poset_vs_dominance(capsys):
    t0 = time.monotonic()
    frags = [verify.verify_cell_poset_vs_dominance(n) for n in (3, 4)]
    ok = all(f["ok"] for f in frags)
    ok = ok and frags[0]["cells"] == 3 and frags[1]["cells"] == 5
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 5
    _report(capsys, 2, ok,
            f"cell posets of A2/A3 match dominance on partitions of 3/4 "
            f"({elapsed:.1f}s < 5s)")


def test_criterion_03_hecke_relations(capsys):
    ok = True
    # the quadratic rule, verbatim
    for label in ("A1", "A2", "A3", "C2", "G2"):
        q = Fraction(3)
        H = HeckeAlgebra(CoxeterSystem(label), q)
        for s in range(H.W.rank):
            w = H.W.elements[0]
            ts = H.basis_element(H.W.left_mul_gen(s, w))
            sq = H.t_multiply(ts, ts)
            expect = {H.W.identity.index: q}
            gen = H.W.left_mul_gen(s, H.W.identity)
            expect[gen.index] = q - 1
            ok = ok and sq == expect
    # q = 1 is the group algebra, for every supported type
    for label in ("A1", "A2", "A3", "A4", "C2", "G2", "I2(5)"):
        W = CoxeterSystem(label)
        H = HeckeAlgebra(W, Fraction(1))
        import random
        rng = random.Random(0)
        pairs = (itertools.product(W.elements, repeat=2) if W.order <= 12
                 else ((rng.choice(W.elements), rng.choice(W.elements))
                       for _ in range(300)))
        for x, y in pairs:
            prod = H.t_multiply(H.basis_element(x), H.basis_element(y))
            ok = ok and prod == {W.multiply(x, y).index: Fraction(1)}
    # associativity, exhaustive for |W| <= 12
    for label in ("A1", "A2", "C2", "I2(5)", "G2"):
        W = CoxeterSystem(label)
        assert W.order <= 12
        H = HeckeAlgebra(W, Fraction(2))
        basis = [H.basis_element(w) for w in W.elements]
        for a, b, c in itertools.product(basis, repeat=3):
            left = H.t_multiply(H.t_multiply(a, b), c)
            right = H.t_multiply(a, H.t_multiply(b, c))
            ok = ok and left == right
    _report(capsys, 3, ok,
            "quadratic rule, q=1 group algebra, exhaustive associativity")


def test_criterion_04_triangularity_grid(capsys, decomposition_grid):
    frags, elapsed = decomposition_grid
    ok = bool(frags)
    for frag in frags.values():
        ok = ok and frag["ok"] and frag["a_mode_ok"]
        ok = ok and len(set(frag["injection"].values())) == len(frag["injection"])
        ok = ok and len(frag["injection"]) == len(frag["matrix"]["cols"])
        if frag["cell_mode_ok"]:
            ok = ok and frag["a_mode_ok"]
    ok = ok and elapsed < 120
    _report(capsys, 4, ok,
            f"unique unit injection on all {len(frags)} grid scenarios "
            f"({elapsed:.1f}s < 120s)")


def test_criterion_05_semisimple_identity(capsys, decomposition_grid):
    frags, _ = decomposition_grid
    ok = True
    seen = 0
    for frag in frags.values():
        if frag["semisimple"]:
            seen += 1
            ok = ok and _is_permuted_identity(np.array(frag["matrix"]["entries"]))
    ok = ok and seen > 0
    _report(capsys, 5, ok,
            f"identity decomposition matrix on all {seen} semisimple scenarios")


def test_criterion_06_known_matrices_vs_oracle(capsys):
    ok = True
    D2 = decomposition_matrix("A1", 3, 2)
    ok = ok and D2.entries.tolist() == [[1], [1]]
    D5 = decomposition_matrix("A1", 3, 5)
    ok = ok and _is_permuted_identity(D5.entries)
    # cross-check every reduction against the exhaustive submodule oracle
    for D in (D2, D5):
        for i, E in enumerate(D.rows):
            red = specialize_reduce(E, D.ell)
            oracle = oracle_factor_dims(red.as_module(seed=1))
            claimed = sorted(dim for j, M in enumerate(D.cols)
                             for dim in [M.dim] * int(D.entries[i, j]))
            ok = ok and oracle == claimed
    _report(capsys, 6, ok,
            "A1 matrices at (q=3, ell=2/5) agree with the brute-force "
            "submodule oracle")


def test_criterion_07_principal_series_bridge(capsys):
    t0 = time.monotonic()
    ok = True
    cases = 0
    for family, q in [("GL", 3), ("GL", 5), ("SL", 3)]:
        p = verify.prime_of(q)
        for ell in (2, 3, 5, 7):
            if ell == p or not verify.center_gate_ok(family, ell):
                continue
            frag = verify.verify_principal_series_bridge(family, 2, q, ell)
            ok = ok and frag["ok"]
            cases += 1
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 60 and cases >= 8
    _report(capsys, 7, ok,
            f"k[G/B] factor counts and B-fixed dimensions match the Hecke "
            f"side on {cases} cases ({elapsed:.1f}s < 60s)")


def test_criterion_08_unipotent_supports(capsys):
    G = lietype.build_group("GL", 2, 3)
    tab = lietype.character_table(G)
    trivial = next(i for i in range(tab.k)
                   if all(v == tab.rows[i][0] for v in tab.rows[i]))
    steinberg = next(i for i, d in enumerate(tab.degrees) if d == 3)
    sup_t = lietype.unipotent_support(G, trivial)
    sup_s = lietype.unipotent_support(G, steinberg)
    ok = sup_t.partition == (2,) and sup_s.partition == (1, 1)
    ok = ok and sup_t.dim_bu == 0 and sup_s.dim_bu == 1
    # the Hecke a-values the supports must match
    D = decomposition_matrix("A1", 3, 2)
    a_by_label = {E.label: E.a_value for E in D.rows}
    ok = ok and a_by_label == {"2": 0, "1+1": 1}
    # average value of Steinberg on the regular unipotent class is zero
    uc = lietype.unipotent_classes(G)
    reg = [(G.class_reps[ci], 1) for ci in uc[(2,)]]
    ok = ok and lietype.average_value(G, reg, tab.rows[steinberg]).is_zero()
    _report(capsys, 8, ok,
            "supports (2)/(1,1) with dim B_u = a-values; AV(regular, St) = 0")


def test_criterion_09_ordinary_degree_membership(capsys):
    S = degrees.registry("(A1,id)")
    ok = True
    checked = 0
    for family, q in [("SL", 3), ("SL", 5), ("GL", 3), ("GL", 5)]:
        tab = lietype.character_table(lietype.build_group(family, 2, q))
        for d in tab.degrees:
            ok = ok and bool(degrees.membership(d, Fraction(q), S))
            checked += 1
    _report(capsys, 9, ok,
            f"all {checked} ordinary character degrees lie in the rank-one "
            f"registry")


def test_criterion_10_registry_constants(capsys):
    ok = True
    for make in (lambda: degrees.registry("(A1,id)"),
                 lambda: degrees.registry("(C2,twisted)"),
                 lambda: degrees.extended_registry("(C2,twisted)")):
        S = make()
        ok = ok and degrees.from_text(S.to_text()) == S
    q = degrees.odd_power_of_sqrt2(3)
    vals = {v.as_fraction() for v in degrees.registry("(C2,twisted)").values_at(q)}
    ok = ok and vals == {1, 64, 65, 14, 35, 91}
    extra = [f for f, tag in degrees.extended_registry("(C2,twisted)").entries
             if tag == degrees.TAG_EXTENSION]
    ok = ok and len(extra) == 1 and extra[0].eval(q).as_fraction() == 63
    _report(capsys, 10, ok,
            "registries round-trip; values at 2^(3/2) are {1,64,65,14,35,91} "
            "and 63")


def test_criterion_11_defining_characteristic_control(capsys):
    dims = lietype.modular_irr_dims(lietype.build_group("SL", 2, 3), 3)
    ok = dims == [1, 2, 3]
    _report(capsys, 11, ok,
            "SL2(F3) at ell = p = 3 yields modular dimensions {1,2,3}")


def test_criterion_12_span_contains_registry(capsys):
    span = degrees.span_set_A1()
    base = degrees.registry("(A1,id)")
    ok = all(f in span for f in base.polynomials)
    _report(capsys, 12, ok,
            "the rank-one registry is contained in the exhaustive span set")
