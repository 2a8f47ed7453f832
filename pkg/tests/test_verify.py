import json

import pytest

from cellblocks import verify
from cellblocks.verify import (Scenario, center_gate_ok, default_grid,
                               excluded_primes, is_good_prime, prime_of,
                               run_verification, verify_unipotent_shape,
                               verify_dimension_registry, verify_principal_series_bridge,
                               verify_cell_poset_vs_dominance, verify_decomposition_triangularity)


# -- gating --------------------------------------------------------------------------

def test_good_prime_table():
    assert excluded_primes("A1") == ()
    assert excluded_primes("A4") == ()
    for label in ("B2", "C2", "C3", "D4"):
        assert excluded_primes(label) == (2,)
    for label in ("G2", "F4", "E6", "E7"):
        assert excluded_primes(label) == (2, 3)
    assert excluded_primes("E8") == (2, 3, 5)
    assert is_good_prime("C2", 3) and not is_good_prime("C2", 2)
    assert not is_good_prime("G2", 3) and is_good_prime("G2", 5)


def test_prime_of():
    assert prime_of(8) == 2
    assert prime_of(9) == 3
    assert prime_of(5) == 5
    with pytest.raises(ValueError):
        prime_of(6)


def test_scenario_validation():
    sc = Scenario("A2", 4, 3)
    assert sc.p == 2 and sc.good
    with pytest.raises(ValueError):
        Scenario("A1", 4, 2)  # defining characteristic without the flag
    with pytest.raises(ValueError):
        Scenario("A1", 3, 2, defining_control=True)  # flag but ell != p
    with pytest.raises(ValueError):
        Scenario("A1", 3, 4)  # ell not prime
    ctl = Scenario("A1", 3, 3, defining_control=True)
    assert ctl.as_dict()["defining_control"]


def test_center_gate():
    assert center_gate_ok("GL", 2)
    assert center_gate_ok("SL", 3)
    assert not center_gate_ok("SL", 2)


def test_default_grid_filters():
    grid = default_grid()
    assert all(sc.ell != sc.p and sc.good for sc in grid)
    keys = {sc.key for sc in grid}
    assert "A1,q=3,ell=2" in keys
    assert "C2,q=3,ell=2" not in keys   # bad prime for C2
    assert "G2,q=3,ell=3" not in keys   # defining and bad
    assert len(keys) == len(grid)


# -- individual checks ------------------------------------------------------------------

def test_triangularity_known_small_cases():
    frag = verify_decomposition_triangularity(Scenario("A1", 3, 2))
    assert frag["ok"] and frag["injection"] == {"M1": "2"}
    assert frag["matrix"]["entries"] == [[1], [1]]
    frag = verify_decomposition_triangularity(Scenario("A1", 3, 5))
    assert frag["ok"] and frag["semisimple"]
    assert sorted(map(tuple, frag["matrix"]["entries"])) == [(0, 1), (1, 0)]


def test_cell_poset_small_n():
    for n, cells in [(2, 2), (3, 3), (4, 5)]:
        frag = verify_cell_poset_vs_dominance(n)
        assert frag["ok"] and frag["cells"] == cells
    assert verify_cell_poset_vs_dominance(4)["a_values"] == [0, 1, 2, 3, 6]


def test_unipotent_shape_gl2_f3():
    frag = verify_unipotent_shape("GL", 2, 3, 2)
    assert frag["ok"]
    assert frag["supports"] == {"2": [2], "1+1": [1, 1]}
    assert frag["matrix"]["entries"] == [[1], [1]]


def test_unipotent_shape_semisimple_gl2_f3():
    frag = verify_unipotent_shape("GL", 2, 3, 5)
    assert frag["ok"]
    assert len(frag["injection"]) == 2


def test_unipotent_shape_gate_sl2_ell2():
    frag = verify_unipotent_shape("SL", 2, 3, 2)
    assert frag["gated"] and frag["ok"]
    assert "matrix" not in frag


def test_unipotent_shape_gl3_f2():
    frag = verify_unipotent_shape("GL", 3, 2, 7)
    assert frag["ok"]
    assert frag["supports"] == {"3": [3], "2+1": [2, 1], "1+1+1": [1, 1, 1]}


def test_bridge_gl2_f3():
    frag = verify_principal_series_bridge("GL", 2, 3, 2)
    assert frag["ok"]
    assert frag["hecke_dims"] == [1] and frag["b_fixed_dims"] == [1]
    frag = verify_principal_series_bridge("GL", 2, 3, 5)
    assert frag["ok"] and frag["hecke_dims"] == [1, 1]


def test_bridge_sl2_f3():
    frag = verify_principal_series_bridge("SL", 2, 3, 5)
    assert frag["ok"]


def test_registry_membership_and_control():
    frag = verify_dimension_registry([("SL", 2, 3), ("GL", 2, 3)])
    assert frag["ok"]
    assert frag["defining_control"]["dims"] == [1, 2, 3]
    assert "not expected" in frag["defining_control"]["flag"]
    ordinary = [r for r in frag["results"] if r["kind"] == "ordinary"]
    assert all(not r["non_members"] for r in ordinary)


# -- report assembly -----------------------------------------------------------------------

def test_small_report_round_trips_to_json():
    rep = run_verification(types=("A1",), qs=(3,), ells=(2, 5),
                           groups=(("GL", 2, 3),))
    assert rep.ok
    blob = json.dumps(rep.as_dict())
    back = json.loads(blob)
    assert back["summary"]["ok"]
    assert back["summary"]["checks"] == len(rep.fragments)
    assert "decomp/A1,q=3,ell=2" in back["scenarios"]


def test_report_flags_violations():
    rep = verify.VerificationReport(seed=0)
    rep.add("x", {"ok": False, "control": False, "violations": [{"kind": "k"}]})
    rep.add("y", {"ok": False, "control": True, "violations": []})
    assert not rep.ok
    assert [v["key"] for v in rep.violations] == ["x"]
    rep2 = verify.VerificationReport(seed=0)
    rep2.add("y", {"ok": False, "control": True, "violations": []})
    assert rep2.ok  # failed controls do not fail the report


def test_report_deterministic():
    kw = dict(types=("A1",), qs=(3,), ells=(2,), groups=())
    a = run_verification(seed=5, **kw).as_dict()
    b = run_verification(seed=5, **kw).as_dict()
    assert a == b
