import pytest

from proxmix import verify
from proxmix.errors import RegistryError


def test_registry_covers_every_in_scope_item():
    for item, suites in verify.IN_SCOPE_MANIFEST.items():
        assert suites, f"{item} maps to no suite"
        for sid in suites:
            assert sid in verify.SUITES, f"{item} -> unknown suite {sid}"


def test_top_level_suites_registered():
    for sid in verify.TOP_LEVEL_SUITES:
        assert sid in verify.SUITES


def test_unknown_suite_id():
    with pytest.raises(RegistryError):
        verify.run_suite("prop999")


def test_unknown_scale():
    with pytest.raises(RegistryError):
        verify.run_suite("lemma2", scale="gigantic")


def test_determinism_identical_digests():
    a = verify.run_suite("lemma3", seed=123, scale="small")
    b = verify.run_suite("lemma3", seed=123, scale="small")
    assert a.digest() == b.digest()
    c = verify.run_suite("lemma3", seed=124, scale="small")
    assert a.digest() != c.digest()


def test_granular_parts_subset_of_family():
    part = verify.run_suite("prop30-i", seed=5, scale="small")
    assert part.all_pass
    assert all(c.note in ("eq", "le") for c in part.cases)


def test_report_serialization():
    rep = verify.run_suite("lemma2", seed=3, scale="small")
    payload = rep.to_json()
    assert payload["suite_id"] == "lemma2"
    assert payload["n_cases"] == len(rep.cases)
    assert payload["all_pass"] == rep.all_pass
    assert isinstance(payload["digest"], str)


def test_projection_suite_passes():
    rep = verify.run_suite("ex-proj", seed=11, scale="small")
    assert rep.all_pass
    assert len(rep.cases) >= 50


def test_prox_formula_suite_has_enough_cases():
    rep = verify.run_suite("prop17", seed=2, scale="default")
    assert rep.all_pass
    assert len(rep.cases) >= 200


def test_gap_bound_suite_passes():
    rep = verify.run_suite("prop30-i", seed=9, scale="small")
    assert rep.all_pass


def test_run_all_subset():
    reports = verify.run_all(seed=4, scale="small", ids=["lemma2", "lemma3"])
    assert [r.suite_id for r in reports] == ["lemma2", "lemma3"]
    assert all(r.all_pass for r in reports)
