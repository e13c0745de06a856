from dataclasses import replace
from fractions import Fraction

from sobolev_constants import verify
from sobolev_constants.embedding.profile import profile_k3 as real_k3
from sobolev_constants.ratpoly import Poly


def test_small_run_passes():
    rep = verify.run_verify(n_max=3)
    assert rep.ok, rep.table()
    names = [r.name for r in rep.results]
    for required in ("extremal_spline", "triple_equality", "structure_theorem", "k3_analysis",
                     "k5_analysis", "orientation", "hypothesis_scan", "oracle_dominance"):
        assert required in names
    assert "A2[-1,1](2a-1) = 2^(2n-2k-1) A2[0,1](a)" in rep.orientation
    assert any("g(4)" in f for f in rep.findings)
    assert any("printed Lambda^2_{n,3}" in f for f in rep.findings)


def test_mutated_coefficient_is_named(monkeypatch):
    def mutated(n):
        p = real_k3(n)
        return replace(p, B=p.B + Poly.monomial(2, Fraction(1, 10 ** 6)))

    monkeypatch.setattr(verify, "profile_k3", mutated)
    rep = verify.run_verify(n_max=2)
    assert not rep.ok
    assert rep.failing == ["k3_profile"]
    assert "FAILED: k3_profile" in rep.table()


def test_exceptions_become_failures(monkeypatch):
    def broken(*args):
        raise ArithmeticError("nope")

    monkeypatch.setattr(verify, "legendre_norm_sq", broken)
    rep = verify.run_verify(n_max=2)
    assert "legendre_norm" in rep.failing
    assert "nope" in next(r.detail for r in rep.results if r.name == "legendre_norm")


def test_report_dict_without_timing():
    rep = verify.run_verify(n_max=2)
    d = rep.to_dict(timing=False)
    assert all("seconds" not in row for row in d["invariants"])
    assert d["ok"] is True and d["failing"] == []
