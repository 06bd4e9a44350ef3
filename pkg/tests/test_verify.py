import numpy as np
import pytest

from hollowlat.families import SpecError, generate
from hollowlat.results import HOLDS, NOTED, UNMET, VIOLATED, CheckResult
from hollowlat.verify import (REGISTRY, Context, StaleWitnessError, evaluate_check, load_allowlist,
                              parse_machine_line, replay, resolve_checks, run_suite)

CHAINS = [f"chain_power(k={k})" for k in range(1, 7)]
SAMPLE = ["b4()", "zmod(m=12)", "zmod(m=30)", "chain_power(k=3)", "boolean(k=3)",
          "product(factors=[chain_power(k=2),zmod(m=6)])", "quotient(base=zmod(m=36),element=6Z)",
          "localization(base=zmod(m=24),prime=2Z)", "frame(poset=a<b;a<c)"]


def results(report, check):
    return [r for r in report.results if r.check == check]


def test_chains_p54_l52_hold():
    rep = run_suite(CHAINS, ["P5.4", "L5.2"], workers=1, allowlist=set())
    assert rep.results and all(r.status == HOLDS for r in rep.results)
    assert {r.check for r in rep.results} == {"P5.4(=>)", "P5.4(<=)", "P5.4(csh=>)",
                                               "P5.4(csh<=)", "L5.2"}


def test_b4_t28_holds():
    rep = run_suite(["b4()"], ["T2.8"], workers=1, allowlist=set())
    assert [r.status for r in rep.results] == [HOLDS]


def test_b4_t55_discrepancy():
    rep = run_suite(["b4()"], ["T5.5(2=>3)"], workers=1, allowlist=set())
    (r,) = rep.results
    assert r.status == VIOLATED and r.witness == (("a", "1"),)
    assert rep.exit_code == 1
    assert replay(r)


def test_allowlist_matches_isomorphic_copies():
    allow = load_allowlist()
    rep = run_suite(["b4()", "zmod(m=6)", "zmod(m=30)"], ["T5.5"], workers=1, allowlist=allow)
    viol = rep.violations()
    assert [r.lattice for _, r in viol] == ["b4()", "zmod(m=6)"]
    assert rep.unexpected() == [] and rep.exit_code == 0
    assert "[allowlisted]" in rep.format_text()


def test_allowlist_unknown_check(tmp_path):
    p = tmp_path / "allow.txt"
    p.write_text("T9.9 b4\n")
    with pytest.raises(KeyError):
        load_allowlist(p)


def test_replay_holding_check_is_false():
    assert not replay(CheckResult("T2.8", "b4()", HOLDS, (("a", "m"),)))


@pytest.mark.parametrize("witness, check", [
    ((("a", "17"),), "T5.5(2=>3)"),
    ((("b", "1"),), "T5.5(2=>3)"),
    ((("a", "1"),), "T99"),
    ((("a", "zz"),), "T5.5(2=>3)"),
])
def test_replay_stale(witness, check):
    with pytest.raises(StaleWitnessError):
        replay(CheckResult(check, "b4()", VIOLATED, witness))


def test_every_violation_replays():
    rep = run_suite(SAMPLE, "all", workers=1, allowlist=set())
    viol = [r for _, r in rep.violations()]
    assert viol
    for r in viol:
        assert replay(r)
        assert replay(parse_machine_line(f"{r.check}\t{r.lattice}\t{r.status}\t{r.witness_text()}"))


def test_noted_is_not_violated():
    rep = run_suite(["chain_power(k=3)", "product(factors=[b4(),chain_power(k=1)])"],
                    ["Prop1", "T4.2"], workers=1, allowlist=set())
    st = {(r.check, r.lattice): r.status for r in rep.results}
    assert st[("Prop1(2-stated)", "chain_power(k=3)")] == NOTED
    assert st[("Prop1(2)", "chain_power(k=3)")] == HOLDS
    assert st[("T4.2(kappa-stated)", "product(factors=[b4(),chain_power(k=1)])")] == NOTED
    assert st[("T4.2(kappa)", "product(factors=[b4(),chain_power(k=1)])")] == HOLDS
    assert rep.exit_code == 0


def test_hypothesis_unmet_is_distinct():
    rep = run_suite(["b4()"], ["Prop1(1)", "T4.2(=>)"], workers=1, allowlist=set())
    assert [r.status for r in rep.results] == [UNMET, UNMET]


def test_resolve_checks():
    assert [c.id for c in resolve_checks(["T2.3"])] == ["T2.3(=>)", "T2.3(<=)"]
    assert len(resolve_checks("all")) == len(REGISTRY)
    with pytest.raises(KeyError):
        resolve_checks(["nope"])


def test_corpus_failure_raises():
    with pytest.raises(SpecError):
        run_suite(["zmod(m=1)"], "all", workers=1, allowlist=set())


def test_report_deterministic_and_worker_independent():
    a = run_suite(SAMPLE, "all", workers=1, allowlist=load_allowlist())
    b = run_suite(SAMPLE, "all", workers=1, allowlist=load_allowlist())
    c = run_suite(SAMPLE, "all", workers=3, allowlist=load_allowlist())
    strip = lambda t: t.rsplit("wall-clock", 1)[0]
    assert strip(a.format_text()) == strip(b.format_text()) == strip(c.format_text())
    assert a.format_machine() == c.format_machine()


def test_machine_format_shape():
    rep = run_suite(["b4()"], ["T2.8", "T5.5"], workers=1, allowlist=set())
    lines = rep.format_machine().splitlines()
    assert lines[0] == "check\tlattice\tstatus\twitness"
    assert all(line.count("\t") == 3 for line in lines)
    assert "T5.5(2=>3)\tb4()\tviolated\ta=1" in lines


# ---------------------------------------------------- the checks can fail

def _ctx_with(L, **overrides):
    ctx = Context(L)
    for k, v in overrides.items():
        ctx.__dict__[k] = v
    return ctx


def test_seeded_fault_in_sh_mask_is_caught(b4):
    sh = np.array([True, True, True, True])      # pretend top of B4 is strongly hollow
    ctx = _ctx_with(b4, sh=sh)
    caught = {cid for cid, chk in REGISTRY.items() if evaluate_check(chk, ctx)[0] == VIOLATED}
    assert {"fg-coincidence(<=)", "T2.3(=>)", "s-plus(1)"} <= caught


def test_seeded_fault_in_kappa_is_caught(z12):
    k = Context(z12).kappa.copy()
    k[z12.resolve("4Z")] = z12.top
    ctx = _ctx_with(z12, kappa=k)
    caught = {cid for cid, chk in REGISTRY.items() if evaluate_check(chk, ctx)[0] == VIOLATED}
    assert {"kappa-criterion(=>)", "T2.7(kappa)"} <= caught


def test_seeded_fault_in_csh_is_caught(c3):
    csh = np.ones(c3.n, dtype=bool)
    csh[c3.resolve("p")] = False
    ctx = _ctx_with(c3, csh=csh)
    caught = {cid for cid, chk in REGISTRY.items() if evaluate_check(chk, ctx)[0] == VIOLATED}
    assert {"L5.2", "P5.4(csh<=)"} <= caught


def test_crashing_check_reported(monkeypatch, b4):
    from hollowlat.verify import checks
    chk = REGISTRY["T2.8"]
    boom = lambda c, a: 1 / 0
    monkeypatch.setitem(REGISTRY, "T2.8", checks.Check(chk.id, chk.statement, chk.keys, chk.hyp,
                                                       chk.domain, chk.applies, boom))
    rep = run_suite(["b4()"], ["T2.8"], workers=1, allowlist=set())
    (r,) = rep.results
    assert r.status == VIOLATED and "ZeroDivisionError" in r.detail
