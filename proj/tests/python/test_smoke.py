import pytest

import tmis_lab

SCHEMES = ["wei2012", "zhu2012", "leeliu2013", "lin2013", "caozhai2013", "xie2013", "xu2014"]


def test_lists():
    assert tmis_lab.list_schemes() == SCHEMES
    assert "dos_via_password_change" in tmis_lab.list_scenarios()


@pytest.mark.parametrize("scheme", SCHEMES)
def test_honest_session(scheme):
    t = tmis_lab.run_session(scheme, seed=7)
    assert t["outcome"] == "MutualAuthSuccess"
    assert t["user_key"] == t["server_key"]
    assert t == tmis_lab.run_session(scheme, seed=7)


def test_dos_and_caozhai_resistance():
    wei = tmis_lab.attack("wei2012", "dos_via_password_change", trials=10)
    assert wei["vulnerable"] and wei["metrics"]["card_mutated"] == 10
    cao = tmis_lab.attack("caozhai2013", "dos_via_password_change", trials=10)
    assert not cao["vulnerable"] and cao["metrics"]["card_mutated"] == 0


def test_replay_and_leak():
    xie = tmis_lab.attack("xie2013", "replay_login", trials=5, refresh_timestamp=True)
    assert xie["failure_step"] == "C_1"
    leak = tmis_lab.attack("caozhai2013", "temp_info_leak", trials=5, include_transcripts=True)
    assert leak["metrics"]["key_recovered"] == 5
    assert len(leak["transcripts"]) == 5


def test_matrix():
    m = tmis_lab.attribute_matrix(trials=5)
    assert [r["attribute"] for r in m["rows"]][0] == "User anonymity"
    assert len(m["mismatches"]) == 5
    assert "| Efficient login" in tmis_lab.matrix_markdown(trials=5)


def test_crypto_helpers():
    assert tmis_lab.mod_exp(5, 3, 23) == 10
    assert tmis_lab.mod_inv(3, 7) == 5
    assert sorted(tmis_lab.rabin_roots(4, 7, 11)) == sorted(r for r in range(77) if r * r % 77 == 4)
    assert tmis_lab.toy_ec_mul(2) == (6, 3)
    assert tmis_lab.toy_ec_mul(19) is None
    big = 2**200 + 7
    assert tmis_lab.mod_exp(3, big, 2**127 - 1) == pow(3, big, 2**127 - 1)


def test_errors():
    with pytest.raises(tmis_lab.TmisError, match="NotInvertible"):
        tmis_lab.mod_inv(11, 22)
    with pytest.raises(tmis_lab.TmisError, match="UnknownScheme"):
        tmis_lab.run_session("nope")
    with pytest.raises(ValueError):
        tmis_lab.attack("xu2014", "tamper_login_message", tamper="wei_scale_bprime")
