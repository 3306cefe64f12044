import json

import pytest

from meshdist.equidist import (
    CONJECTURED,
    CONJECTURED_GROUPS,
    PROVED,
    PROVED_GROUPS,
    check_all,
    check_group,
    reports_json,
    reports_text,
)
from meshdist.patterns import InvalidInput


@pytest.mark.parametrize("group", PROVED_GROUPS)
def test_proved_groups_are_equal(group):
    r = check_group(group, 7)
    assert r.status == PROVED
    assert r.equal and r.equal_up_to == 7


@pytest.mark.parametrize("group", CONJECTURED_GROUPS)
def test_conjectured_groups_report(group):
    r = check_group(group, 7)
    assert r.status == CONJECTURED
    assert r.equal


def test_divergence_is_located():
    # Nr. 8 and Nr. 10 differ from n = 2 on
    r = check_group((8, 10), 4)
    assert not r.equal
    d = r.divergence
    assert (d.n, d.k) == (3, 0)
    assert d.counts == {8: 2, 10: 3}
    assert r.verdicts()[:4] == ["equal", "equal", "equal", "diverges at k=0"]
    assert "DIVERGE at n=3, k=0" in r.summary()


def test_report_output_is_deterministic():
    a = check_all(6, workers=1)
    b = check_all(6, workers=4)
    assert reports_json(a) == reports_json(b)
    assert reports_text(a) == reports_text(b)
    data = json.loads(reports_json(a))
    assert [d["nrs"] for d in data] == [list(g) for g in PROVED_GROUPS + CONJECTURED_GROUPS]
    assert all(d["equal"] for d in data)


def test_bad_groups():
    with pytest.raises(InvalidInput):
        check_group((8,), 4)
    with pytest.raises(InvalidInput):
        check_group((8, 2), 4)
