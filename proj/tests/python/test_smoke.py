import pytest

import twistlab


def binom3(n):
    return (n + 3) * (n + 2) * (n + 1) // 6


def test_hilbert_function():
    for alg in ("A", "S"):
        assert twistlab.hilbert(29, algebra=alg, cutoff=5) == [binom3(n) for n in range(6)]


def test_tower_reduce():
    assert twistlab.tower_reduce("i*i") == twistlab.tower_reduce("-1")
    assert twistlab.tower_reduce("alpha+beta+gamma+alpha*beta*gamma") == twistlab.tower_reduce("0")


def test_point_table_has_twenty_points():
    pts = twistlab.point_table(29)
    assert len(pts) == 20
    assert len({tuple(p) for p in pts}) == 20


def test_incidence_counts():
    counts = twistlab.incidence_counts(29)
    assert all(sum(row) == 6 for row in counts)
    assert all(row[4:] == [2, 2, 2] for row in counts[:4])
    for idx, row in enumerate(counts[4:]):
        j = idx // 4
        assert row[j] == 0 and row[4:] == [1, 1, 1]


def test_config_errors():
    with pytest.raises(twistlab.ConfigError):
        twistlab.validate(["schemes"], mode="symbolic")
    with pytest.raises(ValueError):
        twistlab.validate(["nope"])
    assert twistlab.validate(["all"], mode="symbolic") == ["identities", "modules"]
    assert twistlab.resolve_primes([13]) == [(13, 29)]


def test_symbolic_run_is_deterministic():
    a, md = twistlab.run(["modules"], mode="symbolic")
    b, _ = twistlab.run(["modules"], mode="symbolic")
    assert a == b
    assert a["pass"] is True
    assert a["summary"]["errata"] == 3
    assert "| modules | symbolic |" in md
