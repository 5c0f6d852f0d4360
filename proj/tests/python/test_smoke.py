import pytest

import syncheck


def test_builtin_registry():
    names = syncheck.builtin_names()
    assert "example22" in names
    assert "genest-sync" in names
    system = syncheck.builtin_system("example22")
    assert system.peer_count == 3
    assert "example22" in repr(system)


def test_parse_and_serialize_round_trip():
    system = syncheck.builtin_system("example22")
    text = syncheck.serialize_system(system)
    again = syncheck.parse_system(text)
    assert syncheck.serialize_system(again) == text


def test_k_synchronizable_verdicts():
    system = syncheck.builtin_system("example22")
    assert syncheck.k_synchronizable(system, 1)["equal"]
    verdict = syncheck.k_synchronizable(system, 2)
    assert not verdict["equal"]
    assert verdict["witness"] == "a@1>2 a@1>2 b@1>3 c@3>2 d@2>1"
    assert verdict["states"] > 0


def test_ring_decision():
    ring = syncheck.builtin_system("ring-pingpong")
    assert syncheck.ring_synchronizable(ring)["equal"]
    with pytest.raises(syncheck.PreconditionError):
        syncheck.ring_synchronizable(syncheck.builtin_system("example22"))


def test_trace_operations():
    system = syncheck.builtin_system("example22")
    result = syncheck.run_trace(system, "!a !a !b ?b !c ?c !d")
    assert result["ok"]
    assert result["configurations"] == ["[q3 q5 q2 | 1>2=a,a 2>1=d]"]
    assert not syncheck.run_trace(system, "?a")["ok"]

    assert syncheck.causally_equivalent(
        system, "!a !a !b ?b !c ?a ?a ?c", "!a ?a !a ?a !b ?b !c ?c"
    )

    genest = syncheck.builtin_system("genest-sync")
    trace = "!a !a !b !b ?a ?a ?b ?b"
    assert syncheck.exists_equiv_k_bounded(genest, trace, 1) is None
    assert syncheck.exists_equiv_k_bounded(genest, trace, 2) is not None
    assert syncheck.normalize_trace(genest, "!a !b !a ?a ?b") == "!a ?a !b ?b !a"


def test_stability():
    system = syncheck.builtin_system("example22")
    assert syncheck.stable_bisimilar(system, 0)
    assert not syncheck.stable_bisimilar(system, 1)
    idle = syncheck.builtin_system("p1a-idle")
    assert syncheck.strongly_k_stable(idle, 1)
