import json

from nvgroups.cli import main
from nvgroups.group import format_group_word, parse_group_word, word_evaluate
from nvgroups.patterns import element_equal, element_from_json, element_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "-n", "2", "C0.2 X0.1", "--json")
    assert code == 0
    el = element_from_json(json.loads(out))
    assert element_equal(el, word_evaluate(parse_group_word("C0.2 X0.1", 2)))


def test_equal_relation_18(capsys):
    code, out, _ = run(capsys, "equal", "-n", "3", "C0.3 X0.2 C2.2", "C0.2 X0.3 C2.3 pi1")
    assert code == 0
    assert "equal" in out


def test_equal_distinct(capsys):
    code, out, _ = run(capsys, "equal", "-n", "2", "X0.1", "X0.2")
    assert code == 1
    assert "distinct" in out


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "s0.2 s1.1 s0.1")
    assert code == 0
    assert out.strip() == "s0.1 s1.2 s0.2 sig1"


def test_factor_round_trip(capsys):
    word = "C0.2 pi1 X0.1^-1 pibar0"
    code, out, _ = run(capsys, "factor", "-n", "2", word)
    assert code == 0
    g = word_evaluate(parse_group_word(word, 2))
    assert element_equal(word_evaluate(parse_group_word(out.strip(), 2)), g)


def test_factor_element_json_input(capsys):
    g = word_evaluate(parse_group_word("C0.2 X1.1", 2))
    code, out, _ = run(capsys, "factor", json.dumps(element_to_json(g)))
    assert code == 0
    assert element_equal(word_evaluate(parse_group_word(out.strip(), 2)), g)


def test_apply_baker(capsys):
    code, out, _ = run(capsys, "apply", "-n", "2", "C0.2", "01,1")
    assert code == 0
    assert out.strip() == "1,01"


def test_apply_shallow_address(capsys):
    code, _, err = run(capsys, "apply", "-n", "2", "C0.2", ",10")
    assert code == 1
    assert "error" in err


def test_present_counts(capsys):
    code, out, _ = run(capsys, "present", "--group", "nV", "-n", "2", "--json")
    assert code == 0
    blob = json.loads(out)
    assert len(blob["generators"]) == 8
    assert len(blob["relators"]) == 70


def test_present_plain(capsys):
    code, out, _ = run(capsys, "present", "--group", "monoid", "-n", "2", "--plain")
    assert code == 0
    assert out.splitlines()[0].startswith("generators: s0_1")


def test_present_omegaV(capsys):
    code, out, _ = run(capsys, "present", "--group", "omegaV", "--dmax", "2", "--json")
    assert code == 0
    assert len(json.loads(out)["relators"]) == 70


def test_verify_families(capsys):
    code, out, _ = run(capsys, "verify", "--families", "--bound", "2", "-n", "2")
    assert code == 0
    assert "all verified" in out


def test_verify_presentation(capsys):
    code, out, _ = run(capsys, "verify", "--group", "nV", "-n", "2")
    assert code == 0
    assert "70 relators" in out


def test_abelianize(capsys):
    code, out, _ = run(capsys, "abelianize", "-n", "3", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["trivial"] is True
    assert blob["elementary_divisors"] == [1] * 10


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "eval", "-n", "2", "Z9")
    assert code == 2
    assert "error" in err


def test_usage_error_exit_2(capsys):
    code, _, _ = run(capsys, "bogus-subcommand")
    assert code == 2


def test_eval_factor_eval_round_trip_random(capsys):
    import random

    from nvgroups.group import GroupWord, Pi, PiBar, X, C

    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(2, 3)
        letters = []
        for _ in range(rng.randint(1, 8)):
            k = rng.choice(("X", "C", "pi", "pibar"))
            if k == "X":
                letters.append(X(rng.randint(0, 3), rng.randint(1, n), rng.choice((1, -1))))
            elif k == "C":
                letters.append(C(rng.randint(0, 3), rng.randint(2, n), rng.choice((1, -1))))
            elif k == "pi":
                letters.append(Pi(rng.randint(0, 3)))
            else:
                letters.append(PiBar(rng.randint(0, 3)))
        word = format_group_word(GroupWord(n, tuple(letters)))
        code, factored, _ = run(capsys, "factor", "-n", str(n), word)
        assert code == 0
        code, out_a, _ = run(capsys, "eval", "-n", str(n), word, "--json")
        code2, out_b, _ = run(capsys, "eval", "-n", str(n), factored.strip() or "", "--json")
        assert code == 0 and code2 == 0
        ga = element_from_json(json.loads(out_a))
        gb = element_from_json(json.loads(out_b))
        assert element_equal(ga, gb)


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert out.count("PASS") == 8
