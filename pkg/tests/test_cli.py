"""CLI tests: parsing, commands, exit codes, deterministic output."""

import io

import pytest

from nil2q import cli


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_info_q8_golden():
    code, text = run(["info", "Q8"])
    assert code == 0
    assert text == (
        "group Q8\n"
        "order: 8\n"
        "abelianization: [2, 2]\n"
        "commutator: [2]\n"
        "exponent: 4\n"
        "center: order 2\n"
        "q-split: yes (search)\n")


def test_info_semidirect_not_qsplit():
    code, text = run(["info", "semidirect(9,3,4)"])
    assert code == 0
    assert "order: 27" in text
    assert "q-split: no (search)" in text


def test_info_free_structural():
    code, text = run(["info", "free(2)"])
    assert code == 0
    assert "order: infinite" in text
    assert "abelianization: [0, 0]" in text
    assert "commutator: [0]" in text
    assert "q-split: yes (structural)" in text


def test_info_guard_skips_large_search():
    code, text = run(["info", "semidirect(25,5,6)"])
    assert code == 0
    assert "q-split: skipped (order 125 exceeds --max-order 64)" in text
    code, text = run(["--max-order", "200", "info", "semidirect(25,5,6)"])
    assert "q-split: no (search)" in text


def test_iso_commands():
    code, text = run(["iso", "D4", "Q8", "--category", "niq", "--witness"])
    assert code == 0
    assert "iso D4 Q8 category=niq: YES" in text
    assert "path qsplit-similar: yes" in text
    assert "path witness-search: yes" in text
    assert "witness fab =" in text
    assert "inverse fab =" in text

    code, text = run(["iso", "D4", "Q8", "--category", "nil"])
    assert code == 1
    assert "category=nil: NO" in text

    code, text = run(["iso", "Heis3", "semidirect(9,3,4)", "--category", "niq"])
    assert code == 1
    assert "NO" in text
    assert "path log-criterion: no" in text


def test_iso_identity():
    code, text = run(["iso", "Q8", "Q8", "--category", "nil"])
    assert code == 0 and "YES" in text


def test_unknown_group_is_input_error():
    code, text = run(["info", "Nope"])
    assert code == 2
    assert "error:" in text


def test_group_file(tmp_path):
    f = tmp_path / "groups.txt"
    f.write_text("""
# a comment
group G27 = semidirect(9,3,4)
group W = coproduct(Z2, Z2)
group K { abelianization = [3,3]; commutator = [3]; bil[2][1] = [2]; }
""")
    code, text = run(["--file", str(f), "info", "W"])
    assert code == 0 and "order: 8" in text
    code, text = run(["--file", str(f), "iso", "K", "G27", "--category", "niq"])
    assert code == 1  # K is Heis3-like (no carries), G27 is not q-split
    code, text = run(["--file", str(f), "iso", "K", "Heis3", "--category", "niq"])
    assert code == 0


def test_group_file_oracle(tmp_path):
    o = ["elements = " + " ".join(f"g{i}" for i in range(4)), "id = g0"]
    table = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
    for i in range(4):
        for j in range(4):
            o.append(f"g{i} * g{j} = g{table[i][j]}")
    f = tmp_path / "g.txt"
    f.write_text("group C4 = oracle {\n" + "\n".join(o) + "\n}\n")
    code, text = run(["--file", str(f), "info", "C4"])
    assert code == 0
    assert "order: 4" in text and "abelianization: [4]" in text


def test_duplicate_names_rejected(tmp_path):
    f = tmp_path / "dup.txt"
    f.write_text("group X = free(1)\ngroup X = free(2)\n")
    code, text = run(["--file", str(f), "info", "X"])
    assert code == 2
    f2 = tmp_path / "clash.txt"
    f2.write_text("group Q8 = free(1)\n")
    code, text = run(["--file", str(f2), "info", "Q8"])
    assert code == 2


def test_selftest_deterministic_and_passing():
    code1, text1 = run(["selftest", "--suite", "classify"])
    code2, text2 = run(["selftest", "--suite", "classify"])
    assert code1 == code2 == 0
    assert text1 == text2
    assert "PASS qsplit-verdict D4" in text1
    assert "FAIL" not in text1


def test_selftest_negative_suite():
    code, text = run(["selftest", "--suite", "negative"])
    assert code == 0
    assert "PASS not-isomorphic-in-niq Z2^3|Z2vZ2" in text
