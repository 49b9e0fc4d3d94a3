"""Command-line behaviour: spec example values, exit codes, byte-identical
reruns, and golden files (regenerate with `python tests/test_cli.py`)."""
import io
import os
import sys
from contextlib import redirect_stdout

import pytest

from kvertex.cli import main, parse_quiver_text

DATA = os.path.join(os.path.dirname(__file__), "data")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def quiver(name):
    return os.path.join(DATA, name)


GOLDEN_CASES = [
    ("residue_k_unit", ["residue", "--kind", "k", "1/(1-z)"]),
    ("residue_k_stack", ["residue", "--kind", "k", "z^2/(1-z)^3"]),
    ("residue_k_two_pole", ["residue", "--kind", "k", "1/((1-z)*(1-t*z))"]),
    ("residue_naive_unit", ["residue", "--kind", "naive", "1/(1-z)"]),
    ("residue_naive_char", ["residue", "--kind", "naive", "1/(1-t*z)"]),
    ("residue_coh", ["residue", "--kind", "coh", "1/u + 3*u^2"]),
    ("expand_zero", ["expand", "1/(1-z)", "--point", "zero", "--order", "3"]),
    ("expand_infinity", ["expand", "1/(1-z)", "--point", "infinity", "--order", "3"]),
    ("expand_one", ["expand", "1/z", "--point", "one", "--order", "3"]),
    ("pfrac_two_poles", ["pfrac", "1/((1-z)*(1-t*z))"]),
    ("pfrac_cyclotomic", ["pfrac", "1/(1-z^2)"]),
    ("pfrac_polynomial", ["pfrac", "z^3"]),
    ("hopf_star", ["hopf", "star", "1", "1"]),
    ("hopf_pair", ["hopf", "pair", "3", "5"]),
    ("hopf_coproduct", ["hopf", "coproduct", "2"]),
    ("hopf_chern", ["hopf", "chern", "1"]),
    ("hopf_translation", ["hopf", "translation", "-1", "4"]),
    ("vertex_kernel_a2", ["vertex", "--quiver", quiver("a2.quiver"),
                          "--f", "1@e1", "--g", "1@e2", "--kernel"]),
    ("vertex_shuffle", ["vertex", "--quiver", quiver("a2.quiver"),
                        "--f", "s_{1,1}@e1", "--g", "s_{1,1}@e1"]),
    ("bracket_a2", ["bracket", "--quiver", quiver("a2.quiver"),
                    "--f", "1@e1", "--g", "1@e2"]),
    ("axioms_skew", ["axioms", "--quiver", quiver("a2.quiver"), "--which", "skew",
                     "--f", "s_{1,1}@e1", "--g", "s_{2,1}@e2"]),
    ("wallcross_forward", ["wallcross", "forward", "--stability",
                           os.path.join(DATA, "stability.json"),
                           "--table", os.path.join(DATA, "table.json"),
                           "--k", "k2", "--alpha", "(3)"]),
    ("wallcross_invert", ["wallcross", "invert", "--stability",
                          os.path.join(DATA, "stability.json"),
                          "--table", os.path.join(DATA, "table.json"), "--k", "k1"]),
    ("wallcross_master", ["wallcross", "master", "--stability",
                          os.path.join(DATA, "stability.json"),
                          "--table", os.path.join(DATA, "table.json"),
                          "--k", "k1", "--k2", "k2", "--alpha", "(2)"]),
    ("suite_constraints_small", ["suite", "residue-constraints",
                                 "--nmax", "2", "--kmax", "1"]),
]


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv):
    code1, out1 = run_cli(argv)
    code2, out2 = run_cli(argv)
    assert code1 == code2 == 0
    assert out1 == out2, "output must be byte-identical across runs"
    with open(os.path.join(GOLDEN, name + ".txt"), "r", encoding="utf-8") as fh:
        assert out1 == fh.read()


def test_spec_example_values():
    assert run_cli(["residue", "--kind", "k", "1/(1-z)"])[1].strip() == "1"
    assert run_cli(["residue", "--kind", "k", "z^2/(1-z)^3"])[1].strip() == "0"
    assert run_cli(["hopf", "star", "1", "1"])[1].strip() == "2*phi^2 - phi^1"
    code, out = run_cli(["suite", "residue-constraints", "--nmax", "6", "--kmax", "4"])
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS 105/105"


def test_exit_codes():
    code, _ = run_cli(["residue", "--kind", "k", "1/(1-z)"])
    assert code == 0
    # evaluation error: non-factorable denominator
    buf = io.StringIO()
    with redirect_stdout(buf):
        assert main(["residue", "--kind", "k", "1/(1-x-z)"]) == 1
    # parse error
    assert main(["residue", "--kind", "k", "1/((1-z)"]) == 2


def test_seeded_suite_determinism(monkeypatch):
    monkeypatch.setenv("KVERTEX_SUITE_SEED", "7")
    args = ["suite", "residue-oracle", "--count", "20", "--seed", "7"]
    _, out1 = run_cli(args)
    _, out2 = run_cli(args)
    assert out1 == out2
    assert out1.strip().splitlines()[-1] == "PASS 20/20"


def test_quiver_format():
    q = parse_quiver_text("# comment\nvertex a\nvertex b\nedge a b\n\nedge a a\n")
    assert q.vertices == ("a", "b")
    assert q.edges == (("a", "b"), ("a", "a"))
    with pytest.raises(Exception):
        parse_quiver_text("vertexx a")


def test_state_parse_errors():
    code = main(["vertex", "--quiver", quiver("a2.quiver"), "--f", "1", "--g", "1@e2"])
    assert code == 1


def regenerate():
    os.makedirs(GOLDEN, exist_ok=True)
    for name, argv in GOLDEN_CASES:
        code, out = run_cli(argv)
        assert code == 0, (name, code)
        with open(os.path.join(GOLDEN, name + ".txt"), "w", encoding="utf-8") as fh:
            fh.write(out)
        print(f"wrote {name}: {out.splitlines()[0] if out else '(empty)'}")


if __name__ == "__main__":
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
    regenerate()
