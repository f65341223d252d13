"""Acceptance gate: every verification criterion at its recorded tolerance.

Each test emits one ``criterion <name>: PASS|FAIL`` line.  A criterion fails
only if one of its internal checks misses the stated tolerance; the failure
message then lists the offending checks with observed/expected/tolerance.
"""

import sys

import pytest

from extremal import cli, verify


def _report(name, checks):
    bad = [c for c in checks if not c.passed]
    verdict = "FAIL" if bad else "PASS"
    line = f"criterion {name}: {verdict}"
    print(line)
    print(line, file=sys.stderr)
    if bad:
        detail = "\n".join(
            f"  {c.name}: observed={c.observed!r} "
            f"expected={c.expected!r} tol={c.tol!r}" for c in bad)
        raise AssertionError(f"{line}\n{detail}")


@pytest.mark.parametrize("name", [n for n, _ in verify.CRITERIA])
def test_criterion(name):
    _report(name, verify.run_criterion(name, seed=7))


def test_criterion_11_verify_determinism(capsys):
    argv = ["verify", "--suite", "all", "--seed", "7"]
    code1 = cli.main(argv)
    out1 = capsys.readouterr().out
    code2 = cli.main(argv)
    out2 = capsys.readouterr().out
    with capsys.disabled():
        verdict = "PASS" if (out1 == out2 and code1 == code2) else "FAIL"
        print(f"criterion 11-verify-determinism: {verdict}")
    assert out1 == out2, "verify output must be byte-identical across reruns"
    assert code1 == code2
