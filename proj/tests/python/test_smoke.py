import pytest

import vwpsum


def test_macdonald_n2_passes():
    report, code = vwpsum.verify(identity="macdonald", n=2, q="0.5", g="0.35", z=["0.37", "0.11"],
                                 precision_bits=128, include_timing=False)
    assert code == 0
    assert report["verdict"] == "pass"
    assert report["error"] is None
    assert report["n"] == 2


def test_reports_are_deterministic():
    job = {"identity": "bailey-dougall", "n": 1, "q": "0.4", "g": "0.3"}
    a, _ = vwpsum.verify(job, include_timing=False)
    b, _ = vwpsum.verify(job, threads=4, include_timing=False)
    assert a == b


def test_precondition_error_exit_code():
    report, code = vwpsum.verify(identity="macdonald", n=1, q="1.5")
    assert code == 2
    assert report["error"]["kind"] == "NomeOutOfRange"


def test_unknown_key_raises():
    with pytest.raises(vwpsum.VwpError):
        vwpsum.verify(identity="macdonald", colour="blue")


def test_rational_terminating():
    report, code = vwpsum.verify(identity="terminating", n=2, N=2, mode="rational", seed=3)
    assert code == 0
    assert report["rel_err"] in ("0", 0, 0.0)
    assert report["lhs_exact"] == report["rhs_exact"]


def test_suite_names_and_battery():
    assert "recurrence" in vwpsum.suite_names()
    cases = vwpsum.battery("recurrence", include_timing=False)
    assert cases and all(c["verdict"] == "pass" for c in cases)
    with pytest.raises(vwpsum.VwpError):
        vwpsum.battery("no-such-suite")


def test_sweep_rows():
    csv = vwpsum.sweep(identity="macdonald", n=1, g="0.2", axis="q", values=[0.3, 0.5], include_timing=False)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("q,verdict")
    assert len(lines) == 3
