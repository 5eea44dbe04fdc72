"""Smoke tests for the _rbsim extension module and the rb CLI binary."""

import json
import math
import os
import subprocess
import sys
import tempfile

import pytest

_rbsim = pytest.importorskip("_rbsim")

CLI = os.environ.get("RB_CLI")


def test_group_enumeration_sizes():
    assert len(_rbsim.mu_group_unitaries(2, 4)) == 32
    assert len(_rbsim.clifford_group_unitaries(1)) == 24
    assert _rbsim.mu_group_order(2, 4) == 32


def test_channel_and_twirl_roundtrip():
    s = _rbsim.make_noise_superop("depolarize", d=2, p=0.9, seed=7)
    assert _rbsim.is_trace_preserving(s)
    assert _rbsim.is_completely_positive(s)
    fe = _rbsim.entanglement_fidelity(s)
    assert abs(fe - (0.9 * 3 + 1) / 4) < 1e-10
    assert abs(_rbsim.average_fidelity_from_entanglement(fe, 2) - (2 * fe + 1) / 3) < 1e-12

    units = _rbsim.mu_group_unitaries(2, 4)
    twirled = _rbsim.exact_twirl(s, units)
    assert abs(_rbsim.entanglement_fidelity(twirled) - fe) < 1e-10
    alpha, beta = _rbsim.mu_structure_params(twirled, 2)
    assert abs(alpha - 0.9) < 1e-9
    assert abs(beta - 0.9) < 1e-9
    assert _rbsim.commutant_dimension(units) == 3


def test_walk_quantities():
    pi = _rbsim.mu_transition_matrix(2, 4)
    t_mix = _rbsim.mixing_time(pi, 0.25)
    assert t_mix >= 1
    assert _rbsim.worst_case_tv(pi, t_mix) <= 0.25
    bound = _rbsim.approx_twirl_bound([0.01] * 10, 24)
    assert abs(bound - 4 * math.sqrt(math.log(24) / (23 / 24) * 0.1)) < 1e-12
    assert abs(_rbsim.hoeffding_bound(1000, 0.05) - math.exp(-5)) < 1e-12


def test_run_rb_and_fit():
    result = _rbsim.run_rb(
        group_type="clifford",
        qubits=1,
        noise_type="depolarize",
        p=0.9,
        protocol="standard",
        m_values=[1, 2, 3, 4, 5, 6, 8, 10],
        sequences=200,
        seed=11,
    )
    assert result["m"] == [1, 2, 3, 4, 5, 6, 8, 10]
    assert all(0.0 <= f <= 1.0 for f in result["mean"])
    assert abs(result["true_F_avg"] - result["F_avg_min"]) < 0.05

    fit = _rbsim.fit_decay(
        m=list(range(1, 13)),
        mean=[0.5 + 0.45 * 0.9**m for m in range(1, 13)],
        order=1,
    )
    assert abs(fit["terms"][0]["lambda"] - 0.9) < 1e-7


def test_parse_config():
    cfg = _rbsim.parse_config("group.type = mu\ngroup.d = 2\nm_values = 1-4\n")
    assert cfg["group_type"] == "mu"
    assert cfg["m_values"] == [1, 2, 3, 4]


@pytest.mark.skipif(CLI is None, reason="RB_CLI not set")
class TestCli:
    def run(self, *args, **kw):
        return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)

    def test_run_subcommand_and_outputs(self, tmp_path):
        csv = tmp_path / "out.csv"
        js = tmp_path / "out.json"
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "group.type = clifford\n"
            "group.qubits = 1\n"
            "noise.type = depolarize\n"
            "noise.p = 0.9\n"
            "protocol = standard\n"
            "m_values = 1-6\n"
            "M = 30\n"
            "repetitions = 1\n"
            "master_seed = 5\n"
            f"output.csv = {csv}\n"
            f"output.json = {js}\n"
        )
        proc = self.run("run", str(cfg))
        assert proc.returncode == 0, proc.stderr
        header = csv.read_text().splitlines()[0]
        assert header == "m,mean_fidelity,std_err,M,repetition"
        summary = json.loads(js.read_text())
        rep = summary["repetitions"][0]
        for key in ("a0", "terms", "F_e_min", "F_e_max", "F_avg_min",
                    "F_avg_max", "residual_rms", "true_F_avg", "error"):
            assert key in rep

    def test_config_error_exit_code(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("group.type = nosuchgroup\nm_values = 1,2\n")
        assert self.run("run", str(cfg)).returncode == 2

    def test_missing_subcommand_exit_code(self):
        assert self.run().returncode == 2

    def test_mixing_time(self):
        proc = self.run("mixing-time", "mu:d=2,n=4", "--eps", "0.125")
        assert proc.returncode == 0, proc.stderr
        assert "t_mix" in proc.stdout

    def test_fit_subcommand(self, tmp_path):
        csv = tmp_path / "curve.csv"
        rows = ["m,mean_fidelity"]
        rows += [f"{m},{0.5 + 0.45 * 0.9**m}" for m in range(1, 13)]
        csv.write_text("\n".join(rows) + "\n")
        proc = self.run("fit", str(csv), "--order", "1")
        assert proc.returncode == 0, proc.stderr
        assert "lambda=0.9" in proc.stdout

    def test_fit_strict_degenerate_exit_code(self, tmp_path):
        csv = tmp_path / "flat.csv"
        rows = ["m,mean_fidelity"] + [f"{m},0.7" for m in range(1, 9)]
        csv.write_text("\n".join(rows) + "\n")
        assert self.run("fit", str(csv), "--strict").returncode == 4
