import json

import pytest

from k3stab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chart_lower(capsys):
    code, out, _ = run(capsys, "chart", "--z", "0,-1")
    d = json.loads(out)
    assert code == 0
    assert d["region"] == "WMinus"
    assert d["abc"] == pytest.approx([1, 2**0.5, 1], rel=1e-15)
    assert d["triangle"] == "StrictInterior"


def test_chart_wall(capsys):
    code, out, _ = run(capsys, "chart", "--z", "-2,0")
    d = json.loads(out)
    assert code == 0 and d["region"] == "WZero"
    assert d["triangle"] == "OnWallBeqAplusQC"


def test_chart_upper_reports_canonical_form(capsys):
    code, out, _ = run(capsys, "chart", "--z", "0,1", "--twist", "2")
    d = json.loads(out)
    assert d["canonical"]["twist"] == 1
    assert d["canonical"]["z"] == pytest.approx([0.5, -0.5], abs=1e-12)


def test_chart_forbidden_ray(capsys):
    code, _, err = run(capsys, "chart", "--z", "1,0")
    assert code == 2
    assert "forbidden ray" in err


def test_mass_examples(capsys):
    code, out, _ = run(capsys, "mass", "--z", "0,-1", "--window", "-2:3")
    assert code == 0
    assert json.loads(out)["values"] == pytest.approx([3, 2, 1, 2**0.5, 1 + 2**0.5, 2 + 2**0.5], rel=1e-15)
    _, out, _ = run(capsys, "mass", "--z", "-2,0", "--window", "-1:1")
    assert json.loads(out)["values"] == [3, 1, 3]


def test_mass_twist_shifts_right(capsys):
    _, out0, _ = run(capsys, "mass", "--z", "0,-1", "--q", "1")
    _, out1, _ = run(capsys, "mass", "--z", "0,-1", "--q", "1", "--twist", "1")
    v0, v1 = json.loads(out0)["values"], json.loads(out1)["values"]
    assert v1[1:] == v0[:-1]


def test_invert_examples(capsys):
    code, out, _ = run(capsys, "invert", "--a", "1", "--b", "1.414213562", "--c", "1", "--cell", "delta0")
    assert code == 0
    assert json.loads(out)["z"] == pytest.approx([0, -1], abs=1e-9)
    _, out, _ = run(capsys, "invert", "--a", "1.414213562", "--b", "1", "--c", "1", "--cell", "delta-1")
    assert json.loads(out)["z"] == pytest.approx([0, 1], abs=1e-9)
    code, _, _ = run(capsys, "invert", "--a", "1", "--b", "5", "--c", "1", "--cell", "delta0")
    assert code == 3


def test_invert_q(capsys):
    from k3stab.mass import mass_abc

    a, b, c = mass_abc(-0.4 - 1.3j, 2.0)
    code, out, _ = run(capsys, "invert", "--a", repr(a), "--b", repr(b), "--c", repr(c), "--cell", "delta0", "--q", "2")
    assert code == 0
    assert json.loads(out)["z"] == pytest.approx([-0.4, -1.3], abs=1e-9)


def test_tiling(tmp_path, capsys):
    out = tmp_path / "t.svg"
    assert run(capsys, "tiling", "--mode", "halfplane", "--q", "1", "--depth", "3", "--out", str(out))[0] == 0
    text = out.read_text()
    assert text.count("<path ") == 7
    again = tmp_path / "u.svg"
    run(capsys, "tiling", "--mode", "halfplane", "--q", "1", "--depth", "3", "--out", str(again))
    assert again.read_bytes() == out.read_bytes()
    disk = tmp_path / "d.svg"
    assert run(capsys, "tiling", "--mode", "disk", "--q", "1", "--depth", "1", "--out", str(disk))[0] == 0
    assert disk.read_text().count('class="red-point"') == 1


@pytest.mark.parametrize("depth", ["0", "65", "x"])
def test_tiling_bad_flags(tmp_path, capsys, depth):
    code, _, _ = run(capsys, "tiling", "--mode", "disk", "--depth", depth, "--out", str(tmp_path / "x.svg"))
    assert code == 2


def test_boundary_examples(capsys):
    _, out, _ = run(capsys, "boundary", "--u", "0", "--ray", "1:0", "--window", "-2:2")
    assert json.loads(out)["values"] == [2, 1, 0, 1, 2]
    _, out, _ = run(capsys, "boundary", "--u", "inf", "--ray", "1:0", "--q", "2", "--window", "-1:1")
    v = json.loads(out)["values"]
    assert [x / v[1] for x in v] == pytest.approx([2, 1, 0.5], rel=1e-15)
    _, out, _ = run(capsys, "boundary", "--u", "0.5", "--ray", "1:1", "--window", "-1:2")
    assert json.loads(out)["values"] == [2.5, 1.5, 1.5, 2.5]
    code, _, _ = run(capsys, "boundary", "--u", "0", "--ray", "0:0")
    assert code == 2


def test_phases(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert run(capsys, "phases", "--z", "0,-1", "--rmax", "1", "--nmax", "1", "--out", str(out))[0] == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "r,n,phase"
    assert [tuple(r.split(",")[:2]) for r in rows[1:]] == [("0", "1"), ("1", "-1"), ("1", "0")]
    run(capsys, "phases", "--z", "0,-1", "--rmax", "0", "--nmax", "5", "--out", str(out))
    rows = out.read_text().splitlines()[1:]
    assert len(rows) == 5 and all(r.endswith(",1.00000000000") for r in rows)


def test_phases_svg(tmp_path, capsys):
    svg = tmp_path / "p.svg"
    run(capsys, "phases", "--z", "0,-1", "--rmax", "2", "--nmax", "3", "--out", str(tmp_path / "p.csv"), "--svg", str(svg))
    assert svg.read_text().startswith("<?xml")


def test_phases_upper_chart_is_domain_error(tmp_path, capsys):
    code, _, _ = run(capsys, "phases", "--z", "0,1", "--rmax", "1", "--nmax", "1", "--out", str(tmp_path / "p.csv"))
    assert code == 2


def test_verify_hn(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hn", "--samples", "100", "--seed", "7")
    assert code == 0
    prop = json.loads(out)["suites"]["hn"][0]
    assert prop["failures"] == 0 and prop["count"] == 2 * 100 * 129


def test_verify_roundtrip(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "roundtrip", "--samples", "500", "--seed", "1")
    assert code == 0
    props = {p["name"]: p for p in json.loads(out)["suites"]["roundtrip"]}
    assert props["invert_delta0_q1"]["max_error"] <= 1e-9
    assert props["invert_q_numeric"]["count"] == 300


def test_verify_lax(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lax")
    red = json.loads(out)["suites"]["lax"][0]
    assert code == 0
    assert red["min_support_ratio"] == pytest.approx(0.894427191, abs=1e-9)
    assert red["argmin"] == [1, 2 * -1]


def test_verify_deterministic(capsys, monkeypatch):
    monkeypatch.setenv("K3STAB_SEED", "11")
    _, a, _ = run(capsys, "verify", "--suite", "mass", "--samples", "5")
    _, b, _ = run(capsys, "verify", "--suite", "mass", "--samples", "5", "--seed", "11")
    assert a == b
    assert json.loads(a)["seed"] == 11


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("K3STAB_SEED", "abc")
    assert run(capsys, "verify", "--suite", "lax")[0] == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "mass", "--z", "nope")[0] == 2
