import io

import pytest

from derangement_cliques.catalog import catalog_dir
from derangement_cliques.cli import main

CAT = catalog_dir()


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("#"))


def test_analyze_kv():
    code, out = run("analyze", CAT / "alt4_deg6.grp", "--format", "kv")
    assert code == 0
    d = kv(out)
    assert d["omega"] == "3" and d["alpha"] == "4" and d["classification"] == "exception-candidate"


def test_clique_exit_codes():
    code, out = run("clique", CAT / "sym4_deg4.grp", "--size", "4", "--format", "kv")
    assert code == 0 and kv(out)["found"] == "true"
    code, out = run("clique", CAT / "sym3_deg3.grp", "--size", "4", "--format", "kv")
    assert code == 1 and kv(out)["found"] == "false"


def test_coclique_density_blocks():
    assert kv(run("coclique", CAT / "alt5_deg10.grp", "--format", "kv")[1])["alpha"] == "12"
    assert kv(run("density", CAT / "alt5_deg10.grp", "--format", "kv")[1])["rho"] == "2"
    code, out = run("blocks", CAT / "alt4_deg6.grp", "--format", "kv")
    assert code == 0 and kv(out)["count"] == "1"


def test_cap_exit_code():
    code, _ = run("coclique", CAT / "cyclic_wreath_alt4_deg18.grp")
    assert code == 3


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("name: x\ndegree: 3\ngen: [0,0,1]\n")
    assert run("analyze", bad)[0] == 2
    assert run("analyze", tmp_path / "missing.grp")[0] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_hypergraph_chroma():
    code, out = run("hypergraph-chroma", "--group", CAT / "alt4_deg6.grp", "--a", 2, "--b", 2,
                    "--trials", 10000, "--format", "kv")
    assert code == 0
    d = kv(out)
    assert int(d["hypergraphs"]) >= 1


def test_hypergraph_file(tmp_path):
    path = tmp_path / "k5.txt"
    path.write_text("vertices: 5\n" + "".join(f"edge: [[{i},{j}]]\n" for i in range(5) for j in range(i + 1, 5)))
    code, out = run("hypergraph-chroma", "--group", CAT / "alt5_deg5.grp", "--hypergraph", path,
                    "--trials", 1000, "--format", "kv")
    d = kv(out)
    assert d["h0.chi"] == "5" and d["h0.random_colouring"] == "none"
    # K5 edges are not fixed by a point stabilizer, so this is not a failure
    assert code == 0


def test_covering():
    code, out = run("covering", "--ambient", CAT / "exceptional_deg18_order324_1.grp",
                    "--normal", "kernel:3", "--subgroup", "stabilizer:0", "--format", "kv")
    d = kv(out)
    assert code == 0 and d["covering"] == "true" and d["index_HU"] == "6"
    code, _ = run("covering", "--ambient", CAT / "sym4_deg4.grp", "--normal", "kernel:9",
                  "--subgroup", "stabilizer:0")
    assert code == 2


def test_classes():
    code, out = run("classes", "--group", CAT / "alt5_deg5.grp", "--ambient", CAT / "sym5_deg5.grp",
                    "--kappa", 2, "--format", "kv")
    d = kv(out)
    assert code == 0 and d["classes"] == "4" and d["brute_force"] == "10" and d["agree"] == "true"


def test_search_writes_records(tmp_path):
    code, out = run("search-exceptional", "--p", 3, "--budget", 500, "--seed", 1, "--out", tmp_path,
                    "--format", "kv")
    assert code == 0 and kv(out)["found"] == "1"
    assert (tmp_path / "exceptional_deg18_order324_1.grp").exists()


def test_verify_catalog(tmp_path):
    code, out = run("verify-catalog", "--format", "kv")
    assert code == 0 and "alt4_deg6=pass" in out
    bad = tmp_path / "s4.grp"
    bad.write_text("name: s4\ndegree: 4\ntag: omega=3\ngen: [1,0,2,3]\ngen: [1,2,3,0]\n")
    code, out = run("verify-catalog", tmp_path)
    assert code == 1 and "FAIL s4" in out


def test_verify_empty_directory(tmp_path):
    code, out = run("verify-catalog", tmp_path)
    assert code == 0 and "0/0" in out


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "derangement_cliques", "blocks", str(CAT / "alt4_deg6.grp"),
                          "--format", "kv"], capture_output=True, text=True)
    assert res.returncode == 0 and "count=1" in res.stdout
