"""Command-line interface: exit codes, certificate round trips, sweep
reports, catalog listing, and quotient printing."""

import pytest

from hamcay import cyclic, dihedral, save_table, solve
from hamcay.catalog import serialize_certificate
from hamcay.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_catalog_group(capsys):
    code, out, _ = run(capsys, "solve", "--group", "D12", "--gens", "4,6")
    assert code == 0
    assert "group D12" in out and "method " in out


def test_solve_table_file(tmp_path, capsys):
    path = tmp_path / "z12.tbl"
    path.write_text(save_table(cyclic(12)))
    code, out, _ = run(capsys, "solve", "--table", str(path),
                       "--gens", "1,5")
    assert code == 0 and "order 12" in out


def test_solve_cycle_notation(capsys):
    code, out, _ = run(capsys, "solve", "--group", "S4",
                       "--gens", "(1,2),(2,3,4)")
    assert code == 0 and "group S4" in out


def test_solve_nongenerating_set_fails(capsys):
    code, _, err = run(capsys, "solve", "--group", "Z12", "--gens", "2")
    assert code == 1 and "generate" in err


def test_solve_beyond_catalog_is_unsupported(capsys):
    code, _, err = run(capsys, "solve", "--group", "Z96", "--gens", "1")
    assert code == 2 and "catalog cap" in err


def test_solve_budget_exit(monkeypatch, capsys):
    from hamcay.errors import BudgetExceeded
    import hamcay.cli as cli

    def boom(*a, **k):
        raise BudgetExceeded("forced")

    monkeypatch.setattr(cli.constructions, "solve", boom)
    code, _, err = run(capsys, "solve", "--group", "Z12", "--gens", "1")
    assert code == 3 and "forced" in err


def test_verify_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--group", "D12", "--gens", "4,6",
                       "--out", str(tmp_path / "c.cert"))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(tmp_path / "c.cert"))
    assert code == 0 and "verified" in out


def test_verify_reports_tampered_word(tmp_path, capsys):
    cert = solve(cyclic(6), (1,))
    text = serialize_certificate(cert).replace("word 1 1 1 1 1 1",
                                               "word 1 1 1 -1 1 1")
    path = tmp_path / "bad.cert"
    path.write_text(text)
    code, _, err = run(capsys, "verify", str(path))
    assert code == 1 and "revisit" in err


def test_verify_against_table(tmp_path, capsys):
    path = tmp_path / "d12.tbl"
    path.write_text(save_table(dihedral(12)))
    cert = solve(dihedral(12), (1, 2))
    cpath = tmp_path / "c.cert"
    cpath.write_text(serialize_certificate(cert))
    code, out, _ = run(capsys, "verify", str(cpath),
                       "--table", str(path))
    assert code == 0, out


def test_sweep_report_format_and_determinism(capsys):
    code, first, _ = run(capsys, "sweep", "--orders", "24",
                         "--max-gens", "2")
    assert code == 0
    head = first.splitlines()
    assert head[0] == "# sweep orders=24 max-gens=2 allow-fallback=0 groups=15"
    assert head[1].split("\t") == ["group", "order", "form", "gens",
                                   "method", "flag", "verified"]
    assert all(r.split("\t")[6] == "yes" for r in head[2:])
    code, again, _ = run(capsys, "sweep", "--orders", "24",
                         "--max-gens", "2", "--jobs", "2")
    assert code == 0 and again == first


def test_sweep_empty_range(capsys):
    code, out, _ = run(capsys, "sweep", "--orders", "1", "--max-gens", "2")
    assert code == 0


def test_sweep_bad_orders(capsys):
    code, _, err = run(capsys, "sweep", "--orders", "5..900")
    assert code == 1


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--orders", "12")
    assert code == 0
    assert len(out.strip().splitlines()) == 5 and "A4" in out
    code, out, _ = run(capsys, "catalog", "show", "D12")
    assert code == 0 and "order 12" in out
    code, _, err = run(capsys, "catalog", "show")
    assert code == 1


def test_quotient_three_p_sq(capsys):
    code, out, _ = run(capsys, "quotient", "--three-p-sq", "5")
    assert code == 0 and "2 double edges" in out


def test_quotient_generic(capsys):
    code, out, _ = run(capsys, "quotient", "--group", "D12",
                       "--gens", "4,6", "--subgroup-gens", "6")
    assert code == 0 and "--" in out
    code, _, err = run(capsys, "quotient", "--group", "D12")
    assert code == 1
