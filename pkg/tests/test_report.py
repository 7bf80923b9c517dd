from covgen.report import (DegreeOrderTable, build_errata, check_printed_syzygies,
                           compare_published_table)


def test_table_conservation(paper12):
    table = DegreeOrderTable.from_state(paper12)
    assert table.total() == len(paper12.generators) == 69
    for row in paper12.rows:
        assert table.row_total(row.i) == row.delta
    text = table.render()
    assert "total generators: 69" in text
    assert "dvan" in text


def test_published_table_multiset(paper12):
    eq, missing, extra = compare_published_table(paper12)
    assert eq and not missing and not extra


def test_errata_flags(paper12):
    rep = build_errata(paper12)
    for lab in ("dim C", "sigma", "dim S", "delta"):
        assert rep.find(f"degree 5: {lab}").status == "match"
    assert rep.find("operator D, image of t").status == "mismatch"
    assert rep.find("operator D, image of t").recomputed == "8*x1"
    assert rep.find("operator D, image of z8").status == "match"
    assert rep.find("degree 8: dim C").status.startswith("mismatch")
    assert rep.find("sigma(x_i) indexing").status == "corrected"
    assert rep.find("order rule for z-monomials, z2").status == "corrected"
    assert rep.find("total number of generators").status == "match"
    for i in range(2, 9):
        assert rep.find(f"Cayley z{i}").status == "match"
    locations = [e.location for e in rep.entries]
    assert len(locations) == len(set(locations))
    assert "flagged" in rep.render()


def test_printed_syzygies(paper12):
    res = check_printed_syzygies(paper12)
    assert len(res) == 3
    assert all(r["holds"] for r in res)
    assert res[0]["negated"] is None
