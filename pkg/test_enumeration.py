import pytest

from qmds.enumeration import (
    CSV_HEADER,
    TABLE1_Q37,
    ParameterRecord,
    audit_examples,
    best_codes,
    check_table1,
    emit_table,
    enumerate_params,
    meets_threshold,
    parse_table,
    threshold_counts,
    verify_records,
)


@pytest.fixture(scope="module")
def q37_records():
    return enumerate_params(37)


@pytest.fixture(scope="module")
def q5_records():
    return enumerate_params(5)


class TestSweep:
    def test_q5_contents(self, q5_records):
        overlapping = [rec for rec in q5_records if rec.theorem != "t6"]
        assert [(rec.theorem, rec.s, rec.t, rec.h, rec.r) for rec in overlapping] == [
            ("t4", 3, 4, 1, 1),
            ("t5", 3, 4, 1, 1),
        ]
        t4 = overlapping[0]
        assert (t4.n, t4.d_max) == (13, 3)
        assert str(t4.quantum) == "[[13,7,4]]_5"
        assert len([rec for rec in q5_records if rec.theorem == "t6"]) == 12

    def test_sorted_and_unique(self, q37_records):
        keys = [rec.key for rec in q37_records]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_records_have_valid_dimensions(self, q37_records):
        assert all(1 <= rec.d_max and 2 * rec.d_max <= rec.n for rec in q37_records)

    def test_debug_output(self, capsys):
        enumerate_params(5, debug=True)
        assert "enumeration  | q=5: 14 valid parameter tuples" in capsys.readouterr().out

    def test_verify_records(self, q5_records):
        verified = verify_records(q5_records, threads=2)
        assert len(verified) == len(q5_records)
        assert all(rec.verified for rec in verified)
        assert not any(rec.verified for rec in q5_records)


class TestTable1:
    def test_every_row_is_realised(self, q37_records):
        matches = check_table1(q37_records)
        assert len(matches) == len(TABLE1_Q37)
        assert all(match.found for match in matches)

    def test_rows_are_best_for_their_length(self, q37_records):
        best = {b.n: b for b in best_codes(q37_records, "ceil")}
        for n, k, dmin in TABLE1_Q37:
            assert best[n].dmin == dmin
            assert best[n].k == k

    def test_unrealisable_row(self, q37_records):
        (match,) = check_table1(q37_records, [(588, 544, 24)])
        assert not match.found


class TestTables:
    def test_csv(self, q37_records):
        lines = emit_table(q37_records, "csv").splitlines()
        assert lines[0] == ",".join(CSV_HEADER) == "n,k,dmin,theorem,s,t,h,r,q"
        assert "588,544,23,t6,38,6,10,1,37" in lines
        ns = [int(line.split(",")[0]) for line in lines[1:]]
        assert ns == sorted(ns)

    def test_markdown(self, q5_records):
        document = emit_table(q5_records, "markdown")
        assert "| 13 | 7 | 4 | T4 | (3,4,1,1) |" in document

    def test_json_round_trip(self, q5_records):
        parsed = parse_table(emit_table(q5_records, "json"))
        assert set(parsed) == set(q5_records)

    def test_empty_input(self):
        assert emit_table([], "csv") == "n,k,dmin,theorem,s,t,h,r,q\n"
        assert best_codes([]) == []
        assert parse_table(emit_table([], "json")) == []

    def test_unknown_format(self, q5_records):
        with pytest.raises(ValueError):
            emit_table(q5_records, "xml")

    def test_record_dict(self):
        rec = ParameterRecord(q=5, theorem="t4", s=3, t=4, h=1, r=1, n=13, d_max=3)
        data = rec.to_dict()
        assert (data["k"], data["dmin"]) == (7, 4)
        assert ParameterRecord.from_dict(data) == rec


class TestThresholds:
    @pytest.mark.parametrize(
        "dmin,q,mode,expected",
        [
            (20, 37, "ceil", True),
            (19, 37, "ceil", False),
            (20, 37, "strict", True),
            (4, 5, "ceil", True),
            (4, 6, "strict", False),
            (5, 6, "strict", True),
        ],
    )
    def test_meets_threshold(self, dmin, q, mode, expected):
        assert meets_threshold(dmin, q, mode) is expected

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            meets_threshold(3, 5, "loose")

    def test_counts(self, q37_records):
        counts = threshold_counts(q37_records, 37)
        assert set(counts) == {"ceil", "strict"}
        # q odd: both thresholds agree
        assert counts["ceil"] == counts["strict"]
        assert counts["ceil"]["lengths"] >= len(TABLE1_Q37)
        assert counts["ceil"]["pairs"] >= counts["ceil"]["lengths"]

    def test_threshold_filter(self, q37_records):
        assert all(b.dmin >= 20 for b in best_codes(q37_records, "ceil"))


class TestAudits:
    def test_q641(self):
        (audit,) = audit_examples(641)
        assert audit.status == "discrepancy"
        assert audit.stated == (16081, 15401, 341)
        assert audit.computed == (31441, 30771, 336)
        text = audit.render()
        assert "[[16081,15401,341]]" in text
        assert "(n, d_max) = (31441, 335)" in text

    def test_q29_families(self):
        audits = audit_examples(29)
        assert [a.status for a in audits] == ["conservative", "conservative"]
        assert [a.stated for a in audits] == [(546, 510, 19), (602, 564, 20)]
        assert [a.computed for a in audits] == [(546, 508, 20), (602, 562, 21)]

    def test_q9_family(self):
        (audit,) = audit_examples(9)
        assert audit.stated == (52, 44, 5)
        assert audit.status == "conservative"

    def test_no_example(self):
        assert audit_examples(37) == []
