import pytest

from nup.checker import (
    FAIL,
    PASS,
    TYPO_SUSPECT,
    Inventory,
    check_chart,
    check_diagonals,
    check_z_endpoints,
    run_all_claims,
    verify_family,
)
from nup.families import FamilySpec, build_family
from nup.sets import make_set, product_table
from nup.words import GroupParams, from_string, from_word


def tampered_family(spec, drop_word):
    """Rebuild the labeled set with one element removed."""
    full = build_family(spec)
    victim = from_string(drop_word, spec.params)
    keep = [(w, lab) for w, lab in zip(full.elements, full.labels) if w != victim]
    assert len(keep) == len(full) - 1
    return make_set(spec.params, [w for w, _ in keep], [lab for _, lab in keep])


class TestClaimSuites:
    def test_base_k1_all_pass(self):
        spec = FamilySpec(1)
        inv = Inventory(spec, build_family(spec))
        claims = run_all_claims(inv)
        assert claims
        assert all(c.status == PASS for c in claims)
        assert inv.coverage() == 1.0

    def test_diagonal_kinds(self):
        spec = FamilySpec(2)
        inv = Inventory(spec, build_family(spec))
        y_claims = check_diagonals(inv, "Y")
        x_claims = check_diagonals(inv, "X")
        z_claims = check_diagonals(inv, "Z")
        assert all(c.kind == "DiagonalEquality" for c in y_claims)
        assert {c.kind for c in x_claims} == {"DiagonalEquality", "X0Containment"}
        assert all(c.status == PASS for c in y_claims + x_claims + z_claims)
        # one table per left progression
        assert len(y_claims) == len(z_claims) == 2 * 4 + 1

    def test_specific_slice_equality(self):
        # x_(1,1) Y_0 = x_(1,0) Y_1 as sets, elementwise at equal j
        spec = FamilySpec(1)
        P = spec.params
        left_hi = from_string("b A b", P)
        left_lo = from_string("b A", P)
        y0 = [from_string(f"a b^{j}", P) for j in (1, 2, 3)]
        y1 = [from_string(f"b a b^{j}", P) for j in (1, 2, 3)]
        assert [left_hi * w for w in y0] == [left_lo * w for w in y1]

    def test_z_endpoint_examples(self):
        # the two extreme powers of b in Z*Z land in mixed products: for k=1,
        # b^4 = (b a^-1)(a b^3) and b^-4 = (a b^3)(b a^-1)
        P = FamilySpec(1).params
        assert from_string("b^4", P) == from_string("bA", P) * from_string("ab^3", P)
        assert from_string("b^-4", P) == from_string("ab^3", P) * from_string("bA", P)
        spec = FamilySpec(1)
        inv = Inventory(spec, build_family(spec))
        reports = check_z_endpoints(inv)
        assert all(c.status == PASS for c in reports)
        tags = {c.source for c in reports}
        assert "endpoints:Z*Z" in tags
        assert "zslice:Z(-2)*Y0" in tags

    def test_chart_rows_pass_base(self):
        for k in (1, 2):
            spec = FamilySpec(k)
            inv = Inventory(spec, build_family(spec))
            check_diagonals(inv, "X")  # chart marking is independent of order
            rows = check_chart(inv)
            assert rows
            assert all(c.status == PASS for c in rows), [c.source for c in rows if c.status != PASS]

    def test_chart_row_count_k2(self):
        spec = FamilySpec(2)
        inv = Inventory(spec, build_family(spec))
        rows = check_chart(inv)
        # 9 fixed rows, 4 rows for l=1, 4 for m=2, and the n-rows: 4+4+4+3
        assert len(rows) == 9 + 4 + 4 + 15

    def test_typo_suspect_rows_scaled_only(self):
        base = verify_family(FamilySpec(2))
        assert base.counts[TYPO_SUSPECT] == 0
        scaled = verify_family(FamilySpec(2, 1, 5))
        suspects = {c.source for c in scaled.claims if c.status == TYPO_SUSPECT}
        assert suspects == {"chart:x(m,lo)X1", "chart:y(M-1,lo)Y0"}
        for c in scaled.claims:
            if c.status == TYPO_SUSPECT:
                assert c.params["range_used"] == c.params["pattern_range"]
                assert c.params["printed_range"] != c.params["pattern_range"]


class TestSummary:
    def test_full_verification_base(self):
        s = verify_family(FamilySpec(1))
        assert s.set_size == s.expected_size == 17
        assert s.unique_count == 0
        assert s.coverage == 1.0
        assert s.counts[FAIL] == 0
        assert s.soundness_ok and s.consistent
        assert s.all_matched

    def test_full_verification_scaled(self):
        s = verify_family(FamilySpec(1, 1, 3))
        assert s.set_size == 57
        assert s.unique_count == 0
        assert s.coverage == 1.0
        assert s.counts[FAIL] == 0

    def test_report_dict_schema(self):
        s = verify_family(FamilySpec(1))
        d = s.as_dict()
        for key in ("spec", "claims", "claims_summary", "coverage", "unique_count", "soundness_ok"):
            assert key in d
        for claim in d["claims"]:
            assert {"source", "kind", "params", "status", "count"} <= set(claim)


class TestTamperedSets:
    def test_missing_element_is_caught(self):
        spec = FamilySpec(1)
        broken = tampered_family(spec, "b^2")  # drop the top of Z
        summary = verify_family(spec, gset=broken)
        assert summary.counts[FAIL] > 0
        assert summary.coverage < 1.0
        failed = [c for c in summary.claims if c.status == FAIL]
        assert all(c.witness is not None for c in failed)
        # the scan agrees: the damaged set has uniquely represented products
        assert summary.unique_count > 0
        assert summary.consistent

    def test_soundness_cross_check_on_tampered_set(self):
        spec = FamilySpec(1)
        broken = tampered_family(spec, "b a b^3")
        summary = verify_family(spec, gset=broken)
        # no claim may have marked a pair whose product is actually unique
        assert summary.soundness_ok

    def test_unlabeled_set_rejected(self):
        spec = FamilySpec(1)
        plain = make_set(spec.params, build_family(spec).elements)
        with pytest.raises(ValueError):
            Inventory(spec, plain)


class TestRewriteIdentities:
    def test_sign_flip_identities_hold_for_all_signs(self):
        # the chart rewrites rest on two families of raw group identities:
        # flipping both interior a-powers across an odd b-block, and
        # collapsing a b-block that is a multiple of 2^k between opposite
        # a-powers; both must hold for every sign and odd power
        def word(params, *pairs):
            return from_word([t for t in pairs if t[1] != 0], params)

        for k in (1, 2, 3):
            P = GroupParams(k)
            M = 1 << k
            for p in (1, 3):
                for eps in (1, -1):
                    for n in range(M):
                        for i in (-2, 0, 1, M, M + 1):
                            lhs = word(P, ("b", n), ("a", eps * p), ("b", 1), ("a", eps * p), ("b", i))
                            rhs = word(P, ("b", n), ("a", -eps * p), ("b", 1), ("a", -eps * p), ("b", i))
                            assert lhs == rhs
                            mid = word(P, ("b", n), ("a", eps * p), ("b", M), ("a", -eps * p), ("b", i))
                            flat = word(P, ("b", n - M + i))
                            assert mid == flat


class TestCoverageAccounting:
    def test_marks_are_real_pairs(self):
        spec = FamilySpec(1)
        gset = build_family(spec)
        inv = Inventory(spec, gset)
        run_all_claims(inv)
        table = product_table(gset, gset)
        # spot-check: every marked pair's product has multiplicity >= 2
        n = len(gset)
        for i in range(n):
            for j in range(n):
                if inv.is_marked(i, j):
                    assert table.multiplicity(gset[i] * gset[j]) >= 2
