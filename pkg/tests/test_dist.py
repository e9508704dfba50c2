import math

import pytest

import oracles
from oracles import all_codes, all_perms, joint
from permstat import dist, stats
from permstat.dist import DistPolynomial, distribution, enumerate_domain, equal_distribution, verify


class TestPolynomial:
    def test_zero_coefficients_dropped(self):
        p = DistPolynomial(("x",), {(0,): 1, (1,): 0})
        assert p.terms == {(0,): 1}

    def test_serialization_is_sorted_and_round_trips(self):
        p = DistPolynomial(("x", "y"), {(2, 0): 3, (0, 5): 1, (1, 1): 2})
        text = p.to_json()
        assert text == ('{"vars":["x","y"],"terms":[{"exp":[0,5],"coef":"1"},'
                        '{"exp":[1,1],"coef":"2"},{"exp":[2,0],"coef":"3"}]}')
        assert DistPolynomial.from_json(text) == p

    def test_big_coefficients_survive(self):
        big = 2 ** 80 + 7
        p = DistPolynomial(("x",), {(0,): big})
        assert DistPolynomial.from_json(p.to_json()).coefficient((0,)) == big

    def test_add(self):
        a = DistPolynomial(("x",), {(0,): 1, (1,): 2})
        b = DistPolynomial(("x",), {(1,): 3})
        assert a.add(b).terms == {(0,): 1, (1,): 5}

    def test_equal_distribution_reports_first_difference(self):
        p = DistPolynomial(("x",), {(0,): 1, (1,): 2, (2,): 4})
        q = DistPolynomial(("x",), {(0,): 1, (1,): 3, (2,): 3})
        assert equal_distribution(p, p) == (True, None)
        assert equal_distribution(p, q) == (False, ((1,), 2, 3))

    def test_equal_distribution_needs_same_arity(self):
        with pytest.raises(ValueError):
            equal_distribution(DistPolynomial(("x",)), DistPolynomial(("x", "y")))


class TestEnumeration:
    def test_full_range_n3(self):
        elems = list(enumerate_domain(3))
        assert len(elems) == 6 == len(set(elems))
        assert elems[0] == (1, 2, 3)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_codes_and_perms_cover_domains(self, n):
        assert sorted(enumerate_domain(n, "codes")) == sorted(all_codes(n))
        assert sorted(enumerate_domain(n, "perms")) == sorted(all_perms(n))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_rank_code_round_trip(self, n):
        for r in range(math.factorial(n)):
            assert dist.code_to_rank(dist.rank_to_code(r, n)) == r

    def test_chunks_partition_in_order(self):
        whole = list(enumerate_domain(6))
        pieces = []
        for lo, hi in dist.chunk_ranges(720, 7):
            pieces += list(enumerate_domain(6, "perms", lo, hi))
        assert pieces == whole

    @pytest.mark.parametrize("lo, hi", [(-1, 3), (3, 2), (0, 7)])
    def test_bad_range(self, lo, hi):
        with pytest.raises(ValueError):
            list(enumerate_domain(3, "perms", lo, hi))


class TestDistribution:
    def test_eulerian_rows(self):
        assert distribution(3, ["des"]).terms == {(0,): 1, (1,): 4, (2,): 1}
        assert distribution(4, ["des"]).terms == {(0,): 1, (1,): 11, (2,): 11, (3,): 1}

    def test_n1_constant(self):
        p = distribution(1, ["des", "cover", "majhat_k:3", "maj_minus_exc"])
        assert p.terms == {(0, 0, 0, 0): 1}

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("labels", [
        ["des", "cover"], ["maj", "inv"], ["destilde_k:2", "majhat_k:2"], ["asc2", "amaj2"],
    ])
    def test_matches_itertools_oracle(self, n, labels):
        fns = [stats.StatDescriptor.parse(lab) for lab in labels]
        expected = joint(all_perms(n), fns)
        got = distribution(n, labels)
        assert got.terms == dict(expected)
        assert got.total() == math.factorial(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_code_domain(self, n):
        got = distribution(n, ["sum", "st_k:1"], domain="codes")
        expected = joint(all_codes(n), [sum, lambda c: stats.StatDescriptor("st_k", 1)(c)])
        assert got.terms == dict(expected)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_classical_equidistributions(self, n):
        assert distribution(n, ["des"]).terms == distribution(n, ["exc"]).terms
        inv = distribution(n, ["inv"]).terms
        assert inv == distribution(n, ["maj"]).terms
        assert inv == distribution(n, ["sum"], domain="codes").terms

    def test_des_and_des2_differ_at_constant_term(self):
        ok, diff = equal_distribution(distribution(4, ["des"]), distribution(4, ["des_k:2"]))
        assert not ok
        exp, a, b = diff
        assert exp == (0,) and a == 1 and b > a

    def test_prop_ed_example(self):
        ok, _ = equal_distribution(distribution(4, ["des", "cover"]),
                                   distribution(4, ["exc", "des"]))
        assert ok

    def test_rejects_mixed_domain(self):
        with pytest.raises(dist.DomainError):
            distribution(3, ["des"], domain="codes")
        with pytest.raises(dist.DomainError):
            distribution(3, ["sum"])

    def test_cap(self, monkeypatch):
        with pytest.raises(dist.SizeCapExceeded):
            distribution(12, ["des"])
        with pytest.raises(dist.SizeCapExceeded):
            distribution(5, ["des"], cap=4)
        monkeypatch.setenv("PERMSTAT_CAP", "3")
        with pytest.raises(dist.SizeCapExceeded):
            distribution(4, ["des"])

    def test_variables(self):
        p = distribution(3, ["des", "maj"], variables=["t", "q"])
        assert p.variables == ("t", "q")
        assert distribution(3, ["des_k:2"]).variables == ("des_k:2",)

    def test_parallel_matches_serial(self):
        serial = distribution(7, ["des", "maj"], threads=1)
        parallel = distribution(7, ["des", "maj"], threads=4)
        assert serial.to_json() == parallel.to_json()

    def test_chunked_union_is_unchunked(self):
        fns = [stats.des, stats.maj]
        partials = [dist._accumulate(7, "perms", fns, lo, hi)
                    for lo, hi in dist.chunk_ranges(5040, 4)]
        merged = dist._merge(("d", "m"), partials)
        assert merged.to_json() == distribution(7, ["des", "maj"], variables=["d", "m"]).to_json()


class TestVerify:
    def test_registry_names(self):
        assert set(dist.IDENTITIES) == {
            "prop_ed", "exc_bdes", "unexc_asc", "multivar", "asc_des_symmetry", "des_maj_pair",
            "pair_k", "bij_thm_i", "bij_thm_ii", "bij_thm_iii", "code_st", "alg_thm"}

    @pytest.mark.parametrize("name", sorted(dist.IDENTITIES))
    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_identities_pass_small_n(self, name, n):
        ks = range(1, 5) if dist.IDENTITIES[name].needs_k else [None]
        for k in ks:
            report = verify(name, n, k)
            assert report.passed, report.to_line()
            assert report.counterexample is None

    def test_alg_thm_n1(self):
        left, right = dist.identity_sides("alg_thm", 1)
        assert left.terms == right.terms == {(0, 0, 0): 1}
        assert verify("alg_thm", 1).passed

    def test_bij_thm_i_counts_image(self):
        report = verify("bij_thm_i", 5, 2)
        assert report.details["image_size"] == 120

    def test_exc_bdes_spot_check(self):
        from permstat.perm import Permutation, cycle_neg1
        sigma = Permutation.parse("7 8 3 5 1 2 4 9 6")
        assert stats.exc(sigma) == 4 == stats.bdestilde_k(cycle_neg1(sigma), 2)

    def test_errors(self):
        with pytest.raises(dist.UnknownIdentity):
            verify("nope", 3)
        with pytest.raises(ValueError):
            verify("pair_k", 3)
        with pytest.raises(dist.SizeCapExceeded):
            verify("prop_ed", 12)

    def test_report_invariant(self):
        with pytest.raises(ValueError):
            dist.VerificationReport("x", 3, None, passed=False)

    def test_failing_per_element_identity_reports_first_rank(self, monkeypatch):
        broken = dist.Identity("broken", "per_element", False, "des == 0",
                               _check=lambda k: lambda s: stats.des(s) == 0)
        monkeypatch.setitem(dist.IDENTITIES, "broken", broken)
        report = verify("broken", 3)
        assert not report.passed
        # rank 1 is code (0,1,0) -> 2 1 3, the first permutation with a descent
        assert report.counterexample == (2, 1, 3)
        assert "counterexample: 2 1 3" in report.to_line()

    def test_failing_distribution_identity_reports_term(self, monkeypatch):
        def sides(k):
            return {"left": ("perms", [stats.des]), "right": ("perms", [stats.inv])}
        broken = dist.Identity("broken", "distribution", False, "des vs inv", ("x",),
                               _sides=sides)
        monkeypatch.setitem(dist.IDENTITIES, "broken", broken)
        report = verify("broken", 3)
        assert not report.passed
        assert report.counterexample == ((1,), 4, 2)
        assert report.to_document()["counterexample"] == {"exp": [1], "left": "4", "right": "2"}


@pytest.mark.parametrize("n", [7, 8])
@pytest.mark.parametrize("name", ["multivar", "asc_des_symmetry", "code_st"])
def test_remaining_identities_at_desk_scale(name, n):
    ks = range(1, 5) if dist.IDENTITIES[name].needs_k else [None]
    for k in ks:
        assert verify(name, n, k).passed
