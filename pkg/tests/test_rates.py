import numpy as np
import pytest

from evpos.rates import (
    DecaySequence,
    Governed,
    MajorantSequence,
    NotGoverned,
    Power,
    RateError,
    Threshold,
    UserTable,
    alpha,
    countable_family_reduce,
    decreasing_rearrangement,
    governs,
    summability_report,
)


class TestRearrangement:
    def test_basic(self):
        assert list(decreasing_rearrangement([0, 3, 1, 3])) == [3, 3, 1, 0]

    def test_sorted_input_is_fixed(self):
        a = [5.0, 2.0, 1.0]
        assert list(decreasing_rearrangement(a)) == a

    def test_idempotent_and_multiset_preserving(self):
        rng = np.random.default_rng(0)
        a = rng.uniform(0, 1, size=50)
        star = decreasing_rearrangement(a)
        assert np.array_equal(decreasing_rearrangement(star), star)
        assert sorted(star) == sorted(a)

    def test_negative_entry_rejected(self):
        with pytest.raises(RateError):
            decreasing_rearrangement([1.0, -0.5])

    def test_domination_inequality(self):
        # sum a_n / r^{n+1} <= sum a*_n / r^{n+1} for decreasing weights
        rng = np.random.default_rng(4)
        for _ in range(1000):
            a = rng.uniform(0, 1, size=16)
            r = 1.0 + rng.uniform(0.05, 3.0)
            w = r ** -(np.arange(16) + 1.0)
            assert np.sum(a * w) <= np.sum(decreasing_rearrangement(a) * w) + 1e-12


class TestGoverns:
    def test_harmonic_governs_geometric_with_constant_one(self):
        f = MajorantSequence(tuple(1.0 / (n + 1) for n in range(32)), require_decay=False)
        a = DecaySequence(tuple(2.0**-n for n in range(32)))
        result = governs(f, a)
        assert isinstance(result, Governed)
        # sup (n+1)/2^n = 1, attained at n = 0 and n = 1
        assert result.c == pytest.approx(1.0, abs=1e-12)

    def test_zero_sequence(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(16)), require_decay=False)
        a = DecaySequence(tuple(0.0 for _ in range(16)))
        assert governs(f, a) == Governed(0.0)

    def test_support_failure(self):
        values = [1.0] * 6 + [0.0] * 10
        f = MajorantSequence(tuple(values), require_decay=False)
        a = DecaySequence(tuple(1.0 for _ in range(16)))
        result = governs(f, a)
        assert isinstance(result, NotGoverned)
        assert result.index == 6

    def test_minimality_attained(self):
        rng = np.random.default_rng(9)
        f = MajorantSequence(tuple(rng.uniform(0.5, 1.5, size=20)), require_decay=False)
        a = DecaySequence(tuple(rng.uniform(0, 1, size=20)))
        result = governs(f, a)
        star = decreasing_rearrangement(a.values)
        slack = result.c * np.asarray(f.values) - star
        assert np.min(slack) >= -1e-12
        assert np.min(np.abs(slack)) < 1e-12

    def test_length_mismatch(self):
        f = MajorantSequence((1.0, 0.5), require_decay=False)
        with pytest.raises(RateError):
            governs(f, DecaySequence((1.0,)))


class TestSummability:
    def test_geometric_summable(self):
        a = DecaySequence(tuple(2.0**-n for n in range(200)))
        entry = summability_report(a, [Power(1.0)]).entries[0]
        assert entry.flag == "summable-trend"
        assert entry.partial_sums[-1] == pytest.approx(2.0, abs=1e-6)

    def test_harmonic_divergent(self):
        a = DecaySequence(tuple(1.0 / (n + 1) for n in range(200)))
        entry = summability_report(a, [Power(1.0)]).entries[0]
        assert entry.flag == "divergent-trend"

    def test_harmonic_squared_summable(self):
        a = DecaySequence(tuple(1.0 / (n + 1) for n in range(200)))
        entry = summability_report(a, [Power(2.0)]).entries[0]
        assert entry.flag == "summable-trend"
        # partial sums approach pi^2/6 with a 1/N tail
        assert entry.partial_sums[-1] == pytest.approx(np.pi**2 / 6, abs=1e-2)

    def test_lp_estimate_is_flagged_heuristic(self):
        a = DecaySequence(tuple(1.0 / (n + 1) for n in range(200)))
        report = summability_report(a, [Power(1.0)])
        assert "heuristic" in report.lp_note
        assert report.lp_estimate == pytest.approx(1.0, rel=0.1)

    def test_threshold_rate(self):
        a = DecaySequence((0.5, 0.2, 0.05))
        entry = summability_report(a, [Threshold(0.1)]).entries[0]
        assert entry.partial_sums[-1] == pytest.approx(0.4 + 0.1)

    def test_user_table_rate(self):
        phi = UserTable(((0.0, 0.0), (1.0, 2.0)))
        assert phi(np.array([0.5]))[0] == pytest.approx(1.0)

    def test_bad_rates_rejected(self):
        with pytest.raises(RateError):
            Power(0.0)
        with pytest.raises(RateError):
            Threshold(-1.0)
        with pytest.raises(RateError):
            UserTable(((0.0, 1.0), (1.0, 0.5)))


class TestAlpha:
    def test_geometric_closed_form(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(200)))
        value, tail = alpha(f, 2.0)
        # sum 2^{-n} / 2^{n+1} = 2/(2*2 - 1) ... = 2/3 at r = 2
        assert value == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert tail < 1e-50

    def test_single_term(self):
        f = MajorantSequence((1.0,) + (0.0,) * 9)
        for r in (1.5, 2.0, 10.0):
            assert alpha(f, r)[0] == pytest.approx(1.0 / r)

    def test_requires_r_above_one(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(10)), require_decay=False)
        with pytest.raises(RateError):
            alpha(f, 1.0)

    def test_vanishing_scaled_limit(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(200)))
        values = []
        for j in range(1, 13):
            r = 1.0 + 2.0**-j
            values.append((r - 1.0) * alpha(f, r)[0])
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-3

    def test_monotone_in_r(self):
        f = MajorantSequence(tuple(1.0 / (n + 1) ** 2 for n in range(100)), require_decay=False)
        rs = np.linspace(1.1, 4.0, 20)
        vals = [alpha(f, r)[0] for r in rs]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestFamilyReduce:
    def test_single(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(100)))
        out = countable_family_reduce([f])
        assert np.allclose(out.values, 0.5 * np.asarray(f.values) / max(f.values))

    def test_two_copies(self):
        f = MajorantSequence(tuple(2.0**-n for n in range(100)))
        out = countable_family_reduce([f, f])
        assert np.allclose(out.values, 0.75 * np.asarray(f.values) / max(f.values))

    def test_governs_each_input(self):
        rng = np.random.default_rng(6)
        fams = []
        for _ in range(4):
            vals = rng.uniform(0.1, 1.0, size=30) * 2.0 ** -np.arange(30)
            fams.append(MajorantSequence(tuple(vals), require_decay=False))
        out = countable_family_reduce(fams)
        for j, f in enumerate(fams):
            result = governs(out, DecaySequence(f.values))
            assert isinstance(result, Governed)
            assert result.c <= 2.0 ** (j + 1) * max(f.values) + 1e-9

    def test_zero_sequence_rejected(self):
        with pytest.raises(RateError):
            countable_family_reduce(
                [MajorantSequence((0.0, 0.0), require_decay=False)]
            )
