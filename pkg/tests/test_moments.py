import numpy as np
import pytest

from kemeny import IntHistogram, MomentAccumulator, ValidationError, summarize


class TestSummarize:
    def test_simple_sequence(self):
        s = summarize([1, 2, 3, 4, 5])
        assert s.mean == 3.0
        assert s.median == 3.0
        assert s.range == 4.0
        assert s.min == 1.0 and s.max == 5.0
        assert s.sd == pytest.approx(np.std([1, 2, 3, 4, 5], ddof=1))

    def test_constant_sequence_flagged(self):
        s = summarize([2.5] * 10)
        assert s.sd == 0.0 and s.mad == 0.0
        assert s.skewness == 0.0 and s.excess_kurtosis == 0.0
        assert s.spread_degenerate

    def test_single_value(self):
        s = summarize([7.0])
        assert s.count == 1 and s.sd == 0.0 and s.spread_degenerate

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            summarize([])

    def test_mad_scaling(self):
        # |x - median| of (0,…,8) has median 2; scaled by 1.4826
        s = summarize(np.arange(9.0))
        assert s.mad == pytest.approx(1.4826 * 2.0)

    def test_standard_normal_sample(self):
        rng = np.random.default_rng(2024)
        s = summarize(rng.standard_normal(1_000_000))
        assert abs(s.skewness) < 0.01
        assert abs(s.excess_kurtosis) < 0.02
        assert s.sd == pytest.approx(1.0, abs=0.01)
        assert s.mad == pytest.approx(1.0, abs=0.01)

    def test_invariants_random(self, rng):
        for _ in range(50):
            s = summarize(rng.normal(size=int(rng.integers(1, 200))))
            assert s.min <= s.median <= s.max
            assert s.range == pytest.approx(s.max - s.min)
            assert s.sd >= 0.0


class TestMomentAccumulator:
    def test_matches_numpy(self, rng):
        data = rng.gamma(2.0, size=5000)
        acc = MomentAccumulator()
        acc.update(data)
        centered = data - data.mean()
        assert acc.mean == pytest.approx(data.mean(), rel=1e-12)
        assert acc.variance == pytest.approx((centered**2).mean(), rel=1e-9)
        skew = (centered**3).mean() / (centered**2).mean() ** 1.5
        kurt = (centered**4).mean() / (centered**2).mean() ** 2 - 3
        assert acc.skewness == pytest.approx(skew, rel=1e-7)
        assert acc.excess_kurtosis == pytest.approx(kurt, rel=1e-6, abs=1e-9)
        assert acc.min == data.min() and acc.max == data.max()

    def test_merge_equals_concatenation(self, rng):
        a = rng.normal(size=700)
        b = rng.normal(loc=2.0, size=1300)
        whole = MomentAccumulator()
        whole.update(np.concatenate([a, b]))
        left = MomentAccumulator()
        left.update(a)
        right = MomentAccumulator()
        right.update(b)
        left.merge(right)
        assert left.count == whole.count
        assert left.mean == pytest.approx(whole.mean, rel=1e-12)
        assert left.m2 == pytest.approx(whole.m2, rel=1e-10)
        assert left.m3 == pytest.approx(whole.m3, rel=1e-8, abs=1e-8)
        assert left.m4 == pytest.approx(whole.m4, rel=1e-8)

    def test_merge_order_insensitive(self, rng):
        chunks = [rng.normal(size=rng.integers(5, 80)) for _ in range(12)]
        forward = MomentAccumulator()
        for chunk in chunks:
            part = MomentAccumulator()
            part.update(chunk)
            forward.merge(part)
        backward = MomentAccumulator()
        for chunk in reversed(chunks):
            part = MomentAccumulator()
            part.update(chunk)
            backward.merge(part)
        assert forward.mean == pytest.approx(backward.mean, abs=1e-12)
        assert forward.variance == pytest.approx(backward.variance, rel=1e-12)
        assert forward.skewness == pytest.approx(backward.skewness, abs=1e-12)
        assert forward.excess_kurtosis == pytest.approx(
            backward.excess_kurtosis, abs=1e-12
        )

    def test_merge_into_empty(self):
        a = MomentAccumulator()
        b = MomentAccumulator()
        b.update([1.0, 2.0, 3.0])
        a.merge(b)
        assert a.count == 3 and a.mean == 2.0


class TestIntHistogram:
    def test_exact_summary(self, rng):
        values = rng.integers(-10, 11, size=4000)
        hist = IntHistogram(-10, 10)
        hist.update(values)
        s = hist.summary(population=True)
        assert s.count == 4000
        assert s.mean == pytest.approx(values.mean(), abs=1e-12)
        assert s.sd == pytest.approx(values.std(ddof=0), rel=1e-12)
        assert s.median == pytest.approx(np.median(values))
        med = np.median(values)
        assert s.mad == pytest.approx(1.4826 * np.median(np.abs(values - med)))
        assert s.min == values.min() and s.max == values.max()

    def test_symmetric_population_is_exactly_zero(self):
        hist = IntHistogram(-5, 5)
        hist.update(np.array([-5, 5, -3, 3, 0, 0]))
        s = hist.summary()
        assert s.mean == 0.0
        assert s.skewness == 0.0

    def test_merge_adds_counts(self):
        a = IntHistogram(-2, 2)
        b = IntHistogram(-2, 2)
        a.update(np.array([-1, 0]))
        b.update(np.array([1, 1, 2]))
        a.merge(b)
        assert a.total == 5
        assert (a.counts == np.array([0, 1, 1, 2, 1])).all()

    def test_support_violation(self):
        hist = IntHistogram(0, 3)
        with pytest.raises(ValidationError):
            hist.update(np.array([4]))

    def test_even_count_median(self):
        hist = IntHistogram(0, 10)
        hist.update(np.array([1, 2, 3, 4]))
        assert hist.summary().median == 2.5
