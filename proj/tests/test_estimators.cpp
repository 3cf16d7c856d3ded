#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lltlab/branch_systems.hpp"
#include "lltlab/estimators.hpp"
#include "lltlab/markov_pattern.hpp"
#include "lltlab/theory.hpp"

using namespace lltlab;
using doctest::Approx;

TEST_CASE("scan_hits examples")
{
	const std::vector<Digit> d{3, 7, 2, 9, 5};
	CHECK(scan_hits(d, TargetScan::threshold(7)) == std::vector<Hit>{{2, 7}, {4, 9}});
	CHECK(scan_hits(d, TargetScan::threshold(10)).empty());
	const std::vector<Digit> p{8, 9, 11};
	CHECK(scan_hits(p, TargetScan::threshold(8, true)) == std::vector<Hit>{{3, 11}});
	CHECK_THROWS_AS(TargetScan::threshold(1), InvalidArgument);

	// overlapping word occurrences, which must fit in the stream
	const std::vector<Digit> bits{1, 1, 1, 0, 1};
	CHECK(scan_hits(bits, TargetScan::word({1, 1})) == std::vector<Hit>{{1, 1}, {2, 1}});
	CHECK(scan_hits(bits, TargetScan::word({0, 1, 1})).empty());
}

TEST_CASE("gaps_and_marks examples")
{
	const std::vector<Hit> two{{2, 7}, {4, 9}};
	auto r = gaps_and_marks(two);
	CHECK(r.gaps == std::vector<std::int64_t>{2, 2});
	CHECK(r.marks == std::vector<Digit>{7, 9});
	const std::vector<Hit> one{{5, 12}};
	r = gaps_and_marks(one);
	CHECK(r.gaps == std::vector<std::int64_t>{5});
	CHECK(r.marks == std::vector<Digit>{12});
	CHECK(gaps_and_marks(std::vector<Hit>{}).gaps.empty());
}

TEST_CASE("EmpiricalPMF accounting")
{
	EmpiricalPMF a, b, c;
	a.add({1});
	a.add({2}, 3);
	a.add_censored();
	b.add({2});
	b.add_censored(2);
	c.add({7}, 5);
	CHECK(a.trials == 5);
	CHECK(a.total_counted() + a.censored == a.trials);

	EmpiricalPMF ab = a, ab_c, bc = b, a_bc = a;
	ab.merge(b);
	ab_c = ab;
	ab_c.merge(c);
	bc.merge(c);
	a_bc.merge(bc);
	CHECK(ab_c.counts == a_bc.counts);
	CHECK(ab_c.trials == a_bc.trials);
	CHECK(ab_c.count({2}) == 4);
	CHECK(ab_c.estimate({7}) == Approx(5.0 / 13.0));
	CHECK(ab_c.censoring_fraction() == Approx(3.0 / 13.0));

	EmpiricalPMF pairs;
	pairs.arity = 2;
	pairs.add({1, 5});
	pairs.add({1, 6}, 2);
	pairs.add({2, 5});
	const auto m0 = pairs.marginal(0);
	CHECK(m0.at(1) == 3);
	CHECK(m0.at(2) == 1);
	CHECK(pairs.marginal(1).at(5) == 2);
	CHECK_THROWS_AS(pairs.add({1}), InvalidArgument);
	EmpiricalPMF other;
	CHECK_THROWS_AS(pairs.merge(other), InvalidArgument);
	CHECK(to_string(EstimatorKind::ergodic) == "ergodic");
}

TEST_CASE("replica counts plus censored equal N, for any worker count")
{
	FirstPassageOptions o;
	o.replicas = 3001;
	o.d = 2;
	o.max_steps = 30;
	o.seed = 11;
	const auto target = TargetScan::threshold(8);
	const auto one = estimate_first_passage(BranchSystem::gauss(), target, o);
	o.workers = 3;
	const auto three = estimate_first_passage(BranchSystem::gauss(), target, o);
	CHECK(one.pmf.trials == 3001);
	CHECK(one.pmf.total_counted() + one.pmf.censored == 3001);
	CHECK(one.pmf.censored > 0);
	CHECK(one.censoring_flagged);
	CHECK(one.pmf.counts == three.pmf.counts);
	CHECK(one.pmf.censored == three.pmf.censored);
	for (const auto &[key, n] : one.pmf.counts)
	{
		REQUIRE(key.size() == 4);
		CHECK(key[0] >= 1);
		CHECK(key[0] + key[2] <= 30);
		CHECK((key[1] == -1 || key[1] >= 8));
		CHECK((key[3] == -1 || key[3] >= 8));
	}
	o.replicas = 0;
	CHECK_THROWS_AS(estimate_first_passage(BranchSystem::gauss(), target, o), InvalidArgument);
}

TEST_CASE("replica hitting law of 11 under the doubling map matches the exact law")
{
	const std::int64_t K = 40;
	const auto exact = hitting_pmf(MarkovSource::fair_bits(), PatternTarget::parse("11"), Start::stationary(), K);
	int inside = 0, cells = 0;
	for (std::uint64_t seed : {1, 2, 3})
	{
		FirstPassageOptions o;
		o.replicas = 100000;
		o.max_steps = K;
		o.seed = seed;
		const auto r = estimate_first_passage(BranchSystem::doubling(), TargetScan::word({1, 1}), o);
		CHECK(r.pmf.total_counted() + r.pmf.censored == o.replicas);
		for (std::int64_t k = 1; k <= K; ++k)
		{
			const double p = exact.mass(k);
			const double n = static_cast<double>(o.replicas);
			const double dev = std::abs(static_cast<double>(r.pmf.count({k})) - n * p);
			++cells;
			inside += dev <= 4 * binomial_sigma(p, o.replicas);
		}
		// censored replicas are exactly those with phi > K
		const double pc = exact.tail;
		CHECK(std::abs(static_cast<double>(r.pmf.censored) - 1e5 * pc) <= 4 * binomial_sigma(pc, o.replicas) + 1);
	}
	CHECK(static_cast<double>(inside) >= 0.99 * cells);
}

TEST_CASE("consecutive gaps of an i.i.d. renewal target are independent")
{
	FirstPassageOptions o;
	o.replicas = 100000;
	o.d = 2;
	o.max_steps = 200;
	o.seed = 5;
	const auto r = estimate_first_passage(BranchSystem::doubling(), TargetScan::word({0}), o);
	std::vector<std::uint64_t> table(36, 0);
	for (const auto &[key, n] : r.pmf.counts)
		table[static_cast<std::size_t>(std::min<std::int64_t>(key[0], 6) - 1) * 6 +
		      static_cast<std::size_t>(std::min<std::int64_t>(key[1], 6) - 1)] += n;
	CHECK(chi_square_independence(table, 6, 6).passes(0.01));
	// geometric marginal
	const auto m = r.pmf.marginal(1);
	CHECK(static_cast<double>(m.at(1)) / 1e5 == Approx(0.5).epsilon(0.02));
}

TEST_CASE("mark marginal for Gauss thresholds")
{
	const Digit l = 5;
	FirstPassageOptions o;
	o.replicas = 100000;
	o.max_steps = 200;
	o.seed = 9;
	const auto r = estimate_first_passage(BranchSystem::gauss(), TargetScan::threshold(l), o);
	CHECK(r.pmf.censored == 0);
	const auto marks = r.pmf.marginal(1);
	std::vector<std::uint64_t> obs(32, 0);
	for (const auto &[a, n] : marks)
	{
		REQUIRE((a == -1 || a >= static_cast<std::int64_t>(l)));
		obs[(a >= 0 && a <= static_cast<std::int64_t>(l) + 30) ? static_cast<std::size_t>(a - static_cast<std::int64_t>(l)) : 31] += n;
	}
	const double mu = cf_threshold_measure(static_cast<std::int64_t>(l));
	std::vector<double> prob(32);
	double rest = 1.0;
	for (int i = 0; i <= 30; ++i)
	{
		prob[static_cast<std::size_t>(i)] = gauss_digit_cell_measure(static_cast<std::int64_t>(l) + i) / mu;
		rest -= prob[static_cast<std::size_t>(i)];
	}
	prob[31] = rest;
	CHECK(chi_square_test(obs, prob).passes(0.01));
}

TEST_CASE("ergodic gaps: Kac mean and insufficient data")
{
	const auto r = estimate_return_law_ergodic(BranchSystem::doubling(), TargetScan::word({0}), 3, 200000, 2);
	CHECK(r.hit_rate == Approx(0.5).epsilon(0.01));
	CHECK(std::abs(r.mean_gap.mean - 2.0) < 4 * r.mean_gap.standard_error);
	CHECK(r.gaps.kind == EstimatorKind::ergodic);
	CHECK(r.gaps.trials == r.gap_series.size());

	const auto short_stream = generate_stream(BranchSystem::gauss(), 1, 1000);
	CHECK_THROWS_AS(estimate_return_law_ergodic(short_stream.digits, TargetScan::threshold(50)), InsufficientData);
}

TEST_CASE("ergodic gap histogram of 11 against the exact return law")
{
	const std::int64_t K = 20;
	const auto exact = return_pmf(MarkovSource::fair_bits(), PatternTarget::parse("11"), K);
	const auto r = estimate_return_law_ergodic(BranchSystem::doubling(), TargetScan::word({1, 1}), 21, 1 << 19, 2);
	int inside = 0;
	for (std::int64_t k = 1; k <= K; ++k)
	{
		const auto f = gap_frequency(r, k);
		inside += std::abs(f.mean - exact.mass(k)) <= 4 * f.standard_error + 1e-12;
	}
	CHECK(inside >= K - 1);
	CHECK(r.gaps.count({2}) == 0);
}

TEST_CASE("ergodic and replica return estimators agree for a Gauss threshold")
{
	// P(a_2 >= l | a_1 >= l) in closed form
	const double l = 4;
	const double exact = std::log1p(1 / (l * l)) / std::log1p(1 / l);
	const auto target = TargetScan::threshold(4);

	FirstPassageOptions o;
	o.replicas = 100000;
	o.max_steps = 1;
	o.seed = 17;
	o.conditioned_start = true;
	const auto rep = estimate_first_passage(BranchSystem::gauss(), target, o);
	// keys carry marks; the gap marginal is what matters here
	const std::uint64_t at_one = rep.pmf.marginal(0)[1];
	const auto [lo, hi] = wilson_interval(at_one, rep.pmf.trials);
	CHECK(lo <= exact);
	CHECK(exact <= hi);

	const auto erg = estimate_return_law_ergodic(BranchSystem::gauss(), target, 17, 1 << 19, 1);
	const auto f = gap_frequency(erg, 1);
	CHECK(std::abs(f.mean - exact) <= 4 * f.standard_error);
	const double rp = static_cast<double>(at_one) / static_cast<double>(rep.pmf.trials);
	const double se = std::hypot(f.standard_error, std::sqrt(rp * (1 - rp) / 1e5));
	CHECK(std::abs(f.mean - rp) <= kZ99 * se * 1.5);
	CHECK(erg.mean_gap.mean == Approx(1 / cf_threshold_measure(4)).epsilon(0.02));
}

TEST_CASE("Wilson interval and chi-square")
{
	const auto [lo, hi] = wilson_interval(50, 100);
	CHECK(lo == Approx(0.375281).epsilon(1e-5));
	CHECK(hi == Approx(0.624719).epsilon(1e-5));
	CHECK(wilson_interval(0, 10).first == 0.0);
	CHECK(wilson_interval(10, 10).second == 1.0);
	CHECK_THROWS_AS(wilson_interval(1, 0), InvalidArgument);

	const std::vector<std::uint64_t> obs{10, 20, 30};
	const std::vector<double> p(3, 1.0 / 3);
	const auto c = chi_square_test(obs, p);
	CHECK(c.statistic == Approx(10.0));
	CHECK(c.dof == 2);
	CHECK(c.p_value == Approx(std::exp(-5.0)).epsilon(1e-10));
	CHECK_FALSE(c.passes(0.01));
	CHECK_THROWS_AS(chi_square_test(obs, std::vector<double>{0.5, 0.5, 0.5}), InvalidArgument);

	const std::vector<double> flat(640, 3.0);
	const auto b = batch_means(flat, 64);
	CHECK(b.mean == 3.0);
	CHECK(b.standard_error == 0.0);
	CHECK_THROWS_AS(batch_means(std::vector<double>(10, 1.0), 64), InsufficientData);
}

TEST_CASE("llt_report policies")
{
	EmpiricalPMF pmf;
	pmf.add({3}, 500);
	pmf.add({4}, 20);
	pmf.add_censored(9480);
	const std::vector<ReportCell> cells{{{3}, 0.05, 1.0}, {{4}, 0.002, 1.0}, {{5}, 0.05, 0.01}};
	const auto r = llt_report(pmf, cells, {"k"}, {100.0, 0.1});
	REQUIRE(r.rows.size() == 3);
	CHECK(r.mode == "replica");
	CHECK(r.rows[0].in_summary);
	CHECK_FALSE(r.rows[1].in_summary); // expected count 20 < 100
	CHECK_FALSE(r.rows[2].in_summary); // t below delta
	CHECK(r.summary_cells == 1);
	CHECK(r.summary == Approx(0.0).epsilon(1e-12));
	CHECK(r.rows[0].ci_low < 0.05);
	CHECK(r.rows[0].ci_high > 0.05);
	CHECK_THROWS_AS(llt_report(pmf, std::vector<ReportCell>{}, {"k"}), InvalidArgument);
	CHECK_THROWS_AS(llt_report(pmf, cells, {"k", "a"}), InvalidArgument);

	std::ostringstream csv;
	write_report_csv(csv, r);
	CHECK(csv.str().rfind("k,count,N,estimate,prediction,ratio,ci_low,ci_high\n3,500,10000,0.050000000000000003,", 0) == 0);

	ExactPMF exact;
	exact.masses = {0.5, 0.25, 0.125};
	exact.tail = 0.125;
	const std::vector<ReportCell> ec{{{2}, 0.2, 0.5}, {{3}, 0.125, 5.0}};
	const auto er = llt_report(exact, ec, {100.0, 0.5});
	CHECK(er.mode == "exact");
	CHECK(er.rows[0].ratio == Approx(1.25));
	CHECK(er.summary_cells == 1);
	CHECK(er.summary == Approx(0.25));
	std::ostringstream js;
	write_report_json(js, er);
	CHECK(js.str().find("\"mode\": \"exact\"") != std::string::npos);
}

TEST_CASE("pruned return demo on doubling 11")
{
	PrunedDemoOptions o;
	o.seed = 4;
	o.stream_length = 1 << 18;
	o.streams = 2;
	o.replicas = 100000;
	const auto r = demo_pruned_return(BranchSystem::doubling(), TargetScan::word({1, 1}), 3, o);
	CHECK(r.b_returns_at_k == 0);
	CHECK(r.b_returns > 1000);
	CHECK(r.return_at_k_ci.first <= 0.125);
	CHECK(r.return_at_k_ci.second >= 0.125);
	CHECK(std::abs(r.b_fraction.mean - 0.875) <= 4 * r.b_fraction.standard_error);
	CHECK(r.consistent);

	// no gap that long: B = A
	const auto far = demo_pruned_return(BranchSystem::doubling(), TargetScan::word({1, 1}), 100000, o);
	CHECK(far.b_hits == far.a_hits);
	CHECK(far.b_returns_at_k == 0);

	o.stream_length = 100;
	CHECK_THROWS_AS(demo_pruned_return(BranchSystem::doubling(), TargetScan::word({1, 1}), 3, o), InsufficientData);
}
