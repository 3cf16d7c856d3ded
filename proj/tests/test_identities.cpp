#include "doctest.h"
#include "lltlab/markov_pattern.hpp"
#include "oracles.hpp"

using namespace lltlab;
using doctest::Approx;

namespace
{
	MarkovSource biased() { return MarkovSource::iid(Eigen::Vector2d(0.3, 0.7)); }
}

TEST_CASE("inducing identity examples")
{
	const auto fair = MarkovSource::fair_bits();
	const PatternSolver s(fair, PatternTarget::parse("11"));
	const auto hit = s.hitting_pmf(Start::stationary(), 4);
	const auto ret = s.return_pmf(4);
	CHECK(hit.mass(2) == 0.125);
	CHECK(s.target_measure() * (1 - ret.mass(1)) == 0.125);
	CHECK(hit.mass(1) == s.target_measure());
	CHECK(verify_inducing_identity(biased(), PatternTarget::parse("01"), 64) < 1e-12);
}

TEST_CASE("shift identity examples")
{
	const auto fair = MarkovSource::fair_bits();
	const auto [l1, r1] = verify_shift_identity(fair, PatternTarget::parse("1"), 1, 1);
	CHECK(l1 == 0.25);
	CHECK(r1 == 0.25);

	// "11" never returns at 2
	const auto [l0, r0] = verify_shift_identity(fair, PatternTarget::parse("11"), 1, 2);
	CHECK(l0 == 0.0);
	CHECK(r0 == 0.0);

	const auto target = PatternTarget::parse("010");
	const auto [lhs, rhs] = verify_shift_identity(fair, target, 3, 2);
	CHECK(std::abs(lhs - rhs) < 1e-12);
	// all 2^8 strings: a hit at 1..3 and the first hit after 3 at 5
	double brute = 0.0;
	oracle::enumerate(fair, 8, {}, [&](const Word &x, double w) {
		bool early = false;
		for (std::size_t n = 1; n <= 3; ++n)
			early = early || oracle::occurs_at(x, n, target.word());
		if (early && !oracle::occurs_at(x, 4, target.word()) && oracle::occurs_at(x, 5, target.word()))
			brute += w;
	});
	CHECK(lhs == Approx(brute).epsilon(1e-14));
	CHECK_THROWS_AS(verify_shift_identity(fair, target, 0, 1), InvalidArgument);
}

TEST_CASE("shift identity grid matches pointwise evaluation")
{
	const PatternSolver s(biased(), PatternTarget::parse("0110"));
	CHECK(verify_shift_identity_grid(s, 20) < 1e-13);
	for (std::int64_t j : {1, 5, 13})
		for (std::int64_t m : {1, 4, 19})
		{
			const auto [lhs, rhs] = verify_shift_identity(s, j, m);
			CHECK(std::abs(lhs - rhs) < 1e-13);
		}
}

TEST_CASE("discrete distribution-function relation and Kac")
{
	for (const auto &src : {MarkovSource::fair_bits(), biased()})
		for (const char *w : {"1", "11", "010", "0110", "00000"})
		{
			const PatternSolver s(src, PatternTarget::parse(w));
			CHECK(verify_discrete_relation(s, 512) < 1e-12);
			CHECK(kac_discrepancy(s, 512) < 1e-12);
			// truncation point does not matter: residual closes the tail exactly
			CHECK(kac_discrepancy(s, 3) < 1e-12);
			CHECK(s.expected_hitting_time(s.target_law()) == Approx(1.0 / s.target_measure()).epsilon(1e-12));
		}
}

TEST_CASE("Markov-dependent source")
{
	MatrixXd p(2, 2);
	p << 0.3, 0.7, 0.6, 0.4;
	const MarkovSource src(p);
	for (const char *w : {"1", "11", "010", "0110"})
	{
		const PatternSolver s(src, PatternTarget::parse(w));
		CHECK(verify_inducing_identity(s, 256) < 1e-12);
		CHECK(verify_shift_identity_grid(s, 16) < 1e-12);
		CHECK(verify_discrete_relation(s, 256) < 1e-12);
		CHECK(kac_discrepancy(s, 256) < 1e-12);
	}
}
