#include <random>
#include <sstream>

#include "doctest.h"
#include "lltlab/markov_pattern.hpp"
#include "lltlab/theory.hpp"
#include "oracles.hpp"

using namespace lltlab;
using doctest::Approx;

namespace
{
	MarkovSource biased() { return MarkovSource::iid(Eigen::Vector2d(0.3, 0.7)); }
	MarkovSource sticky()
	{
		MatrixXd p(2, 2);
		p << 0.3, 0.7, 0.6, 0.4;
		return MarkovSource(p);
	}
	MarkovSource three_state()
	{
		MatrixXd p(3, 3);
		p << 0.2, 0.5, 0.3, 0.6, 0.1, 0.3, 0.25, 0.25, 0.5;
		return MarkovSource(p);
	}

	Word all_words_entry(int length, unsigned code)
	{
		Word w(static_cast<std::size_t>(length));
		for (int i = 0; i < length; ++i)
			w[static_cast<std::size_t>(i)] = static_cast<Symbol>((code >> (length - 1 - i)) & 1u);
		return w;
	}
} // namespace

TEST_CASE("Markov source validation")
{
	MatrixXd p(2, 2);
	p << 0.5, 0.5, 0.5, 0.6;
	CHECK_THROWS_AS(MarkovSource{p}, InvalidArgument);
	p << 1.2, -0.2, 0.5, 0.5;
	CHECK_THROWS_AS(MarkovSource{p}, InvalidArgument);
	p << 1, 0, 0, 1;
	CHECK_THROWS_AS(MarkovSource{p}, InvalidArgument); // reducible
	p << 0, 1, 1, 0;
	CHECK_THROWS_AS(MarkovSource{p}, InvalidArgument); // periodic
	CHECK_THROWS_AS(MarkovSource{MatrixXd::Constant(1, 1, 1.0)}, InvalidArgument);
	CHECK_THROWS_AS(MarkovSource{MatrixXd::Constant(2, 3, 1.0 / 3)}, InvalidArgument);

	const auto s = sticky();
	CHECK(s.stationary_residual() <= 1e-12);
	CHECK(s.stationary().sum() == Approx(1.0).epsilon(1e-15));
	CHECK(s.stationary()(0) == Approx(6.0 / 13.0).epsilon(1e-14));
}

TEST_CASE("stationary vector by power iteration for large alphabets")
{
	std::mt19937_64 gen(1);
	std::uniform_real_distribution<double> u(0.1, 1.0);
	MatrixXd p(70, 70);
	for (Index i = 0; i < 70; ++i)
	{
		for (Index j = 0; j < 70; ++j)
			p(i, j) = u(gen);
		p.row(i) /= p.row(i).sum();
	}
	const MarkovSource s(p);
	CHECK(s.stationary_residual() <= 1e-12);
	CHECK((s.stationary().array() > 0).all());
}

TEST_CASE("product chain for a single-symbol word")
{
	const auto fair = MarkovSource::fair_bits();
	const PatternSolver solver(fair, PatternTarget::parse("1"));
	const auto &pc = solver.product();
	for (Symbol c = 0; c < 2; ++c)
	{
		CHECK(pc.chain.in_target[static_cast<std::size_t>(pc.index(1, c))]);
		CHECK_FALSE(pc.chain.in_target[static_cast<std::size_t>(pc.index(0, c))]);
	}
	// P(phi > k) = 2^-k
	const auto pmf = solver.hitting_pmf(Start::stationary(), 30);
	for (int k = 1; k <= 30; ++k)
	{
		CHECK(pmf.mass(k) == std::ldexp(1.0, -k));
		CHECK(pmf.survival(k) == Approx(std::ldexp(1.0, -k)).epsilon(1e-12));
	}
}

TEST_CASE("product chain for 11 agrees with the 2-block chain")
{
	const auto fair = MarkovSource::fair_bits();
	const PatternSolver solver(fair, PatternTarget::parse("11"));
	CHECK(solver.product().reachable_count(solver.stationary_law()) <= 6);
	const BlockChain block(fair, PatternTarget::parse("11"));
	CHECK(block.size() == 4);
	const auto a = solver.hitting_pmf(Start::stationary(), 40), b = block.hitting_pmf(40);
	const auto ra = solver.return_pmf(40), rb = block.return_pmf(40);
	for (int k = 1; k <= 40; ++k)
	{
		CHECK(std::abs(a.mass(k) - b.mass(k)) < 1e-15);
		CHECK(std::abs(ra.mass(k) - rb.mass(k)) < 1e-15);
	}
}

TEST_CASE("hitting pmf examples")
{
	const auto fair = MarkovSource::fair_bits();
	const auto pmf = hitting_pmf(fair, PatternTarget::parse("11"), Start::stationary(), 100);
	CHECK(pmf.mass(1) == 0.25);
	CHECK(pmf.mass(2) == 0.125);
	CHECK(pmf.balance_error() < 1e-10);
	CHECK_THROWS_AS(hitting_pmf(fair, PatternTarget::parse("11"), Start::stationary(), 0), InvalidArgument);
	CHECK_THROWS_AS(hitting_pmf(fair, PatternTarget::parse("12"), Start::stationary(), 5), InvalidArgument);
}

TEST_CASE("return pmf examples")
{
	const auto fair = MarkovSource::fair_bits();
	const PatternSolver s11(fair, PatternTarget::parse("11"));
	CHECK(s11.kac_expectation(200) == Approx(4.0).epsilon(1e-12));
	const auto r0 = return_pmf(fair, PatternTarget::parse("0"), 10);
	CHECK(r0.mass(1) == 0.5);
	CHECK(r0.mass(2) == 0.25);

	// k = 1 from (l+1)-cylinder ratios: A cap T^{-1}A is the cylinder of the
	// string x with x[0..l) = w = x[1..l], empty unless w is constant
	for (const auto &src : {fair, biased(), sticky()})
		for (const char *ws : {"0", "01", "110", "0101", "1111"})
		{
			const auto t = PatternTarget::parse(ws);
			const Word &w = t.word();
			Word x = w;
			x.push_back(w.back());
			bool consistent = true;
			for (std::size_t i = 0; i < w.size(); ++i)
				consistent = consistent && x[i + 1] == w[i];
			const double joint = consistent ? src.cylinder_measure(x) : 0.0;
			CHECK(return_pmf(src, t, 3).mass(1) == Approx(joint / src.cylinder_measure(w)).epsilon(1e-14));
		}
}

TEST_CASE("exhaustive enumeration oracle, small words")
{
	for (const auto &src : {MarkovSource::fair_bits(), biased(), sticky()})
		for (int length = 1; length <= 4; ++length)
			for (unsigned code = 0; code < (1u << length); ++code)
			{
				const Word w = all_words_entry(length, code);
				const PatternSolver solver(src, PatternTarget(w));
				const auto hit = solver.hitting_pmf(Start::stationary(), 10);
				const auto ret = solver.return_pmf(10);
				const auto eh = oracle::hitting_masses(src, w, 10, false);
				const auto er = oracle::hitting_masses(src, w, 10, true);
				for (int k = 1; k <= 10; ++k)
				{
					CHECK(std::abs(hit.mass(k) - eh[static_cast<std::size_t>(k)]) < 1e-12);
					CHECK(std::abs(ret.mass(k) - er[static_cast<std::size_t>(k)]) < 1e-12);
				}
			}
}

TEST_CASE("three-symbol source against enumeration and block chain")
{
	const auto src = three_state();
	for (const Word &w : {Word{2}, Word{0, 2}, Word{1, 1}, Word{2, 0, 2}, Word{0, 1, 2}})
	{
		const PatternSolver solver(src, PatternTarget(w));
		const BlockChain block(src, PatternTarget(w));
		const auto hit = solver.hitting_pmf(Start::stationary(), 7);
		const auto eh = oracle::hitting_masses(src, w, 7, false);
		const auto bh = block.hitting_pmf(7), br = block.return_pmf(7);
		const auto ret = solver.return_pmf(7);
		for (int k = 1; k <= 7; ++k)
		{
			CHECK(std::abs(hit.mass(k) - eh[static_cast<std::size_t>(k)]) < 1e-12);
			CHECK(std::abs(hit.mass(k) - bh.mass(k)) < 1e-12);
			CHECK(std::abs(ret.mass(k) - br.mass(k)) < 1e-12);
		}
	}
}

TEST_CASE("mass balance and monotonicity")
{
	std::mt19937_64 gen(9);
	for (const auto &src : {MarkovSource::fair_bits(), biased(), sticky()})
		for (int trial = 0; trial < 20; ++trial)
		{
			std::uniform_int_distribution<int> len(1, 9), bit(0, 1);
			Word w(static_cast<std::size_t>(len(gen)));
			for (auto &c : w)
				c = bit(gen);
			const PatternSolver solver(src, PatternTarget(w));
			const auto hit = solver.hitting_pmf(Start::stationary(), 3000);
			const auto ret = solver.return_pmf(3000);
			CHECK(hit.balance_error() < 1e-10);
			CHECK(ret.balance_error() < 1e-10);
			for (int k = 1; k < 3000; ++k)
			{
				CHECK(hit.mass(k) >= 0.0);
				CHECK(hit.mass(k) >= hit.mass(k + 1) - 1e-14);
			}
		}
}

TEST_CASE("explicit start vectors")
{
	const auto fair = MarkovSource::fair_bits();
	const PatternSolver solver(fair, PatternTarget::parse("011"));
	const auto a = solver.hitting_pmf(Start::explicit_vector(solver.stationary_law()), 50);
	const auto b = solver.hitting_pmf(Start::stationary(), 50);
	for (int k = 1; k <= 50; ++k)
		CHECK(a.mass(k) == b.mass(k));
	CHECK_THROWS_AS(solver.hitting_pmf(Start::explicit_vector(VectorXd::Ones(3)), 5), InvalidArgument);
	VectorXd neg = solver.stationary_law();
	neg(0) = -1;
	CHECK_THROWS_AS(solver.hitting_pmf(Start::explicit_vector(neg), 5), InvalidArgument);
}

TEST_CASE("escaping start against enumeration")
{
	for (const auto &src : {MarkovSource::fair_bits(), biased(), sticky()})
		for (const auto &target : {PatternTarget::periodic({0}, 3), PatternTarget::periodic({0, 1}, 4),
		                           PatternTarget::periodic({1, 1, 0}, 3), PatternTarget::periodic({0, 1}, 3),
		                           PatternTarget::parse("0000", 2)})
		{
			const PatternSolver solver(src, target);
			const int p = *target.period();
			const Word &w = target.word();
			const int kmax = 8;
			std::vector<double> mass(kmax + 1, 0.0);
			double total = 0.0;
			oracle::enumerate(src, w.size() + kmax, w, [&](const Word &x, double weight) {
				if (oracle::occurs_at(x, static_cast<std::size_t>(p), w))
					return;
				total += weight;
				for (int k = 1; k <= kmax; ++k)
					if (oracle::occurs_at(x, static_cast<std::size_t>(k), w))
					{
						mass[static_cast<std::size_t>(k)] += weight;
						break;
					}
			});
			const auto pmf = solver.hitting_pmf(Start::on_escaping(), kmax);
			CHECK(total == Approx(solver.theta_exact()).epsilon(1e-12));
			for (int k = 1; k <= kmax; ++k)
				CHECK(std::abs(pmf.mass(k) - mass[static_cast<std::size_t>(k)] / total) < 1e-12);
			CHECK(pmf.balance_error() < 1e-12);
			// shorter horizon than the period keeps the balance
			CHECK(solver.hitting_pmf(Start::on_escaping(), 1).balance_error() < 1e-12);
		}
	CHECK_THROWS_AS(PatternSolver(MarkovSource::fair_bits(), PatternTarget::parse("01")).hitting_pmf(Start::on_escaping(), 4),
	                InvalidArgument);
}

TEST_CASE("theta exact")
{
	const auto fair = MarkovSource::fair_bits();
	for (int l : {1, 4, 10})
	{
		CHECK(theta_exact(fair, PatternTarget::periodic({0}, l)) == Approx(0.5).epsilon(1e-15));
		CHECK(theta_exact(biased(), PatternTarget::periodic({0}, l)) == Approx(0.7).epsilon(1e-14));
	}
	CHECK_THROWS_AS(theta_exact(fair, PatternTarget::parse("00")), InvalidArgument);

	// a zero-probability continuation gives theta = 1
	MatrixXd p(3, 3);
	p << 0.5, 0.5, 0, 0, 0.5, 0.5, 0.5, 0, 0.5;
	const MarkovSource cyc(p);
	CHECK(theta_exact(cyc, PatternTarget::parse("01", 2)) == 1.0);
	const auto esc = PatternSolver(cyc, PatternTarget::parse("01", 2));
	const auto a = esc.hitting_pmf(Start::on_escaping(), 40), b = esc.return_pmf(40);
	for (int k = 1; k <= 40; ++k)
		CHECK(a.mass(k) == Approx(b.mass(k)).epsilon(1e-13));
}

TEST_CASE("zero-measure and whole-space targets are rejected")
{
	MatrixXd p(3, 3);
	p << 0.5, 0.5, 0, 0, 0.5, 0.5, 0.5, 0, 0.5;
	CHECK_THROWS_AS(PatternSolver(MarkovSource(p), PatternTarget::parse("02")), InvalidArgument);
}

TEST_CASE("consecutive joint pmf")
{
	const auto fair = MarkovSource::fair_bits();
	const std::int64_t g22[] = {2, 2};
	CHECK(consecutive_joint_pmf(fair, PatternTarget::parse("1"), g22, true) == Approx(1.0 / 16).epsilon(1e-15));

	const PatternSolver s(biased(), PatternTarget::parse("0110"));
	for (std::int64_t k = 1; k < 20; ++k)
	{
		const std::int64_t one[] = {k};
		CHECK(s.consecutive_joint_pmf(one, true) == Approx(s.hitting_pmf(Start::stationary(), 20).mass(k)).epsilon(1e-13));
		CHECK(s.consecutive_joint_pmf(one, false) == Approx(s.return_pmf(20).mass(k)).epsilon(1e-13));
	}

	// renewal factorization for i.i.d. single-symbol words
	const PatternSolver r(biased(), PatternTarget::parse("1"));
	for (std::int64_t a = 1; a <= 4; ++a)
		for (std::int64_t b = 1; b <= 4; ++b)
		{
			const std::int64_t gaps[] = {a, b}, ga[] = {a}, gb[] = {b};
			CHECK(r.consecutive_joint_pmf(gaps, false) ==
			      Approx(r.consecutive_joint_pmf(ga, false) * r.consecutive_joint_pmf(gb, false)).epsilon(1e-14));
		}

	// enumeration on overlapping words, both starts
	for (const auto &src : {biased(), sticky()})
		for (const char *w : {"11", "010", "0110"})
			for (const auto &gaps : {std::vector<std::int64_t>{1, 2}, {3, 1, 2}, {2, 3}, {4, 1}})
				for (const bool st : {true, false})
				{
					const auto t = PatternTarget::parse(w);
					const double exact = consecutive_joint_pmf(src, t, gaps, st);
					CHECK(std::abs(exact - oracle::joint_gaps(src, t.word(), gaps, st)) < 1e-13);
				}

	const std::int64_t bad[] = {0};
	CHECK_THROWS_AS(s.consecutive_joint_pmf(bad, true), InvalidArgument);
	CHECK_THROWS_AS(s.consecutive_joint_pmf(std::span<const std::int64_t>{}, true), InvalidArgument);
}

TEST_CASE("consecutive joint pmf underflow and exact zeros")
{
	const PatternSolver s(MarkovSource::fair_bits(), PatternTarget::periodic({0}, 12));
	// every unit gap under mu_A costs a factor 1/2
	const std::vector<std::int64_t> many(1100, 1);
	CHECK_THROWS_AS(s.consecutive_joint_pmf(many, false), UnderflowError);
	const std::vector<std::int64_t> fine(900, 1);
	CHECK(s.consecutive_joint_pmf(fine, false) == Approx(std::ldexp(1.0, -900)).epsilon(1e-12));
	// an impossible gap is an exact zero, not an underflow
	const std::int64_t two[] = {1, 2};
	CHECK(consecutive_joint_pmf(MarkovSource::fair_bits(), PatternTarget::parse("11"), two, false) == 0.0);
}

TEST_CASE("llt table")
{
	const auto fair = MarkovSource::fair_bits();
	const auto grid = llt_k_grid(std::ldexp(1.0, -10), 0.5);
	CHECK(grid.front() >= 512);
	CHECK(grid.back() <= 2048);
	CHECK(std::is_sorted(grid.begin(), grid.end()));
	CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
	CHECK_THROWS_AS(llt_k_grid(0.01, 0.0), InvalidArgument);
	CHECK_THROWS_AS(llt_k_grid(0.01, 1.5), InvalidArgument);

	const auto table = llt_convergence_table(fair, {PatternTarget::periodic({0}, 10)}, 1.0);
	REQUIRE(table.return_rows.size() == 1);
	const auto &row = table.return_rows[0];
	CHECK(row.k == 1024);
	CHECK(row.predicted == Approx(1.4809e-4).epsilon(1e-4));
	const auto pmf = return_pmf(fair, PatternTarget::periodic({0}, 10), 1024);
	CHECK(row.exact == pmf.mass(1024));
	CHECK(row.ratio == Approx(row.exact / row.predicted).epsilon(1e-15));

	std::ostringstream os;
	write_llt_csv(os, table.return_rows);
	CHECK(os.str().rfind("l,k,t,exact,predicted,ratio\n10,1024,", 0) == 0);
	std::ostringstream js;
	write_llt_json(js, table.hitting_rows);
	CHECK(js.str().find("\"k\": 1024") != std::string::npos);
}

TEST_CASE("llt ratios approach one at fixed t")
{
	const auto fair = MarkovSource::fair_bits();
	std::vector<double> ret, hit;
	for (int l : {6, 10, 14, 18})
	{
		const auto t = PatternTarget::periodic({0}, l);
		const PatternSolver s(fair, t);
		const auto k = static_cast<std::int64_t>(std::ldexp(1.0, l)); // t = 1
		const ExponentialLaw law(0.5);
		ret.push_back(std::abs(s.return_pmf(k).mass(k) / (return_density(law, 1.0) * s.target_measure()) - 1));
		hit.push_back(std::abs(s.hitting_pmf(Start::stationary(), k).mass(k) / (hitting_density(law, 1.0) * s.target_measure()) - 1));
	}
	for (std::size_t i = 1; i < ret.size(); ++i)
	{
		CHECK(ret[i] < ret[i - 1]);
		CHECK(hit[i] < hit[i - 1]);
	}
}

TEST_CASE("pruned target: exact construction")
{
	const auto fair = MarkovSource::fair_bits();
	const auto rep = counterexample_pruned_target(fair, PatternTarget::parse("11"), 3, 1e4);
	CHECK(rep.return_mass_at_k == 0.0);
	CHECK(std::abs(rep.measure_ratio - 0.875) < 1e-15);
	CHECK(std::abs(rep.measure_ratio - rep.measure_ratio_expected) < 1e-10);

	// outside the support of the return law B = A
	const auto same = counterexample_pruned_target(fair, PatternTarget::parse("11"), 2, 1e4);
	CHECK(same.measure_ratio == 1.0);

	CHECK_THROWS_AS(counterexample_pruned_target(fair, PatternTarget::parse("11"), 3, 10.0), BudgetExceeded);
	CHECK_THROWS_AS(counterexample_pruned_target(fair, PatternTarget::parse("11"), 0), InvalidArgument);
}

TEST_CASE("pruned target: returns of B against enumeration")
{
	for (const auto &src : {MarkovSource::fair_bits(), biased(), sticky()})
		for (const char *ws : {"11", "010", "0"})
			for (std::int64_t k : {1, 2, 3, 4})
			{
				const auto target = PatternTarget::parse(ws);
				const Word &w = target.word();
				const auto rep = counterexample_pruned_target(src, target, k);
				CHECK(rep.return_mass_at_k == 0.0);
				CHECK(std::abs(rep.measure_ratio - rep.measure_ratio_expected) < 1e-10);

				// B-membership of an occurrence at h needs positions up to h + k + l - 1
				const std::size_t n = w.size() + 2 * static_cast<std::size_t>(k) + 1;
				std::vector<double> mass(static_cast<std::size_t>(k) + 1, 0.0);
				double in_b = 0.0;
				oracle::enumerate(src, n, w, [&](const Word &x, double weight) {
					auto in_B = [&](std::size_t h) {
						for (std::size_t g = 1; g <= static_cast<std::size_t>(k); ++g)
							if (oracle::occurs_at(x, h + g, w))
								return g != static_cast<std::size_t>(k);
						return true;
					};
					if (!in_B(0))
						return;
					in_b += weight;
					for (std::size_t h = 1; h <= static_cast<std::size_t>(k); ++h)
						if (oracle::occurs_at(x, h, w) && in_B(h))
						{
							mass[h] += weight;
							break;
						}
				});
				CHECK(in_b == Approx(rep.measure_ratio).epsilon(1e-12));
				for (std::int64_t t = 1; t <= k; ++t)
					CHECK(std::abs(rep.return_masses[static_cast<std::size_t>(t - 1)] -
					               mass[static_cast<std::size_t>(t)] / in_b) < 1e-12);
			}
}
