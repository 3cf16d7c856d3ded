#include "lltlab/theory.hpp"

#include <algorithm>

#include "lltlab/primes.hpp"

namespace lltlab
{
	namespace
	{
		constexpr double kLn2 = std::numbers::ln2;
	}

	void CFPrediction::validate() const
	{
		if (l < 2)
			throw InvalidArgument("CFPrediction: threshold l must be >= 2");
		if (gaps.empty())
			throw InvalidArgument("CFPrediction: need at least one gap");
		if (gaps.size() != marks.size())
			throw InvalidArgument("CFPrediction: gaps and marks differ in length");
		for (const auto k : gaps)
			if (k < 1)
				throw InvalidArgument("CFPrediction: gaps must be >= 1");
		for (const auto a : marks)
		{
			if (a < l)
				throw InvalidArgument("CFPrediction: marks must be >= l");
			if (prime_variant && !is_prime(static_cast<std::uint64_t>(a)))
				throw InvalidArgument("CFPrediction: prime variant requires prime marks");
		}
	}

	double cf_joint_asymptote(const CFPrediction &p)
	{
		p.validate();
		const double l = static_cast<double>(p.l);
		const double rate = p.prime_variant ? 1.0 / (l * std::log(l) * kLn2) : 1.0 / (l * kLn2);
		double log_value = 0.0;
		for (std::size_t j = 0; j < p.gaps.size(); ++j)
		{
			const double a = static_cast<double>(p.marks[j]);
			log_value += -static_cast<double>(p.gaps[j]) * rate - 2.0 * std::log(a) - std::log(kLn2);
		}
		return std::exp(log_value);
	}

	double cf_rare_set_measure(std::int64_t l, bool prime_variant)
	{
		if (l < 2)
			throw InvalidArgument("cf_rare_set_measure: l must be >= 2");
		const double x = static_cast<double>(l);
		return prime_variant ? 1.0 / (x * std::log(x) * kLn2) : 1.0 / (x * kLn2);
	}

	double cf_threshold_measure(std::int64_t l)
	{
		if (l < 1)
			throw InvalidArgument("cf_threshold_measure: l must be >= 1");
		return std::log1p(1.0 / static_cast<double>(l)) / kLn2;
	}

	double cf_prime_threshold_measure(std::int64_t l, std::int64_t cutoff)
	{
		if (l < 2)
			throw InvalidArgument("cf_prime_threshold_measure: l must be >= 2");
		cutoff = std::max(cutoff, 2 * l + 16);
		const auto primes = primes_in_range(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(cutoff));
		CompensatedSum sum;
		// Smallest cells last so the large terms do not swamp them.
		for (auto it = primes.rbegin(); it != primes.rend(); ++it)
			sum += gauss_digit_cell_measure(static_cast<std::int64_t>(*it));
		const double c = static_cast<double>(cutoff);
		sum += 1.0 / (c * std::log(c) * kLn2);
		return sum.value();
	}

	double gauss_digit_cell_measure(std::int64_t k)
	{
		if (k < 1)
			throw InvalidArgument("gauss_digit_cell_measure: k must be >= 1");
		const double x = static_cast<double>(k);
		// (k+1)^2 / (k(k+2)) = 1 + 1/(k(k+2))
		return std::log1p(1.0 / (x * (x + 2.0))) / kLn2;
	}

	double gauss_cylinder_measure(std::span<const std::int64_t> digits)
	{
		if (digits.empty())
			return 1.0;
		// Convergent recursion: the cylinder is the interval with endpoints
		// p_m/q_m and (p_m + p_{m-1}) / (q_m + q_{m-1}).
		long double p_prev = 1, q_prev = 0, p = 0, q = 1;
		for (const auto a : digits)
		{
			if (a < 1)
				throw InvalidArgument("gauss_cylinder_measure: digits must be >= 1");
			const long double pn = static_cast<long double>(a) * p + p_prev;
			const long double qn = static_cast<long double>(a) * q + q_prev;
			p_prev = p;
			q_prev = q;
			p = pn;
			q = qn;
		}
		const long double x1 = p / q;
		const long double x2 = (p + p_prev) / (q + q_prev);
		// log2((1+x1)/(1+x2)) computed as log1p of the relative difference.
		const long double lo = std::min(x1, x2), hi = std::max(x1, x2);
		return static_cast<double>(std::log1p((hi - lo) / (1.0L + lo)) / std::numbers::ln2_v<long double>);
	}

	double check_integral_relation(std::span<const double> grid, std::span<const double> F,
	                               std::span<const double> Ftilde)
	{
		if (grid.size() != F.size() || grid.size() != Ftilde.size())
			throw InvalidArgument("check_integral_relation: tabulations must cover the grid");
		if (grid.empty())
			throw InvalidArgument("check_integral_relation: empty grid");
		if (grid.front() != 0.0)
			throw InvalidArgument("check_integral_relation: grid must start at 0");
		for (std::size_t i = 1; i < grid.size(); ++i)
		{
			if (!(grid[i] > grid[i - 1]))
				throw InvalidArgument("check_integral_relation: grid must increase strictly");
			if (F[i] < F[i - 1] || Ftilde[i] < Ftilde[i - 1])
				throw InvalidArgument("check_integral_relation: tabulation is not monotone");
		}
		for (const double v : Ftilde)
			if (v < 0.0 || v > 1.0)
				throw InvalidArgument("check_integral_relation: Ftilde must be a sub-probability CDF");

		double worst = std::abs(F[0]);
		CompensatedSum integral;
		for (std::size_t i = 1; i < grid.size(); ++i)
		{
			const double h = grid[i] - grid[i - 1];
			integral += 0.5 * h * ((1.0 - Ftilde[i - 1]) + (1.0 - Ftilde[i]));
			worst = std::max(worst, std::abs(integral.value() - F[i]));
		}
		return worst;
	}
} // namespace lltlab
