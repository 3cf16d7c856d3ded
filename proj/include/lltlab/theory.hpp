#pragma once

// Closed-form reference laws: exponential hitting/return densities,
// continued-fraction spatiotemporal asymptotes, Gauss cell measures and the
// checker for the hitting/return distribution-function relation
//     int_0^t (1 - Ftilde(s)) ds = F(t).
//
// All "log" in the continued-fraction formulas is the natural logarithm; the
// Gauss density is 1 / ((1 + x) ln 2).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "lltlab/types.hpp"

namespace lltlab
{
	/// Exponential limit law with expectation 1/theta, theta in (0, 1].
	///
	/// Hitting-time limit F(t) = 1 - e^{-theta t}; the matching return-time
	/// limit is Ftilde(t) = 1 - theta e^{-theta t}, which carries an atom of
	/// mass 1 - theta at t = 0.
	template <typename Scalar = double>
	class ExponentialLaw
	{
	public:
		explicit ExponentialLaw(Scalar theta) : theta_(theta)
		{
			if (!(theta > Scalar(0) && theta <= Scalar(1)))
				throw InvalidArgument("ExponentialLaw: theta must lie in (0, 1]");
		}

		Scalar theta() const { return theta_; }

		Scalar hitting_cdf(Scalar t) const { return t < Scalar(0) ? Scalar(0) : Scalar(1) - std::exp(-theta_ * t); }
		Scalar return_cdf(Scalar t) const
		{
			return t < Scalar(0) ? Scalar(0) : Scalar(1) - theta_ * std::exp(-theta_ * t);
		}

	private:
		Scalar theta_;
	};

	namespace detail
	{
		template <typename Scalar>
		void require_nonnegative_time(Scalar t)
		{
			if (!(t >= Scalar(0)))
				throw InvalidArgument("time argument must be non-negative");
		}
	} // namespace detail

	/// theta e^{-theta t}
	template <typename Scalar>
	Scalar hitting_density(const ExponentialLaw<Scalar> &law, Scalar t)
	{
		detail::require_nonnegative_time(t);
		return law.theta() * std::exp(-law.theta() * t);
	}

	/// theta^2 e^{-theta t}; integrates to theta, the remaining 1 - theta
	/// being the atom of instant returns.
	template <typename Scalar>
	Scalar return_density(const ExponentialLaw<Scalar> &law, Scalar t)
	{
		detail::require_nonnegative_time(t);
		return law.theta() * law.theta() * std::exp(-law.theta() * t);
	}

	/// Asymptote of the probability that the first d gaps between visits to a
	/// rare set of measure muA equal `gaps`:
	///   theta^{2d}   muA^d e^{-theta muA sum(gaps)}   (start conditioned on the set)
	///   theta^{2d-1} muA^d e^{-theta muA sum(gaps)}   (stationary start)
	template <typename Scalar>
	Scalar consecutive_asymptote(const ExponentialLaw<Scalar> &law, Scalar muA, std::span<const std::int64_t> gaps,
	                             bool hitting_start)
	{
		if (gaps.empty())
			throw InvalidArgument("consecutive_asymptote: empty gap list");
		if (!(muA > Scalar(0) && muA < Scalar(1)))
			throw InvalidArgument("consecutive_asymptote: muA must lie in (0, 1)");
		Scalar total = 0;
		for (const auto k : gaps)
		{
			if (k < 1)
				throw InvalidArgument("consecutive_asymptote: gaps must be >= 1");
			total += static_cast<Scalar>(k);
		}
		const auto d = static_cast<int>(gaps.size());
		const int theta_power = hitting_start ? 2 * d - 1 : 2 * d;
		return std::pow(law.theta(), theta_power) * std::pow(muA, d) * std::exp(-law.theta() * muA * total);
	}

	/// Prediction cell for large continued-fraction digits: the first d gaps
	/// between digits >= l and the values of those digits.
	struct CFPrediction
	{
		std::int64_t l = 2;
		std::vector<std::int64_t> gaps;
		std::vector<std::int64_t> marks;
		bool prime_variant = false;

		void validate() const;
	};

	/// prod_j e^{-k_j / (l ln 2)} / (a_j^2 ln 2); the prime variant uses the
	/// rate 1 / (l ln l ln 2).
	double cf_joint_asymptote(const CFPrediction &p);

	/// Asymptotic measure of {a >= l}: 1/(l ln 2); prime variant 1/(l ln l ln 2).
	double cf_rare_set_measure(std::int64_t l, bool prime_variant);

	/// Exact Gauss measure of {a >= l} = log2(1 + 1/l), l >= 1.
	double cf_threshold_measure(std::int64_t l);

	/// Exact Gauss measure of {a >= l, a prime}: explicit sum over primes up to
	/// `cutoff` plus the tail estimate 1/(cutoff ln(cutoff) ln 2).
	double cf_prime_threshold_measure(std::int64_t l, std::int64_t cutoff = 20'000'000);

	/// Gauss measure of I_k = (1/(k+1), 1/k], i.e. log2((k+1)^2 / (k(k+2))).
	double gauss_digit_cell_measure(std::int64_t k);

	/// Gauss measure of the rank-m cylinder {a_1 = c_1, ..., a_m = c_m}.
	double gauss_cylinder_measure(std::span<const std::int64_t> digits);

	/// sup_t |int_0^t (1 - Ftilde) - F(t)| over a tabulation, trapezoidal rule.
	/// Both tabulations must be non-decreasing and share `grid`, which must
	/// start at 0 and increase strictly.
	double check_integral_relation(std::span<const double> grid, std::span<const double> F,
	                               std::span<const double> Ftilde);
} // namespace lltlab
