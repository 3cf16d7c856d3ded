#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lltlab
{
	/// Two-sided 99% normal quantile.
	constexpr double kZ99 = 2.5758293035489004;

	/// Wilson score interval for count/n.
	std::pair<double, double> wilson_interval(std::uint64_t count, std::uint64_t n, double z = kZ99);

	/// sqrt(n p (1 - p))
	double binomial_sigma(double p, std::uint64_t n);

	struct ChiSquareResult
	{
		double statistic = 0.0;
		int dof = 0;
		double p_value = 1.0;
		bool passes(double level = 0.01) const { return p_value >= level; }
	};

	/// Pearson goodness of fit of observed counts against cell probabilities
	/// that sum to 1 (the caller supplies an overflow cell).
	ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities);

	/// Chi-square test of independence on an r x c contingency table
	/// (row-major), cells with zero margins dropped.
	ChiSquareResult chi_square_independence(std::span<const std::uint64_t> table, int rows, int cols);

	struct BatchMeans
	{
		double mean = 0.0;
		double standard_error = 0.0;
		int batches = 0;
	};

	/// Mean of a dependent series with its batch-means standard error.
	BatchMeans batch_means(std::span<const double> series, int batches = 64);
} // namespace lltlab
