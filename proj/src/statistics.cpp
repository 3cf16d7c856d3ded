#include "lltlab/statistics.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "lltlab/types.hpp"

namespace lltlab
{
	std::pair<double, double> wilson_interval(std::uint64_t count, std::uint64_t n, double z)
	{
		if (n == 0)
			throw InvalidArgument("wilson_interval: n must be positive");
		if (count > n)
			throw InvalidArgument("wilson_interval: count exceeds n");
		const double nn = static_cast<double>(n);
		const double p = static_cast<double>(count) / nn;
		const double z2 = z * z;
		const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
		const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
		return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
	}

	double binomial_sigma(double p, std::uint64_t n)
	{
		return std::sqrt(static_cast<double>(n) * p * (1 - p));
	}

	namespace
	{
		double chi_square_sf(double x, int dof)
		{
			if (dof < 1)
				throw InvalidArgument("chi-square test needs at least 2 cells");
			return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), x));
		}
	} // namespace

	ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities)
	{
		if (observed.size() != probabilities.size() || observed.size() < 2)
			throw InvalidArgument("chi_square_test: need matching cell lists of size >= 2");
		std::uint64_t n = 0;
		double total_p = 0;
		for (std::size_t i = 0; i < observed.size(); ++i)
		{
			n += observed[i];
			total_p += probabilities[i];
		}
		if (std::abs(total_p - 1.0) > 1e-9)
			throw InvalidArgument("chi_square_test: cell probabilities must sum to 1");
		ChiSquareResult r;
		int cells = 0;
		for (std::size_t i = 0; i < observed.size(); ++i)
		{
			const double e = probabilities[i] * static_cast<double>(n);
			if (e <= 0)
			{
				if (observed[i] > 0)
					throw InvalidArgument("chi_square_test: count in a zero-probability cell");
				continue;
			}
			const double d = static_cast<double>(observed[i]) - e;
			r.statistic += d * d / e;
			++cells;
		}
		r.dof = cells - 1;
		r.p_value = chi_square_sf(r.statistic, r.dof);
		return r;
	}

	ChiSquareResult chi_square_independence(std::span<const std::uint64_t> table, int rows, int cols)
	{
		if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != table.size())
			throw InvalidArgument("chi_square_independence: table size mismatch");
		std::vector<double> rs(static_cast<std::size_t>(rows), 0.0), cs(static_cast<std::size_t>(cols), 0.0);
		double n = 0;
		for (int i = 0; i < rows; ++i)
			for (int j = 0; j < cols; ++j)
			{
				const double v = static_cast<double>(table[static_cast<std::size_t>(i * cols + j)]);
				rs[static_cast<std::size_t>(i)] += v;
				cs[static_cast<std::size_t>(j)] += v;
				n += v;
			}
		int live_r = 0, live_c = 0;
		for (const double v : rs)
			live_r += v > 0;
		for (const double v : cs)
			live_c += v > 0;
		ChiSquareResult r;
		for (int i = 0; i < rows; ++i)
			for (int j = 0; j < cols; ++j)
			{
				const double e = rs[static_cast<std::size_t>(i)] * cs[static_cast<std::size_t>(j)] / n;
				if (e <= 0)
					continue;
				const double d = static_cast<double>(table[static_cast<std::size_t>(i * cols + j)]) - e;
				r.statistic += d * d / e;
			}
		r.dof = (live_r - 1) * (live_c - 1);
		r.p_value = chi_square_sf(r.statistic, r.dof);
		return r;
	}

	BatchMeans batch_means(std::span<const double> series, int batches)
	{
		if (batches < 2)
			throw InvalidArgument("batch_means: need at least 2 batches");
		if (series.size() < static_cast<std::size_t>(batches))
			throw InsufficientData("batch_means: fewer observations than batches");
		const std::size_t size = series.size() / static_cast<std::size_t>(batches);
		std::vector<double> means(static_cast<std::size_t>(batches));
		for (int b = 0; b < batches; ++b)
		{
			CompensatedSum s;
			for (std::size_t i = 0; i < size; ++i)
				s += series[static_cast<std::size_t>(b) * size + i];
			means[static_cast<std::size_t>(b)] = s.value() / static_cast<double>(size);
		}
		BatchMeans r;
		r.batches = batches;
		CompensatedSum all;
		for (const double x : series)
			all += x;
		r.mean = all.value() / static_cast<double>(series.size());
		double grand = 0;
		for (const double m : means)
			grand += m;
		grand /= batches;
		double var = 0;
		for (const double m : means)
			var += (m - grand) * (m - grand);
		var /= (batches - 1);
		r.standard_error = std::sqrt(var / batches);
		return r;
	}
} // namespace lltlab
