#include "lltlab/branch_systems.hpp"

#include <numbers>

namespace lltlab
{
	namespace
	{
		void require_unit_open(double u, const char *who)
		{
			if (!(u >= 0.0 && u < 1.0))
				throw InvalidArgument(std::string(who) + ": uniform must lie in [0, 1)");
		}

		void require_point(double y, const char *who)
		{
			// v_1(0) = 1 is a legal (measure zero) orbit point
			if (!(y >= 0.0 && y <= 1.0))
				throw InvalidArgument(std::string(who) + ": point must lie in [0, 1]");
		}
	} // namespace

	double gauss_stationary_point(double u)
	{
		require_unit_open(u, "gauss_stationary_point");
		return std::expm1(u * std::numbers::ln2);
	}

	double gauss_branch_probability(Digit k, double y)
	{
		if (k < 1)
			return 0.0;
		const double ky = static_cast<double>(k) + y;
		return (1.0 + y) / (ky * (ky + 1.0));
	}

	double gauss_branch_cumulative(Digit K, double y)
	{
		return 1.0 - (1.0 + y) / (static_cast<double>(K) + 1.0 + y);
	}

	BranchStep gauss_branch_sample(double y, double u)
	{
		require_point(y, "gauss_branch_sample");
		require_unit_open(u, "gauss_branch_sample");
		const double x = (1.0 + y) / (1.0 - u) - 1.0 - y;
		if (!(x < static_cast<double>(kMaxGaussDigit)))
			throw SamplingError("gauss_branch_sample: digit above 2^62");
		Digit k = x <= 1.0 ? 1 : static_cast<Digit>(std::ceil(x));
		// the closed form can be off by one ulp-induced step either way
		while (k > 1 && gauss_branch_cumulative(k - 1, y) >= u)
			--k;
		while (gauss_branch_cumulative(k, y) < u)
			++k;
		return {k, 1.0 / (static_cast<double>(k) + y)};
	}

	BranchStep gauss_branch_sample_at_least(double y, double u, Digit l)
	{
		if (l <= 1)
			return gauss_branch_sample(y, u);
		require_unit_open(u, "gauss_branch_sample_at_least");
		const double c = gauss_branch_cumulative(l - 1, y);
		double v = c + u * (1.0 - c);
		if (v >= 1.0)
			v = std::nextafter(1.0, 0.0);
		BranchStep s = gauss_branch_sample(y, v);
		if (s.digit < l)
			s = {l, 1.0 / (static_cast<double>(l) + y)};
		return s;
	}

	BranchStep doubling_branch_sample(double y, double u)
	{
		const Digit bit = u >= 0.5 ? 1 : 0;
		return {bit, (y + static_cast<double>(bit)) * 0.5};
	}

	BranchSystem BranchSystem::from_name(const std::string &name)
	{
		if (name == "gauss")
			return gauss();
		if (name == "doubling")
			return doubling();
		throw InvalidArgument("BranchSystem: unknown system '" + name + "'");
	}

	double BranchSystem::density(double x) const
	{
		if (!(x >= 0.0 && x <= 1.0))
			return 0.0;
		return kind_ == Kind::gauss ? 1.0 / ((1.0 + x) * std::numbers::ln2) : 1.0;
	}

	double BranchSystem::inverse_branch(Digit k, double y) const
	{
		if (kind_ == Kind::gauss)
		{
			if (k < 1)
				throw InvalidArgument("inverse_branch: Gauss digits start at 1");
			return 1.0 / (static_cast<double>(k) + y);
		}
		if (k > 1)
			throw InvalidArgument("inverse_branch: doubling digits are 0 or 1");
		return (y + static_cast<double>(k)) * 0.5;
	}

	double BranchSystem::branch_derivative(Digit k, double y) const
	{
		if (kind_ == Kind::gauss)
		{
			const double ky = static_cast<double>(k) + y;
			return 1.0 / (ky * ky);
		}
		return 0.5;
	}

	double BranchSystem::branch_probability(Digit k, double y) const
	{
		if (kind_ == Kind::gauss)
			return gauss_branch_probability(k, y);
		return k <= 1 ? 0.5 : 0.0;
	}

	double BranchSystem::branch_cumulative(Digit K, double y) const
	{
		if (kind_ == Kind::gauss)
			return K < 1 ? 0.0 : gauss_branch_cumulative(K, y);
		return K == 0 ? 0.5 : 1.0;
	}

	BranchStep BranchSystem::sample_branch(double y, double u) const
	{
		return kind_ == Kind::gauss ? gauss_branch_sample(y, u) : doubling_branch_sample(y, u);
	}

	double BranchSystem::stationary_point(double u) const
	{
		if (kind_ == Kind::gauss)
			return gauss_stationary_point(u);
		require_unit_open(u, "stationary_point");
		return u;
	}
} // namespace lltlab
