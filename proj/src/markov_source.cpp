#include "lltlab/markov_source.hpp"

#include <numeric>
#include <queue>

namespace lltlab
{
	namespace
	{
		std::vector<int> bfs_levels(const MatrixXd &p, bool reverse)
		{
			const Index n = p.rows();
			std::vector<int> level(static_cast<std::size_t>(n), -1);
			std::queue<Index> queue;
			level[0] = 0;
			queue.push(0);
			while (!queue.empty())
			{
				const Index u = queue.front();
				queue.pop();
				for (Index v = 0; v < n; ++v)
				{
					const double w = reverse ? p(v, u) : p(u, v);
					if (w > 0.0 && level[static_cast<std::size_t>(v)] < 0)
					{
						level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
						queue.push(v);
					}
				}
			}
			return level;
		}
	} // namespace

	bool is_irreducible(const MatrixXd &transitions)
	{
		for (const bool reverse : {false, true})
			for (const int lv : bfs_levels(transitions, reverse))
				if (lv < 0)
					return false;
		return true;
	}

	int transition_period(const MatrixXd &transitions)
	{
		const auto level = bfs_levels(transitions, false);
		int g = 0;
		for (Index u = 0; u < transitions.rows(); ++u)
			for (Index v = 0; v < transitions.cols(); ++v)
				if (transitions(u, v) > 0.0)
					g = std::gcd(g, std::abs(level[static_cast<std::size_t>(u)] + 1 - level[static_cast<std::size_t>(v)]));
		return g;
	}

	VectorXd solve_stationary(const MatrixXd &transitions)
	{
		const Index n = transitions.rows();
		if (n <= 64)
		{
			MatrixXd a = transitions.transpose() - MatrixXd::Identity(n, n);
			a.row(n - 1).setOnes();
			VectorXd b = VectorXd::Zero(n);
			b(n - 1) = 1.0;
			VectorXd pi = a.fullPivLu().solve(b);
			return pi / pi.sum();
		}
		VectorXd pi = VectorXd::Constant(n, 1.0 / static_cast<double>(n));
		for (int it = 0; it < 10'000'000; ++it)
		{
			VectorXd next = transitions.transpose() * pi;
			next /= next.sum();
			const double residual = (next - pi).cwiseAbs().maxCoeff();
			pi.swap(next);
			if (residual < 1e-14)
				return pi;
		}
		throw NumericError("solve_stationary: power iteration did not reach a 1e-14 residual");
	}

	MarkovSource::MarkovSource(MatrixXd transitions) : transitions_(std::move(transitions))
	{
		const Index n = transitions_.rows();
		if (n < 2 || transitions_.cols() != n)
			throw InvalidArgument("MarkovSource: need a square transition matrix with at least 2 symbols");
		if ((transitions_.array() < 0.0).any() || !transitions_.allFinite())
			throw InvalidArgument("MarkovSource: transition entries must be finite and non-negative");
		for (Index i = 0; i < n; ++i)
			if (std::abs(transitions_.row(i).sum() - 1.0) > kExactTolerance)
				throw InvalidArgument("MarkovSource: row " + std::to_string(i) + " does not sum to 1");
		if (!is_irreducible(transitions_))
			throw InvalidArgument("MarkovSource: transition graph is not irreducible");
		if (transition_period(transitions_) != 1)
			throw InvalidArgument("MarkovSource: transition graph is periodic");

		stationary_ = solve_stationary(transitions_);
		if ((stationary_.array() <= 0.0).any())
			throw InvalidArgument("MarkovSource: stationary vector is not strictly positive");
		residual_ = (transitions_.transpose() * stationary_ - stationary_).cwiseAbs().maxCoeff();
		if (residual_ > kExactTolerance)
			throw NumericError("MarkovSource: stationary residual above 1e-12");
	}

	MarkovSource MarkovSource::iid(const VectorXd &probabilities)
	{
		const Index n = probabilities.size();
		MatrixXd p(n, n);
		for (Index i = 0; i < n; ++i)
			p.row(i) = probabilities.transpose();
		return MarkovSource(std::move(p));
	}

	double MarkovSource::cylinder_measure(std::span<const Symbol> word) const
	{
		if (word.empty())
			return 1.0;
		for (const Symbol c : word)
			if (c < 0 || c >= alphabet_size())
				throw InvalidArgument("cylinder_measure: symbol out of range");
		double m = stationary_(word[0]);
		for (std::size_t i = 1; i < word.size(); ++i)
			m *= transitions_(word[i - 1], word[i]);
		return m;
	}
} // namespace lltlab
