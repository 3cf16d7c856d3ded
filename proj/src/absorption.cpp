#include "lltlab/absorption.hpp"

#include <Eigen/SparseLU>

namespace lltlab
{
	double ExactPMF::survival(std::int64_t k) const
	{
		if (k < 0 || k > k_max())
			throw InvalidArgument("ExactPMF::survival: k outside tabulated range");
		CompensatedSum s;
		s += total;
		for (std::int64_t j = support_start; j <= k; ++j)
			s += -mass(j);
		return s.value();
	}

	double ExactPMF::balance_error() const
	{
		CompensatedSum s;
		for (const double m : masses)
			s += m;
		s += tail;
		s += -total;
		return std::abs(s.value());
	}

	AbsorptionChain make_absorption_chain(const std::vector<Eigen::Triplet<double>> &transitions, Index size,
	                                      std::vector<char> in_target)
	{
		std::vector<Eigen::Triplet<double>> avoid, enter;
		for (const auto &t : transitions)
		{
			// transpose: (to, from)
			const Eigen::Triplet<double> tt(t.col(), t.row(), t.value());
			(in_target[static_cast<std::size_t>(t.col())] ? enter : avoid).push_back(tt);
		}
		AbsorptionChain chain;
		chain.avoid_t.resize(size, size);
		chain.enter_t.resize(size, size);
		chain.avoid_t.setFromTriplets(avoid.begin(), avoid.end());
		chain.enter_t.setFromTriplets(enter.begin(), enter.end());
		chain.avoid_t.makeCompressed();
		chain.enter_t.makeCompressed();
		chain.in_target = std::move(in_target);
		return chain;
	}

	FirstPassage first_passage(const AbsorptionChain &chain, const VectorXd &initial, std::int64_t k_max)
	{
		if (k_max < 1)
			throw InvalidArgument("first_passage: k_max must be >= 1");
		if (initial.size() != chain.size())
			throw InvalidArgument("first_passage: initial vector has the wrong size");
		if ((initial.array() < 0.0).any())
			throw InvalidArgument("first_passage: initial vector has negative entries");

		FirstPassage out;
		ExactPMF &pmf = out.pmf;
		pmf.support_start = 1;
		pmf.masses.resize(static_cast<std::size_t>(k_max));

		CompensatedSum total;
		for (Index i = 0; i < initial.size(); ++i)
			total += initial(i);
		pmf.total = total.value();

		VectorXd v = initial;
		VectorXd next(v.size());
		CompensatedSum absorbed;
		for (std::int64_t k = 1; k <= k_max; ++k)
		{
			const double hit = (chain.enter_t * v).sum();
			next.noalias() = chain.avoid_t * v;
			v.swap(next);
			pmf.masses[static_cast<std::size_t>(k - 1)] = hit;
			absorbed += hit;
		}

		CompensatedSum survivor;
		for (Index i = 0; i < v.size(); ++i)
			survivor += v(i);
		pmf.tail = survivor.value();

		const double drift = pmf.total - absorbed.value() - pmf.tail;
		if (pmf.total - absorbed.value() < -1e-9 || std::abs(drift) > 1e-9)
			throw NumericError("first_passage: mass balance drifted beyond 1e-9 (k_max too large)");

		out.survivor = std::move(v);
		return out;
	}

	VectorXd expected_absorption_steps(const AbsorptionChain &chain)
	{
		const Index n = chain.size();
		Eigen::SparseMatrix<double> a(n, n);
		a.setIdentity();
		// (I - Q) with Q = avoid_t^T
		Eigen::SparseMatrix<double> q = chain.avoid_t.transpose();
		a -= q;
		a.makeCompressed();
		Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
		lu.analyzePattern(a);
		lu.factorize(a);
		if (lu.info() != Eigen::Success)
			throw NumericError("expected_absorption_steps: I - Q is singular (target unreachable)");
		VectorXd x = lu.solve(VectorXd::Ones(n));
		if (lu.info() != Eigen::Success)
			throw NumericError("expected_absorption_steps: solve failed");
		return x;
	}
} // namespace lltlab
