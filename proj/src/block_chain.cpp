#include "lltlab/block_chain.hpp"

namespace lltlab
{
	BlockChain::BlockChain(const MarkovSource &source, const PatternTarget &target)
	{
		const int S = source.alphabet_size();
		const int l = target.length();
		target.validate(S);
		const double states = std::pow(static_cast<double>(S), l);
		if (states > kBlockChainBudget)
			throw BudgetExceeded("BlockChain: S^l exceeds 2^22 states");
		const Index n = static_cast<Index>(states);

		Index top = 1; // S^(l-1)
		for (int i = 1; i < l; ++i)
			top *= S;

		stationary_.resize(n);
		Word block(static_cast<std::size_t>(l));
		for (Index b = 0; b < n; ++b)
		{
			Index r = b;
			for (int i = l - 1; i >= 0; --i)
			{
				block[static_cast<std::size_t>(i)] = static_cast<Symbol>(r % S);
				r /= S;
			}
			stationary_(b) = source.cylinder_measure(block);
		}

		for (const Symbol c : target.word())
			target_block_ = target_block_ * S + c;

		std::vector<Eigen::Triplet<double>> transitions;
		transitions.reserve(static_cast<std::size_t>(n * S));
		for (Index b = 0; b < n; ++b)
		{
			const Symbol last = static_cast<Symbol>(b % S);
			const Index shifted = (b % top) * S;
			for (Symbol d = 0; d < S; ++d)
			{
				const double p = source.transition(last, d);
				if (p > 0.0)
					transitions.emplace_back(b, shifted + d, p);
			}
		}
		std::vector<char> in_target(static_cast<std::size_t>(n), 0);
		in_target[static_cast<std::size_t>(target_block_)] = 1;
		chain_ = make_absorption_chain(transitions, n, std::move(in_target));
	}

	ExactPMF BlockChain::hitting_pmf(std::int64_t k_max) const
	{
		return first_passage(chain_, stationary_, k_max).pmf;
	}

	ExactPMF BlockChain::return_pmf(std::int64_t k_max) const
	{
		VectorXd v = VectorXd::Zero(size());
		v(target_block_) = 1.0;
		return first_passage(chain_, v, k_max).pmf;
	}
} // namespace lltlab
