#include "lltlab/pattern_solver.hpp"

namespace lltlab
{
	namespace
	{
		// 2^22 blocks for the escaping-start enumeration
		constexpr double kEscapingBlockBudget = 4194304.0;
	}

	Index ProductChain::reachable_count(const VectorXd &initial) const
	{
		std::vector<char> seen(static_cast<std::size_t>(size()), 0);
		std::vector<Index> stack;
		for (Index i = 0; i < initial.size(); ++i)
			if (initial(i) > 0.0)
			{
				seen[static_cast<std::size_t>(i)] = 1;
				stack.push_back(i);
			}
		SparseMatrix forward(size(), size());
		forward.setFromTriplets(transitions.begin(), transitions.end());
		while (!stack.empty())
		{
			const Index u = stack.back();
			stack.pop_back();
			for (SparseMatrix::InnerIterator it(forward, u); it; ++it)
				if (it.value() > 0.0 && !seen[static_cast<std::size_t>(it.col())])
				{
					seen[static_cast<std::size_t>(it.col())] = 1;
					stack.push_back(it.col());
				}
		}
		Index n = 0;
		for (const char s : seen)
			n += s;
		return n;
	}

	ProductChain product_chain(const MarkovSource &source, const PrefixAutomaton &automaton)
	{
		if (source.alphabet_size() != automaton.alphabet_size())
			throw InvalidArgument("product_chain: alphabet sizes differ");
		ProductChain pc;
		pc.alphabet_size = source.alphabet_size();
		pc.word_length = automaton.word_length();
		const int S = pc.alphabet_size;
		const int l = pc.word_length;
		const Index n = static_cast<Index>(l + 1) * S;

		std::vector<char> in_target(static_cast<std::size_t>(n), 0);
		for (Symbol c = 0; c < S; ++c)
			in_target[static_cast<std::size_t>(pc.index(l, c))] = 1;

		for (int s = 0; s <= l; ++s)
			for (Symbol c = 0; c < S; ++c)
				for (Symbol d = 0; d < S; ++d)
				{
					const double p = source.transition(c, d);
					if (p > 0.0)
						pc.transitions.emplace_back(pc.index(s, c), pc.index(automaton.next(s, d), d), p);
				}
		pc.chain = make_absorption_chain(pc.transitions, n, std::move(in_target));
		return pc;
	}

	PatternSolver::PatternSolver(MarkovSource source, PatternTarget target)
	    : source_(std::move(source)), target_(std::move(target)),
	      automaton_(build_automaton(target_, source_.alphabet_size())),
	      product_(product_chain(source_, automaton_)), target_measure_(source_.cylinder_measure(target_.word()))
	{
		if (!(target_measure_ > 0.0))
			throw InvalidArgument("PatternSolver: target has zero measure under the source");
		if (target_measure_ >= 1.0)
			throw InvalidArgument("PatternSolver: target is the whole space");
		absorption_steps_ = expected_absorption_steps(product_.chain);
	}

	VectorXd PatternSolver::stationary_law() const
	{
		const int S = source_.alphabet_size();
		VectorXd v = VectorXd::Zero(product_.size());
		for (Symbol c = 0; c < S; ++c)
			v(product_.index(automaton_.next(0, c), c)) += source_.stationary()(c);
		for (int i = 1; i < target_.length(); ++i)
			v = product_.chain.evolve(v);
		return v;
	}

	VectorXd PatternSolver::target_law() const
	{
		VectorXd v = VectorXd::Zero(product_.size());
		v(product_.index(target_.length(), target_.word().back())) = 1.0;
		return v;
	}

	FirstPassage PatternSolver::first_passage(const Start &start, std::int64_t k_max) const
	{
		switch (start.kind)
		{
		case Start::Kind::stationary:
			return lltlab::first_passage(product_.chain, stationary_law(), k_max);
		case Start::Kind::on_target:
			return lltlab::first_passage(product_.chain, target_law(), k_max);
		case Start::Kind::on_escaping:
			return escaping_passage(k_max);
		case Start::Kind::explicit_law:
			return lltlab::first_passage(product_.chain, start.law, k_max);
		}
		throw InvalidArgument("hitting_pmf: unknown start kind");
	}

	ExactPMF PatternSolver::hitting_pmf(const Start &start, std::int64_t k_max) const
	{
		return first_passage(start, k_max).pmf;
	}

	// mu_{A^circ}: from the full-match pair, enumerate the next p symbols,
	// dropping the periodic continuation. Hits inside the block are recorded
	// directly; the surviving mass continues through the chain.
	FirstPassage PatternSolver::escaping_passage(std::int64_t k_max) const
	{
		if (k_max < 1)
			throw InvalidArgument("hitting_pmf: k_max must be >= 1");
		if (!target_.period())
			throw InvalidArgument("hitting_pmf: conditioning on A^circ needs a period hint");
		const int p = *target_.period();
		const int S = source_.alphabet_size();
		const int l = target_.length();
		if (std::pow(static_cast<double>(S), p) > kEscapingBlockBudget)
			throw BudgetExceeded("hitting_pmf: S^p escaping blocks exceed 2^22");

		const Word &word = target_.word();
		const Word continuation(word.end() - p, word.end());
		// suffix_weight[d] = P(continuation[d..p) | continuation[d-1]), the mass
		// of the excluded block below a node on its path
		std::vector<double> suffix_weight(static_cast<std::size_t>(p) + 1, 1.0);
		for (int d = p - 1; d >= 0; --d)
		{
			const Symbol prev = d == 0 ? word.back() : continuation[static_cast<std::size_t>(d - 1)];
			suffix_weight[static_cast<std::size_t>(d)] =
			    suffix_weight[static_cast<std::size_t>(d) + 1] * source_.transition(prev, continuation[static_cast<std::size_t>(d)]);
		}

		std::vector<double> premass(static_cast<std::size_t>(p) + 1, 0.0);
		VectorXd state = VectorXd::Zero(product_.size());
		CompensatedSum kept;

		struct Frame
		{
			int depth, s;
			Symbol last;
			double w;
			bool on_path;
		};
		std::vector<Frame> stack{{0, l, word.back(), 1.0, true}};
		while (!stack.empty())
		{
			const Frame f = stack.back();
			stack.pop_back();
			if (f.depth == p)
			{
				if (!f.on_path)
				{
					state(product_.index(f.s, f.last)) += f.w;
					kept += f.w;
				}
				continue;
			}
			for (Symbol c = 0; c < S; ++c)
			{
				const double w = f.w * source_.transition(f.last, c);
				if (!(w > 0.0))
					continue;
				const int s = automaton_.next(f.s, c);
				const bool on_path = f.on_path && c == continuation[static_cast<std::size_t>(f.depth)];
				if (s == l)
				{
					// every extension of this prefix hits here, minus the excluded block
					const double m = on_path ? w - f.w * suffix_weight[static_cast<std::size_t>(f.depth)] : w;
					premass[static_cast<std::size_t>(f.depth) + 1] += m;
					kept += m;
				}
				else
					stack.push_back({f.depth + 1, s, c, w, on_path});
			}
		}

		const double total = kept.value();
		if (!(total > 0.0))
			throw InvalidArgument("hitting_pmf: A^circ has zero measure");

		FirstPassage out;
		ExactPMF &pmf = out.pmf;
		pmf.support_start = 1;
		pmf.total = 1.0;
		pmf.masses.assign(static_cast<std::size_t>(k_max), 0.0);
		for (int k = 1; k <= p && k <= k_max; ++k)
			pmf.masses[static_cast<std::size_t>(k - 1)] = premass[static_cast<std::size_t>(k)] / total;
		state /= total;

		if (k_max <= p)
		{
			// survivors still inside the block
			CompensatedSum rest;
			rest += 1.0;
			for (const double m : pmf.masses)
				rest += -m;
			pmf.tail = rest.value();
			out.survivor = state;
			return out;
		}

		FirstPassage tail = lltlab::first_passage(product_.chain, state, k_max - p);
		std::copy(tail.pmf.masses.begin(), tail.pmf.masses.end(), pmf.masses.begin() + p);
		pmf.tail = tail.pmf.tail;
		out.survivor = std::move(tail.survivor);
		if (pmf.balance_error() > 1e-9)
			throw NumericError("hitting_pmf: mass balance drifted beyond 1e-9");
		return out;
	}

	double PatternSolver::consecutive_joint_pmf(std::span<const std::int64_t> gaps, bool stationary_start) const
	{
		if (gaps.empty())
			throw InvalidArgument("consecutive_joint_pmf: need at least one gap");
		for (const auto g : gaps)
			if (g < 1)
				throw InvalidArgument("consecutive_joint_pmf: gaps must be >= 1");

		VectorXd v = stationary_start ? stationary_law() : target_law();
		VectorXd next(v.size());
		double log_p = 0.0;
		for (const auto g : gaps)
		{
			for (std::int64_t i = 1; i < g; ++i)
			{
				next.noalias() = product_.chain.avoid_t * v;
				v.swap(next);
			}
			next.noalias() = product_.chain.enter_t * v;
			v.swap(next);
			const double m = v.sum();
			if (!(m > 0.0))
				return 0.0;
			log_p += std::log(m);
			v /= m;
		}
		const double p = std::exp(log_p);
		if (p < 1e-300)
			throw UnderflowError("consecutive_joint_pmf: probability underflows below 1e-300");
		return p;
	}

	double PatternSolver::theta_exact() const
	{
		if (!target_.period())
			throw InvalidArgument("theta_exact: target has no period hint");
		const Word ext = target_.periodic_extension();
		return 1.0 - source_.cylinder_measure(ext) / target_measure_;
	}

	double PatternSolver::expected_hitting_time(const VectorXd &law) const
	{
		return law.dot(absorption_steps_);
	}

	double PatternSolver::residual_tail_sum(const VectorXd &survivor) const
	{
		return survivor.dot(absorption_steps_);
	}

	double PatternSolver::kac_expectation(std::int64_t k_max) const
	{
		const FirstPassage fp = first_passage(Start::on_target(), k_max);
		CompensatedSum s;
		for (std::int64_t k = 1; k <= k_max; ++k)
			s += static_cast<double>(k) * fp.pmf.mass(k);
		s += static_cast<double>(k_max) * fp.pmf.tail;
		s += residual_tail_sum(fp.survivor);
		return s.value();
	}

	ExactPMF hitting_pmf(const MarkovSource &source, const PatternTarget &target, const Start &start,
	                     std::int64_t k_max)
	{
		return PatternSolver(source, target).hitting_pmf(start, k_max);
	}

	ExactPMF return_pmf(const MarkovSource &source, const PatternTarget &target, std::int64_t k_max)
	{
		return PatternSolver(source, target).return_pmf(k_max);
	}

	double theta_exact(const MarkovSource &source, const PatternTarget &target)
	{
		return PatternSolver(source, target).theta_exact();
	}

	double consecutive_joint_pmf(const MarkovSource &source, const PatternTarget &target,
	                             std::span<const std::int64_t> gaps, bool stationary_start)
	{
		return PatternSolver(source, target).consecutive_joint_pmf(gaps, stationary_start);
	}
} // namespace lltlab
