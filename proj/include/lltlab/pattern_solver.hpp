#pragma once

#include <cstdint>
#include <span>

#include "lltlab/absorption.hpp"
#include "lltlab/markov_source.hpp"
#include "lltlab/pattern.hpp"

namespace lltlab
{
	/// Initial law for a hitting-time computation.
	struct Start
	{
		enum class Kind
		{
			stationary,   // mu
			on_target,    // mu_A
			on_escaping,  // mu_{A^circ}, needs a period hint
			explicit_law, // user vector on the product chain
		};

		Kind kind = Kind::stationary;
		VectorXd law;

		static Start stationary() { return {Kind::stationary, {}}; }
		static Start on_target() { return {Kind::on_target, {}}; }
		static Start on_escaping() { return {Kind::on_escaping, {}}; }
		static Start explicit_vector(VectorXd v) { return {Kind::explicit_law, std::move(v)}; }
	};

	/// Chain on pairs (automaton state s, last symbol c), flattened as s * S + c.
	/// The target set is every pair with s = l.
	struct ProductChain
	{
		AbsorptionChain chain;
		int alphabet_size = 0;
		int word_length = 0;
		std::vector<Eigen::Triplet<double>> transitions; // (from, to, p)

		Index index(int state, Symbol last) const { return static_cast<Index>(state) * alphabet_size + last; }
		Index size() const { return chain.size(); }
		/// Pairs reachable from the stationary start.
		Index reachable_count(const VectorXd &initial) const;
	};

	ProductChain product_chain(const MarkovSource &source, const PrefixAutomaton &automaton);

	/// Exact hitting and return laws of a word cylinder under a finite Markov
	/// source. Read-only after construction.
	class PatternSolver
	{
	public:
		PatternSolver(MarkovSource source, PatternTarget target);

		const MarkovSource &source() const { return source_; }
		const PatternTarget &target() const { return target_; }
		const PrefixAutomaton &automaton() const { return automaton_; }
		const ProductChain &product() const { return product_; }

		/// mu(A)
		double target_measure() const { return target_measure_; }

		/// Law of the product state after the first l symbols x_0..x_{l-1}.
		VectorXd stationary_law() const;
		/// Point mass on the full-match pair.
		VectorXd target_law() const;

		/// P(phi_A = k), k = 1..k_max.
		ExactPMF hitting_pmf(const Start &start, std::int64_t k_max) const;
		ExactPMF return_pmf(std::int64_t k_max) const { return hitting_pmf(Start::on_target(), k_max); }

		/// Same as hitting_pmf, also returning the surviving sub-distribution.
		FirstPassage first_passage(const Start &start, std::int64_t k_max) const;

		/// Probability that the first gaps between visits equal `gaps`. Under a
		/// stationary start the first gap is phi_A itself.
		double consecutive_joint_pmf(std::span<const std::int64_t> gaps, bool stationary_start) const;

		/// mu_A(A^circ) = 1 - mu(A cap T^{-p} A) / mu(A).
		double theta_exact() const;

		/// E phi_A under a law on the product chain: sum_{n>=0} P(phi_A > n).
		double expected_hitting_time(const VectorXd &law) const;
		/// sum_{n >= 0} P_v(phi > n) for a surviving sub-distribution v.
		double residual_tail_sum(const VectorXd &survivor) const;

		/// sum_k k r_k + k_max tail + residual, which equals E_{mu_A} phi_A exactly.
		double kac_expectation(std::int64_t k_max) const;

	private:
		FirstPassage escaping_passage(std::int64_t k_max) const;

		MarkovSource source_;
		PatternTarget target_;
		PrefixAutomaton automaton_;
		ProductChain product_;
		double target_measure_;
		VectorXd absorption_steps_;
	};

	// Free-function forms.
	ExactPMF hitting_pmf(const MarkovSource &source, const PatternTarget &target, const Start &start,
	                     std::int64_t k_max);
	ExactPMF return_pmf(const MarkovSource &source, const PatternTarget &target, std::int64_t k_max);
	double theta_exact(const MarkovSource &source, const PatternTarget &target);
	double consecutive_joint_pmf(const MarkovSource &source, const PatternTarget &target,
	                             std::span<const std::int64_t> gaps, bool stationary_start);
} // namespace lltlab
