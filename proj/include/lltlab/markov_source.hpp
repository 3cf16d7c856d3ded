#pragma once

#include <span>

#include "lltlab/types.hpp"

namespace lltlab
{
	/// Stationary finite-alphabet Markov source. Transitions must be
	/// row-stochastic, irreducible and aperiodic; the stationary vector is
	/// solved at construction.
	class MarkovSource
	{
	public:
		explicit MarkovSource(MatrixXd transitions);

		/// i.i.d. symbols with the given law (a Markov source with equal rows).
		static MarkovSource iid(const VectorXd &probabilities);
		static MarkovSource fair_bits() { return iid(VectorXd::Constant(2, 0.5)); }

		int alphabet_size() const { return static_cast<int>(transitions_.rows()); }
		const MatrixXd &transitions() const { return transitions_; }
		const VectorXd &stationary() const { return stationary_; }
		double transition(Symbol from, Symbol to) const { return transitions_(from, to); }

		/// max |pi P - pi|
		double stationary_residual() const { return residual_; }

		/// mu([w_0 ... w_{n-1}]) = pi(w_0) prod P(w_i, w_{i+1}).
		double cylinder_measure(std::span<const Symbol> word) const;

	private:
		MatrixXd transitions_;
		VectorXd stationary_;
		double residual_ = 0.0;
	};

	/// Stationary vector of an irreducible row-stochastic matrix: dense solve
	/// for up to 64 states, power iteration to a 1e-14 residual beyond that.
	VectorXd solve_stationary(const MatrixXd &transitions);

	bool is_irreducible(const MatrixXd &transitions);
	/// gcd of cycle lengths of the transition graph (irreducible input).
	int transition_period(const MatrixXd &transitions);
} // namespace lltlab
