#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lltlab/types.hpp"

namespace lltlab
{
	enum class EstimatorKind
	{
		replica,
		ergodic,
	};

	std::string to_string(EstimatorKind kind);

	/// Integer count table keyed by integer tuples. `trials` is the number of
	/// replicas (replica mode) or of observed gaps (ergodic mode); censored
	/// trials are counted apart, so sum(counts) + censored == trials.
	struct EmpiricalPMF
	{
		using Key = std::vector<std::int64_t>;

		EstimatorKind kind = EstimatorKind::replica;
		std::size_t arity = 1;
		std::map<Key, std::uint64_t> counts;
		std::uint64_t trials = 0;
		std::uint64_t censored = 0;

		void add(const Key &key, std::uint64_t n = 1);
		void add_censored(std::uint64_t n = 1)
		{
			censored += n;
			trials += n;
		}
		/// Integer merge; associative and commutative.
		void merge(const EmpiricalPMF &other);

		std::uint64_t count(const Key &key) const;
		double estimate(const Key &key) const;
		std::uint64_t total_counted() const;
		double censoring_fraction() const
		{
			return trials ? static_cast<double>(censored) / static_cast<double>(trials) : 0.0;
		}

		/// Counts of coordinate `index` summed over the others.
		std::map<std::int64_t, std::uint64_t> marginal(std::size_t index) const;
	};
} // namespace lltlab
