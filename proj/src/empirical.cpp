#include "lltlab/empirical.hpp"

namespace lltlab
{
	std::string to_string(EstimatorKind kind)
	{
		return kind == EstimatorKind::replica ? "replica" : "ergodic";
	}

	void EmpiricalPMF::add(const Key &key, std::uint64_t n)
	{
		if (key.size() != arity)
			throw InvalidArgument("EmpiricalPMF: key arity mismatch");
		counts[key] += n;
		trials += n;
	}

	void EmpiricalPMF::merge(const EmpiricalPMF &other)
	{
		if (other.arity != arity || other.kind != kind)
			throw InvalidArgument("EmpiricalPMF: merging incompatible tables");
		for (const auto &[k, n] : other.counts)
			counts[k] += n;
		trials += other.trials;
		censored += other.censored;
	}

	std::uint64_t EmpiricalPMF::count(const Key &key) const
	{
		const auto it = counts.find(key);
		return it == counts.end() ? 0 : it->second;
	}

	double EmpiricalPMF::estimate(const Key &key) const
	{
		if (trials == 0)
			throw InsufficientData("EmpiricalPMF: no trials");
		return static_cast<double>(count(key)) / static_cast<double>(trials);
	}

	std::uint64_t EmpiricalPMF::total_counted() const
	{
		std::uint64_t n = 0;
		for (const auto &[k, c] : counts)
			n += c;
		return n;
	}

	std::map<std::int64_t, std::uint64_t> EmpiricalPMF::marginal(std::size_t index) const
	{
		if (index >= arity)
			throw InvalidArgument("EmpiricalPMF::marginal: index out of range");
		std::map<std::int64_t, std::uint64_t> m;
		for (const auto &[k, c] : counts)
			m[k[index]] += c;
		return m;
	}
} // namespace lltlab
