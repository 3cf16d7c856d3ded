#include "lltlab/ergodic.hpp"

#include "lltlab/first_passage_mc.hpp"
#include "lltlab/scan.hpp"

namespace lltlab
{
	void ErgodicAccumulator::add_stream(std::span<const Digit> digits)
	{
		const auto hits = scan_hits(digits, target_);
		for (std::size_t i = 1; i < hits.size(); ++i)
			gaps_.push_back(hits[i].position - hits[i - 1].position);
		hits_ += hits.size();
		positions_ += digits.size() + 1 - std::min(digits.size(), target_.span_length());
	}

	ErgodicResult ErgodicAccumulator::finish(const ErgodicOptions &options) const
	{
		if (hits_ < options.min_hits)
			throw InsufficientData("estimate_return_law_ergodic: " + std::to_string(hits_) + " hits, need " +
			                       std::to_string(options.min_hits));
		ErgodicResult r;
		r.gaps.kind = EstimatorKind::ergodic;
		r.gaps.arity = 1;
		for (const auto g : gaps_)
			r.gaps.add({g});
		r.gap_series = gaps_;
		r.hits = hits_;
		r.positions = positions_;
		r.hit_rate = static_cast<double>(hits_) / static_cast<double>(positions_);
		std::vector<double> series(gaps_.begin(), gaps_.end());
		r.mean_gap = batch_means(series, options.batches);
		return r;
	}

	ErgodicResult estimate_return_law_ergodic(std::span<const Digit> digits, const TargetScan &target,
	                                          const ErgodicOptions &options)
	{
		ErgodicAccumulator acc(target);
		acc.add_stream(digits);
		return acc.finish(options);
	}

	ErgodicResult estimate_return_law_ergodic(const BranchSystem &system, const TargetScan &target,
	                                          std::uint64_t seed, std::size_t stream_length, int streams,
	                                          const ErgodicOptions &options)
	{
		if (streams < 1)
			throw InvalidArgument("estimate_return_law_ergodic: need at least one stream");
		ErgodicAccumulator acc(target);
		for (int s = 0; s < streams; ++s)
		{
			const DigitStream stream = generate_stream(system, seed, stream_length, std::size_t{1} << 16,
			                                           static_cast<std::uint64_t>(s));
			acc.add_stream(stream.digits);
		}
		return acc.finish(options);
	}

	BatchMeans gap_frequency(const ErgodicResult &result, std::int64_t gap, int batches)
	{
		std::vector<double> indicator(result.gap_series.size());
		for (std::size_t i = 0; i < indicator.size(); ++i)
			indicator[i] = result.gap_series[i] == gap ? 1.0 : 0.0;
		return batch_means(indicator, batches);
	}

	PrunedDemoResult demo_pruned_return(const BranchSystem &system, const TargetScan &target, std::int64_t k,
	                                    const PrunedDemoOptions &options)
	{
		if (k < 1)
			throw InvalidArgument("demo_pruned_return: k must be >= 1");
		PrunedDemoResult r;
		r.k = k;
		std::vector<double> in_b;
		for (int s = 0; s < options.streams; ++s)
		{
			const DigitStream stream = generate_stream(system, options.seed, options.stream_length,
			                                           std::size_t{1} << 16, static_cast<std::uint64_t>(s));
			const auto hits = scan_hits(stream.digits, target);
			// last position at which an occurrence could still be seen
			const auto last_possible =
			    static_cast<std::int64_t>(stream.digits.size() + 1 - std::min(stream.digits.size(), target.span_length()));
			std::int64_t prev_b = -1;
			for (std::size_t i = 0; i < hits.size(); ++i)
			{
				bool member;
				if (i + 1 < hits.size())
					member = hits[i + 1].position - hits[i].position != k;
				else if (hits[i].position + k <= last_possible)
					member = true; // no occurrence within k: gap > k
				else
					break; // undecided at the end of the stream
				++r.a_hits;
				in_b.push_back(member ? 1.0 : 0.0);
				if (!member)
					continue;
				++r.b_hits;
				if (prev_b >= 0)
				{
					++r.b_returns;
					if (hits[i].position - prev_b == k)
						++r.b_returns_at_k;
				}
				prev_b = hits[i].position;
			}
		}
		if (r.a_hits < options.ergodic.min_hits)
			throw InsufficientData("demo_pruned_return: " + std::to_string(r.a_hits) + " decided hits, need " +
			                       std::to_string(options.ergodic.min_hits));
		r.b_fraction = batch_means(in_b, options.ergodic.batches);

		FirstPassageOptions fp;
		fp.replicas = options.replicas;
		fp.d = 1;
		fp.max_steps = k;
		fp.seed = options.seed;
		// keep the replica substreams clear of the ergodic streams
		fp.substream_offset = std::uint64_t{1} << 32;
		fp.workers = options.workers;
		fp.conditioned_start = true;
		fp.censoring_bound = 1.0;
		const auto replicas = estimate_first_passage(system, target, fp);
		std::uint64_t at_k = 0;
		for (const auto &[key, n] : replicas.pmf.counts)
			if (key[0] == k)
				at_k += n;
		const std::uint64_t total = replicas.pmf.trials;
		r.return_at_k = static_cast<double>(at_k) / static_cast<double>(total);
		r.return_at_k_ci = wilson_interval(at_k, total);
		const double se_rep = std::sqrt(r.return_at_k * (1 - r.return_at_k) / static_cast<double>(total));
		const double se = std::hypot(r.b_fraction.standard_error, se_rep);
		const double diff = std::abs(r.b_fraction.mean - (1.0 - r.return_at_k));
		r.z_score = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
		r.consistent = r.z_score <= kZ99;
		return r;
	}
} // namespace lltlab
