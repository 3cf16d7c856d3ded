#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lltlab/branch_systems.hpp"
#include "lltlab/empirical.hpp"
#include "lltlab/statistics.hpp"

namespace lltlab
{
	struct ErgodicOptions
	{
		std::uint64_t min_hits = 10000;
		int batches = 64;
	};

	struct ErgodicResult
	{
		/// Histogram of consecutive-hit gaps (ergodic mode).
		EmpiricalPMF gaps;
		/// Gaps in stream order, for batch-means error bars.
		std::vector<std::int64_t> gap_series;
		std::uint64_t hits = 0;
		std::uint64_t positions = 0;
		/// hits / positions, the ergodic estimate of mu(A)
		double hit_rate = 0.0;
		/// Mean gap with batch-means standard error; Kac predicts 1/mu(A).
		BatchMeans mean_gap;
	};

	/// Accumulates gap statistics over one or more stationary streams; gaps
	/// never span two streams.
	class ErgodicAccumulator
	{
	public:
		explicit ErgodicAccumulator(TargetScan target) : target_(std::move(target)) {}
		void add_stream(std::span<const Digit> digits);
		/// Throws InsufficientData below options.min_hits.
		ErgodicResult finish(const ErgodicOptions &options = {}) const;

	private:
		TargetScan target_;
		std::vector<std::int64_t> gaps_;
		std::uint64_t hits_ = 0;
		std::uint64_t positions_ = 0;
	};

	ErgodicResult estimate_return_law_ergodic(std::span<const Digit> digits, const TargetScan &target,
	                                          const ErgodicOptions &options = {});

	/// `streams` independent stationary streams of the given length, substreams
	/// 0..streams-1 of `seed`.
	ErgodicResult estimate_return_law_ergodic(const BranchSystem &system, const TargetScan &target,
	                                          std::uint64_t seed, std::size_t stream_length, int streams,
	                                          const ErgodicOptions &options = {});

	/// Frequency of one gap value with a batch-means standard error.
	BatchMeans gap_frequency(const ErgodicResult &result, std::int64_t gap, int batches = 64);

	struct PrunedDemoOptions
	{
		std::uint64_t seed = 1;
		std::size_t stream_length = 1 << 22;
		int streams = 4;
		/// mu_A replicas for the independent estimate of mu_A(phi_A = k)
		std::uint64_t replicas = 1000000;
		int workers = 1;
		ErgodicOptions ergodic;
	};

	struct PrunedDemoResult
	{
		std::int64_t k = 0;
		/// A-occurrences whose next gap is known
		std::uint64_t a_hits = 0;
		/// those with next gap != k, i.e. in B
		std::uint64_t b_hits = 0;
		BatchMeans b_fraction;
		std::uint64_t b_returns = 0;
		/// B-returns equal to k; zero by construction
		std::uint64_t b_returns_at_k = 0;
		/// replica estimate of mu_A(phi_A = k) with its Wilson interval
		double return_at_k = 0.0;
		std::pair<double, double> return_at_k_ci;
		/// |b_fraction - (1 - return_at_k)| over the combined standard error
		double z_score = 0.0;
		bool consistent = false;
	};

	/// B = A cap {phi_A != k} realized by lookahead along stationary streams.
	PrunedDemoResult demo_pruned_return(const BranchSystem &system, const TargetScan &target, std::int64_t k,
	                                    const PrunedDemoOptions &options);
} // namespace lltlab
