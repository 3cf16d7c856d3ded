#pragma once

#include <cstdint>

#include "lltlab/branch_systems.hpp"
#include "lltlab/empirical.hpp"

namespace lltlab
{
	struct FirstPassageOptions
	{
		std::uint64_t replicas = 1000;
		int d = 1;
		std::int64_t max_steps = 1000;
		std::uint64_t seed = 1;
		/// Replica i uses Philox substream substream_offset + i.
		std::uint64_t substream_offset = 0;
		int workers = 1;
		/// Start from mu conditioned on the target (return gaps) instead of mu.
		bool conditioned_start = false;
		/// Marks are kept for threshold targets only; values above the cap
		/// (0 means l + 10^4) are stored as -1.
		Digit mark_cap = 0;
		double censoring_bound = 1e-4;
	};

	struct FirstPassageResult
	{
		/// Keys (tau_1, psi_1, ..., tau_d, psi_d), or (tau_1..tau_d) for words.
		EmpiricalPMF pmf;
		bool censoring_flagged = false;
		double seconds = 0.0;
	};

	/// Independent replicas, each a stationary (or conditioned) stream of
	/// max_steps positions scanned for the first d occurrences. Under a
	/// conditioned start the occurrence at position 1 is the origin and gaps
	/// are measured from it. Counts are merged as integers, so the result does
	/// not depend on the worker count.
	FirstPassageResult estimate_first_passage(const BranchSystem &system, const TargetScan &target,
	                                          const FirstPassageOptions &options);
} // namespace lltlab
