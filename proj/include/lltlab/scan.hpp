#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lltlab/target_scan.hpp"

namespace lltlab
{
	/// Occurrence at a 1-indexed stream position. For word targets the value is
	/// the first digit of the occurrence.
	struct Hit
	{
		std::int64_t position;
		Digit value;
		bool operator==(const Hit &) const = default;
	};

	struct SpatioTemporalRecord
	{
		std::vector<std::int64_t> gaps;
		std::vector<Digit> marks;
	};

	/// Positions n >= 1 (in order) at which the target holds; words must fit.
	std::vector<Hit> scan_hits(std::span<const Digit> digits, const TargetScan &target);

	/// Successive differences of hit positions (the first gap is the first
	/// position) paired with the hit values.
	SpatioTemporalRecord gaps_and_marks(std::span<const Hit> hits);
} // namespace lltlab
