#include "lltlab/scan.hpp"

namespace lltlab
{
	std::vector<Hit> scan_hits(std::span<const Digit> digits, const TargetScan &target)
	{
		std::vector<Hit> hits;
		for (std::size_t i = 0; i < digits.size(); ++i)
			if (target.holds_at(digits, i))
				hits.push_back({static_cast<std::int64_t>(i) + 1, digits[i]});
		return hits;
	}

	SpatioTemporalRecord gaps_and_marks(std::span<const Hit> hits)
	{
		SpatioTemporalRecord r;
		std::int64_t prev = 0;
		for (const Hit &h : hits)
		{
			r.gaps.push_back(h.position - prev);
			r.marks.push_back(h.value);
			prev = h.position;
		}
		return r;
	}
} // namespace lltlab
