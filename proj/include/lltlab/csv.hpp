#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lltlab
{
	/// Round-trip decimal form ("%.17g"); identical input gives identical bytes.
	std::string format_real(double x);

	/// Joins fields with commas; fields are written verbatim.
	std::string csv_line(const std::vector<std::string> &fields);
} // namespace lltlab
