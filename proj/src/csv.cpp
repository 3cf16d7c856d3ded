#include "lltlab/csv.hpp"

#include <cmath>
#include <cstdio>

namespace lltlab
{
	std::string format_real(double x)
	{
		if (std::isnan(x))
			return "nan";
		if (std::isinf(x))
			return x > 0 ? "inf" : "-inf";
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.17g", x);
		return buf;
	}

	std::string csv_line(const std::vector<std::string> &fields)
	{
		std::string s;
		for (std::size_t i = 0; i < fields.size(); ++i)
		{
			if (i)
				s += ',';
			s += fields[i];
		}
		s += '\n';
		return s;
	}
} // namespace lltlab
