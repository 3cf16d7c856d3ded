#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lltcli
{
	/// Exit codes: 0 success, 1 runtime failure, 2 usage or config error,
	/// 3 resource budget refused, 4 insufficient data.
	enum ExitCode
	{
		kOk = 0,
		kRuntime = 1,
		kUsage = 2,
		kBudget = 3,
		kInsufficient = 4,
	};

	/// Whole command line without the program name. Log lines go to `out`,
	/// a one-line JSON error record to `err`.
	int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
} // namespace lltcli
