#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lltlab/absorption.hpp"
#include "lltlab/empirical.hpp"

namespace lltlab
{
	struct ReportCell
	{
		EmpiricalPMF::Key key;
		double prediction = 0.0;
		/// Rescaled time mu(A) k of the cell, NaN when not applicable.
		double t = std::numeric_limits<double>::quiet_NaN();
	};

	struct ReportRow
	{
		EmpiricalPMF::Key key;
		std::uint64_t count = 0;
		std::uint64_t n = 0;
		double estimate = 0.0;
		double prediction = 0.0;
		double ratio = 0.0;
		double ci_low = 0.0;
		double ci_high = 0.0;
		double t = std::numeric_limits<double>::quiet_NaN();
		bool in_summary = false;
	};

	struct ReportPolicy
	{
		/// Cells whose expected count N * prediction is below this are left out
		/// of the summary.
		double min_expected = 100.0;
		/// Cells with t outside [delta, 1/delta] are left out of the summary.
		double delta = 0.0;
	};

	struct LLTReport
	{
		std::string mode; // "replica", "ergodic" or "exact"
		std::vector<std::string> key_names;
		std::vector<ReportRow> rows;
		/// max |ratio - 1| over summary cells, NaN when none qualify.
		double summary = std::numeric_limits<double>::quiet_NaN();
		std::size_t summary_cells = 0;
	};

	/// Empirical cells with Wilson 99% intervals.
	LLTReport llt_report(const EmpiricalPMF &pmf, std::span<const ReportCell> cells,
	                     std::vector<std::string> key_names, const ReportPolicy &policy = {});

	/// Exact masses against predictions; the interval collapses to the value.
	LLTReport llt_report(const ExactPMF &pmf, std::span<const ReportCell> cells, const ReportPolicy &policy = {});

	/// Header `<key names>,count,N,estimate,prediction,ratio,ci_low,ci_high`.
	void write_report_csv(std::ostream &os, const LLTReport &report);
	void write_report_json(std::ostream &os, const LLTReport &report);
} // namespace lltlab
