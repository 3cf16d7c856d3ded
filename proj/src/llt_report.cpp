#include "lltlab/llt_report.hpp"

#include <algorithm>
#include <cmath>

#include "lltlab/csv.hpp"
#include "lltlab/statistics.hpp"

namespace lltlab
{
	namespace
	{
		bool inside_window(double t, double delta)
		{
			if (std::isnan(t) || delta <= 0.0)
				return true;
			return t >= delta && t <= 1.0 / delta;
		}

		void summarize(LLTReport &r)
		{
			double worst = -1.0;
			for (const auto &row : r.rows)
				if (row.in_summary)
				{
					worst = std::max(worst, std::abs(row.ratio - 1.0));
					++r.summary_cells;
				}
			if (r.summary_cells)
				r.summary = worst;
		}
	} // namespace

	LLTReport llt_report(const EmpiricalPMF &pmf, std::span<const ReportCell> cells,
	                     std::vector<std::string> key_names, const ReportPolicy &policy)
	{
		if (cells.empty())
			throw InvalidArgument("llt_report: empty cell selection");
		if (key_names.size() != pmf.arity)
			throw InvalidArgument("llt_report: key names do not match the table arity");
		if (pmf.trials == 0)
			throw InsufficientData("llt_report: no trials");
		LLTReport r;
		r.mode = to_string(pmf.kind);
		r.key_names = std::move(key_names);
		for (const auto &c : cells)
		{
			if (c.key.size() != pmf.arity)
				throw InvalidArgument("llt_report: cell key arity mismatch");
			ReportRow row;
			row.key = c.key;
			row.count = pmf.count(c.key);
			row.n = pmf.trials;
			row.estimate = static_cast<double>(row.count) / static_cast<double>(row.n);
			row.prediction = c.prediction;
			row.ratio = row.estimate / row.prediction;
			std::tie(row.ci_low, row.ci_high) = wilson_interval(row.count, row.n);
			row.t = c.t;
			row.in_summary = c.prediction * static_cast<double>(row.n) >= policy.min_expected &&
			                 inside_window(c.t, policy.delta);
			r.rows.push_back(std::move(row));
		}
		summarize(r);
		return r;
	}

	LLTReport llt_report(const ExactPMF &pmf, std::span<const ReportCell> cells, const ReportPolicy &policy)
	{
		if (cells.empty())
			throw InvalidArgument("llt_report: empty cell selection");
		LLTReport r;
		r.mode = "exact";
		r.key_names = {"k"};
		for (const auto &c : cells)
		{
			if (c.key.size() != 1)
				throw InvalidArgument("llt_report: exact cells are keyed by k alone");
			ReportRow row;
			row.key = c.key;
			row.estimate = pmf.mass(c.key[0]);
			row.prediction = c.prediction;
			row.ratio = row.estimate / row.prediction;
			row.ci_low = row.ci_high = row.estimate;
			row.t = c.t;
			row.in_summary = inside_window(c.t, policy.delta);
			r.rows.push_back(std::move(row));
		}
		summarize(r);
		return r;
	}

	void write_report_csv(std::ostream &os, const LLTReport &report)
	{
		std::vector<std::string> header = report.key_names;
		for (const char *h : {"count", "N", "estimate", "prediction", "ratio", "ci_low", "ci_high"})
			header.emplace_back(h);
		os << csv_line(header);
		for (const auto &row : report.rows)
		{
			std::vector<std::string> f;
			for (const auto k : row.key)
				f.push_back(std::to_string(k));
			f.push_back(std::to_string(row.count));
			f.push_back(std::to_string(row.n));
			for (const double x : {row.estimate, row.prediction, row.ratio, row.ci_low, row.ci_high})
				f.push_back(format_real(x));
			os << csv_line(f);
		}
	}

	void write_report_json(std::ostream &os, const LLTReport &report)
	{
		os << "{\"mode\": \"" << report.mode << "\", \"summary\": "
		   << (report.summary_cells ? format_real(report.summary) : std::string("null"))
		   << ", \"summary_cells\": " << report.summary_cells << ", \"rows\": [";
		for (std::size_t i = 0; i < report.rows.size(); ++i)
		{
			const auto &row = report.rows[i];
			os << (i ? ",\n  " : "\n  ") << "{";
			for (std::size_t j = 0; j < row.key.size(); ++j)
				os << "\"" << report.key_names[j] << "\": " << row.key[j] << ", ";
			os << "\"count\": " << row.count << ", \"N\": " << row.n << ", \"estimate\": " << format_real(row.estimate)
			   << ", \"prediction\": " << format_real(row.prediction) << ", \"ratio\": " << format_real(row.ratio)
			   << ", \"ci_low\": " << format_real(row.ci_low) << ", \"ci_high\": " << format_real(row.ci_high)
			   << ", \"in_summary\": " << (row.in_summary ? "true" : "false") << "}";
		}
		os << "\n]}\n";
	}
} // namespace lltlab
