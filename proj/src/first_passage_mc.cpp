#include "lltlab/first_passage_mc.hpp"

#include <chrono>
#include <exception>
#include <thread>

namespace lltlab
{
	namespace
	{
		struct ReplicaWork
		{
			const BranchSystem &system;
			const TargetScan &target;
			const FirstPassageOptions &options;
			Digit cap;
			bool marks;
		};

		EmpiricalPMF run_chunk(const ReplicaWork &w, std::uint64_t lo, std::uint64_t hi)
		{
			const auto &o = w.options;
			EmpiricalPMF pmf;
			pmf.kind = EstimatorKind::replica;
			pmf.arity = static_cast<std::size_t>(o.d) * (w.marks ? 2 : 1);

			const std::size_t m = w.target.span_length();
			const std::size_t origin = o.conditioned_start ? 1 : 0;
			const std::size_t positions = static_cast<std::size_t>(o.max_steps);
			std::vector<Digit> buffer(origin + positions + m - 1);
			EmpiricalPMF::Key key(pmf.arity);

			for (std::uint64_t r = lo; r < hi; ++r)
			{
				Philox4x32 rng(o.seed, o.substream_offset + r);
				if (o.conditioned_start)
					sample_conditioned_digits(w.system, w.target, rng, buffer);
				else
					sample_stationary_digits(w.system, rng, buffer);

				int found = 0;
				std::size_t last = 0; // 1-indexed position of the previous hit
				if (o.conditioned_start)
					last = 1;
				for (std::size_t i = origin; i < origin + positions && found < o.d; ++i)
				{
					if (!w.target.holds_at(buffer, i))
						continue;
					const std::size_t pos = i + 1;
					if (w.marks)
					{
						key[static_cast<std::size_t>(2 * found)] = static_cast<std::int64_t>(pos - last);
						const Digit a = buffer[i];
						key[static_cast<std::size_t>(2 * found + 1)] = a > w.cap ? -1 : static_cast<std::int64_t>(a);
					}
					else
						key[static_cast<std::size_t>(found)] = static_cast<std::int64_t>(pos - last);
					last = pos;
					++found;
				}
				if (found == o.d)
					pmf.add(key);
				else
					pmf.add_censored();
			}
			return pmf;
		}
	} // namespace

	FirstPassageResult estimate_first_passage(const BranchSystem &system, const TargetScan &target,
	                                          const FirstPassageOptions &options)
	{
		if (options.replicas < 1)
			throw InvalidArgument("estimate_first_passage: need at least one replica");
		if (options.d < 1)
			throw InvalidArgument("estimate_first_passage: d must be >= 1");
		if (options.max_steps < 1)
			throw InvalidArgument("estimate_first_passage: max_steps must be >= 1");
		if (options.workers < 1)
			throw InvalidArgument("estimate_first_passage: workers must be >= 1");

		const auto start = std::chrono::steady_clock::now();
		const bool marks = !target.is_word();
		const Digit cap = options.mark_cap ? options.mark_cap : (marks ? target.l() + 10000 : 0);
		const ReplicaWork work{system, target, options, cap, marks};

		const auto workers = static_cast<std::uint64_t>(options.workers);
		std::vector<EmpiricalPMF> parts(workers);
		std::vector<std::exception_ptr> errors(workers);
		std::vector<std::thread> threads;
		const std::uint64_t n = options.replicas;
		for (std::uint64_t t = 0; t < workers; ++t)
		{
			const std::uint64_t lo = n * t / workers, hi = n * (t + 1) / workers;
			auto job = [&, t, lo, hi] {
				try
				{
					parts[t] = run_chunk(work, lo, hi);
				}
				catch (...)
				{
					errors[t] = std::current_exception();
				}
			};
			if (workers == 1)
				job();
			else
				threads.emplace_back(job);
		}
		for (auto &th : threads)
			th.join();
		for (const auto &e : errors)
			if (e)
				std::rethrow_exception(e);

		FirstPassageResult result;
		result.pmf = std::move(parts[0]);
		for (std::uint64_t t = 1; t < workers; ++t)
			result.pmf.merge(parts[t]);
		result.censoring_flagged = result.pmf.censoring_fraction() > options.censoring_bound;
		result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		return result;
	}
} // namespace lltlab
