#include <istream>
#include <ostream>

#include "lltlab/branch_systems.hpp"

namespace lltlab
{
	namespace
	{
		// Backward steps written from out[hi-1] down to out[lo].
		double run_backward(const BranchSystem &system, Philox4x32 &rng, double y, std::span<Digit> out,
		                    std::size_t lo, std::size_t hi)
		{
			if (system.kind() == BranchSystem::Kind::gauss)
				for (std::size_t i = hi; i-- > lo;)
				{
					const BranchStep s = gauss_branch_sample(y, rng.uniform());
					out[i] = s.digit;
					y = s.next;
				}
			else
				for (std::size_t i = hi; i-- > lo;)
				{
					const BranchStep s = doubling_branch_sample(y, rng.uniform());
					out[i] = s.digit;
					y = s.next;
				}
			return y;
		}

		constexpr int kMaxRejections = 1 << 24;
	} // namespace

	double sample_stationary_digits(const BranchSystem &system, Philox4x32 &rng, std::span<Digit> out)
	{
		const double y = system.stationary_point(rng.uniform());
		return run_backward(system, rng, y, out, 0, out.size());
	}

	double sample_conditioned_digits(const BranchSystem &system, const TargetScan &target, Philox4x32 &rng,
	                                 std::span<Digit> out)
	{
		const std::size_t n = out.size();
		const std::size_t m = target.span_length();
		if (n < m)
			throw InvalidArgument("sample_conditioned_digits: stream shorter than the target");

		for (int attempt = 0; attempt < kMaxRejections; ++attempt)
		{
			if (system.kind() == BranchSystem::Kind::gauss && !target.is_word())
			{
				// Conditioning a_1 >= l tilts the law of the point before the last
				// backward step by P(k >= l | y) = (1+y)/(l+y), maximal at y = 1.
				const double l = static_cast<double>(target.l());
				double y = system.stationary_point(rng.uniform());
				y = run_backward(system, rng, y, out, 1, n);
				const double accept = ((1.0 + y) / (l + y)) / (2.0 / (l + 1.0));
				if (rng.uniform() >= accept)
					continue;
				const BranchStep s = gauss_branch_sample_at_least(y, rng.uniform(), target.l());
				out[0] = s.digit;
				if (!target.accepts(s.digit))
					continue; // prime variant: restrict further by rejection
				return s.next;
			}
			if (system.kind() == BranchSystem::Kind::doubling && target.is_word())
			{
				// i.i.d. fair bits: the first m digits are simply set
				double y = system.stationary_point(rng.uniform());
				y = run_backward(system, rng, y, out, m, n);
				const auto &w = target.word_digits();
				for (std::size_t i = m; i-- > 0;)
				{
					if (w[i] > 1)
						throw InvalidArgument("sample_conditioned_digits: doubling words are binary");
					out[i] = w[i];
					y = system.inverse_branch(w[i], y);
				}
				return y;
			}
			const double y = sample_stationary_digits(system, rng, out);
			if (target.holds_at(out, 0))
				return y;
		}
		throw SamplingError("sample_conditioned_digits: rejection sampler exhausted its attempt budget");
	}

	DigitStream generate_stream(const BranchSystem &system, std::uint64_t seed, std::size_t length,
	                            std::size_t block, std::uint64_t substream)
	{
		if (length < 1)
			throw InvalidArgument("generate_stream: length must be >= 1");
		if (block < 1)
			throw InvalidArgument("generate_stream: block length must be >= 1");
		DigitStream stream;
		stream.seed = seed;
		stream.substream = substream;
		stream.digits.resize(length);
		Philox4x32 rng(seed, substream);
		double y = system.stationary_point(rng.uniform());
		// Blocks are generated back to front; reading them in reverse order of
		// generation, each reversed, gives the forward stream.
		std::span<Digit> out(stream.digits);
		for (std::size_t hi = length; hi > 0;)
		{
			const std::size_t lo = hi > block ? hi - block : 0;
			y = run_backward(system, rng, y, out, lo, hi);
			hi = lo;
		}
		stream.anchor_point = y;
		return stream;
	}

	DigitStream generate_conditioned_stream(const BranchSystem &system, const TargetScan &target,
	                                        std::uint64_t seed, std::size_t length, std::uint64_t substream)
	{
		DigitStream stream;
		stream.seed = seed;
		stream.substream = substream;
		stream.digits.resize(length);
		Philox4x32 rng(seed, substream);
		stream.anchor_point = sample_conditioned_digits(system, target, rng, stream.digits);
		return stream;
	}

	void write_stream_binary(std::ostream &os, const DigitStream &stream)
	{
		for (const Digit d : stream.digits)
		{
			char bytes[8];
			for (int i = 0; i < 8; ++i)
				bytes[i] = static_cast<char>((d >> (8 * i)) & 0xff);
			os.write(bytes, 8);
		}
	}

	std::vector<Digit> read_stream_binary(std::istream &is)
	{
		std::vector<Digit> digits;
		char bytes[8];
		while (is.read(bytes, 8))
		{
			Digit d = 0;
			for (int i = 0; i < 8; ++i)
				d |= static_cast<Digit>(static_cast<unsigned char>(bytes[i])) << (8 * i);
			digits.push_back(d);
		}
		if (is.gcount() != 0)
			throw InvalidArgument("read_stream_binary: trailing partial record");
		return digits;
	}

	void write_stream_text(std::ostream &os, const DigitStream &stream)
	{
		for (const Digit d : stream.digits)
			os << d << '\n';
	}
} // namespace lltlab
