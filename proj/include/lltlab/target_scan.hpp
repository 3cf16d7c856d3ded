#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lltlab/primes.hpp"
#include "lltlab/types.hpp"

namespace lltlab
{
	/// Target event read off a digit stream: {a >= l} (optionally with a prime),
	/// or a finite word occurring at the position.
	class TargetScan
	{
	public:
		static TargetScan threshold(Digit l, bool prime_variant = false);
		static TargetScan word(std::vector<Digit> w);

		bool is_word() const { return !word_.empty(); }
		Digit l() const { return l_; }
		bool prime_variant() const { return prime_; }
		const std::vector<Digit> &word_digits() const { return word_; }
		/// Digits consumed by one membership test.
		std::size_t span_length() const { return is_word() ? word_.size() : 1; }

		/// Digit predicate for threshold targets.
		bool accepts(Digit a) const { return a >= l_ && (!prime_ || is_prime(a)); }

		/// Whether the target holds at digits[pos..]. A word must fit entirely.
		bool holds_at(std::span<const Digit> digits, std::size_t pos) const
		{
			if (!is_word())
				return accepts(digits[pos]);
			if (pos + word_.size() > digits.size())
				return false;
			for (std::size_t i = 0; i < word_.size(); ++i)
				if (digits[pos + i] != word_[i])
					return false;
			return true;
		}

		std::string describe() const;

	private:
		Digit l_ = 0;
		bool prime_ = false;
		std::vector<Digit> word_;
	};

	inline TargetScan TargetScan::threshold(Digit l, bool prime_variant)
	{
		if (l < 2)
			throw InvalidArgument("TargetScan: threshold l must be >= 2");
		TargetScan t;
		t.l_ = l;
		t.prime_ = prime_variant;
		return t;
	}

	inline TargetScan TargetScan::word(std::vector<Digit> w)
	{
		if (w.empty())
			throw InvalidArgument("TargetScan: empty word");
		TargetScan t;
		t.word_ = std::move(w);
		return t;
	}

	inline std::string TargetScan::describe() const
	{
		if (!is_word())
			return std::string(prime_ ? "prime digit >= " : "digit >= ") + std::to_string(l_);
		std::string s = "word ";
		for (const Digit d : word_)
			s += std::to_string(d) + (word_.size() > 1 && d > 9 ? "," : "");
		return s;
	}
} // namespace lltlab
