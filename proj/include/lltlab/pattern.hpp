#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lltlab/types.hpp"

namespace lltlab
{
	/// Word cylinder A = [w_0 ... w_{l-1}], optionally with a period p (1 <= p <= l)
	/// for which the word is p-periodic. The period identifies the instantly
	/// returning part A^bullet = A cap T^{-p} A and its complement A^circ.
	class PatternTarget
	{
	public:
		explicit PatternTarget(Word word, std::optional<int> period = std::nullopt);

		/// Parses a word written with decimal digit characters, e.g. "0110".
		static PatternTarget parse(std::string_view text, std::optional<int> period = std::nullopt);

		/// Word u repeated and truncated to length l, with period |u|.
		static PatternTarget periodic(const Word &unit, int length);

		const Word &word() const { return word_; }
		int length() const { return static_cast<int>(word_.size()); }
		std::optional<int> period() const { return period_; }

		/// Throws unless every symbol lies in [0, alphabet_size).
		void validate(int alphabet_size) const;

		/// The word followed by its periodic continuation of length p.
		Word periodic_extension() const;

		std::string to_string() const;

	private:
		Word word_;
		std::optional<int> period_;
	};

	/// Deterministic occurrence automaton (KMP). State s in [0, l] is the length
	/// of the longest suffix of the history that is a prefix of the word; s = l
	/// means a full match. Occurrences overlap: leaving state l follows the
	/// failure link.
	class PrefixAutomaton
	{
	public:
		PrefixAutomaton(Word word, int alphabet_size);

		int word_length() const { return static_cast<int>(word_.size()); }
		int alphabet_size() const { return alphabet_size_; }
		int state_count() const { return word_length() + 1; }
		const Word &word() const { return word_; }

		int next(int state, Symbol c) const { return table_(state, c); }

		/// failure()[i] = length of the longest proper border of w_0..w_i.
		const std::vector<int> &failure() const { return failure_; }

		/// Final state after reading `text` from the empty history.
		int run(std::span<const Symbol> text) const;

	private:
		Word word_;
		int alphabet_size_;
		std::vector<int> failure_;
		Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> table_;
	};

	PrefixAutomaton build_automaton(const PatternTarget &target, int alphabet_size);
} // namespace lltlab
