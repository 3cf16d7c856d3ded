#include "lltlab/pattern.hpp"

namespace lltlab
{
	PatternTarget::PatternTarget(Word word, std::optional<int> period) : word_(std::move(word)), period_(period)
	{
		if (word_.empty())
			throw InvalidArgument("PatternTarget: empty word");
		for (const Symbol c : word_)
			if (c < 0)
				throw InvalidArgument("PatternTarget: negative symbol");
		if (period_)
		{
			const int p = *period_;
			if (p < 1 || p > length())
				throw InvalidArgument("PatternTarget: period must lie in [1, word length]");
			for (int i = 0; i + p < length(); ++i)
				if (word_[static_cast<std::size_t>(i + p)] != word_[static_cast<std::size_t>(i)])
					throw InvalidArgument("PatternTarget: word is not " + std::to_string(p) + "-periodic");
		}
	}

	PatternTarget PatternTarget::parse(std::string_view text, std::optional<int> period)
	{
		Word w;
		w.reserve(text.size());
		for (const char ch : text)
		{
			if (ch < '0' || ch > '9')
				throw InvalidArgument("PatternTarget: word characters must be decimal digits");
			w.push_back(ch - '0');
		}
		return PatternTarget(std::move(w), period);
	}

	PatternTarget PatternTarget::periodic(const Word &unit, int length)
	{
		if (unit.empty() || length < static_cast<int>(unit.size()))
			throw InvalidArgument("PatternTarget::periodic: length shorter than the unit");
		Word w(static_cast<std::size_t>(length));
		for (std::size_t i = 0; i < w.size(); ++i)
			w[i] = unit[i % unit.size()];
		return PatternTarget(std::move(w), static_cast<int>(unit.size()));
	}

	void PatternTarget::validate(int alphabet_size) const
	{
		for (const Symbol c : word_)
			if (c >= alphabet_size)
				throw InvalidArgument("PatternTarget: symbol " + std::to_string(c) + " outside alphabet");
	}

	Word PatternTarget::periodic_extension() const
	{
		if (!period_)
			throw InvalidArgument("PatternTarget: no period hint");
		Word ext = word_;
		const int p = *period_;
		for (int i = length() - p; i < length(); ++i)
			ext.push_back(word_[static_cast<std::size_t>(i)]);
		return ext;
	}

	std::string PatternTarget::to_string() const
	{
		std::string s;
		for (const Symbol c : word_)
			s += c < 10 ? static_cast<char>('0' + c) : '?';
		return s;
	}

	PrefixAutomaton::PrefixAutomaton(Word word, int alphabet_size)
	    : word_(std::move(word)), alphabet_size_(alphabet_size)
	{
		if (word_.empty())
			throw InvalidArgument("PrefixAutomaton: empty word");
		if (alphabet_size_ < 1)
			throw InvalidArgument("PrefixAutomaton: empty alphabet");
		for (const Symbol c : word_)
			if (c < 0 || c >= alphabet_size_)
				throw InvalidArgument("PrefixAutomaton: symbol out of range");

		const int l = word_length();
		failure_.assign(static_cast<std::size_t>(l), 0);
		for (int i = 1, k = 0; i < l; ++i)
		{
			while (k > 0 && word_[static_cast<std::size_t>(i)] != word_[static_cast<std::size_t>(k)])
				k = failure_[static_cast<std::size_t>(k - 1)];
			if (word_[static_cast<std::size_t>(i)] == word_[static_cast<std::size_t>(k)])
				++k;
			failure_[static_cast<std::size_t>(i)] = k;
		}

		table_.resize(l + 1, alphabet_size_);
		for (int s = 0; s <= l; ++s)
			for (Symbol c = 0; c < alphabet_size_; ++c)
			{
				if (s < l && word_[static_cast<std::size_t>(s)] == c)
					table_(s, c) = s + 1;
				else if (s == 0)
					table_(s, c) = 0;
				else
					table_(s, c) = table_(failure_[static_cast<std::size_t>(s - 1)], c);
			}
	}

	int PrefixAutomaton::run(std::span<const Symbol> text) const
	{
		int s = 0;
		for (const Symbol c : text)
			s = next(s, c);
		return s;
	}

	PrefixAutomaton build_automaton(const PatternTarget &target, int alphabet_size)
	{
		target.validate(alphabet_size);
		return PrefixAutomaton(target.word(), alphabet_size);
	}
} // namespace lltlab
