#include <random>

#include "doctest.h"
#include "lltlab/pattern.hpp"

using namespace lltlab;

TEST_CASE("failure function of aba")
{
	const PrefixAutomaton a({0, 1, 0}, 2);
	CHECK(a.failure() == std::vector<int>{0, 0, 1});
	CHECK(a.state_count() == 4);
}

TEST_CASE("single-symbol word")
{
	const PrefixAutomaton a({1}, 2);
	CHECK(a.state_count() == 2);
	for (int s = 0; s < 2; ++s)
	{
		CHECK(a.next(s, 1) == 1);
		CHECK(a.next(s, 0) == 0);
	}
}

TEST_CASE("aa overlaps from the full-match state")
{
	const PrefixAutomaton a({0, 0}, 2);
	CHECK(a.next(2, 0) == 2);
	CHECK(a.next(2, 1) == 0);
}

TEST_CASE("construction errors")
{
	CHECK_THROWS_AS(PrefixAutomaton({}, 2), InvalidArgument);
	CHECK_THROWS_AS(PrefixAutomaton({0, 2}, 2), InvalidArgument);
	CHECK_THROWS_AS(build_automaton(PatternTarget::parse("012"), 2), InvalidArgument);
	CHECK_THROWS_AS(PatternTarget::parse(""), InvalidArgument);
	CHECK_THROWS_AS(PatternTarget::parse("0a"), InvalidArgument);
}

TEST_CASE("period hints")
{
	CHECK_NOTHROW(PatternTarget::parse("0101", 2));
	CHECK_THROWS_AS(PatternTarget::parse("0110", 2), InvalidArgument);
	CHECK_THROWS_AS(PatternTarget::parse("01", 3), InvalidArgument);
	CHECK_THROWS_AS(PatternTarget::parse("01", 0), InvalidArgument);
	const auto t = PatternTarget::periodic({0, 1}, 5);
	CHECK(t.to_string() == "01010");
	CHECK(t.period() == 2);
	CHECK(t.periodic_extension() == Word{0, 1, 0, 1, 0, 1, 0});
	CHECK_THROWS_AS(PatternTarget::parse("01").periodic_extension(), InvalidArgument);
}

// Automaton run vs naive suffix test, on random words and texts.
TEST_CASE("automaton recognizes exactly the occurrence positions")
{
	std::mt19937_64 gen(3);
	for (int alphabet : {2, 3})
		for (int trial = 0; trial < 300; ++trial)
		{
			std::uniform_int_distribution<int> sym(0, alphabet - 1), len(1, 7);
			Word w(static_cast<std::size_t>(len(gen)));
			for (auto &c : w)
				c = sym(gen);
			const PrefixAutomaton a(w, alphabet);
			// KMP monotonicity
			for (int s = 0; s < a.state_count(); ++s)
				for (int c = 0; c < alphabet; ++c)
					CHECK(a.next(s, c) <= std::min(s + 1, a.word_length()));
			Word text(200);
			for (auto &c : text)
				c = sym(gen);
			int s = 0;
			for (std::size_t n = 0; n < text.size(); ++n)
			{
				s = a.next(s, text[n]);
				const bool match = n + 1 >= w.size() && std::equal(w.begin(), w.end(), text.begin() + (n + 1 - w.size()));
				CHECK((s == a.word_length()) == match);
			}
		}
}

TEST_CASE("state is the longest suffix that is a prefix")
{
	const Word w{0, 1, 0, 0, 1, 0, 1};
	const PrefixAutomaton a(w, 2);
	std::mt19937_64 gen(5);
	std::uniform_int_distribution<int> bit(0, 1);
	Word text;
	for (int n = 0; n < 500; ++n)
	{
		text.push_back(bit(gen));
		const int s = a.run(text);
		int best = 0;
		for (int k = 1; k <= static_cast<int>(w.size()) && k <= static_cast<int>(text.size()); ++k)
			if (std::equal(w.begin(), w.begin() + k, text.end() - k))
				best = k;
		CHECK(s == best);
	}
}
