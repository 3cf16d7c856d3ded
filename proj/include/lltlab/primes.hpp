#pragma once

#include <cstdint>
#include <vector>

namespace lltlab
{
	/// Deterministic primality for all 64-bit integers: trial division below
	/// 2^16, Miller-Rabin with the first twelve prime bases above.
	bool is_prime(std::uint64_t n);

	/// Primes in [lo, hi) by segmented sieve.
	std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);
} // namespace lltlab
