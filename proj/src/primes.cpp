#include "lltlab/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lltlab
{
	namespace
	{
		using u64 = std::uint64_t;
		using u128 = unsigned __int128;

		u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

		u64 powmod(u64 base, u64 exp, u64 m)
		{
			u64 result = 1;
			base %= m;
			while (exp > 0)
			{
				if (exp & 1)
					result = mulmod(result, base, m);
				base = mulmod(base, base, m);
				exp >>= 1;
			}
			return result;
		}

		bool miller_rabin(u64 n)
		{
			u64 d = n - 1;
			int s = 0;
			while ((d & 1) == 0)
			{
				d >>= 1;
				++s;
			}
			constexpr std::array<u64, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
			for (const u64 a : bases)
			{
				u64 x = powmod(a, d, n);
				if (x == 1 || x == n - 1)
					continue;
				bool composite = true;
				for (int r = 1; r < s; ++r)
				{
					x = mulmod(x, x, n);
					if (x == n - 1)
					{
						composite = false;
						break;
					}
				}
				if (composite)
					return false;
			}
			return true;
		}
	} // namespace

	bool is_prime(std::uint64_t n)
	{
		if (n < 2)
			return false;
		if (n < 4)
			return true;
		if (n % 2 == 0)
			return false;
		if (n < (u64(1) << 16))
		{
			for (u64 f = 3; f * f <= n; f += 2)
				if (n % f == 0)
					return false;
			return true;
		}
		for (u64 f = 3; f < 200; f += 2)
			if (n % f == 0)
				return false;
		return miller_rabin(n);
	}

	std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi)
	{
		std::vector<std::uint64_t> out;
		if (hi <= lo || hi <= 2)
			return out;
		lo = std::max<u64>(lo, 2);
		const auto root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;

		std::vector<char> small(root + 1, 1);
		std::vector<u64> base;
		for (u64 i = 2; i <= root; ++i)
		{
			if (!small[i])
				continue;
			base.push_back(i);
			for (u64 j = i * i; j <= root; j += i)
				small[j] = 0;
		}

		constexpr u64 segment = u64(1) << 18;
		std::vector<char> mark(segment);
		for (u64 start = lo; start < hi; start += segment)
		{
			const u64 end = std::min(hi, start + segment);
			std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(end - start), 1);
			for (const u64 p : base)
			{
				if (p * p >= end)
					break;
				u64 first = std::max(p * p, (start + p - 1) / p * p);
				for (u64 j = first; j < end; j += p)
					mark[j - start] = 0;
			}
			for (u64 i = start; i < end; ++i)
				if (mark[i - start])
					out.push_back(i);
		}
		return out;
	}
} // namespace lltlab
