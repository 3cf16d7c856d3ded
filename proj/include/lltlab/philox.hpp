#pragma once

#include <array>
#include <cstdint>

namespace lltlab
{
	/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
	/// Key = 64-bit seed, counter = (64-bit position, 64-bit substream), so
	/// replicas keyed by substream never overlap.
	class Philox4x32
	{
	public:
		using Block = std::array<std::uint32_t, 4>;
		using Key = std::array<std::uint32_t, 2>;

		static Block bijection(Block ctr, Key key)
		{
			for (int round = 0; round < 10; ++round)
			{
				if (round > 0)
				{
					key[0] += 0x9E3779B9u;
					key[1] += 0xBB67AE85u;
				}
				const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
				const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
				ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
				       static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
			}
			return ctr;
		}

		Philox4x32(std::uint64_t seed, std::uint64_t substream)
		    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, substream_(substream)
		{
		}

		/// Next 64 random bits; two per counter value.
		std::uint64_t next_u64()
		{
			if (lane_ == 2)
			{
				block_ = bijection({static_cast<std::uint32_t>(position_), static_cast<std::uint32_t>(position_ >> 32),
				                    static_cast<std::uint32_t>(substream_), static_cast<std::uint32_t>(substream_ >> 32)},
				                   key_);
				++position_;
				lane_ = 0;
			}
			const std::uint64_t r = (std::uint64_t{block_[2 * lane_ + 1]} << 32) | block_[2 * lane_];
			++lane_;
			return r;
		}

		/// Uniform on [0, 1) with 53 random bits.
		double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

		std::uint64_t position() const { return position_; }

	private:
		Key key_;
		std::uint64_t substream_;
		std::uint64_t position_ = 0;
		Block block_{};
		int lane_ = 2;
	};
} // namespace lltlab
