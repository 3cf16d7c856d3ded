#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lltlab/philox.hpp"
#include "lltlab/target_scan.hpp"
#include "lltlab/types.hpp"

namespace lltlab
{
	/// Largest Gauss digit the sampler will emit.
	constexpr Digit kMaxGaussDigit = Digit{1} << 62;

	struct BranchStep
	{
		Digit digit;
		double next;
	};

	/// 2^u - 1, the inverse CDF of the Gauss density.
	double gauss_stationary_point(double u);
	/// p_k(y) = (1+y)/((k+y)(k+y+1))
	double gauss_branch_probability(Digit k, double y);
	/// C_K(y) = sum_{k <= K} p_k(y) = 1 - (1+y)/(K+1+y)
	double gauss_branch_cumulative(Digit K, double y);
	/// Smallest k with C_k(y) >= u, and v_k(y) = 1/(k+y).
	BranchStep gauss_branch_sample(double y, double u);
	/// Same law conditioned on k >= l: u is mapped onto [C_{l-1}(y), 1).
	BranchStep gauss_branch_sample_at_least(double y, double u, Digit l);

	/// bit = [u >= 1/2], next = (y + bit)/2
	BranchStep doubling_branch_sample(double y, double u);

	/// Piecewise invertible interval map with closed-form invariant density and
	/// inverse branches v_k.
	class BranchSystem
	{
	public:
		enum class Kind
		{
			gauss,
			doubling,
		};

		static BranchSystem gauss() { return BranchSystem(Kind::gauss); }
		static BranchSystem doubling() { return BranchSystem(Kind::doubling); }
		static BranchSystem from_name(const std::string &name);

		Kind kind() const { return kind_; }
		std::string name() const { return kind_ == Kind::gauss ? "gauss" : "doubling"; }
		Digit first_digit() const { return kind_ == Kind::gauss ? 1 : 0; }

		double density(double x) const;
		/// v_k(y)
		double inverse_branch(Digit k, double y) const;
		/// |v_k'(y)|
		double branch_derivative(Digit k, double y) const;
		/// p_k(y) = h(v_k(y)) |v_k'(y)| / h(y)
		double branch_probability(Digit k, double y) const;
		/// sum_{k <= K} p_k(y)
		double branch_cumulative(Digit K, double y) const;
		BranchStep sample_branch(double y, double u) const;
		/// Point with law h from a uniform u.
		double stationary_point(double u) const;

	private:
		explicit BranchSystem(Kind k) : kind_(k) {}
		Kind kind_;
	};

	/// Stationary forward digits a_1..a_N and the orbit point x they belong to.
	struct DigitStream
	{
		std::vector<Digit> digits;
		double anchor_point = 0.0;
		std::uint64_t seed = 0;
		std::uint64_t substream = 0;
	};

	/// Fills out[0..n) with a_1..a_n for a stationary start by running the
	/// backward chain n steps and writing it from the back. Returns x.
	double sample_stationary_digits(const BranchSystem &system, Philox4x32 &rng, std::span<Digit> out);

	/// As above, with x drawn from mu conditioned on the target holding at a_1.
	/// Gauss thresholds use an exact endpoint tilt, doubling words force the
	/// final backward steps, anything else falls back to rejection.
	double sample_conditioned_digits(const BranchSystem &system, const TargetScan &target, Philox4x32 &rng,
	                                 std::span<Digit> out);

	/// Stationary stream of length N. The backward chain runs across blocks of
	/// `block` steps; the output does not depend on the block size.
	DigitStream generate_stream(const BranchSystem &system, std::uint64_t seed, std::size_t length,
	                            std::size_t block = std::size_t{1} << 16, std::uint64_t substream = 0);

	DigitStream generate_conditioned_stream(const BranchSystem &system, const TargetScan &target,
	                                        std::uint64_t seed, std::size_t length, std::uint64_t substream = 0);

	/// Little-endian 64-bit digits.
	void write_stream_binary(std::ostream &os, const DigitStream &stream);
	std::vector<Digit> read_stream_binary(std::istream &is);
	/// One digit per line.
	void write_stream_text(std::ostream &os, const DigitStream &stream);
} // namespace lltlab
