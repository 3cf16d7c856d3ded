#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lltlab
{
	using Index = Eigen::Index;
	using Symbol = int;
	using Word = std::vector<Symbol>;
	using Digit = std::uint64_t;

	using VectorXd = Eigen::VectorXd;
	using MatrixXd = Eigen::MatrixXd;
	// Row-major so that `M * v` with M = P^T walks contiguous rows.
	using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

	constexpr double kExactTolerance = 1e-12;
	constexpr double kQuadratureTolerance = 1e-6;

	// Precondition or contract violation by the caller.
	class InvalidArgument : public std::invalid_argument
	{
	public:
		using std::invalid_argument::invalid_argument;
	};

	// Floating drift in an exact computation exceeded its budget.
	class NumericError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class UnderflowError : public NumericError
	{
	public:
		using NumericError::NumericError;
	};

	// Requested computation is larger than the configured resource budget.
	class BudgetExceeded : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class InsufficientData : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class SamplingError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	// Neumaier compensated accumulator.
	class CompensatedSum
	{
	public:
		void add(double x)
		{
			const double t = sum_ + x;
			if (std::abs(sum_) >= std::abs(x))
				comp_ += (sum_ - t) + x;
			else
				comp_ += (x - t) + sum_;
			sum_ = t;
		}
		CompensatedSum &operator+=(double x)
		{
			add(x);
			return *this;
		}
		double value() const { return sum_ + comp_; }

	private:
		double sum_ = 0.0;
		double comp_ = 0.0;
	};
} // namespace lltlab
