#pragma once

#include "coinweigh/analysis.hpp"
#include "coinweigh/model.hpp"
#include "coinweigh/rational.hpp"
#include "coinweigh/strategies.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace coinweigh {

struct DeltaStat
{
	std::uint64_t count = 0;
	std::uint64_t total = 0; ///< summed weighings

	Rational average() const
	{
		Rational q(static_cast<long>(total), static_cast<long>(count));
		q.canonicalize();
		return q;
	}
};

struct StatsRow
{
	int l = 0; ///< 0 when n is not a power of two
	std::size_t n = 0;
	Strategy strategy = Strategy::Proposed;
	std::uint64_t configs = 0;
	std::uint64_t total_weighings = 0;
	Rational average;
	int max = 0;
	std::vector<DeltaStat> per_delta; ///< indexed by delta, size n
	double runtime_seconds = 0;

	/// Populated in Verification::Full mode only.
	std::uint64_t failures = 0;
	std::string first_failure;

	/// Every field except runtime.
	bool same_result(const StatsRow& o) const;
};

enum class Verification {
	CountOnly,
	/// Record transcripts, re-verify every outcome against the dense oracle,
	/// compare the estimate and assert procedure preconditions.
	Full,
};

struct ExhaustiveOptions
{
	unsigned threads = 0; ///< 0 = default_threads()
	Verification mode = Verification::CountOnly;
};

/// Thread count from CW_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

/**
 Runs the strategy on every configuration of n coins.

 Proposed: n = 2^l with 1 <= l <= kEnumerationCap. Nested: any 2 <= n <= 2^kEnumerationCap.
 Larger sizes throw TooLarge; analysis-only functions cover them.
 */
StatsRow exhaustive_stats(std::size_t n, Strategy strategy, ExhaustiveOptions options = {});

struct DeltaComparison
{
	DeltaClass delta;
	Rational model;     ///< branch-model cost for this class
	Rational empirical; ///< conditional mean over the class
	std::uint64_t count;
};

struct CrossCheckReport
{
	int l = 0;
	Rational analytic_avg;
	Rational empirical_avg;
	bool avg_equal = false;

	Rational nested_closed_form;
	Rational nested_formula;
	Rational nested_dp;
	Rational nested_empirical;
	bool nested_equal = false;

	int predicted_max = 0;
	int proposed_max = 0;
	int nested_max = 0;
	bool max_equal = false;

	std::vector<DeltaComparison> per_delta;
	double runtime_seconds = 0;

	bool ok() const { return avg_equal && nested_equal && max_equal; }
	/// Number of delta classes whose model value differs from the empirical mean.
	std::size_t per_delta_mismatches() const;
	/// Empty when ok(); otherwise the failing values and the first differing delta.
	std::string mismatch_report() const;
};

/// Exact cross-check of analytic and exhaustive results; 1 <= l <= kEnumerationCap.
CrossCheckReport cross_check(int l, unsigned threads = 0);

nlohmann::json to_json(const CrossCheckReport& report);

struct FitResult
{
	double slope = 0;
	double intercept = 0;
	double max_residual = 0;
	std::size_t points = 0;
};

/// Least-squares line through the (l, value) pairs with l in [l_min, l_max].
/// Throws InvalidInput if l_max <= l_min or fewer than two distinct l remain.
FitResult fit_loglinear(int l_min, int l_max, std::span<const std::pair<int, double>> values);

/// Binary64 analytic averages for l in [l_min, l_max].
std::vector<std::pair<int, double>> analytic_series(Strategy strategy, int l_min, int l_max);

} // namespace coinweigh
