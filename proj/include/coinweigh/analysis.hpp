#pragma once

#include "coinweigh/model.hpp"
#include "coinweigh/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace coinweigh {

/// Largest exponent accepted by the binary64 evaluators.
inline constexpr int kFloatCap = 24;

enum class TableRecursion {
	/// Derived from the pair/cross procedures as executed; agrees with
	/// exhaustive simulation. Default everywhere.
	Procedure,
	/// The textbook off-diagonal recursion with 1/8 weights on
	/// T(i-2, j-1) and T(j-2, j-2). Kept for comparison; it does not match
	/// the executed procedure once both sets hold four or more coins.
	Printed,
};

/**
 Expected weighings of the pair procedure on two disjoint weight-1 sets of
 sizes 2^i and 2^j, for 0 <= i, j <= l. Stored as the upper triangle; at(i, j)
 is symmetric.
 */
class PairCostTable
{
public:
	PairCostTable(int l, TableRecursion recursion);

	int max_exponent() const { return l_; }
	const Rational& at(int i, int j) const;

private:
	int l_;
	std::vector<std::vector<Rational>> upper_; // upper_[i][j - i]
};

/// Throws InvalidSize for l < 1.
PairCostTable pair_cost_table(int l, TableRecursion recursion = TableRecursion::Procedure);

/// Branch probabilities of the first-weighing chain for one delta class.
struct BranchWeights
{
	int l;
	DeltaClass delta;
	/// n/2 - |delta - n/2|
	std::int64_t folded_delta;
	std::vector<Rational> q; ///< size l + 1, q[l] = 1: chain leaves into the pair procedure
	std::vector<Rational> p; ///< size l: chain continues on a half
	std::vector<Rational> m; ///< size l + 1, m[i] = q[i] * prod_{j<i} p[j]
};

/// Throws InvalidInput for delta >= 2^l, InvalidSize for l outside [1, 62].
BranchWeights branch_weights(int l, DeltaClass delta);

/// Branch-model expected cost for a delta class:
/// sum_{i<l} m[i] (T(l-i-1, l-i-1) + i + 1) + m[l] l.
Rational cost_given_delta(const PairCostTable& table, int l, DeltaClass delta);

/// Uniform-prior average of the proposed strategy, summed over delta classes
/// with P(delta) = 2(n - delta) / (n(n + 1)). Exact; l <= kEnumerationCap.
Rational proposed_average(int l, TableRecursion recursion = TableRecursion::Procedure);

/// Same quantity in binary64, grouping delta and n - delta. l <= kFloatCap.
double proposed_average_float(int l, TableRecursion recursion = TableRecursion::Procedure);

/// 2l - 1, the worst case of both strategies.
int worst_case_weighings(int l);

/// C(s - i, m - j) / C(s, m), or 0 when m - j is outside [0, s - i].
/// Requires s >= 2 and 1 <= m <= s - 1.
Rational split_weight(std::size_t s, std::size_t m, int i, int j);

enum class NestedCase {
	OneCoin,   ///< w = 1
	HeavyCoin, ///< w = 2, one coin of weight 2
	TwoCoins,  ///< w = 2, two coins of weight 1
	Mixed,     ///< w = 2, uniform over both kinds
};

/**
 Expected cost of the optimal nested strategy for every set size up to s_max,
 built bottom-up with the midpoint split floor(s/2). split_cost() evaluates
 the cost of weighing m coins first, followed by optimal play on the parts.
 */
class NestedTables
{
public:
	explicit NestedTables(std::size_t s_max);

	std::size_t max_size() const { return one_.size() - 1; }
	const Rational& optimal(NestedCase c, std::size_t s) const;
	/// 2 <= s <= max_size(), 1 <= m <= s - 1.
	Rational split_cost(NestedCase c, std::size_t s, std::size_t m) const;

private:
	std::vector<Rational> one_, heavy_, two_, mixed_;
};

NestedTables nested_tables(std::size_t s_max);

struct NestedClosedForm
{
	Rational one; ///< optimal nested cost for 2^i coins of total weight 1
	Rational two; ///< optimal nested cost for 2^i coins of total weight 2
};

/// (i, ((i - 1) 2^(i+1) + i + 2) / (2^i + 1)); i >= 0.
NestedClosedForm nested_closed_forms(int i);

/// (2n + 1)/(n + 1) log2 n - 2(n - 1)/(n + 1) at n = 2^l, exact.
Rational nested_average_formula(int l);
double nested_average_float(int l);

struct Bounds
{
	double worst_lb; ///< max{log2 n, log3 C(n,2)}
	double ave_lb;   ///< 2/(n+1) log2 n + (n-1)/(n+1) log3 C(n,2)
};

/// Counting bounds for n >= 2 coins.
Bounds lower_bounds(std::size_t n);

struct AsymptoticConstants
{
	double fit_slope = 1.365;
	double fit_intercept = -0.5;
	double nested_slope = 2.0;
	double nested_intercept = -2.0;
	double lb_slope;         ///< 2 / log2 3
	double saving_vs_nested; ///< 1 - fit_slope / nested_slope
	double excess_vs_lb;     ///< fit_slope / lb_slope - 1
};

AsymptoticConstants asymptotic_constants();

} // namespace coinweigh
