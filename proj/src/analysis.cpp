#include "coinweigh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coinweigh {

namespace {

void check_exponent(int l, int cap)
{
	if (l < 1)
		throw InvalidSize("exponent l must be >= 1, got " + std::to_string(l));
	if (l > cap)
		throw TooLarge("exponent l = " + std::to_string(l) + " exceeds the limit " + std::to_string(cap));
}

template <class Num>
Num from_int(std::int64_t v)
{
	if constexpr (std::is_same_v<Num, Rational>)
		return make_rational(v);
	else
		return static_cast<Num>(v);
}

template <class Num>
Num ratio(std::int64_t a, std::int64_t b)
{
	if constexpr (std::is_same_v<Num, Rational>)
		return make_rational(a, b);
	else
		return static_cast<Num>(a) / static_cast<Num>(b);
}

/// upper[i][k - i] = T(i, k), filled column by column so every reference
/// (previous column, or a diagonal two columns back) is already known.
template <class Num>
std::vector<std::vector<Num>> build_pair_costs(int l, TableRecursion recursion)
{
	std::vector<std::vector<Num>> upper(l + 1);
	for (int i = 0; i <= l; ++i)
		upper[i].resize(l + 1 - i);
	auto T = [&](int i, int k) -> const Num& {
		if (i > k)
			std::swap(i, k);
		return upper[i][k - i];
	};
	const Num three_quarters = ratio<Num>(3, 4);
	const Num quarter = ratio<Num>(1, 4);
	const Num eighth = ratio<Num>(1, 8);
	const Num three_halves = ratio<Num>(3, 2);

	for (int k = 0; k <= l; ++k) {
		for (int i = 0; i <= k; ++i) {
			Num v;
			if (i == 0)
				v = from_int<Num>(k);
			else if (i == 1 && k == 1)
				v = three_halves;
			else if (recursion == TableRecursion::Procedure)
				v = three_quarters * T(i - 1, k - 1) + quarter * T(i - 1, k - 2) + three_halves;
			else if (i == 1)
				v = from_int<Num>(k) + quarter;
			else if (i == k)
				v = three_quarters * T(i - 1, i - 1) + quarter * T(i - 2, i - 1) + three_halves;
			else
				v = three_quarters * T(i - 1, k - 1) + eighth * T(i - 2, k - 1) + eighth * T(k - 2, k - 2) +
				    three_halves;
			upper[i][k - i] = v;
		}
	}
	return upper;
}

/// Chain probabilities for one folded delta. Entries past a vanishing p are
/// still filled; m stays consistent because the product carries the zero.
template <class Num>
void chain_weights(int l, std::int64_t folded, std::vector<Num>& q, std::vector<Num>& p, std::vector<Num>& m)
{
	const std::int64_t half = std::int64_t{1} << (l - 1);
	q.assign(l + 1, from_int<Num>(0));
	p.assign(l, from_int<Num>(0));
	m.assign(l + 1, from_int<Num>(0));

	q[0] = folded < half ? ratio<Num>(folded, half) : from_int<Num>(1);
	p[0] = folded < half ? ratio<Num>(half - folded, half) : from_int<Num>(0);
	for (int i = 1; i < l; ++i) {
		const std::int64_t limit = std::int64_t{1} << (l - i - 1);
		const std::int64_t scaled_prev = (std::int64_t{1} << (i - 1)) * folded;
		if (folded < limit) {
			q[i] = ratio<Num>(scaled_prev, half - scaled_prev);
			p[i] = ratio<Num>(half - 2 * scaled_prev, half - scaled_prev);
		} else {
			q[i] = from_int<Num>(1);
		}
	}
	q[l] = from_int<Num>(1);

	Num prefix = from_int<Num>(1);
	for (int i = 0; i <= l; ++i) {
		m[i] = q[i] * prefix;
		if (i < l)
			prefix *= p[i];
	}
}

std::int64_t fold_delta(int l, DeltaClass delta)
{
	const std::int64_t n = std::int64_t{1} << l;
	if (delta >= static_cast<DeltaClass>(n))
		throw InvalidInput("delta " + std::to_string(delta) + " outside [0, n-1] for n = " + std::to_string(n));
	const std::int64_t d = static_cast<std::int64_t>(delta);
	return n / 2 - std::abs(d - n / 2);
}

template <class Num>
Num chain_cost(int l, const std::vector<Num>& m, const std::vector<Num>& diagonal)
{
	Num total = m[l] * from_int<Num>(l);
	for (int i = 0; i < l; ++i)
		total += m[i] * (diagonal[l - i - 1] + from_int<Num>(i + 1));
	return total;
}

} // namespace

PairCostTable::PairCostTable(int l, TableRecursion recursion)
    : l_(l), upper_(build_pair_costs<Rational>(l, recursion))
{}

const Rational& PairCostTable::at(int i, int j) const
{
	if (i < 0 || j < 0 || i > l_ || j > l_)
		throw InvalidInput("pair cost index out of range");
	if (i > j)
		std::swap(i, j);
	return upper_[i][j - i];
}

PairCostTable pair_cost_table(int l, TableRecursion recursion)
{
	check_exponent(l, 62);
	return PairCostTable(l, recursion);
}

BranchWeights branch_weights(int l, DeltaClass delta)
{
	check_exponent(l, 62);
	BranchWeights bw{l, delta, fold_delta(l, delta), {}, {}, {}};
	chain_weights<Rational>(l, bw.folded_delta, bw.q, bw.p, bw.m);
	return bw;
}

Rational cost_given_delta(const PairCostTable& table, int l, DeltaClass delta)
{
	check_exponent(l, table.max_exponent());
	std::vector<Rational> q, p, m;
	chain_weights<Rational>(l, fold_delta(l, delta), q, p, m);
	std::vector<Rational> diagonal(l);
	for (int k = 0; k < l; ++k)
		diagonal[k] = table.at(k, k);
	return chain_cost(l, m, diagonal);
}

Rational proposed_average(int l, TableRecursion recursion)
{
	check_exponent(l, kEnumerationCap);
	const auto table = pair_cost_table(l, recursion);
	std::vector<Rational> diagonal(l);
	for (int k = 0; k < l; ++k)
		diagonal[k] = table.at(k, k);

	const std::int64_t n = std::int64_t{1} << l;
	std::vector<Rational> q, p, m;
	Rational total = 0;
	for (std::int64_t delta = 0; delta < n; ++delta) {
		chain_weights<Rational>(l, fold_delta(l, static_cast<DeltaClass>(delta)), q, p, m);
		total += make_rational(2 * (n - delta), n * (n + 1)) * chain_cost(l, m, diagonal);
	}
	return total;
}

double proposed_average_float(int l, TableRecursion recursion)
{
	check_exponent(l, kFloatCap);
	const auto upper = build_pair_costs<double>(l, recursion);
	std::vector<double> diagonal(l);
	for (int k = 0; k < l; ++k)
		diagonal[k] = upper[k][0];

	// Delta and n - delta share a folded value; each fold below n/2 carries
	// probability 2/(n+1), the midpoint 1/(n+1).
	const std::int64_t n = std::int64_t{1} << l;
	std::vector<double> q, p, m;
	double total = 0.0;
	for (std::int64_t folded = 0; folded <= n / 2; ++folded) {
		chain_weights<double>(l, folded, q, p, m);
		total += (folded == n / 2 ? 1.0 : 2.0) * chain_cost(l, m, diagonal);
	}
	return total / static_cast<double>(n + 1);
}

int worst_case_weighings(int l)
{
	check_exponent(l, 62);
	return 2 * l - 1;
}

Rational split_weight(std::size_t s, std::size_t m, int i, int j)
{
	if (s < 2 || m < 1 || m >= s)
		throw InvalidInput("split weight needs s >= 2 and 1 <= m <= s - 1");
	const auto top = static_cast<std::int64_t>(m) - j;
	const auto pool = static_cast<std::int64_t>(s) - i;
	if (top < 0 || top > pool)
		return 0;
	mpz_class num, den;
	mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(pool), static_cast<unsigned long>(top));
	mpz_bin_uiui(den.get_mpz_t(), s, m);
	Rational r(num, den);
	r.canonicalize();
	return r;
}

NestedTables::NestedTables(std::size_t s_max)
{
	if (s_max < 2)
		throw InvalidSize("nested tables need s_max >= 2");
	one_.assign(s_max + 1, 0);
	heavy_.assign(s_max + 1, 0);
	two_.assign(s_max + 1, 0);
	mixed_.assign(s_max + 1, 0);
	for (std::size_t s = 2; s <= s_max; ++s) {
		const std::size_t m = s / 2;
		one_[s] = split_cost(NestedCase::OneCoin, s, m);
		heavy_[s] = split_cost(NestedCase::HeavyCoin, s, m);
		two_[s] = split_cost(NestedCase::TwoCoins, s, m);
		mixed_[s] = split_cost(NestedCase::Mixed, s, m);
	}
}

const Rational& NestedTables::optimal(NestedCase c, std::size_t s) const
{
	if (s < 1 || s > max_size())
		throw InvalidInput("set size outside the table");
	switch (c) {
	case NestedCase::OneCoin: return one_[s];
	case NestedCase::HeavyCoin: return heavy_[s];
	case NestedCase::TwoCoins: return two_[s];
	case NestedCase::Mixed: break;
	}
	return mixed_[s];
}

Rational NestedTables::split_cost(NestedCase c, std::size_t s, std::size_t m) const
{
	if (s > max_size())
		throw InvalidInput("set size outside the table");
	const std::size_t rest = s - m;
	switch (c) {
	case NestedCase::OneCoin:
		return split_weight(s, m, 1, 0) * (one_[rest] + 1) + split_weight(s, m, 1, 1) * (one_[m] + 1);
	case NestedCase::HeavyCoin:
		return split_weight(s, m, 1, 0) * (heavy_[rest] + 1) + split_weight(s, m, 1, 1) * (heavy_[m] + 1);
	case NestedCase::TwoCoins:
		return split_weight(s, m, 2, 0) * (two_[rest] + 1) + split_weight(s, m, 2, 2) * (two_[m] + 1) +
		       2 * split_weight(s, m, 2, 1) * (one_[m] + one_[rest] + 1);
	case NestedCase::Mixed: break;
	}
	const auto denom = static_cast<std::int64_t>(s + 1);
	return make_rational(2, denom) * split_cost(NestedCase::HeavyCoin, s, m) +
	       make_rational(static_cast<std::int64_t>(s - 1), denom) * split_cost(NestedCase::TwoCoins, s, m);
}

NestedTables nested_tables(std::size_t s_max)
{
	return NestedTables(s_max);
}

NestedClosedForm nested_closed_forms(int i)
{
	if (i < 0)
		throw InvalidInput("exponent must be >= 0");
	mpz_class pow2 = 1;
	pow2 <<= i;
	mpz_class num = mpz_class(i - 1) * pow2 * 2 + i + 2;
	mpz_class den = pow2 + 1;
	Rational two(num, den);
	two.canonicalize();
	return {Rational(i), two};
}

Rational nested_average_formula(int l)
{
	check_exponent(l, 62);
	mpz_class n = 1;
	n <<= l;
	Rational lead(2 * n + 1, n + 1);
	Rational tail(2 * (n - 1), n + 1);
	lead.canonicalize();
	tail.canonicalize();
	return lead * l - tail;
}

double nested_average_float(int l)
{
	check_exponent(l, 62);
	const double n = std::ldexp(1.0, l);
	return (2 * n + 1) / (n + 1) * l - 2 * (n - 1) / (n + 1);
}

Bounds lower_bounds(std::size_t n)
{
	if (n < 2)
		throw InvalidSize("lower bounds need n >= 2");
	const double nd = static_cast<double>(n);
	const double log2n = std::log2(nd);
	const double log3_pairs = std::log(nd * (nd - 1) / 2) / std::log(3.0);
	return {std::max(log2n, log3_pairs), 2 / (nd + 1) * log2n + (nd - 1) / (nd + 1) * log3_pairs};
}

AsymptoticConstants asymptotic_constants()
{
	AsymptoticConstants c;
	c.lb_slope = 2.0 / std::log2(3.0);
	c.saving_vs_nested = 1.0 - c.fit_slope / c.nested_slope;
	c.excess_vs_lb = c.fit_slope / c.lb_slope - 1.0;
	return c;
}

} // namespace coinweigh
