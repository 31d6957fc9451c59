#include "coinweigh/analysis.hpp"
#include "coinweigh/strategies.hpp"
#include "coinweigh/verify.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <numeric>

using namespace coinweigh;

namespace {

Rational q(long num, long den = 1)
{
	return make_rational(num, den);
}

/// Mean weighings of the pair procedure over every placement of one light
/// coin in each of two adjacent sets of sizes 2^i and 2^j.
Rational simulate_pair(int i, int j)
{
	const std::size_t na = std::size_t{1} << i, nb = std::size_t{1} << j;
	std::vector<CoinIndex> a(na), b(nb);
	std::iota(a.begin(), a.end(), CoinIndex{1});
	std::iota(b.begin(), b.end(), static_cast<CoinIndex>(na + 1));
	long total = 0;
	for (CoinIndex x : a)
		for (CoinIndex y : b)
			total += static_cast<long>(run_pair_procedure(Configuration::pair(na + nb, x, y), a, b).size());
	Rational r(total, static_cast<long>(na * nb));
	r.canonicalize();
	return r;
}

/// Fraction of m-subsets of an s-set that contain exactly j of i marked items,
/// namely the first j of them.
Rational count_split(unsigned s, unsigned m, unsigned i, unsigned j)
{
	const unsigned marked = (1u << i) - 1, wanted = (1u << j) - 1;
	long hits = 0, all = 0;
	for (unsigned mask = 0; mask < (1u << s); ++mask) {
		if (static_cast<unsigned>(std::popcount(mask)) != m)
			continue;
		++all;
		hits += (mask & marked) == wanted;
	}
	Rational r(hits, all);
	r.canonicalize();
	return r;
}

} // namespace

TEST_CASE("pair cost table values")
{
	const auto t = pair_cost_table(4);
	CHECK(t.at(0, 0) == 0);
	CHECK(t.at(0, 3) == 3);
	CHECK(t.at(1, 1) == q(3, 2));
	CHECK(t.at(1, 3) == q(13, 4));
	CHECK(t.at(2, 2) == q(23, 8));
	CHECK(t.at(2, 3) == q(57, 16));
	for (int i = 0; i <= 4; ++i)
		for (int j = 0; j <= 4; ++j) {
			CHECK(t.at(i, j) == t.at(j, i));
			CHECK(t.at(i, j) >= 0);
		}
	CHECK_THROWS_AS(pair_cost_table(0), InvalidSize);
	CHECK_THROWS(t.at(0, 5));
}

TEST_CASE("pair cost table matches simulation of the pair procedure")
{
	const auto t = pair_cost_table(6);
	for (int i = 0; i <= 6; ++i)
		for (int j = i; j <= 6; ++j) {
			CAPTURE(i);
			CAPTURE(j);
			CHECK(t.at(i, j) == simulate_pair(i, j));
		}
}

TEST_CASE("textbook recursion agrees only on the small corner")
{
	const auto procedure = pair_cost_table(5);
	const auto printed = pair_cost_table(5, TableRecursion::Printed);
	for (int j = 0; j <= 5; ++j) {
		CHECK(printed.at(0, j) == procedure.at(0, j));
		CHECK(printed.at(1, j) == procedure.at(1, j));
	}
	CHECK(printed.at(2, 2) == procedure.at(2, 2));
	CHECK(printed.at(2, 3) == q(29, 8));
	CHECK(printed.at(2, 3) != simulate_pair(2, 3));
}

TEST_CASE("branch weights at four coins")
{
	auto b0 = branch_weights(2, 0);
	CHECK(b0.m == std::vector<Rational>{0, 0, 1});
	auto b1 = branch_weights(2, 1);
	CHECK(b1.m == std::vector<Rational>{q(1, 2), q(1, 2), 0});
	auto b2 = branch_weights(2, 2);
	CHECK(b2.m == std::vector<Rational>{1, 0, 0});
	CHECK(branch_weights(2, 3).folded_delta == 1);

	CHECK_THROWS_AS(branch_weights(2, 4), InvalidInput);
	CHECK_THROWS_AS(branch_weights(0, 0), InvalidSize);
}

TEST_CASE("branch weights form a probability vector")
{
	for (int l = 1; l <= 8; ++l) {
		const DeltaClass n = DeltaClass{1} << l;
		for (DeltaClass d = 0; d < n; ++d) {
			auto b = branch_weights(l, d);
			Rational sum = 0;
			for (const auto& m : b.m) {
				CHECK(m >= 0);
				sum += m;
			}
			CHECK(sum == 1);
		}
	}
}

TEST_CASE("cost per delta class and averages")
{
	const auto t = pair_cost_table(2);
	CHECK(cost_given_delta(t, 2, 0) == 2);
	CHECK(cost_given_delta(t, 2, 1) == q(9, 4));
	CHECK(cost_given_delta(t, 2, 2) == q(5, 2));
	CHECK(cost_given_delta(t, 2, 3) == q(9, 4));

	CHECK(proposed_average(1) == 1);
	CHECK(proposed_average(2) == q(11, 5));
	CHECK(proposed_average(3) == q(7, 2));
	CHECK(proposed_average(4) == q(329, 68));
	CHECK_THROWS_AS(proposed_average(13), TooLarge);
	CHECK_THROWS_AS(proposed_average_float(25), TooLarge);
}

TEST_CASE("exact and binary64 averages agree")
{
	for (int l = 1; l <= kEnumerationCap; ++l) {
		CAPTURE(l);
		CHECK(proposed_average_float(l) == doctest::Approx(to_double(proposed_average(l))).epsilon(1e-12));
		CHECK(proposed_average_float(l, TableRecursion::Printed) ==
		      doctest::Approx(to_double(proposed_average(l, TableRecursion::Printed))).epsilon(1e-12));
	}
	CHECK(proposed_average_float(12) == doctest::Approx(15.5547).epsilon(1e-5));
	CHECK(proposed_average_float(20) == doctest::Approx(26.222216).epsilon(1e-7));
}

TEST_CASE("worst case")
{
	CHECK(worst_case_weighings(1) == 1);
	CHECK(worst_case_weighings(3) == 5);
	CHECK(worst_case_weighings(10) == 19);
}

TEST_CASE("split weights")
{
	CHECK(split_weight(4, 2, 1, 0) == q(1, 2));
	CHECK(split_weight(4, 2, 2, 1) == q(1, 3));
	CHECK(split_weight(3, 1, 2, 2) == 0);
	for (unsigned s = 2; s <= 10; ++s)
		for (unsigned m = 1; m < s; ++m)
			for (unsigned i = 0; i <= 2 && i <= s; ++i)
				for (unsigned j = 0; j <= i; ++j)
					CHECK(split_weight(s, m, static_cast<int>(i), static_cast<int>(j)) == count_split(s, m, i, j));
}

TEST_CASE("nested tables")
{
	const auto t = nested_tables(256);
	CHECK(t.max_size() == 256);
	CHECK(t.optimal(NestedCase::OneCoin, 1) == 0);
	CHECK(t.optimal(NestedCase::HeavyCoin, 2) == 1);
	CHECK(t.optimal(NestedCase::TwoCoins, 2) == 1);
	CHECK(t.optimal(NestedCase::OneCoin, 3) == q(5, 3));
	CHECK(t.optimal(NestedCase::Mixed, 4) == q(12, 5));

	for (std::size_t s = 2; s <= 256; ++s) {
		CAPTURE(s);
		for (auto c : {NestedCase::OneCoin, NestedCase::HeavyCoin, NestedCase::TwoCoins, NestedCase::Mixed}) {
			CHECK(t.optimal(c, s) >= t.optimal(c, s - 1));
			CHECK(t.optimal(c, s) == t.split_cost(c, s, s / 2));
			for (std::size_t m = 1; m < s; ++m)
				CHECK(t.split_cost(c, s, m) == t.split_cost(c, s, s - m));
		}
	}
	for (std::size_t q2 = 2; q2 <= 256; q2 *= 2)
		CHECK(t.optimal(NestedCase::OneCoin, q2) == t.optimal(NestedCase::OneCoin, q2 / 2) + 1);
}

TEST_CASE("midpoint split is cheapest for a single weighted coin")
{
	const auto t = nested_tables(256);
	for (std::size_t s = 2; s <= 256; ++s)
		for (auto c : {NestedCase::OneCoin, NestedCase::HeavyCoin})
			for (std::size_t m = 1; m < s; ++m)
				CHECK(t.optimal(c, s) <= t.split_cost(c, s, m));
}

TEST_CASE("midpoint split with two light coins")
{
	const auto t = nested_tables(256);
	const auto midpoint_is_min = [&](NestedCase c, std::size_t s) {
		for (std::size_t m = 1; m < s; ++m)
			if (t.split_cost(c, s, m) < t.optimal(c, s))
				return false;
		return true;
	};
	// Cheapest at 2^k and 2^k +- 1 only.
	std::size_t holds = 0;
	for (std::size_t s = 2; s <= 256; ++s) {
		const bool near_power = is_power_of_two(s) || is_power_of_two(s - 1) || is_power_of_two(s + 1);
		CAPTURE(s);
		CHECK(midpoint_is_min(NestedCase::TwoCoins, s) == near_power);
		CHECK(midpoint_is_min(NestedCase::Mixed, s) == near_power);
		holds += near_power;
	}
	CHECK(holds == 21);

	CHECK(t.optimal(NestedCase::TwoCoins, 6) == q(19, 5));
	CHECK(t.split_cost(NestedCase::TwoCoins, 6, 2) == q(56, 15));
	CHECK(t.optimal(NestedCase::Mixed, 6) == q(73, 21));
	CHECK(t.split_cost(NestedCase::Mixed, 6, 2) == q(24, 7));
}

TEST_CASE("nested one-coin table steps")
{
	const auto t = nested_tables(256);
	for (std::size_t s = 2; s <= 256; ++s) {
		CAPTURE(s);
		const long step = 2L << std::bit_width(s - 1) >> 1; // 2^(floor(log2(s - 1)) + 1)
		CHECK(t.optimal(NestedCase::OneCoin, s) - t.optimal(NestedCase::OneCoin, s - 1) ==
		      q(step, static_cast<long>(s * (s - 1))));
	}
}

TEST_CASE("nested table equals exhaustive nested average for any coin count")
{
	const auto t = nested_tables(48);
	for (std::size_t n = 2; n <= 48; ++n) {
		CAPTURE(n);
		CHECK(t.optimal(NestedCase::Mixed, n) == exhaustive_stats(n, Strategy::Nested, {.threads = 1}).average);
	}
}

TEST_CASE("nested closed forms")
{
	CHECK(nested_closed_forms(0).one == 0);
	CHECK(nested_closed_forms(0).two == 0);
	CHECK(nested_closed_forms(2).one == 2);
	CHECK(nested_closed_forms(2).two == q(12, 5));
	const auto t = nested_tables(1024);
	for (int i = 1; i <= 10; ++i) {
		CAPTURE(i);
		const std::size_t s = std::size_t{1} << i;
		CHECK(nested_closed_forms(i).one == i);
		CHECK(nested_closed_forms(i).one == t.optimal(NestedCase::OneCoin, s));
		CHECK(nested_closed_forms(i).two == t.optimal(NestedCase::Mixed, s));
		CHECK(nested_closed_forms(i).two == nested_average_formula(i));
		CHECK(nested_average_float(i) == doctest::Approx(to_double(nested_average_formula(i))).epsilon(1e-12));
	}
}

TEST_CASE("counting lower bounds")
{
	CHECK(lower_bounds(2).worst_lb == doctest::Approx(1.0));
	CHECK(lower_bounds(8).worst_lb == doctest::Approx(std::log(28.0) / std::log(3.0)));
	CHECK(lower_bounds(8).worst_lb == doctest::Approx(3.0331).epsilon(1e-4));
	CHECK(lower_bounds(8).ave_lb == doctest::Approx(3.026).epsilon(1e-3));
	CHECK(lower_bounds(4).ave_lb == doctest::Approx(1.7786).epsilon(1e-4));

	for (int l = 1; l <= kEnumerationCap; ++l) {
		const auto b = lower_bounds(std::size_t{1} << l);
		CHECK(to_double(proposed_average(l)) >= b.ave_lb);
		CHECK(worst_case_weighings(l) >= b.worst_lb);
		if (l >= 2)
			CHECK(proposed_average(l) < nested_average_formula(l));
	}
}

TEST_CASE("asymptotic constants")
{
	const auto c = asymptotic_constants();
	CHECK(c.lb_slope == doctest::Approx(2.0 / std::log2(3.0)));
	CHECK(c.saving_vs_nested == doctest::Approx(0.3175).epsilon(1e-4));
	CHECK(c.excess_vs_lb == doctest::Approx(0.0816).epsilon(5e-3));
	CHECK(std::abs(c.excess_vs_lb - 0.0816) <= 0.0005);
}
