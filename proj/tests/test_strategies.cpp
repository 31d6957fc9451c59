#include "coinweigh/strategies.hpp"

#include <doctest.h>

#include <map>
#include <string>

using namespace coinweigh;

namespace {

struct Expected
{
	std::vector<CoinIndex> subset;
	int outcome;
};

void check_queries(const Transcript& t, const std::vector<Expected>& expected)
{
	REQUIRE(t.size() == expected.size());
	for (std::size_t k = 0; k < expected.size(); ++k) {
		CAPTURE(k);
		CHECK(t.queries[k].subset == SubsetSpec(expected[k].subset));
		CHECK(t.queries[k].outcome == expected[k].outcome);
	}
}

std::string key(const Query& q)
{
	return format_subset(q.subset.indices()) + "=" + std::to_string(q.outcome);
}

/// The next weighing may depend only on earlier outcomes, and distinct
/// configurations must end on distinct outcome sequences.
void check_adaptive(std::size_t n, Strategy strategy)
{
	std::map<std::string, std::string> next_query;
	std::map<std::string, std::string> leaf;
	for (const auto& c : enumerate_configs(n)) {
		auto t = run_strategy(strategy, c);
		std::string prefix;
		for (const auto& q : t.queries) {
			auto subset = format_subset(q.subset.indices());
			auto [it, fresh] = next_query.emplace(prefix, subset);
			CHECK(it->second == subset);
			prefix += key(q) + ";";
		}
		CHECK(next_query.count(prefix) == 0);
		auto [it, fresh] = leaf.emplace(prefix, format_weights(c.weights()));
		CHECK(fresh);
	}
}

} // namespace

TEST_CASE("proposed strategy reproduces the eight-coin worked example")
{
	const auto t = run_proposed(Configuration::pair(8, 3, 6));
	check_queries(t, {{{1, 2, 3, 4}, 1}, {{1, 2, 5, 6}, 1}, {{1, 2, 7}, 0}, {{3, 5}, 1}, {{3}, 1}});
	CHECK(t.estimate == std::vector<std::uint8_t>{0, 0, 1, 0, 0, 1, 0, 0});
}

TEST_CASE("proposed strategy small traces")
{
	auto two = run_proposed(Configuration::single(2, 1));
	check_queries(two, {{{1}, 2}});
	CHECK(two.estimate == std::vector<std::uint8_t>{2, 0});

	auto four = run_proposed(Configuration::pair(4, 2, 3));
	check_queries(four, {{{1, 2}, 1}, {{1, 3}, 1}, {{1}, 0}});
	CHECK(four.estimate == std::vector<std::uint8_t>{0, 1, 1, 0});
}

TEST_CASE("nested strategy small traces")
{
	auto t = run_nested(Configuration::pair(4, 1, 4));
	check_queries(t, {{{1, 2}, 1}, {{1}, 1}, {{3}, 0}});
	CHECK(check_nested(t));

	check_queries(run_nested(Configuration::single(4, 1)), {{{1, 2}, 2}, {{1}, 2}});

	std::size_t worst = 0;
	for (const auto& c : enumerate_configs(4))
		worst = std::max(worst, run_nested(c).size());
	CHECK(worst == 3);
}

TEST_CASE("nested discipline checker")
{
	CHECK_FALSE(check_nested(run_proposed(Configuration::pair(8, 3, 6))));
	CHECK(check_nested(run_proposed(Configuration::single(2, 2))));

	Transcript single{{{SubsetSpec({1, 2, 3}), 1}}, {0, 0, 1, 1}};
	CHECK(check_nested(single));

	// Weighing the whole of an already split block again, or reaching across
	// blocks, both break the discipline.
	Transcript repeat{{{SubsetSpec({1, 2}), 1}, {SubsetSpec({1, 2}), 1}}, {1, 0, 0, 1}};
	CHECK_FALSE(check_nested(repeat));
	Transcript across{{{SubsetSpec({1, 2}), 1}, {SubsetSpec({2, 3}), 0}}, {1, 0, 0, 1}};
	CHECK_FALSE(check_nested(across));
	Transcript resolved{{{SubsetSpec({1, 2}), 0}, {SubsetSpec({1}), 0}}, {0, 0, 1, 1}};
	CHECK_FALSE(check_nested(resolved));
}

TEST_CASE("recovery, oracle consistency and worst case over all configurations")
{
	for (int l = 1; l <= 8; ++l) {
		const std::size_t n = std::size_t{1} << l;
		CAPTURE(n);
		std::size_t worst_proposed = 0, worst_nested = 0;
		for (const auto& c : enumerate_configs(n)) {
			auto p = run_proposed(c, {.check_contracts = true});
			auto q = run_nested(c, {.check_contracts = true});
			CHECK(transcript_consistent(p, c));
			CHECK(transcript_consistent(q, c));
			CHECK(check_nested(q));
			CHECK(p.size() >= 1);
			CHECK(static_cast<int>(p.size()) == count_proposed(c));
			CHECK(static_cast<int>(q.size()) == count_nested(c));
			worst_proposed = std::max(worst_proposed, p.size());
			worst_nested = std::max(worst_nested, q.size());

			// A pair split across the two halves of N forces the two-set
			// procedure, whose first weighing spans both halves.
			if (!c.is_single() && c.support()[0] <= n / 2 && c.support()[1] > n / 2 && n >= 4)
				CHECK_FALSE(check_nested(p));
		}
		CHECK(worst_proposed == static_cast<std::size_t>(2 * l - 1));
		CHECK(worst_nested == static_cast<std::size_t>(2 * l - 1));
	}
}

TEST_CASE("nested strategy on arbitrary coin counts")
{
	for (std::size_t n = 2; n <= 100; ++n) {
		CAPTURE(n);
		for_each_config(n, 0, config_count(n), [&](const Configuration& c) {
			auto t = run_nested(c, {.check_contracts = true});
			CHECK(transcript_consistent(t, c));
			CHECK(check_nested(t));
		});
	}
}

TEST_CASE("strategies are adaptive decision procedures")
{
	check_adaptive(16, Strategy::Proposed);
	check_adaptive(16, Strategy::Nested);
	check_adaptive(32, Strategy::Proposed);
}

TEST_CASE("pair procedure entry point")
{
	const std::vector<CoinIndex> a{1, 2, 3, 4}, b{5, 6, 7, 8};
	const auto t = run_pair_procedure(Configuration::pair(8, 3, 6), a, b, {.check_contracts = true});
	check_queries(t, {{{1, 2, 5, 6}, 1}, {{1, 2, 7}, 0}, {{3, 5}, 1}, {{3}, 1}});

	CHECK_THROWS_AS(run_pair_procedure(Configuration::pair(8, 1, 2), a, b), InvalidInput);
	CHECK_THROWS_AS(run_pair_procedure(Configuration::pair(8, 1, 6), a, std::vector<CoinIndex>{9}),
	                InvalidSubset);
}

TEST_CASE("errors and names")
{
	CHECK_THROWS_AS(run_proposed(Configuration::pair(6, 1, 2)), InvalidSize);
	CHECK_THROWS_AS(count_proposed(Configuration::pair(6, 1, 2)), InvalidSize);
	CHECK(run_nested(Configuration::pair(6, 1, 2)).size() >= 1);

	CHECK(parse_strategy("proposed") == Strategy::Proposed);
	CHECK(parse_strategy("nested") == Strategy::Nested);
	CHECK(to_string(Strategy::Nested) == "nested");
	CHECK_THROWS_AS(parse_strategy("greedy"), InvalidInput);
}
