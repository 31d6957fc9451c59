#include "coinweigh/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace coinweigh {

namespace {

using Coins = std::span<const CoinIndex>;

Coins first_half(Coins s) { return s.first(s.size() / 2); }
Coins second_half(Coins s) { return s.subspan(s.size() / 2); }

std::vector<CoinIndex> coin_order(std::size_t n)
{
	std::vector<CoinIndex> order(n);
	std::iota(order.begin(), order.end(), CoinIndex{1});
	return order;
}

/// Oracle access shared by the executors: counts, optionally records, and
/// keeps the running estimate.
class Session
{
public:
	Session(const Configuration& config, Transcript* record, RunOptions options)
	    : config_(config), record_(record), options_(options), estimate_(config.size(), 0)
	{}

	int weigh(Coins a, Coins b = {})
	{
		++count_;
		int outcome = weigh_sorted(config_, a) + (b.empty() ? 0 : weigh_sorted(config_, b));
		if (record_) {
			std::vector<CoinIndex> subset(a.size() + b.size());
			std::merge(a.begin(), a.end(), b.begin(), b.end(), subset.begin());
			record_->queries.push_back({SubsetSpec(std::move(subset)), outcome});
		}
		return outcome;
	}

	void assign(CoinIndex coin, int weight)
	{
		estimate_[coin - 1] = static_cast<std::uint8_t>(weight);
		assigned_ += weight;
	}

	void expect(bool condition, const char* what) const
	{
		if (!condition)
			throw ContractViolation(what);
	}

	/// Free re-weighing for precondition checks; never recorded.
	void require_weight(Coins s, int w, const char* what) const
	{
		if (options_.check_contracts && weigh_dense(config_, s) != w)
			throw ContractViolation(what);
	}

	int finish()
	{
		expect(assigned_ == 2, "strategy terminated without recovering total weight 2");
		if (record_)
			record_->estimate = std::move(estimate_);
		return count_;
	}

	int count() const { return count_; }
	bool checking() const { return options_.check_contracts; }
	const Configuration& config() const { return config_; }

private:
	const Configuration& config_;
	Transcript* record_;
	RunOptions options_;
	std::vector<std::uint8_t> estimate_;
	int assigned_ = 0;
	int count_ = 0;
};

class ProposedRun
{
public:
	explicit ProposedRun(Session& session) : s_(session) {}

	void bisect(Coins set, int w)
	{
		s_.require_weight(set, w, "bisect entered with wrong set weight");
		if (set.size() == 1) {
			s_.assign(set[0], w);
			return;
		}
		auto lo = first_half(set);
		auto hi = second_half(set);
		int r = s_.weigh(lo);
		s_.expect(r <= w, "half outweighs its parent set");
		if (r == 0)
			bisect(hi, w);
		else if (r == 2)
			bisect(lo, w);
		else if (w == 1)
			bisect(lo, 1);
		else
			pair_bisect(lo, hi);
	}

	void pair_bisect(Coins a, Coins b)
	{
		require_pair(a, b);
		if (a.size() == 1 && b.size() == 1) {
			s_.assign(a[0], 1);
			s_.assign(b[0], 1);
			return;
		}
		if (a.size() == 1 || b.size() == 1) {
			bisect(a, 1);
			bisect(b, 1);
			return;
		}
		int r = s_.weigh(first_half(a), first_half(b));
		if (r == 0)
			pair_bisect(second_half(a), second_half(b));
		else if (r == 2)
			pair_bisect(first_half(a), first_half(b));
		else
			cross_resolve(a, b);
	}

	void cross_resolve(Coins a, Coins b)
	{
		require_pair(a, b);
		if (s_.checking()) {
			int mixed = weigh_dense(s_.config(), first_half(a)) + weigh_dense(s_.config(), first_half(b));
			s_.expect(mixed == 1, "cross_resolve entered without w(A1 u B1) = 1");
		}
		if (a.size() == 2 && b.size() == 2) {
			int r = s_.weigh(a.first(1));
			s_.expect(r <= 1, "single coin of a weight-1 set weighs 2");
			s_.assign(a[0], r);
			s_.assign(a[1], 1 - r);
			s_.assign(b[0], 1 - r);
			s_.assign(b[1], r);
			return;
		}
		// Ties keep A in the small-set role.
		if (b.size() < a.size())
			std::swap(a, b);
		auto b2 = second_half(b);
		int r = s_.weigh(first_half(a), first_half(b2));
		// Outcome 1 cannot come from A1 alone being empty: w(A1) = 0 forces the
		// B-coin into B1, so the weighing would read 0. Hence w(A1) = 1 and the
		// B-coin sits in (B2)2.
		if (r == 0)
			pair_bisect(second_half(a), first_half(b));
		else if (r == 1)
			pair_bisect(first_half(a), second_half(b2));
		else
			pair_bisect(first_half(a), first_half(b2));
	}

private:
	void require_pair(Coins a, Coins b) const
	{
		s_.require_weight(a, 1, "pair procedure entered with w(A) != 1");
		s_.require_weight(b, 1, "pair procedure entered with w(B) != 1");
	}

	Session& s_;
};

class NestedRun
{
public:
	explicit NestedRun(Session& session) : s_(session) {}

	void solve(Coins set, int w)
	{
		s_.require_weight(set, w, "nested step entered with wrong set weight");
		if (set.size() == 1) {
			s_.assign(set[0], w);
			return;
		}
		auto part = set.first(set.size() / 2);
		auto rest = set.subspan(set.size() / 2);
		int r = s_.weigh(part);
		s_.expect(r <= w, "part outweighs its parent set");
		if (r == 0) {
			solve(rest, w);
		} else if (r == w) {
			solve(part, w);
		} else {
			solve(part, 1);
			solve(rest, 1);
		}
	}

private:
	Session& s_;
};

void require_power_of_two(const Configuration& config)
{
	if (!is_power_of_two(config.size()))
		throw InvalidSize("the proposed strategy needs n = 2^l coins, got " + std::to_string(config.size()));
}

} // namespace

std::string_view to_string(Strategy s)
{
	return s == Strategy::Proposed ? "proposed" : "nested";
}

Strategy parse_strategy(std::string_view name)
{
	if (name == "proposed")
		return Strategy::Proposed;
	if (name == "nested")
		return Strategy::Nested;
	throw InvalidInput("unknown strategy '" + std::string(name) + "' (expected proposed or nested)");
}

Transcript run_proposed(const Configuration& config, RunOptions options)
{
	require_power_of_two(config);
	Transcript t;
	Session session(config, &t, options);
	auto order = coin_order(config.size());
	ProposedRun(session).bisect(order, 2);
	session.finish();
	return t;
}

Transcript run_nested(const Configuration& config, RunOptions options)
{
	Transcript t;
	Session session(config, &t, options);
	auto order = coin_order(config.size());
	NestedRun(session).solve(order, 2);
	session.finish();
	return t;
}

Transcript run_strategy(Strategy strategy, const Configuration& config, RunOptions options)
{
	return strategy == Strategy::Proposed ? run_proposed(config, options) : run_nested(config, options);
}

int count_proposed(const Configuration& config)
{
	require_power_of_two(config);
	Session session(config, nullptr, {});
	auto order = coin_order(config.size());
	ProposedRun(session).bisect(order, 2);
	return session.finish();
}

int count_nested(const Configuration& config)
{
	Session session(config, nullptr, {});
	auto order = coin_order(config.size());
	NestedRun(session).solve(order, 2);
	return session.finish();
}

int count_weighings(Strategy strategy, const Configuration& config)
{
	return strategy == Strategy::Proposed ? count_proposed(config) : count_nested(config);
}

Transcript run_pair_procedure(const Configuration& config, std::span<const CoinIndex> a,
                              std::span<const CoinIndex> b, RunOptions options)
{
	auto in_range = [&](Coins s) {
		return !s.empty() && std::is_sorted(s.begin(), s.end()) && s.front() >= 1 && s.back() <= config.size();
	};
	if (!in_range(a) || !in_range(b))
		throw InvalidSubset("pair procedure sets must be non-empty, sorted and in range");
	if (weigh_dense(config, a) != 1 || weigh_dense(config, b) != 1)
		throw InvalidInput("pair procedure needs w(A) = w(B) = 1");
	Transcript t;
	Session session(config, &t, options);
	ProposedRun(session).pair_bisect(a, b);
	session.finish();
	return t;
}

bool check_nested(const Transcript& transcript)
{
	struct Block
	{
		std::vector<CoinIndex> coins; // sorted
		int weight;
		bool open() const { return weight > 0 && coins.size() > 1; }
	};

	const auto n = transcript.estimate.size();
	std::vector<Block> blocks{{coin_order(n), 2}};

	bool first = true;
	for (const auto& q : transcript.queries) {
		auto idx = q.subset.indices();
		auto it = std::find_if(blocks.begin(), blocks.end(), [&](const Block& b) {
			return std::binary_search(b.coins.begin(), b.coins.end(), idx.front());
		});
		if (it == blocks.end())
			return false;
		if (!std::includes(it->coins.begin(), it->coins.end(), idx.begin(), idx.end()))
			return false;
		if (!first && (!it->open() || idx.size() >= it->coins.size()))
			return false;
		first = false;

		Block inside{{idx.begin(), idx.end()}, q.outcome};
		Block outside{{}, it->weight - q.outcome};
		std::set_difference(it->coins.begin(), it->coins.end(), idx.begin(), idx.end(),
		                    std::back_inserter(outside.coins));
		*it = std::move(inside);
		if (!outside.coins.empty())
			blocks.push_back(std::move(outside));
	}
	return true;
}

bool transcript_consistent(const Transcript& transcript, const Configuration& config)
{
	for (const auto& q : transcript.queries) {
		if (q.subset.indices().back() > config.size())
			return false;
		if (weigh_dense(config, q.subset.indices()) != q.outcome)
			return false;
	}
	return std::ranges::equal(transcript.estimate, config.weights());
}

} // namespace coinweigh
