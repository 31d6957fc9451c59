#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coinweigh {

/// Coin indices are 1-based everywhere they cross an interface.
using CoinIndex = std::uint32_t;

struct InvalidInput : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

struct InvalidSize : InvalidInput {
	using InvalidInput::InvalidInput;
};

struct InvalidSubset : InvalidInput {
	using InvalidInput::InvalidInput;
};

/// Raised when a request exceeds the exhaustive-enumeration cap.
struct TooLarge : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/// An oracle answer that cannot occur if the executing strategy is correct.
struct ContractViolation : std::logic_error {
	using std::logic_error::logic_error;
};

/// Largest exponent for which every configuration is enumerated.
inline constexpr int kEnumerationCap = 12;

/// n = 2^l coins.
class ProblemSize
{
public:
	explicit ProblemSize(int exponent);
	static ProblemSize from_coins(std::size_t n);

	int exponent() const { return l_; }
	std::size_t coins() const { return std::size_t{1} << l_; }

private:
	int l_;
};

bool is_power_of_two(std::size_t n);

/// Number of configurations of total weight 2 over n coins: n + C(n,2).
constexpr std::uint64_t config_count(std::uint64_t n) { return n * (n + 1) / 2; }

/**
 Dense weight vector over n >= 2 coins, each weight in {0,1,2}, summing to 2.
 Either a single coin of weight 2 (type I) or two coins of weight 1 (type II).
 Immutable after construction.
 */
class Configuration
{
public:
	explicit Configuration(std::vector<std::uint8_t> weights);

	static Configuration single(std::size_t n, CoinIndex heavy);
	static Configuration pair(std::size_t n, CoinIndex first, CoinIndex second);

	std::size_t size() const { return weights_.size(); }
	std::span<const std::uint8_t> weights() const { return weights_; }
	int weight(CoinIndex i) const { return weights_.at(i - 1); }
	bool is_single() const { return support_[1] == 0; }

	/// Nonzero coins in increasing order; the second slot is 0 for type I.
	const std::array<CoinIndex, 2>& support() const { return support_; }

	bool operator==(const Configuration& o) const { return weights_ == o.weights_; }

private:
	std::vector<std::uint8_t> weights_;
	std::array<CoinIndex, 2> support_{};
};

/// 0 for type I, otherwise the index gap between the two weight-1 coins.
using DeltaClass = std::size_t;

DeltaClass delta_of(const Configuration& config);

/// Non-empty, strictly increasing 1-based coin indices.
class SubsetSpec
{
public:
	explicit SubsetSpec(std::vector<CoinIndex> indices);

	std::span<const CoinIndex> indices() const { return indices_; }
	std::size_t size() const { return indices_.size(); }
	bool operator==(const SubsetSpec&) const = default;

private:
	std::vector<CoinIndex> indices_;
};

/// Total weight of the subset. Throws InvalidSubset if an index exceeds n.
int weigh(const Configuration& config, const SubsetSpec& subset);

/// Same oracle for a sorted span of in-range indices; no validation.
int weigh_sorted(const Configuration& config, std::span<const CoinIndex> sorted);

/// Dense summation route, independent of the support-based fast path.
int weigh_dense(const Configuration& config, std::span<const CoinIndex> indices);

/// The k-th configuration in enumeration order: type I by heavy position,
/// then type II lexicographic by (i, j). Any n >= 2.
Configuration config_at(std::size_t n, std::uint64_t rank);

/// Visits configurations with ranks in [begin, end) in enumeration order.
template <class Fn>
void for_each_config(std::size_t n, std::uint64_t begin, std::uint64_t end, Fn&& fn);

/// All configurations for n = 2^l, l >= 1, in enumeration order.
std::vector<Configuration> enumerate_configs(std::size_t n);

/// Comma-separated weights, e.g. "0,0,1,0,0,1,0,0".
Configuration parse_configuration(std::string_view text);
/// Comma-separated 1-based indices; checked against n.
SubsetSpec parse_subset(std::string_view text, std::size_t n);

std::string format_weights(std::span<const std::uint8_t> weights);
std::string format_subset(std::span<const CoinIndex> indices);

// ---------------------------------------------------------------------------

template <class Fn>
void for_each_config(std::size_t n, std::uint64_t begin, std::uint64_t end, Fn&& fn)
{
	const std::uint64_t total = config_count(n);
	if (end > total)
		end = total;
	std::uint64_t rank = begin;
	for (; rank < end && rank < n; ++rank)
		fn(Configuration::single(n, static_cast<CoinIndex>(rank + 1)));
	if (rank >= end)
		return;

	// Locate the pair (i, j) of the first type-II rank, then walk forward.
	std::uint64_t offset = rank - n;
	CoinIndex i = 1;
	while (offset >= n - i) {
		offset -= n - i;
		++i;
	}
	CoinIndex j = static_cast<CoinIndex>(i + 1 + offset);
	for (; rank < end; ++rank) {
		fn(Configuration::pair(n, i, j));
		if (++j > n) {
			++i;
			j = i + 1;
		}
	}
}

} // namespace coinweigh
