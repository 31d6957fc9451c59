#include "coinweigh/model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

namespace coinweigh {

namespace {

std::vector<std::string_view> split_commas(std::string_view text)
{
	std::vector<std::string_view> out;
	std::size_t start = 0;
	while (true) {
		auto comma = text.find(',', start);
		auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
		while (!token.empty() && token.front() == ' ')
			token.remove_prefix(1);
		while (!token.empty() && token.back() == ' ')
			token.remove_suffix(1);
		out.push_back(token);
		if (comma == std::string_view::npos)
			break;
		start = comma + 1;
	}
	return out;
}

template <class T>
T parse_number(std::string_view token, std::string_view what)
{
	T value{};
	auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
	if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
		throw InvalidInput("malformed " + std::string(what) + " '" + std::string(token) + "'");
	return value;
}

} // namespace

ProblemSize::ProblemSize(int exponent) : l_(exponent)
{
	if (exponent < 1 || exponent > 40)
		throw InvalidSize("exponent must be in [1, 40], got " + std::to_string(exponent));
}

ProblemSize ProblemSize::from_coins(std::size_t n)
{
	if (n < 2 || !is_power_of_two(n))
		throw InvalidSize("coin count must be a power of two >= 2, got " + std::to_string(n));
	return ProblemSize(std::countr_zero(n));
}

bool is_power_of_two(std::size_t n)
{
	return n != 0 && (n & (n - 1)) == 0;
}

Configuration::Configuration(std::vector<std::uint8_t> weights) : weights_(std::move(weights))
{
	if (weights_.size() < 2)
		throw InvalidInput("a configuration needs at least 2 coins");
	int total = 0;
	std::size_t nonzero = 0;
	for (std::size_t k = 0; k < weights_.size(); ++k) {
		if (weights_[k] > 2)
			throw InvalidInput("coin weights must be 0, 1 or 2");
		if (weights_[k] == 0)
			continue;
		total += weights_[k];
		if (nonzero < 2)
			support_[nonzero] = static_cast<CoinIndex>(k + 1);
		++nonzero;
	}
	if (total != 2)
		throw InvalidInput("total weight must be 2, got " + std::to_string(total));
}

Configuration Configuration::single(std::size_t n, CoinIndex heavy)
{
	if (heavy < 1 || heavy > n)
		throw InvalidInput("coin index out of range");
	std::vector<std::uint8_t> w(n, 0);
	w[heavy - 1] = 2;
	return Configuration(std::move(w));
}

Configuration Configuration::pair(std::size_t n, CoinIndex first, CoinIndex second)
{
	if (first < 1 || second > n || first >= second)
		throw InvalidInput("pair indices must satisfy 1 <= i < j <= n");
	std::vector<std::uint8_t> w(n, 0);
	w[first - 1] = 1;
	w[second - 1] = 1;
	return Configuration(std::move(w));
}

DeltaClass delta_of(const Configuration& config)
{
	if (config.is_single())
		return 0;
	return config.support()[1] - config.support()[0];
}

SubsetSpec::SubsetSpec(std::vector<CoinIndex> indices) : indices_(std::move(indices))
{
	if (indices_.empty())
		throw InvalidSubset("subset must be non-empty");
	if (indices_.front() < 1)
		throw InvalidSubset("coin indices are 1-based");
	if (std::adjacent_find(indices_.begin(), indices_.end(), std::greater_equal<>{}) != indices_.end())
		throw InvalidSubset("subset indices must be strictly increasing");
}

int weigh(const Configuration& config, const SubsetSpec& subset)
{
	if (subset.indices().back() > config.size())
		throw InvalidSubset("coin index " + std::to_string(subset.indices().back()) + " exceeds n = " +
		                    std::to_string(config.size()));
	return weigh_sorted(config, subset.indices());
}

int weigh_sorted(const Configuration& config, std::span<const CoinIndex> sorted)
{
	const auto& s = config.support();
	if (config.is_single())
		return std::binary_search(sorted.begin(), sorted.end(), s[0]) ? 2 : 0;
	return int(std::binary_search(sorted.begin(), sorted.end(), s[0])) +
	       int(std::binary_search(sorted.begin(), sorted.end(), s[1]));
}

int weigh_dense(const Configuration& config, std::span<const CoinIndex> indices)
{
	auto w = config.weights();
	int total = 0;
	for (CoinIndex i : indices)
		total += w[i - 1];
	return total;
}

Configuration config_at(std::size_t n, std::uint64_t rank)
{
	if (rank >= config_count(n))
		throw InvalidInput("configuration rank out of range");
	std::optional<Configuration> out;
	for_each_config(n, rank, rank + 1, [&](Configuration c) { out.emplace(std::move(c)); });
	return *out;
}

std::vector<Configuration> enumerate_configs(std::size_t n)
{
	ProblemSize::from_coins(n);
	std::vector<Configuration> out;
	out.reserve(config_count(n));
	for_each_config(n, 0, config_count(n), [&](Configuration c) { out.push_back(std::move(c)); });
	return out;
}

Configuration parse_configuration(std::string_view text)
{
	std::vector<std::uint8_t> w;
	for (auto token : split_commas(text)) {
		auto v = parse_number<unsigned>(token, "weight");
		if (v > 2)
			throw InvalidInput("weight " + std::to_string(v) + " outside {0,1,2}");
		w.push_back(static_cast<std::uint8_t>(v));
	}
	return Configuration(std::move(w));
}

SubsetSpec parse_subset(std::string_view text, std::size_t n)
{
	std::vector<CoinIndex> idx;
	for (auto token : split_commas(text))
		idx.push_back(parse_number<CoinIndex>(token, "coin index"));
	SubsetSpec s(std::move(idx));
	if (s.indices().back() > n)
		throw InvalidSubset("coin index out of range");
	return s;
}

std::string format_weights(std::span<const std::uint8_t> weights)
{
	std::string out;
	for (std::size_t k = 0; k < weights.size(); ++k) {
		if (k)
			out += ',';
		out += char('0' + weights[k]);
	}
	return out;
}

std::string format_subset(std::span<const CoinIndex> indices)
{
	std::string out = "{";
	for (std::size_t k = 0; k < indices.size(); ++k) {
		if (k)
			out += ',';
		out += std::to_string(indices[k]);
	}
	return out + "}";
}

} // namespace coinweigh
