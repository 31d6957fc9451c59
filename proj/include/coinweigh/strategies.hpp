#pragma once

#include "coinweigh/model.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace coinweigh {

enum class Strategy { Proposed, Nested };

std::string_view to_string(Strategy s);
/// Accepts "proposed" or "nested"; throws InvalidInput otherwise.
Strategy parse_strategy(std::string_view name);

struct Query
{
	SubsetSpec subset;
	int outcome;
};

/// Ordered weighings a strategy performed plus the weights it recovered.
struct Transcript
{
	std::vector<Query> queries;
	std::vector<std::uint8_t> estimate;

	std::size_t size() const { return queries.size(); }
};

struct RunOptions
{
	/// Re-weigh the arguments of every procedure entry with the dense oracle
	/// (free of charge) and throw ContractViolation if a precondition fails.
	bool check_contracts = false;
};

/**
 Three mutually recursive procedures over sets that are contiguous runs of the
 coin order 1..n:

  - bisect(S, w): halve S, weigh the first half, follow the half that holds the
    weight; a split 1/1 with w(S) = 2 hands both halves to pair_bisect.
  - pair_bisect(A, B), w(A) = w(B) = 1: weigh A1 u B1 and keep both halves in
    step; an outcome of 1 goes to cross_resolve.
  - cross_resolve(A, B), additionally w(A1 u B1) = 1: with |A| <= |B| weigh
    A1 u (B2)1 and continue with pair_bisect(A2, B1), (A1, (B2)2) or
    (A1, (B2)1) for outcome 0, 1 or 2.

 Requires n = 2^l, l >= 1.
 */
Transcript run_proposed(const Configuration& config, RunOptions options = {});

/// Midpoint nested strategy: weigh the first floor(|S|/2) coins of S and
/// recurse only inside the part(s) that still hold unknown weight. Any n >= 2.
Transcript run_nested(const Configuration& config, RunOptions options = {});

Transcript run_strategy(Strategy strategy, const Configuration& config, RunOptions options = {});

/// Weighing counts without materializing a transcript.
int count_proposed(const Configuration& config);
int count_nested(const Configuration& config);
int count_weighings(Strategy strategy, const Configuration& config);

/// pair_bisect alone on two disjoint sorted sets that each hold exactly one
/// weight-1 coin. The estimate covers all n coins; coins outside A and B stay 0.
Transcript run_pair_procedure(const Configuration& config, std::span<const CoinIndex> a,
                              std::span<const CoinIndex> b, RunOptions options = {});

/// True iff every weighing after the first lies strictly inside one block of
/// coins whose weight is still undetermined, where blocks are refined by each
/// weighing into the weighed part and the rest.
bool check_nested(const Transcript& transcript);

/// Every outcome re-verifies against the dense oracle and the estimate equals
/// the configuration.
bool transcript_consistent(const Transcript& transcript, const Configuration& config);

} // namespace coinweigh
