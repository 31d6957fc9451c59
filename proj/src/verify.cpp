#include "coinweigh/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace coinweigh {

namespace {

struct Partial
{
	std::vector<DeltaStat> per_delta;
	int max = 0;
	std::uint64_t failures = 0;
	std::string first_failure;
};

void run_one(const Configuration& c, Strategy strategy, Verification mode, Partial& out)
{
	int count;
	if (mode == Verification::Full) {
		Transcript t = run_strategy(strategy, c, {.check_contracts = true});
		count = static_cast<int>(t.size());
		if (!transcript_consistent(t, c)) {
			if (out.failures++ == 0)
				out.first_failure = format_weights(c.weights());
		}
	} else {
		count = count_weighings(strategy, c);
	}
	auto& slot = out.per_delta[delta_of(c)];
	++slot.count;
	slot.total += static_cast<std::uint64_t>(count);
	out.max = std::max(out.max, count);
}

} // namespace

bool StatsRow::same_result(const StatsRow& o) const
{
	if (l != o.l || n != o.n || strategy != o.strategy || configs != o.configs ||
	    total_weighings != o.total_weighings || average != o.average || max != o.max || failures != o.failures ||
	    per_delta.size() != o.per_delta.size())
		return false;
	for (std::size_t d = 0; d < per_delta.size(); ++d)
		if (per_delta[d].count != o.per_delta[d].count || per_delta[d].total != o.per_delta[d].total)
			return false;
	return true;
}

unsigned default_threads()
{
	if (const char* env = std::getenv("CW_THREADS")) {
		char* end = nullptr;
		long v = std::strtol(env, &end, 10);
		if (end != env && *end == '\0' && v > 0)
			return static_cast<unsigned>(v);
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

StatsRow exhaustive_stats(std::size_t n, Strategy strategy, ExhaustiveOptions options)
{
	const std::size_t cap = std::size_t{1} << kEnumerationCap;
	if (n < 2)
		throw InvalidSize("need at least 2 coins");
	if (strategy == Strategy::Proposed)
		ProblemSize::from_coins(n);
	if (n > cap)
		throw TooLarge("n = " + std::to_string(n) + " exceeds the enumeration cap 2^" +
		               std::to_string(kEnumerationCap) + "; use the analytic (float) mode instead");

	const auto start = std::chrono::steady_clock::now();
	const std::uint64_t total = config_count(n);
	const unsigned threads = std::max(1u, options.threads ? options.threads : default_threads());

	// Configuration ranks are handed out in fixed-size chunks; each worker
	// keeps exact integer partial sums that are reduced after the join.
	const std::uint64_t chunk = std::max<std::uint64_t>(1, total / (threads * 8ull) + 1);
	std::atomic<std::uint64_t> next{0};
	std::vector<Partial> partials(threads);
	std::exception_ptr error;
	std::mutex error_mutex;

	auto worker = [&](Partial& mine) {
		mine.per_delta.assign(n, {});
		try {
			for (std::uint64_t begin; (begin = next.fetch_add(chunk)) < total;)
				for_each_config(n, begin, std::min(total, begin + chunk),
				                [&](const Configuration& c) { run_one(c, strategy, options.mode, mine); });
		} catch (...) {
			std::lock_guard lock(error_mutex);
			if (!error)
				error = std::current_exception();
			next = total;
		}
	};

	if (threads == 1) {
		worker(partials[0]);
	} else {
		std::vector<std::jthread> pool;
		for (unsigned t = 0; t < threads; ++t)
			pool.emplace_back(worker, std::ref(partials[t]));
	}
	if (error)
		std::rethrow_exception(error);

	StatsRow row;
	row.n = n;
	row.l = is_power_of_two(n) ? std::countr_zero(n) : 0;
	row.strategy = strategy;
	row.per_delta.assign(n, {});
	for (const auto& p : partials) {
		for (std::size_t d = 0; d < n; ++d) {
			row.per_delta[d].count += p.per_delta[d].count;
			row.per_delta[d].total += p.per_delta[d].total;
		}
		row.max = std::max(row.max, p.max);
		if (p.failures && row.first_failure.empty())
			row.first_failure = p.first_failure;
		row.failures += p.failures;
	}
	for (const auto& d : row.per_delta) {
		row.configs += d.count;
		row.total_weighings += d.total;
	}
	row.average = Rational(static_cast<long>(row.total_weighings), static_cast<long>(row.configs));
	row.average.canonicalize();
	row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return row;
}

std::size_t CrossCheckReport::per_delta_mismatches() const
{
	return static_cast<std::size_t>(
	    std::ranges::count_if(per_delta, [](const DeltaComparison& d) { return d.model != d.empirical; }));
}

std::string CrossCheckReport::mismatch_report() const
{
	if (ok())
		return {};
	std::ostringstream out;
	out << "l=" << l << " mismatch:\n";
	if (!avg_equal)
		out << "  proposed average: analytic " << to_fraction_string(analytic_avg) << " vs exhaustive "
		    << to_fraction_string(empirical_avg) << "\n";
	if (!nested_equal)
		out << "  nested average: closed form " << to_fraction_string(nested_closed_form) << ", formula "
		    << to_fraction_string(nested_formula) << ", table " << to_fraction_string(nested_dp)
		    << ", exhaustive " << to_fraction_string(nested_empirical) << "\n";
	if (!max_equal)
		out << "  worst case: predicted " << predicted_max << ", proposed " << proposed_max << ", nested "
		    << nested_max << "\n";
	auto first = std::ranges::find_if(per_delta, [](const DeltaComparison& d) { return d.model != d.empirical; });
	if (first != per_delta.end())
		out << "  first differing delta: " << first->delta << " (model " << to_fraction_string(first->model)
		    << ", empirical " << to_fraction_string(first->empirical) << ")\n";
	return out.str();
}

CrossCheckReport cross_check(int l, unsigned threads)
{
	if (l < 1)
		throw InvalidSize("cross check needs l >= 1");
	if (l > kEnumerationCap)
		throw TooLarge("cross check is limited to l <= " + std::to_string(kEnumerationCap));

	const auto start = std::chrono::steady_clock::now();
	const std::size_t n = std::size_t{1} << l;
	ExhaustiveOptions opts{.threads = threads};
	const StatsRow proposed = exhaustive_stats(n, Strategy::Proposed, opts);
	const StatsRow nested = exhaustive_stats(n, Strategy::Nested, opts);

	CrossCheckReport r;
	r.l = l;
	r.analytic_avg = proposed_average(l);
	r.empirical_avg = proposed.average;
	r.avg_equal = r.analytic_avg == r.empirical_avg;

	r.nested_closed_form = nested_closed_forms(l).two;
	r.nested_formula = nested_average_formula(l);
	r.nested_dp = nested_tables(n).optimal(NestedCase::Mixed, n);
	r.nested_empirical = nested.average;
	r.nested_equal = r.nested_closed_form == r.nested_formula && r.nested_formula == r.nested_dp &&
	                 r.nested_dp == r.nested_empirical;

	r.predicted_max = worst_case_weighings(l);
	r.proposed_max = proposed.max;
	r.nested_max = nested.max;
	r.max_equal = r.proposed_max == r.predicted_max && r.nested_max == r.predicted_max;

	const auto table = pair_cost_table(l);
	r.per_delta.reserve(n);
	for (DeltaClass d = 0; d < n; ++d)
		r.per_delta.push_back({d, cost_given_delta(table, l, d), proposed.per_delta[d].average(),
		                       proposed.per_delta[d].count});
	r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return r;
}

nlohmann::json to_json(const CrossCheckReport& r)
{
	nlohmann::json per_delta = nlohmann::json::array();
	for (const auto& d : r.per_delta)
		per_delta.push_back({{"delta", d.delta},
		                     {"model", to_fraction_string(d.model)},
		                     {"empirical", to_fraction_string(d.empirical)},
		                     {"count", d.count},
		                     {"equal", d.model == d.empirical}});
	return {
	    {"l", r.l},
	    {"analytic_avg", to_fraction_string(r.analytic_avg)},
	    {"empirical_avg", to_fraction_string(r.empirical_avg)},
	    {"equal", r.ok()},
	    {"avg_equal", r.avg_equal},
	    {"nested_avg", to_fraction_string(r.nested_closed_form)},
	    {"nested_empirical_avg", to_fraction_string(r.nested_empirical)},
	    {"nested_equal", r.nested_equal},
	    {"empirical_max", r.proposed_max},
	    {"nested_empirical_max", r.nested_max},
	    {"predicted_max", r.predicted_max},
	    {"runtime_seconds", round_significant(r.runtime_seconds)},
	    {"per_delta", per_delta},
	};
}

FitResult fit_loglinear(int l_min, int l_max, std::span<const std::pair<int, double>> values)
{
	if (l_max <= l_min)
		throw InvalidInput("fit range needs l_max > l_min");
	std::vector<std::pair<double, double>> pts;
	for (auto [l, v] : values)
		if (l >= l_min && l <= l_max)
			pts.emplace_back(l, v);
	if (pts.size() < 2)
		throw InvalidInput("fit needs at least two points");

	double mx = 0, my = 0;
	for (auto [x, y] : pts) {
		mx += x;
		my += y;
	}
	mx /= pts.size();
	my /= pts.size();
	double sxx = 0, sxy = 0;
	for (auto [x, y] : pts) {
		sxx += (x - mx) * (x - mx);
		sxy += (x - mx) * (y - my);
	}
	if (sxx == 0)
		throw InvalidInput("fit needs at least two distinct l values");

	FitResult fit;
	fit.slope = sxy / sxx;
	fit.intercept = my - fit.slope * mx;
	fit.points = pts.size();
	for (auto [x, y] : pts)
		fit.max_residual = std::max(fit.max_residual, std::abs(y - (fit.slope * x + fit.intercept)));
	return fit;
}

std::vector<std::pair<int, double>> analytic_series(Strategy strategy, int l_min, int l_max)
{
	std::vector<std::pair<int, double>> out;
	for (int l = l_min; l <= l_max; ++l)
		out.emplace_back(l, strategy == Strategy::Proposed ? proposed_average_float(l) : nested_average_float(l));
	return out;
}

} // namespace coinweigh
