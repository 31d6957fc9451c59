#include "commands.hpp"

#include "coinweigh/analysis.hpp"
#include "coinweigh/model.hpp"
#include "coinweigh/rational.hpp"
#include "coinweigh/strategies.hpp"
#include "coinweigh/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace coinweigh::cli {

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct TraceArgs
{
	std::string weights;
	std::string strategy = "proposed";
};

struct AnalyzeArgs
{
	int l = 0;
	std::string mode = "exact";
	bool json = false;
};

struct VerifyArgs
{
	int l_max = 0;
	unsigned threads = 0;
	bool json = false;
};

struct SweepArgs
{
	int l_max = 0;
	std::string out_path;
	bool simulate = false;
	bool fit = false;
	bool json = false;
	unsigned threads = 0;
};

unsigned resolve_threads(unsigned requested)
{
	return requested ? requested : default_threads();
}

int cmd_trace(const TraceArgs& args, std::ostream& out)
{
	const auto strategy = parse_strategy(args.strategy);
	const auto config = parse_configuration(args.weights);
	const auto t = run_strategy(strategy, config);
	for (std::size_t k = 0; k < t.queries.size(); ++k)
		out << "step " << k + 1 << ": weigh " << format_subset(t.queries[k].subset.indices()) << " -> "
		    << t.queries[k].outcome << "\n";
	out << "recovered: " << format_weights(t.estimate) << "\n";
	out << "weighings: " << t.size() << "\n";
	return kSuccess;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out)
{
	if (args.l < 1)
		throw UsageError("--l must be >= 1");
	const bool exact = args.mode == "exact";
	if (exact && args.l > kEnumerationCap)
		throw UsageError("exact mode is limited to l <= " + std::to_string(kEnumerationCap) +
		                 "; use --mode float");
	if (!exact && args.l > kFloatCap)
		throw UsageError("float mode is limited to l <= " + std::to_string(kFloatCap));

	const std::size_t n = std::size_t{1} << args.l;
	const int worst = worst_case_weighings(args.l);
	const Bounds lb = lower_bounds(n);

	if (args.json) {
		nlohmann::json j = {{"l", args.l},
		                    {"n", n},
		                    {"mode", args.mode},
		                    {"prop_max", worst},
		                    {"nested_max", worst},
		                    {"lb_avg", round_significant(lb.ave_lb)},
		                    {"lb_max", round_significant(lb.worst_lb)}};
		if (exact) {
			j["prop_avg"] = to_fraction_string(proposed_average(args.l));
			j["nested_avg"] = to_fraction_string(nested_closed_forms(args.l).two);
		} else {
			j["prop_avg"] = round_significant(proposed_average_float(args.l));
			j["nested_avg"] = round_significant(nested_average_float(args.l));
		}
		out << j.dump(2) << "\n";
		return kSuccess;
	}

	out << "l = " << args.l << ", n = " << n << " (" << args.mode << ")\n";
	if (exact) {
		const Rational prop = proposed_average(args.l);
		const Rational nested = nested_closed_forms(args.l).two;
		out << "prop_avg    " << to_fraction_string(prop) << " (" << format_fixed(to_double(prop)) << ")\n";
		out << "prop_max    " << worst << "\n";
		out << "nested_avg  " << to_fraction_string(nested) << " (" << format_fixed(to_double(nested)) << ")\n";
	} else {
		out << "prop_avg    " << format_fixed(proposed_average_float(args.l)) << "\n";
		out << "prop_max    " << worst << "\n";
		out << "nested_avg  " << format_fixed(nested_average_float(args.l)) << "\n";
	}
	out << "nested_max  " << worst << "\n";
	out << "lb_avg      " << format_fixed(lb.ave_lb, 4) << "\n";
	out << "lb_max      " << format_fixed(lb.worst_lb, 4) << "\n";
	return kSuccess;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out)
{
	if (args.l_max < 1 || args.l_max > kEnumerationCap)
		throw UsageError("--l-max must be in [1, " + std::to_string(kEnumerationCap) + "]");
	const unsigned threads = resolve_threads(args.threads);

	bool all_ok = true;
	double runtime = 0;
	nlohmann::json reports = nlohmann::json::array();
	std::string failures;
	for (int l = 1; l <= args.l_max; ++l) {
		const auto r = cross_check(l, threads);
		runtime += r.runtime_seconds;
		all_ok = all_ok && r.ok();
		if (!r.ok())
			failures += r.mismatch_report();
		if (args.json) {
			reports.push_back(to_json(r));
			continue;
		}
		out << "l=" << l << ": " << (r.ok() ? "PASS" : "FAIL") << "  proposed "
		    << to_fraction_string(r.empirical_avg) << (r.avg_equal ? " == " : " != ")
		    << to_fraction_string(r.analytic_avg) << ", nested " << to_fraction_string(r.nested_empirical)
		    << (r.nested_equal ? " == " : " != ") << to_fraction_string(r.nested_closed_form) << ", max "
		    << r.proposed_max << "/" << r.nested_max << " (predicted " << r.predicted_max << "), "
		    << format_fixed(r.runtime_seconds, 2) << " s\n";
		out << "      per-delta branch model vs empirical (informational): " << r.per_delta_mismatches()
		    << " of " << r.per_delta.size() << " classes differ\n";
	}
	if (args.json) {
		out << reports.dump(2) << "\n";
	} else {
		if (all_ok)
			out << "PASS l=1.." << args.l_max << "\n";
		else
			out << "FAIL\n" << failures;
		out << "runtime: " << format_fixed(runtime, 2) << " s (" << threads << " threads)\n";
	}
	return all_ok ? kSuccess : kVerificationFailed;
}

void write_atomically(const std::string& path, const std::string& content)
{
	namespace fs = std::filesystem;
	const fs::path target(path);
	const fs::path temp = target.string() + ".tmp";
	{
		std::ofstream f(temp, std::ios::binary | std::ios::trunc);
		if (!f)
			throw UsageError("cannot write '" + path + "'");
		f << content;
		f.flush();
		if (!f) {
			std::error_code ec;
			fs::remove(temp, ec);
			throw UsageError("cannot write '" + path + "'");
		}
	}
	std::error_code ec;
	fs::rename(temp, target, ec);
	if (ec) {
		fs::remove(temp, ec);
		throw UsageError("cannot write '" + path + "'");
	}
}

int cmd_sweep(const SweepArgs& args, std::ostream& out)
{
	if (args.l_max < 2)
		throw UsageError("--l-max must be >= 2");
	if (args.l_max > kFloatCap)
		throw UsageError("--l-max must be <= " + std::to_string(kFloatCap));
	const unsigned threads = resolve_threads(args.threads);

	std::ostringstream body;
	nlohmann::json rows = nlohmann::json::array();
	if (!args.json) {
		body << "l,n,prop_avg,prop_max,nested_avg,nested_max,lb_avg,lb_max";
		if (args.simulate)
			body << ",sim_prop_avg,sim_nested_avg";
		body << "\n";
	}

	for (int l = 1; l <= args.l_max; ++l) {
		const std::size_t n = std::size_t{1} << l;
		const bool exact = l <= kEnumerationCap;
		const double prop = exact ? to_double(proposed_average(l)) : proposed_average_float(l);
		const double nested = exact ? to_double(nested_closed_forms(l).two) : nested_average_float(l);
		const int worst = worst_case_weighings(l);
		const Bounds lb = lower_bounds(n);
		std::optional<Rational> sim_prop, sim_nested;
		if (args.simulate && exact) {
			ExhaustiveOptions opts{.threads = threads};
			sim_prop = exhaustive_stats(n, Strategy::Proposed, opts).average;
			sim_nested = exhaustive_stats(n, Strategy::Nested, opts).average;
		}

		if (args.json) {
			nlohmann::json row = {{"l", l},
			                      {"n", n},
			                      {"prop_max", worst},
			                      {"nested_max", worst},
			                      {"lb_avg", round_significant(lb.ave_lb)},
			                      {"lb_max", round_significant(lb.worst_lb)}};
			if (exact) {
				row["prop_avg"] = to_fraction_string(proposed_average(l));
				row["nested_avg"] = to_fraction_string(nested_closed_forms(l).two);
			} else {
				row["prop_avg"] = round_significant(prop);
				row["nested_avg"] = round_significant(nested);
			}
			if (sim_prop) {
				row["sim_prop_avg"] = to_fraction_string(*sim_prop);
				row["sim_nested_avg"] = to_fraction_string(*sim_nested);
			}
			rows.push_back(std::move(row));
			continue;
		}
		body << l << "," << n << "," << format_significant(prop) << "," << worst << ","
		     << format_significant(nested) << "," << worst << "," << format_fixed(lb.ave_lb, 4) << ","
		     << format_fixed(lb.worst_lb, 4);
		if (args.simulate) {
			body << ",";
			if (sim_prop)
				body << format_significant(to_double(*sim_prop));
			body << ",";
			if (sim_nested)
				body << format_significant(to_double(*sim_nested));
		}
		body << "\n";
	}

	if (args.fit) {
		const int lo = args.l_max / 2;
		const auto series = analytic_series(Strategy::Proposed, lo, args.l_max);
		const auto fit = fit_loglinear(lo, args.l_max, series);
		const auto ref = asymptotic_constants();
		const double saving = 1.0 - fit.slope / ref.nested_slope;
		const double excess = fit.slope / ref.lb_slope - 1.0;
		if (args.json) {
			rows = nlohmann::json{{"rows", rows},
			                      {"fit",
			                       {{"l_min", lo},
			                        {"l_max", args.l_max},
			                        {"slope", round_significant(fit.slope)},
			                        {"intercept", round_significant(fit.intercept)},
			                        {"max_residual", round_significant(fit.max_residual)},
			                        {"saving_vs_nested", round_significant(saving)},
			                        {"excess_vs_lb", round_significant(excess)}}}};
		} else {
			body << "# fit proposed l=" << lo << ".." << args.l_max << ": slope=" << format_fixed(fit.slope)
			     << " intercept=" << format_fixed(fit.intercept) << " max_residual="
			     << format_significant(fit.max_residual) << "\n";
			body << "# saving_vs_nested=" << format_fixed(100 * saving, 2)
			     << "% excess_vs_lb=" << format_fixed(100 * excess, 2) << "%\n";
		}
	}
	if (args.json)
		body << rows.dump(2) << "\n";

	if (args.out_path.empty())
		out << body.str();
	else
		write_atomically(args.out_path, body.str());
	return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Adaptive coin weighing with a spring scale (total weight 2)", "cw"};
	app.require_subcommand(1);

	TraceArgs trace;
	auto* trace_cmd = app.add_subcommand("trace", "Run a strategy on one configuration and print each weighing");
	trace_cmd->add_option("--weights", trace.weights, "Comma-separated coin weights, e.g. 0,0,1,0,0,1,0,0")
	    ->required();
	trace_cmd->add_option("--strategy", trace.strategy, "proposed | nested")
	    ->check(CLI::IsMember({"proposed", "nested"}));

	AnalyzeArgs analyze;
	auto* analyze_cmd = app.add_subcommand("analyze", "Analytic averages, worst cases and lower bounds for n = 2^l");
	analyze_cmd->add_option("--l", analyze.l, "Exponent l (n = 2^l)")->required();
	analyze_cmd->add_option("--mode", analyze.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
	analyze_cmd->add_flag("--json", analyze.json, "Emit JSON");

	VerifyArgs verify;
	auto* verify_cmd = app.add_subcommand("verify", "Exhaustively cross-check analytic results for l = 1..l_max");
	verify_cmd->add_option("--l-max", verify.l_max, "Largest exponent to verify")->required();
	verify_cmd->add_option("--threads", verify.threads, "Worker threads (default: CW_THREADS or all cores)");
	verify_cmd->add_flag("--json", verify.json, "Emit JSON reports");

	SweepArgs sweep;
	auto* sweep_cmd = app.add_subcommand("sweep", "CSV table of averages, worst cases and bounds for l = 1..l_max");
	sweep_cmd->add_option("--l-max", sweep.l_max, "Largest exponent")->required();
	sweep_cmd->add_option("--out", sweep.out_path, "Output file (default: stdout)");
	sweep_cmd->add_flag("--simulate", sweep.simulate, "Add exhaustive-simulation columns where feasible");
	sweep_cmd->add_flag("--fit", sweep.fit, "Append a least-squares fit over the upper half of the l range");
	sweep_cmd->add_flag("--json", sweep.json, "Emit JSON instead of CSV");
	sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (default: CW_THREADS or all cores)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
	}

	try {
		if (*trace_cmd)
			return cmd_trace(trace, out);
		if (*analyze_cmd)
			return cmd_analyze(analyze, out);
		if (*verify_cmd)
			return cmd_verify(verify, out);
		return cmd_sweep(sweep, out);
	} catch (const UsageError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const InvalidInput& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const TooLarge& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const ContractViolation& e) {
		err << "internal error: " << e.what() << "\n";
		return kVerificationFailed;
	}
}

} // namespace coinweigh::cli
