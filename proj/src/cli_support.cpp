#include "scalekit/cli_support.hpp"

#include "scalekit/closedform.hpp"
#include "scalekit/curves.hpp"
#include "scalekit/distributions.hpp"
#include "scalekit/errors.hpp"
#include "scalekit/estimators.hpp"
#include "scalekit/influence.hpp"
#include "scalekit/montecarlo.hpp"
#include "scalekit/verification.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace scalekit {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// "normal:0,1" -> "0,1"
std::string params_of(const DistributionSpec& dist) {
    const std::string spec = dist.spec_string();
    const std::size_t colon = spec.find(':');
    return colon == std::string::npos ? std::string() : spec.substr(colon + 1);
}

double parse_double_token(const std::string& tok, bool& ok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    ok = !tok.empty() && end == tok.c_str() + tok.size() && std::isfinite(v);
    return v;
}

AxisRange parse_range(const char* flag, const std::string& text) {
    const auto bad = [flag, &text]() -> AxisRange {
        throw domain_error(std::string(flag) + ": expected lo:hi:count, got '" +
                           text + "'");
    };
    const std::size_t p1 = text.find(':');
    if (p1 == std::string::npos) return bad();
    const std::size_t p2 = text.find(':', p1 + 1);
    if (p2 == std::string::npos || text.find(':', p2 + 1) != std::string::npos)
        return bad();
    bool ok_lo = false, ok_hi = false;
    AxisRange range;
    range.lo = parse_double_token(text.substr(0, p1), ok_lo);
    range.hi = parse_double_token(text.substr(p1 + 1, p2 - p1 - 1), ok_hi);
    const std::string count_tok = text.substr(p2 + 1);
    char* end = nullptr;
    const unsigned long count = std::strtoul(count_tok.c_str(), &end, 10);
    const bool ok_count = !count_tok.empty() &&
                          end == count_tok.c_str() + count_tok.size() &&
                          count > 0;
    if (!ok_lo || !ok_hi || !ok_count) return bad();
    range.count = count;
    return range;
}

std::string range_echo(const AxisRange& range) {
    return fmt9(range.lo) + ":" + fmt9(range.hi) + ":" +
           std::to_string(range.count);
}

ScaleKind parse_kind(const char* flag, const std::string& text) {
    if (text == "sd") return ScaleKind::Sd;
    if (text == "meandev") return ScaleKind::MeanDev;
    if (text == "gini") return ScaleKind::Gini;
    if (text == "iqr") return ScaleKind::Iqr;
    throw domain_error(std::string(flag) + ": unknown scale kind '" + text +
                       "' (expected sd, meandev, gini, or iqr)");
}

DistributionSpec parse_dist_flag(const char* flag, const std::string& text) {
    try {
        return parse_distribution(text);
    } catch (const domain_error& e) {
        throw domain_error(std::string(flag) + ": " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

// One value per line; an initial non-numeric line is tolerated as a header,
// any later non-numeric line is an error.
std::vector<double> read_one_column(std::istream& in, const std::string& name) {
    std::vector<double> values;
    std::string line;
    long long lineno = 0;
    bool awaiting_first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const std::size_t e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        bool ok = false;
        const double v = parse_double_token(tok, ok);
        if (!ok) {
            if (awaiting_first) {
                awaiting_first = false; // header row
                continue;
            }
            throw domain_error("--input: line " + std::to_string(lineno) +
                               " of " + name + " is not a number: '" + tok +
                               "'");
        }
        awaiting_first = false;
        values.push_back(v);
    }
    if (values.empty())
        throw domain_error("--input: no numeric rows in " + name);
    return values;
}

std::string cmd_estimate(const std::string& input, const std::string& list) {
    std::vector<std::string> names = split_list(list);
    if (names.empty() || (names.size() == 1 && names[0].empty()))
        throw domain_error("--estimators: empty list");

    std::vector<double> values;
    if (input == "-") {
        values = read_one_column(std::cin, "stdin");
    } else {
        std::ifstream file(input);
        if (!file)
            throw domain_error("--input: cannot read '" + input + "'");
        values = read_one_column(file, input);
    }

    std::string rows;
    for (const std::string& name : names) {
        double v = 0.0;
        if (name == "sd") v = sd_n(values);
        else if (name == "meandev") v = mean_dev_n(values, MeanDevScaling::Corrected);
        else if (name == "gini") v = gini_n(values);
        else if (name == "iqr") v = iqr_n(values);
        else
            throw domain_error("--estimators: unknown estimator '" + name +
                               "' (expected sd, meandev, gini, iqr)");
        rows += name + "," + fmt9(v) + "\n";
    }

    std::string payload = "# command=estimate input=" + input +
                          " estimators=" + list + " n=" +
                          std::to_string(values.size()) + "\n";
    payload += "estimator,value\n";
    payload += rows;
    return payload;
}

std::string cmd_summarize(const std::string& dist_text) {
    const DistributionSpec dist = parse_dist_flag("--dist", dist_text);
    const PopulationSummary s = summarize(dist);
    std::string payload =
        "# command=summarize dist=" + dist.spec_string() + "\n";
    payload +=
        "family,params,sigma,d,g,J,asv_sd,asv_d,asv_g,asv_iqr,are_g,are_d,are_iqr\n";
    payload += std::string(dist.family_name()) + "," + params_of(dist) + "," +
               fmt9(s.sigma) + "," + fmt9(s.d) + "," + fmt9(s.g) + "," +
               fmt9(s.J) + "," + fmt9(s.asv_sd) + "," + fmt9(s.asv_d) + "," +
               fmt9(s.asv_g) + "," + fmt9(s.asv_iqr) + "," + fmt9(s.are_g) +
               "," + fmt9(s.are_d) + "," + fmt9(s.are_iqr) + "\n";
    return payload;
}

std::string cmd_are(const std::string& dist_text, const std::string& kind_text) {
    const DistributionSpec dist = parse_dist_flag("--dist", dist_text);
    const ScaleKind kind = parse_kind("--kind", kind_text);
    std::string payload = "# command=are dist=" + dist.spec_string() +
                          " kind=" + kind_text + "\n";
    payload += fmt9(are(kind, dist)) + "\n";
    return payload;
}

std::string cmd_lomnicki(const std::string& dist_text, long long n) {
    const DistributionSpec dist = parse_dist_flag("--dist", dist_text);
    if (n < 2) throw domain_error("--n: need a sample size of at least 2");
    const double var = lomnicki_var(dist, static_cast<std::size_t>(n));
    std::string payload = "# command=lomnicki dist=" + dist.spec_string() +
                          " n=" + std::to_string(n) + "\n";
    payload += "family,params,n,variance,n_times_variance\n";
    payload += std::string(dist.family_name()) + "," + params_of(dist) + "," +
               std::to_string(n) + "," + fmt9(var) + "," +
               fmt9(static_cast<double>(n) * var) + "\n";
    return payload;
}

std::string cmd_influence(const std::string& dist_text,
                          const std::string& kinds_text,
                          const std::string& range_text) {
    const DistributionSpec dist = parse_dist_flag("--dist", dist_text);
    bool want[3] = {false, false, false}; // sd, meandev, gini
    for (const std::string& name : split_list(kinds_text)) {
        if (name == "sd") want[0] = true;
        else if (name == "meandev") want[1] = true;
        else if (name == "gini") want[2] = true;
        else if (name == "iqr")
            throw domain_error(
                "--kinds: no influence function is provided for the iqr");
        else
            throw domain_error("--kinds: unknown scale kind '" + name +
                               "' (expected sd, meandev, gini)");
    }
    if (!want[0] && !want[1] && !want[2])
        throw domain_error("--kinds: empty list");
    const AxisRange range = parse_range("--range", range_text);
    const std::vector<double> xs = axis_values(range);

    const ScaleKind kinds[3] = {ScaleKind::Sd, ScaleKind::MeanDev,
                                ScaleKind::Gini};
    const char* names[3] = {"sd", "meandev", "gini"};
    std::string resolved;
    std::string header = "x";
    for (int k = 0; k < 3; ++k) {
        if (!want[k]) continue;
        if (!resolved.empty()) resolved += ",";
        resolved += names[k];
        header += std::string(",if_") + names[k];
    }

    std::string payload = "# command=influence dist=" + dist.spec_string() +
                          " kinds=" + resolved + " range=" +
                          range_echo(range) + "\n";
    payload += header + "\n";
    for (const double x : xs) {
        payload += fmt9(x);
        for (int k = 0; k < 3; ++k) {
            if (!want[k]) continue;
            payload += "," + fmt9(influence_value(kinds[k], dist, x));
        }
        payload += "\n";
    }
    return payload;
}

std::string cmd_surface(const std::string& kind_text,
                        const std::string& lambda_text,
                        const std::string& eps_text) {
    const ScaleKind kind = parse_kind("--kind", kind_text);
    const AxisRange lambda_range = parse_range("--lambda", lambda_text);
    const AxisRange eps_range = parse_range("--log10eps", eps_text);
    const SurfaceGrid grid = are_surface(kind, lambda_range, eps_range);

    std::string payload = "# command=surface kind=" + kind_text +
                          " lambda=" + range_echo(lambda_range) +
                          " log10eps=" + range_echo(eps_range) + "\n";
    payload += "lambda,log10_epsilon,are\n";
    const std::size_t cols = grid.log10_eps_axis.size();
    for (std::size_t i = 0; i < grid.lambda_axis.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            payload += fmt9(grid.lambda_axis[i]) + "," +
                       fmt9(grid.log10_eps_axis[j]) + "," +
                       fmt9(grid.values[i * cols + j]) + "\n";
        }
    }
    return payload;
}

std::string cmd_iso(const std::string& pair_text,
                    const std::string& lambda_text) {
    EfficiencyPair pair;
    try {
        pair = parse_pair(pair_text);
    } catch (const domain_error& e) {
        throw domain_error(std::string("--pair: ") + e.what());
    }
    const AxisRange lambda_range = parse_range("--lambda", lambda_text);
    const IsoCurveResult curve = iso_curve(pair, axis_values(lambda_range));

    std::string payload = "# command=iso pair=" + std::string(pair_name(pair)) +
                          " lambda=" + range_echo(lambda_range) + "\n";
    if (!curve.skipped_lambdas.empty()) {
        payload += "# skipped_lambdas=";
        for (std::size_t i = 0; i < curve.skipped_lambdas.size(); ++i) {
            if (i) payload += ",";
            payload += fmt9(curve.skipped_lambdas[i]);
        }
        payload += "\n";
    }
    payload += "pair,lambda,epsilon\n";
    for (const IsoCurvePoint& p : curve.points) {
        payload += std::string(pair_name(p.pair)) + "," + fmt9(p.lambda) +
                   "," + fmt9(p.epsilon) + "\n";
    }
    return payload;
}

std::string cmd_simulate(const std::string& config_path,
                         const std::string& format, bool force_true_std) {
    if (format != "csv" && format != "json")
        throw domain_error("--format: expected 'csv' or 'json', got '" +
                           format + "'");
    std::ifstream file(config_path);
    if (!file)
        throw domain_error("--config: cannot read '" + config_path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    StudyConfig cfg;
    try {
        cfg = load_study_config(buf.str());
    } catch (const domain_error& e) {
        throw domain_error(std::string("--config: ") + e.what());
    }
    if (force_true_std) cfg.standardize_with_true_values = true;

    const std::vector<CellStats> cells = run_study(cfg);
    if (format == "json") {
        std::string payload = study_json(cfg, cells);
        if (payload.empty() || payload.back() != '\n') payload += "\n";
        return payload;
    }
    std::string payload = "# command=simulate config=" + config_path +
                          " format=csv\n";
    payload += study_csv(cfg, cells);
    return payload;
}

std::string cmd_verify(const std::string& scope_text, int& status) {
    VerifyScope scope;
    if (scope_text == "full") scope = VerifyScope::Full;
    else if (scope_text == "quick") scope = VerifyScope::Quick;
    else
        throw domain_error("--scope: expected 'full' or 'quick', got '" +
                           scope_text + "'");

    const VerifyReport report = run_verification(scope);
    std::string payload = "# command=verify scope=" + scope_text + "\n";
    payload += "check,expected,actual,abs_error,tolerance,status\n";
    for (const VerifyCheck& check : report.checks) {
        payload += "\"" + check.name + "\"," + fmt9(check.expected) + "," +
                   fmt9(check.actual) + "," +
                   fmt9(std::fabs(check.actual - check.expected)) + "," +
                   fmt9(check.tolerance) + "," +
                   (check.passed ? "pass" : "fail") + "\n";
    }
    payload += "# checks=" + std::to_string(report.checks.size()) +
               " failures=" + std::to_string(report.failures) +
               " gj_combinations=" + std::to_string(report.gj_combinations) +
               "\n";
    status = report.all_passed() ? 0 : 4;
    return payload;
}

void write_payload(const std::string& path, const std::string& payload,
                   std::ostream& out) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw domain_error("--output: cannot write '" + path + "'");
    file << payload;
    if (!file)
        throw domain_error("--output: write to '" + path + "' failed");
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Robust scale estimators: sample values, asymptotic "
                 "variances and efficiencies, equal-efficiency curves, and a "
                 "Monte Carlo study harness."};
    app.name("scalekit");
    app.require_subcommand(1);

    int threads = 0;

    auto* est = app.add_subcommand(
        "estimate", "compute scale estimates from a one-column CSV");
    std::string est_input;
    std::string est_list = "sd,meandev,gini,iqr";
    std::string est_output;
    est->add_option("--input", est_input,
                    "input file with one value per line ('-' for stdin)")
        ->required();
    est->add_option("--estimators", est_list,
                    "comma-separated subset of sd,meandev,gini,iqr");

    auto* summ = app.add_subcommand(
        "summarize", "population scale values, asymptotic variances and "
                     "efficiencies for one distribution");
    std::string summ_dist;
    std::string summ_output;
    summ->add_option("--dist", summ_dist, "distribution spec")->required();

    auto* are_cmd = app.add_subcommand(
        "are", "asymptotic efficiency of one estimator relative to the "
               "standard deviation");
    std::string are_dist;
    std::string are_kind;
    std::string are_output;
    are_cmd->add_option("--dist", are_dist, "distribution spec")->required();
    are_cmd->add_option("--kind", are_kind, "sd|meandev|gini|iqr")->required();

    auto* lom = app.add_subcommand(
        "lomnicki", "exact finite-sample variance of the Gini mean difference");
    std::string lom_dist;
    long long lom_n = 0;
    std::string lom_output;
    lom->add_option("--dist", lom_dist, "distribution spec")->required();
    lom->add_option("--n", lom_n, "sample size")->required();

    auto* infl = app.add_subcommand(
        "influence", "influence-function curves over an x grid");
    std::string infl_dist;
    std::string infl_kinds = "sd,meandev,gini";
    std::string infl_range = "-4:4:401";
    std::string infl_output;
    infl->add_option("--dist", infl_dist, "distribution spec")->required();
    infl->add_option("--kinds", infl_kinds,
                     "comma-separated subset of sd,meandev,gini");
    infl->add_option("--range", infl_range, "x grid as lo:hi:count");

    auto* surf = app.add_subcommand(
        "surface", "efficiency relative to sd over the normal-mixture "
                   "(lambda, epsilon) plane");
    std::string surf_kind;
    std::string surf_lambda;
    std::string surf_eps;
    std::string surf_output;
    surf->add_option("--kind", surf_kind, "meandev|gini|iqr")->required();
    surf->add_option("--lambda", surf_lambda, "lambda grid as lo:hi:count")
        ->required();
    surf->add_option("--log10eps", surf_eps,
                     "log10(epsilon) grid as lo:hi:count")
        ->required();

    auto* iso = app.add_subcommand(
        "iso", "equal-efficiency contamination threshold per lambda");
    std::string iso_pair;
    std::string iso_lambda;
    std::string iso_output;
    iso->add_option("--pair", iso_pair, "gini-sd|meandev-sd|gini-meandev")
        ->required();
    iso->add_option("--lambda", iso_lambda, "lambda grid as lo:hi:count")
        ->required();

    auto* sim = app.add_subcommand(
        "simulate", "Monte Carlo study of the estimators from a JSON config");
    std::string sim_config;
    std::string sim_format = "csv";
    std::string sim_output;
    bool sim_true_std = false;
    sim->add_option("--config", sim_config, "study config JSON file")
        ->required();
    sim->add_option("--format", sim_format, "csv|json");
    sim->add_flag("--true-standardization", sim_true_std,
                  "standardize efficiencies with population values instead "
                  "of empirical means");

    auto* ver = app.add_subcommand(
        "verify", "closed-form vs quadrature battery; nonzero exit on any "
                  "tolerance breach");
    std::string ver_scope = "full";
    std::string ver_output;
    ver->add_option("--scope", ver_scope, "full|quick");

    struct SubOutput {
        CLI::App* sub;
        std::string* output;
    };
    const SubOutput outputs[] = {
        {est, &est_output},   {summ, &summ_output}, {are_cmd, &are_output},
        {lom, &lom_output},   {infl, &infl_output}, {surf, &surf_output},
        {iso, &iso_output},   {sim, &sim_output},   {ver, &ver_output},
    };
    for (const SubOutput& entry : outputs) {
        entry.sub->add_option("--output", *entry.output,
                              "write to this file instead of stdout");
        entry.sub->add_option("--threads", threads,
                              "limit OpenMP parallelism (default: machine "
                              "parallelism)");
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        std::string payload;
        const std::string* output_path = nullptr;
        int status = 0;
        if (est->parsed()) {
            payload = cmd_estimate(est_input, est_list);
            output_path = &est_output;
        } else if (summ->parsed()) {
            payload = cmd_summarize(summ_dist);
            output_path = &summ_output;
        } else if (are_cmd->parsed()) {
            payload = cmd_are(are_dist, are_kind);
            output_path = &are_output;
        } else if (lom->parsed()) {
            payload = cmd_lomnicki(lom_dist, lom_n);
            output_path = &lom_output;
        } else if (infl->parsed()) {
            payload = cmd_influence(infl_dist, infl_kinds, infl_range);
            output_path = &infl_output;
        } else if (surf->parsed()) {
            payload = cmd_surface(surf_kind, surf_lambda, surf_eps);
            output_path = &surf_output;
        } else if (iso->parsed()) {
            payload = cmd_iso(iso_pair, iso_lambda);
            output_path = &iso_output;
        } else if (sim->parsed()) {
            payload = cmd_simulate(sim_config, sim_format, sim_true_std);
            output_path = &sim_output;
        } else if (ver->parsed()) {
            payload = cmd_verify(ver_scope, status);
            output_path = &ver_output;
        }
        if (output_path != nullptr) write_payload(*output_path, payload, out);
        if (status != 0)
            err << "verification failed: see the check table for details\n";
        return status;
    } catch (const accuracy_error& e) {
        err << "accuracy error: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace scalekit
