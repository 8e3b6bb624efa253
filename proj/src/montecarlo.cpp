#include "scalekit/montecarlo.hpp"

#include "scalekit/closedform.hpp"
#include "scalekit/errors.hpp"
#include "scalekit/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace scalekit {

void MomentAccumulator::add(double x) {
    const double n_prev = static_cast<double>(n_);
    ++n_;
    const double n_now = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n_now;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n_prev;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n_now * n_now - 3.0 * n_now + 3.0) +
           6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n_now - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double nc = na + nb;
    const double delta = other.mean_ - mean_;
    const double delta2 = delta * delta;

    const double m2c = m2_ + other.m2_ + delta2 * na * nb / nc;
    const double m3c = m3_ + other.m3_ +
                       delta2 * delta * na * nb * (na - nb) / (nc * nc) +
                       3.0 * delta * (na * other.m2_ - nb * m2_) / nc;
    const double m4c =
        m4_ + other.m4_ +
        delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) /
            (nc * nc * nc) +
        6.0 * delta2 * (na * na * other.m2_ + nb * nb * m2_) / (nc * nc) +
        4.0 * delta * (na * other.m3_ - nb * m3_) / nc;

    mean_ += delta * nb / nc;
    m2_ = m2c;
    m3_ = m3c;
    m4_ = m4c;
    n_ += other.n_;
}

double MomentAccumulator::mean() const {
    if (n_ == 0) throw domain_error("empty accumulator has no mean");
    return mean_;
}

double MomentAccumulator::sample_variance() const {
    if (n_ < 2) throw domain_error("sample variance needs two values");
    return m2_ / (static_cast<double>(n_) - 1.0);
}

double MomentAccumulator::fourth_central_moment() const {
    if (n_ == 0) throw domain_error("empty accumulator has no moments");
    return m4_ / static_cast<double>(n_);
}

std::uint64_t cell_stream_id(const DistributionSpec& dist, std::size_t n) {
    // FNV-1a over the round-trippable spec string plus the sample size.
    const std::string key = dist.spec_string() + ':' + std::to_string(n);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : key) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

constexpr std::size_t kReplicateBlock = 1024;

struct CellAccumulators {
    MomentAccumulator sd;
    MomentAccumulator gini;
    MomentAccumulator meandev;
    MomentAccumulator meandev_plain;

    void merge(const CellAccumulators& other) {
        sd.merge(other.sd);
        gini.merge(other.gini);
        meandev.merge(other.meandev);
        meandev_plain.merge(other.meandev_plain);
    }
};

void accumulate_replicate(const DistributionSpec& dist, std::size_t n,
                          std::uint64_t seed, std::uint64_t cell_id,
                          std::uint64_t rep, CellAccumulators& acc) {
    SeededGenerator rng(derive_stream(seed, cell_id, rep));
    std::vector<double> xs = sample(dist, rng, n);
    std::sort(xs.begin(), xs.end());
    acc.sd.add(sd_n(xs));
    acc.gini.add(gini_n_sorted(xs));
    acc.meandev.add(mean_dev_n_sorted(xs, MeanDevScaling::Corrected));
    acc.meandev_plain.add(mean_dev_n_sorted(xs, MeanDevScaling::Plain));
}

// Monte Carlo standard error of the sample variance, from the fourth
// central moment of the replicate estimates.
double se_of_variance(const MomentAccumulator& acc) {
    const double r = static_cast<double>(acc.count());
    const double v = acc.sample_variance();
    const double m4 = acc.fourth_central_moment();
    const double var_of_var = (m4 - (r - 3.0) / (r - 1.0) * v * v) / r;
    return std::sqrt(std::max(0.0, var_of_var));
}

// With a single replication (smoke configs) every variance-derived
// statistic is reported as 0 rather than failing the run.
EstimatorStats finalize_estimator(const MomentAccumulator& acc, std::size_t n,
                                  double population_value) {
    EstimatorStats s;
    s.mean = acc.mean();
    const bool has_spread = acc.count() >= 2;
    const double v = has_spread ? acc.sample_variance() : 0.0;
    s.n_times_variance = static_cast<double>(n) * v;
    const double bias = s.mean - population_value;
    s.bias2_over_variance = v > 0.0 ? bias * bias / v : 0.0;
    s.se_n_times_variance =
        has_spread ? static_cast<double>(n) * se_of_variance(acc) : 0.0;
    return s;
}

// Relative efficiency of s against the sd on the same replicates:
// [var(sd)/var(s)] * [mean(s)^2 / mean(sd)^2] (empirical standardization),
// or with the population values in place of the means. The SE comes from
// the delta method with cross-covariances dropped (conservative).
void fill_rel_efficiency(EstimatorStats& s, const MomentAccumulator& acc,
                         const EstimatorStats& sd_stats,
                         const MomentAccumulator& sd_acc, double pop_value,
                         double pop_sigma, bool use_true_values) {
    if (!(s.n_times_variance > 0.0) || !(sd_stats.n_times_variance > 0.0)) {
        s.rel_efficiency_vs_sd = 0.0;
        s.se_rel_efficiency = 0.0;
        return;
    }
    const double v_ratio = sd_stats.n_times_variance / s.n_times_variance;
    const double scale2 =
        use_true_values ? pop_value * pop_value / (pop_sigma * pop_sigma)
                        : s.mean * s.mean / (sd_stats.mean * sd_stats.mean);
    s.rel_efficiency_vs_sd = v_ratio * scale2;

    const double r = static_cast<double>(acc.count());
    auto sq = [](double x) { return x * x; };
    double rel2 = sq(sd_stats.se_n_times_variance / sd_stats.n_times_variance) +
                  sq(s.se_n_times_variance / s.n_times_variance);
    if (!use_true_values) {
        rel2 += 4.0 * sq(std::sqrt(acc.sample_variance() / r) / s.mean) +
                4.0 * sq(std::sqrt(sd_acc.sample_variance() / r) / sd_stats.mean);
    }
    s.se_rel_efficiency = s.rel_efficiency_vs_sd * std::sqrt(rel2);
}

CellStats finalize_cell(const DistributionSpec& dist, std::size_t n,
                        std::size_t reps, const CellAccumulators& acc,
                        bool use_true_values) {
    const double pop_sigma = population_sigma(dist);
    const double pop_g = population_g(dist);
    const double pop_d = population_d(dist);

    CellStats cell{dist, n, reps, {}, {}, {}, {}, 0.0};
    cell.sd = finalize_estimator(acc.sd, n, pop_sigma);
    cell.sd.rel_efficiency_vs_sd = 1.0;
    cell.gini = finalize_estimator(acc.gini, n, pop_g);
    cell.meandev = finalize_estimator(acc.meandev, n, pop_d);
    cell.meandev_plain = finalize_estimator(acc.meandev_plain, n, pop_d);

    fill_rel_efficiency(cell.gini, acc.gini, cell.sd, acc.sd, pop_g, pop_sigma,
                        use_true_values);
    fill_rel_efficiency(cell.meandev, acc.meandev, cell.sd, acc.sd, pop_d,
                        pop_sigma, use_true_values);
    fill_rel_efficiency(cell.meandev_plain, acc.meandev_plain, cell.sd, acc.sd,
                        pop_d, pop_sigma, use_true_values);

    cell.gini_true_n_times_variance =
        static_cast<double>(n) * lomnicki_var(dist, n);
    return cell;
}

void require_cell_arguments(std::size_t n, std::size_t reps) {
    if (n < 2) throw domain_error("simulation cells need sample size n >= 2");
    if (reps < 1) {
        throw domain_error("simulation cells need at least 1 replication");
    }
}

} // namespace

CellStats run_cell(const DistributionSpec& dist, std::size_t n,
                   std::size_t reps, std::uint64_t seed,
                   bool standardize_with_true_values) {
    require_cell_arguments(n, reps);
    const std::uint64_t cell_id = cell_stream_id(dist, n);
    const std::size_t num_blocks = (reps + kReplicateBlock - 1) / kReplicateBlock;
    std::vector<CellAccumulators> blocks(num_blocks);

#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(num_blocks); ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kReplicateBlock;
        const std::size_t end = std::min(begin + kReplicateBlock, reps);
        CellAccumulators& acc = blocks[static_cast<std::size_t>(b)];
        for (std::size_t rep = begin; rep < end; ++rep) {
            accumulate_replicate(dist, n, seed, cell_id, rep, acc);
        }
    }

    CellAccumulators total;
    for (const CellAccumulators& block : blocks) total.merge(block);
    return finalize_cell(dist, n, reps, total, standardize_with_true_values);
}

CellStats run_cell_reference(const DistributionSpec& dist, std::size_t n,
                             std::size_t reps, std::uint64_t seed,
                             bool standardize_with_true_values) {
    require_cell_arguments(n, reps);
    const std::uint64_t cell_id = cell_stream_id(dist, n);
    CellAccumulators acc;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        accumulate_replicate(dist, n, seed, cell_id, rep, acc);
    }
    return finalize_cell(dist, n, reps, acc, standardize_with_true_values);
}

std::vector<CellStats> run_study(const StudyConfig& cfg) {
    if (cfg.distributions.empty()) {
        throw domain_error("study config needs at least one distribution");
    }
    if (cfg.sample_sizes.empty()) {
        throw domain_error("study config needs at least one sample size");
    }
    std::vector<CellStats> cells;
    cells.reserve(cfg.distributions.size() * cfg.sample_sizes.size());
    for (const DistributionSpec& dist : cfg.distributions) {
        for (const std::size_t n : cfg.sample_sizes) {
            cells.push_back(run_cell(dist, n, cfg.replications, cfg.seed,
                                     cfg.standardize_with_true_values));
        }
    }
    return cells;
}

namespace {

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

// "family:params" -> params part ("" when the family has no parameters
// spelled out; spec_string always includes them, so this is just the tail).
std::string params_of(const DistributionSpec& dist) {
    const std::string spec = dist.spec_string();
    const std::size_t colon = spec.find(':');
    return colon == std::string::npos ? std::string() : spec.substr(colon + 1);
}

void append_estimator_row(std::string& out, const CellStats& cell,
                          const char* name, const EstimatorStats& s,
                          bool with_rel_eff, bool with_true_n_var) {
    out += cell.dist.family_name();
    out += ',';
    out += params_of(cell.dist);
    out += ',';
    out += std::to_string(cell.n);
    out += ',';
    out += name;
    out += ',';
    out += fmt9(s.n_times_variance);
    out += ',';
    out += fmt9(s.bias2_over_variance);
    out += ',';
    if (with_rel_eff) out += fmt9(s.rel_efficiency_vs_sd);
    out += ',';
    if (with_true_n_var) out += fmt9(cell.gini_true_n_times_variance);
    out += '\n';
}

nlohmann::json estimator_json(const EstimatorStats& s, bool with_rel_eff) {
    nlohmann::json j{{"mean", s.mean},
                     {"n_var", s.n_times_variance},
                     {"bias2_over_var", s.bias2_over_variance},
                     {"se_n_var", s.se_n_times_variance}};
    if (with_rel_eff) {
        j["rel_eff"] = s.rel_efficiency_vs_sd;
        j["se_rel_eff"] = s.se_rel_efficiency;
    }
    return j;
}

nlohmann::json config_json(const StudyConfig& cfg) {
    nlohmann::json dists = nlohmann::json::array();
    for (const DistributionSpec& d : cfg.distributions) {
        dists.push_back(d.spec_string());
    }
    return nlohmann::json{
        {"distributions", dists},
        {"sample_sizes", cfg.sample_sizes},
        {"replications", cfg.replications},
        {"seed", cfg.seed},
        {"standardize_with_true_values", cfg.standardize_with_true_values}};
}

} // namespace

std::string study_csv(const StudyConfig& cfg,
                      const std::vector<CellStats>& cells) {
    std::string out;
    out += "# seed=" + std::to_string(cfg.seed) + "\n";
    out += "# replications=" + std::to_string(cfg.replications) + "\n";
    out += "# standardization=";
    out += cfg.standardize_with_true_values ? "true_values" : "empirical_means";
    out += "\n";
    out += "family,params,n,estimator,n_var,bias2_over_var,rel_eff,true_n_var\n";
    for (const CellStats& cell : cells) {
        append_estimator_row(out, cell, "sd", cell.sd, false, false);
        append_estimator_row(out, cell, "gini", cell.gini, true, true);
        append_estimator_row(out, cell, "meandev", cell.meandev, true, false);
        append_estimator_row(out, cell, "meandev_plain", cell.meandev_plain,
                             true, false);
    }
    return out;
}

std::string study_json(const StudyConfig& cfg,
                       const std::vector<CellStats>& cells) {
    nlohmann::json report{{"schema_version", 1},
                          {"config", config_json(cfg)},
                          {"cells", nlohmann::json::array()}};
    for (const CellStats& cell : cells) {
        report["cells"].push_back(nlohmann::json{
            {"family", cell.dist.family_name()},
            {"params", params_of(cell.dist)},
            {"dist", cell.dist.spec_string()},
            {"n", cell.n},
            {"sd", estimator_json(cell.sd, false)},
            {"gini", estimator_json(cell.gini, true)},
            {"meandev", estimator_json(cell.meandev, true)},
            {"meandev_plain", estimator_json(cell.meandev_plain, true)},
            {"gini_true_n_var", cell.gini_true_n_times_variance}});
    }
    return report.dump(2) + "\n";
}

StudyConfig load_study_config(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr,
                                             /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw domain_error("study config must be a JSON object");
    }
    StudyConfig cfg;

    if (!j.contains("distributions") || !j["distributions"].is_array() ||
        j["distributions"].empty()) {
        throw domain_error("study config needs a non-empty 'distributions' array");
    }
    for (const auto& item : j["distributions"]) {
        if (!item.is_string()) {
            throw domain_error("'distributions' entries must be spec strings");
        }
        cfg.distributions.push_back(
            parse_distribution(item.get<std::string>()));
    }

    if (!j.contains("sample_sizes") || !j["sample_sizes"].is_array() ||
        j["sample_sizes"].empty()) {
        throw domain_error("study config needs a non-empty 'sample_sizes' array");
    }
    cfg.sample_sizes.clear();
    for (const auto& item : j["sample_sizes"]) {
        if (!item.is_number_integer()) {
            throw domain_error("'sample_sizes' entries must be integers >= 2");
        }
        const long long n = item.get<long long>();
        if (n < 2) throw domain_error("'sample_sizes' entries must be >= 2");
        cfg.sample_sizes.push_back(static_cast<std::size_t>(n));
    }

    if (!j.contains("replications") || !j["replications"].is_number_integer()) {
        throw domain_error("study config needs an integer 'replications'");
    }
    const long long reps = j["replications"].get<long long>();
    if (reps < 1) throw domain_error("'replications' must be >= 1");
    cfg.replications = static_cast<std::size_t>(reps);

    if (!j.contains("seed") || !j["seed"].is_number_integer()) {
        throw domain_error("study config needs an integer 'seed'");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();

    if (j.contains("standardize_with_true_values")) {
        if (!j["standardize_with_true_values"].is_boolean()) {
            throw domain_error("'standardize_with_true_values' must be boolean");
        }
        cfg.standardize_with_true_values =
            j["standardize_with_true_values"].get<bool>();
    }
    return cfg;
}

} // namespace scalekit
