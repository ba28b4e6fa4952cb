#include "penmin/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "penmin/rng.hpp"

namespace penmin {

namespace {

constexpr const char* kCsvHeader = "id,empirical_risk,pen0,pen1,complexity";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& field, int line_no) {
    const std::string t = trimmed(field);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::parse,
                    "line " + std::to_string(line_no) + ": bad real '" + t + "'");
    }
    return value;
}

std::int64_t parse_id(const std::string& field, int line_no) {
    const std::string t = trimmed(field);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad id '" + t + "'");
    }
    return value;
}

} // namespace

Collection read_collection_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::parse, "missing CSV header");
    }
    if (trimmed(line.substr(0, line.find('\r'))) != kCsvHeader) {
        throw Error(ErrorCode::parse, std::string("expected header '") + kCsvHeader + "'");
    }
    std::vector<EstimatorRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw Error(ErrorCode::parse,
                        "line " + std::to_string(line_no) + ": expected 5 fields, got " +
                            std::to_string(fields.size()));
        }
        EstimatorRecord r;
        r.id = parse_id(fields[0], line_no);
        r.empirical_risk = parse_real(fields[1], line_no);
        r.pen0 = parse_real(fields[2], line_no);
        r.pen1 = parse_real(fields[3], line_no);
        r.complexity = parse_real(fields[4], line_no);
        records.push_back(r);
    }
    return validate_collection(std::move(records));
}

Collection load_collection_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open '" + path + "'");
    }
    return read_collection_csv(in);
}

void write_collection_csv(std::ostream& out, const Collection& collection) {
    out << kCsvHeader << '\n';
    out << std::setprecision(17);
    for (const auto& r : collection.records()) {
        out << r.id << ',' << r.empirical_risk << ',' << r.pen0 << ',' << r.pen1 << ','
            << r.complexity << '\n';
    }
}

nlohmann::json path_to_json(const PenalizedPath& path) {
    nlohmann::json breakpoints = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < path.breakpoints.size(); ++i) {
        breakpoints.push_back(path.breakpoints[i]);
    }
    breakpoints.push_back("inf");
    return nlohmann::json{{"breakpoints", breakpoints}, {"models", path.models}};
}

PenalizedPath path_from_json(const nlohmann::json& j) {
    PenalizedPath path;
    for (const auto& b : j.at("breakpoints")) {
        if (b.is_string()) {
            if (b.get<std::string>() != "inf") {
                throw Error(ErrorCode::parse, "unexpected breakpoint string");
            }
            path.breakpoints.push_back(std::numeric_limits<double>::infinity());
        } else {
            path.breakpoints.push_back(b.get<double>());
        }
    }
    path.models = j.at("models").get<std::vector<std::int64_t>>();
    if (path.models.empty() || path.breakpoints.size() != path.models.size() + 1) {
        throw Error(ErrorCode::parse, "inconsistent path");
    }
    return path;
}

nlohmann::json jump_to_json(const JumpDiagnostics& d, const std::string& method) {
    nlohmann::json j{{"method", method}, {"c_hat", d.c_hat}, {"max_drop", d.jump_size}};
    if (d.interval) {
        j["interval"] = {d.interval->first, d.interval->second};
    }
    return j;
}

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

} // namespace

nlohmann::json outcome_to_json(const SelectionOutcome& outcome) {
    nlohmann::json j{{"method", method_name(outcome.method)},
                     {"selected_id", outcome.selected_id},
                     {"c_hat", finite_or_null(outcome.c_hat)}};
    nlohmann::json diag = nlohmann::json::object();
    const auto& d = outcome.diagnostics;
    if (d.jump) {
        diag["jump"] = jump_to_json(*d.jump, method_name(outcome.method));
    }
    if (d.slope_fit) {
        diag["slope_fit"] = {{"c_hat", d.slope_fit->c_hat},
                             {"n_points", d.slope_fit->n_points},
                             {"residual_sse", d.slope_fit->residual_sse}};
    }
    if (d.capushe) {
        nlohmann::json platforms = nlohmann::json::array();
        for (const auto& p : d.capushe->platforms) {
            platforms.push_back({{"D_start", p.d_start}, {"N", p.length}, {"model", p.model}});
        }
        diag["capushe"] = {{"selected_id", d.capushe->selected_id},
                           {"c_hat", d.capushe->c_hat},
                           {"platforms", platforms},
                           {"chosen_platform", d.capushe->chosen_platform}};
    }
    if (d.component_c) {
        diag["component_c"] = *d.component_c;
    }
    if (!d.votes.empty()) {
        diag["votes"] = d.votes;
        diag["agreed"] = d.agreed;
    }
    if (d.degenerate_threshold) {
        diag["degenerate_threshold"] = true;
    }
    j["diagnostics"] = diag;
    return j;
}

nlohmann::json report_to_json(const MonteCarloReport& report) {
    nlohmann::json methods = nlohmann::json::object();
    for (std::size_t m = 0; m < kSimMethodCount; ++m) {
        const auto& a = report.methods[m];
        methods[sim_method_label(static_cast<SimMethod>(m))] = {
            {"mean_c", finite_or_null(a.mean_c)},
            {"sd_c", finite_or_null(a.sd_c)},
            {"mse_c", finite_or_null(a.mse_c)},
            {"risk_ratio_mean", finite_or_null(a.risk_ratio_mean)},
            {"risk_ratio_se", finite_or_null(a.risk_ratio_se)},
            {"n_ok", a.n_ok},
        };
    }
    const auto& f = report.frequencies;
    return nlohmann::json{
        {"setting", family_name(report.setting)},
        {"n", report.n},
        {"sigma2", report.sigma2},
        {"replicates", report.replicates},
        {"seed", report.master_seed},
        {"methods", methods},
        {"frequencies",
         {{"all_equal", f.all_equal},
          {"exactly_four_equal", f.exactly_four_equal},
          {"at_least_three_equal", f.at_least_three_equal},
          {"all_different", f.all_different},
          {"maxjump_eq_threshold", f.maxjump_eq_threshold},
          {"maxjump_threshold_window_all_different", f.maxjump_threshold_window_all_different}}},
        {"consensus_agreed_count", report.consensus_agreed_count},
        {"max_p1p2_rel_diff", report.max_p1p2_rel_diff},
    };
}

std::string report_to_text(const MonteCarloReport& report) {
    std::ostringstream out;
    out << "setting=" << family_name(report.setting) << " n=" << report.n
        << " sigma2=" << report.sigma2 << " N=" << report.replicates
        << " seed=" << report.master_seed << "\n\n";
    out << std::left << std::setw(16) << "method" << std::right << std::setw(10) << "E[C/s2]"
        << std::setw(10) << "sd" << std::setw(10) << "MSE" << std::setw(12) << "risk ratio"
        << std::setw(10) << "se" << '\n';
    auto cell = [&](double v, int width, int prec) {
        std::ostringstream c;
        if (std::isnan(v)) {
            c << "--";
        } else {
            c << std::fixed << std::setprecision(prec) << v;
        }
        out << std::setw(width) << c.str();
    };
    for (std::size_t m = 0; m < kSimMethodCount; ++m) {
        const auto& a = report.methods[m];
        out << std::left << std::setw(16) << sim_method_label(static_cast<SimMethod>(m))
            << std::right;
        cell(a.mean_c, 10, 3);
        cell(a.sd_c, 10, 3);
        cell(a.mse_c, 10, 4);
        cell(a.risk_ratio_mean, 12, 3);
        cell(a.risk_ratio_se, 10, 4);
        out << '\n';
    }
    const auto& f = report.frequencies;
    out << "\nagreement: all_equal=" << std::fixed << std::setprecision(3) << f.all_equal
        << " exactly4=" << f.exactly_four_equal << " at_least3=" << f.at_least_three_equal
        << " all_different=" << f.all_different << " maxj==thr=" << f.maxjump_eq_threshold
        << " mtw_diff=" << f.maxjump_threshold_window_all_different << '\n';
    return out.str();
}

void sweep_to_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
    out << "C,risk_ratio,se\n";
    out << std::setprecision(12);
    for (const auto& p : sweep) {
        out << p.c << ',' << p.risk_ratio_mean << ',';
        if (std::isnan(p.se)) {
            out << "nan";
        } else {
            out << p.se;
        }
        out << '\n';
    }
}

nlohmann::json sim_config_to_json(const SimConfig& config) {
    return nlohmann::json{
        {"setting", family_name(config.setting)},
        {"n", config.n},
        {"sigma2", config.sigma2},
        {"replicates", config.replicates},
        {"seed", config.master_seed},
        {"Tn", finite_or_null(config.t_n)},
        {"eta", finite_or_null(config.eta)},
        {"D0", finite_or_null(config.d0)},
        {"pct", config.pct},
        {"Dm0", finite_or_null(config.d_m0)},
        {"overpen", config.overpen_factor},
        {"overpen_start", config.overpen_start},
        {"overpen_stop", config.overpen_stop},
        {"overpen_step", config.overpen_step},
        {"kernel_alpha", config.kernel_alpha},
        {"jobs", config.jobs},
    };
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig c;
    if (j.contains("setting")) {
        const std::string s = j["setting"].get<std::string>();
        if (s == "easy") c.setting = Family::easy;
        else if (s == "hard") c.setting = Family::hard;
        else if (s == "kernel") c.setting = Family::kernel;
        else throw Error(ErrorCode::bad_argument, "unknown setting '" + s + "'");
    }
    auto num = [&](const char* key, double fallback) {
        if (!j.contains(key) || j[key].is_null()) return fallback;
        return j[key].get<double>();
    };
    c.n = int(num("n", c.n));
    c.sigma2 = num("sigma2", c.sigma2);
    c.replicates = int(num("replicates", c.replicates));
    if (j.contains("seed")) c.master_seed = j["seed"].get<std::uint64_t>();
    c.t_n = num("Tn", c.t_n);
    c.eta = num("eta", c.eta);
    c.d0 = num("D0", c.d0);
    c.pct = num("pct", c.pct);
    c.d_m0 = num("Dm0", c.d_m0);
    c.overpen_factor = num("overpen", c.overpen_factor);
    c.overpen_start = num("overpen_start", c.overpen_start);
    c.overpen_stop = num("overpen_stop", c.overpen_stop);
    c.overpen_step = num("overpen_step", c.overpen_step);
    c.kernel_alpha = num("kernel_alpha", c.kernel_alpha);
    c.jobs = int(num("jobs", c.jobs));
    return c;
}

nlohmann::json kernel_study_to_json(const SimConfig& config,
                                    const std::vector<KernelReplicateOutcome>& outcomes) {
    long window_ok = 0, in_band = 0, naive_flat = 0;
    double sum_ratio = 0.0, sum_drop = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& k : outcomes) {
        if (k.window_ok) {
            ++window_ok;
            sum_ratio += k.c_window_ratio;
            if (k.c_window_ratio >= 0.5 && k.c_window_ratio <= 2.0) ++in_band;
        }
        if (k.naive_max_drop_fraction < 0.4) ++naive_flat;
        sum_drop += k.naive_max_drop_fraction;
        rows.push_back({{"c_window_ratio", k.window_ok ? nlohmann::json(k.c_window_ratio)
                                                       : nlohmann::json(nullptr)},
                        {"naive_max_drop_fraction", k.naive_max_drop_fraction}});
    }
    const double count = double(outcomes.size());
    return nlohmann::json{
        {"setting", "kernel"},
        {"n", config.n},
        {"sigma2", config.sigma2},
        {"alpha", config.kernel_alpha},
        {"replicates", config.replicates},
        {"seed", config.master_seed},
        {"window_ok_count", window_ok},
        {"c_window_in_band_count", in_band}, // ratio within [0.5, 2]
        {"mean_c_window_ratio", window_ok > 0 ? nlohmann::json(sum_ratio / double(window_ok))
                                              : nlohmann::json(nullptr)},
        {"naive_flat_count", naive_flat}, // max windowed drop < 40% of the df range
        {"mean_naive_drop_fraction", count > 0 ? sum_drop / count : 0.0},
        {"replicate_outcomes", rows},
    };
}

std::string kernel_study_to_text(const SimConfig& config,
                                 const std::vector<KernelReplicateOutcome>& outcomes) {
    const auto j = kernel_study_to_json(config, outcomes);
    std::ostringstream out;
    out << "setting=kernel n=" << config.n << " sigma2=" << config.sigma2
        << " alpha=" << config.kernel_alpha << " N=" << config.replicates
        << " seed=" << config.master_seed << "\n";
    out << "minimal shape: C_window/sigma2 in [0.5, 2] on " << j["c_window_in_band_count"]
        << "/" << config.replicates << " replicates";
    if (!j["mean_c_window_ratio"].is_null()) {
        out << " (mean ratio " << std::fixed << std::setprecision(3)
            << j["mean_c_window_ratio"].get<double>() << ")";
    }
    out << "\n";
    out << "naive shape: windowed drop < 40% of the df range on " << j["naive_flat_count"] << "/"
        << config.replicates << " replicates (mean fraction " << std::fixed
        << std::setprecision(3) << j["mean_naive_drop_fraction"].get<double>() << ")\n";
    return out.str();
}

std::string replicate_collection_csv(const SimConfig& config, std::uint64_t replicate_index) {
    const auto problem = generate_problem(config.setting, config.n, config.sigma2,
                                          substream_seed(config.master_seed, replicate_index));
    std::ostringstream out;
    if (config.setting == Family::kernel) {
        std::vector<double> x(static_cast<std::size_t>(config.n));
        for (int i = 0; i < config.n; ++i) x[std::size_t(i)] = double(i) / double(config.n - 1);
        const auto grid = ridge_grid(laplace_kernel(x, config.kernel_alpha), config.n);
        write_collection_csv(out, ridge_stats(problem, grid).collection_minimal);
    } else {
        write_collection_csv(out, projection_stats(problem).collection);
    }
    return out.str();
}

std::map<std::string, double> parse_flat_config(std::istream& in) {
    std::map<std::string, double> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string t = trimmed(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trimmed(t.substr(0, eq));
        out[key] = parse_real(t.substr(eq + 1), line_no);
    }
    return out;
}

std::map<std::string, double> load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open '" + path + "'");
    }
    return parse_flat_config(in);
}

} // namespace penmin
