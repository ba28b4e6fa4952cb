#include "penmin/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "penmin/io.hpp"

namespace penmin {

namespace {

double ref_value(const std::map<std::string, double>& reference, const std::string& key) {
    auto it = reference.find(key);
    if (it == reference.end()) {
        throw Error(ErrorCode::bad_argument, "reference value '" + key + "' missing");
    }
    return it->second;
}

class Comparer {
public:
    Comparer(const std::map<std::string, double>& reference, double tol_scale)
        : reference_(reference), tol_scale_(tol_scale) {}

    void two_sided(std::vector<ComparisonLine>& out, const std::string& key, double got) {
        const double want = ref_value(reference_, key);
        const double tol = ref_value(reference_, key + "_tol") * tol_scale_;
        out.push_back({key, got, want, tol, "two_sided", std::abs(got - want) <= tol});
    }

    void at_least(std::vector<ComparisonLine>& out, const std::string& key, double got) {
        const double bound = ref_value(reference_, key + "_min");
        out.push_back({key, got, bound, 0.0, "min", got >= bound});
    }

    void at_most(std::vector<ComparisonLine>& out, const std::string& key, double got) {
        const double bound = ref_value(reference_, key + "_max");
        out.push_back({key, got, bound, 0.0, "max", got <= bound});
    }

    void in_range(std::vector<ComparisonLine>& out, const std::string& key, double got) {
        at_least(out, key, got);
        at_most(out, key, got);
    }

private:
    const std::map<std::string, double>& reference_;
    double tol_scale_;
};

const MethodAggregate& method_row(const MonteCarloReport& report, SimMethod m) {
    return report.methods[static_cast<std::size_t>(m)];
}

ReproduceResult reproduce_table3(const SimConfig& base,
                                 const std::map<std::string, double>& reference,
                                 double tol_scale) {
    SimConfig config = base;
    config.setting = Family::easy;
    const MonteCarloReport report = run_monte_carlo(config);

    ReproduceResult result;
    result.target = "table3";
    result.artifacts.push_back({"table3.json", report_to_json(report).dump(2) + "\n"});
    result.artifacts.push_back({"table3.txt", report_to_text(report)});

    Comparer cmp(reference, tol_scale);
    const std::pair<SimMethod, const char*> rows[] = {
        {SimMethod::max_jump, "maxjump"},   {SimMethod::threshold, "threshold"},
        {SimMethod::window, "window"},      {SimMethod::slope, "slope"},
        {SimMethod::capushe, "capushe"},    {SimMethod::median, "median"},
    };
    for (const auto& [m, name] : rows) {
        const auto& row = method_row(report, m);
        cmp.two_sided(result.comparisons, std::string("table3.") + name + ".mean", row.mean_c);
        cmp.two_sided(result.comparisons, std::string("table3.") + name + ".risk_ratio",
                      row.risk_ratio_mean);
    }
    return result;
}

ReproduceResult reproduce_table4(const SimConfig& base,
                                 const std::map<std::string, double>& reference,
                                 double tol_scale) {
    SimConfig config = base;
    config.setting = Family::hard;
    const MonteCarloReport report = run_monte_carlo(config);

    ReproduceResult result;
    result.target = "table4";
    result.artifacts.push_back({"table4.json", report_to_json(report).dump(2) + "\n"});
    result.artifacts.push_back({"table4.txt", report_to_text(report)});

    Comparer cmp(reference, tol_scale);
    cmp.in_range(result.comparisons, "table4.slope.mean",
                 method_row(report, SimMethod::slope).mean_c);
    cmp.in_range(result.comparisons, "table4.residual.mean",
                 method_row(report, SimMethod::residual).mean_c);
    cmp.two_sided(result.comparisons, "table4.threshold.risk_ratio",
                  method_row(report, SimMethod::threshold).risk_ratio_mean);
    return result;
}

ReproduceResult reproduce_table1(const SimConfig& base,
                                 const std::map<std::string, double>& reference,
                                 double tol_scale) {
    SimConfig easy = base;
    easy.setting = Family::easy;
    SimConfig hard = base;
    hard.setting = Family::hard;
    const MonteCarloReport easy_report = run_monte_carlo(easy);
    const MonteCarloReport hard_report = run_monte_carlo(hard);

    ReproduceResult result;
    result.target = "table1";
    nlohmann::json artifact{{"easy", report_to_json(easy_report)["frequencies"]},
                            {"hard", report_to_json(hard_report)["frequencies"]}};
    result.artifacts.push_back({"table1.json", artifact.dump(2) + "\n"});

    Comparer cmp(reference, tol_scale);
    cmp.at_least(result.comparisons, "table1.easy.at_least_three",
                 easy_report.frequencies.at_least_three_equal);
    cmp.two_sided(result.comparisons, "table1.easy.all_equal",
                  easy_report.frequencies.all_equal);
    cmp.two_sided(result.comparisons, "table1.hard.all_equal",
                  hard_report.frequencies.all_equal);
    cmp.two_sided(result.comparisons, "table1.easy.maxjump_eq_threshold",
                  easy_report.frequencies.maxjump_eq_threshold);
    cmp.two_sided(result.comparisons, "table1.hard.maxjump_eq_threshold",
                  hard_report.frequencies.maxjump_eq_threshold);
    return result;
}

ReproduceResult reproduce_fig8(const SimConfig& base,
                               const std::map<std::string, double>& reference,
                               double /*tol_scale*/) {
    SimConfig config = base;
    config.setting = Family::easy;
    const std::vector<SweepPoint> sweep = overpenalization_sweep(config);

    std::ostringstream csv;
    sweep_to_csv(csv, sweep);
    ReproduceResult result;
    result.target = "fig8";
    result.artifacts.push_back({"fig8.csv", csv.str()});

    std::size_t best = 0;
    for (std::size_t k = 1; k < sweep.size(); ++k) {
        if (sweep[k].risk_ratio_mean < sweep[best].risk_ratio_mean) best = k;
    }
    double at_one = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : sweep) {
        if (std::abs(p.c - 1.0) < 0.5 * config.overpen_step) at_one = p.risk_ratio_mean;
    }
    const double improvement = at_one / sweep[best].risk_ratio_mean;

    Comparer cmp(reference, 1.0); // interval bounds, no scaling
    cmp.in_range(result.comparisons, "fig8.argmin", sweep[best].c);
    cmp.in_range(result.comparisons, "fig8.improvement", improvement);
    return result;
}

} // namespace

ReproduceResult run_reproduce(const std::string& target, const SimConfig& config,
                              const std::map<std::string, double>& reference) {
    const double tol_scale = std::sqrt(2000.0 / double(std::max(config.replicates, 1)));
    ReproduceResult result;
    if (target == "table3") {
        result = reproduce_table3(config, reference, tol_scale);
    } else if (target == "table4") {
        result = reproduce_table4(config, reference, tol_scale);
    } else if (target == "table1") {
        result = reproduce_table1(config, reference, tol_scale);
    } else if (target == "fig8") {
        result = reproduce_fig8(config, reference, tol_scale);
    } else {
        throw Error(ErrorCode::bad_argument, "unknown target '" + target + "'");
    }
    result.all_pass = std::all_of(result.comparisons.begin(), result.comparisons.end(),
                                  [](const ComparisonLine& l) { return l.pass; });
    return result;
}

nlohmann::json reproduce_summary_json(const ReproduceResult& result) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& l : result.comparisons) {
        lines.push_back({{"key", l.key},
                         {"got", l.got},
                         {"want", l.want},
                         {"tol", l.tol},
                         {"kind", l.kind},
                         {"pass", l.pass}});
    }
    nlohmann::json files = nlohmann::json::array();
    for (const auto& a : result.artifacts) files.push_back(a.filename);
    return nlohmann::json{{"target", result.target},
                          {"files", files},
                          {"comparisons", lines},
                          {"all_pass", result.all_pass}};
}

std::string reproduce_summary_text(const ReproduceResult& result) {
    std::ostringstream out;
    for (const auto& l : result.comparisons) {
        out << (l.pass ? "[PASS] " : "[FAIL] ") << l.key << ": got " << l.got;
        if (l.kind == "two_sided") {
            out << ", want " << l.want << " +/- " << l.tol;
        } else if (l.kind == "min") {
            out << ", want >= " << l.want;
        } else {
            out << ", want <= " << l.want;
        }
        out << '\n';
    }
    out << (result.all_pass ? "ALL PASS" : "SOME COMPARISONS FAILED") << '\n';
    return out.str();
}

} // namespace penmin
