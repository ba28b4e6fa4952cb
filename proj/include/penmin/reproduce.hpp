#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "penmin/sim.hpp"

namespace penmin {

struct ComparisonLine {
    std::string key;
    double got = 0.0;
    double want = 0.0; // center (two-sided) or bound (one-sided)
    double tol = 0.0;  // half-width; 0 for one-sided lines
    std::string kind;  // "two_sided", "min", "max"
    bool pass = false;
};

struct ReproduceArtifact {
    std::string filename; // suggested name, e.g. "table3.json"
    std::string contents;
};

struct ReproduceResult {
    std::string target;
    std::vector<ReproduceArtifact> artifacts;
    std::vector<ComparisonLine> comparisons;
    bool all_pass = true;
};

/// Runs one benchmark target (table1, table3, table4 or fig8) and compares
/// the aggregates against the embedded reference values. Two-sided
/// tolerances in the reference file are calibrated for N = 2000 and scale
/// as sqrt(2000/N); one-sided bounds are used as-is.
ReproduceResult run_reproduce(const std::string& target, const SimConfig& config,
                              const std::map<std::string, double>& reference);

nlohmann::json reproduce_summary_json(const ReproduceResult& result);
std::string reproduce_summary_text(const ReproduceResult& result);

} // namespace penmin
