#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "json.hpp"

#include "penmin/collection.hpp"
#include "penmin/path.hpp"
#include "penmin/select.hpp"
#include "penmin/sim.hpp"

namespace penmin {

// CSV interchange: header "id,empirical_risk,pen0,pen1,complexity", one row
// per record, decimal-point reals regardless of locale.
Collection read_collection_csv(std::istream& in);
Collection load_collection_csv(const std::string& path);
void write_collection_csv(std::ostream& out, const Collection& collection);

// {"breakpoints":[0,...,"inf"],"models":[...]}; the final breakpoint is
// always the literal string "inf", never a float.
nlohmann::json path_to_json(const PenalizedPath& path);
PenalizedPath path_from_json(const nlohmann::json& j);

nlohmann::json jump_to_json(const JumpDiagnostics& d, const std::string& method);
nlohmann::json outcome_to_json(const SelectionOutcome& outcome);
nlohmann::json report_to_json(const MonteCarloReport& report);
std::string report_to_text(const MonteCarloReport& report);
void sweep_to_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

nlohmann::json sim_config_to_json(const SimConfig& config);
SimConfig sim_config_from_json(const nlohmann::json& j);

nlohmann::json kernel_study_to_json(const SimConfig& config,
                                    const std::vector<KernelReplicateOutcome>& outcomes);
std::string kernel_study_to_text(const SimConfig& config,
                                 const std::vector<KernelReplicateOutcome>& outcomes);

/// Collection CSV of one replicate's generated problem (easy/hard give the
/// projection collection, kernel the minimal-shape ridge collection), for
/// standalone calibration runs.
std::string replicate_collection_csv(const SimConfig& config, std::uint64_t replicate_index);

// Flat "key = value" text; '#' starts a comment. Used for the config file
// and the reference-values data file.
std::map<std::string, double> parse_flat_config(std::istream& in);
std::map<std::string, double> load_flat_config(const std::string& path);

} // namespace penmin
