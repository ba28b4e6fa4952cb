#include "penmin.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"

#include "penmin/io.hpp"
#include "penmin/path.hpp"
#include "penmin/reproduce.hpp"
#include "penmin/select.hpp"
#include "penmin/sim.hpp"

struct penmin_collection {
    penmin::Collection impl;
};

struct penmin_path {
    penmin::PenalizedPath impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
penmin_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PENMIN_OK;
    } catch (const penmin::Error& e) {
        g_last_error = e.what();
        return static_cast<penmin_status>(e.code());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return PENMIN_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PENMIN_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PENMIN_ERR_INTERNAL;
    }
}

penmin::SimConfig parse_config(const char* config_json) {
    if (!config_json || !*config_json) return penmin::SimConfig{};
    return penmin::sim_config_from_json(nlohmann::json::parse(config_json));
}

} // namespace

extern "C" {

uint32_t penmin_api_version(void) { return 1; }

const char* penmin_status_name(penmin_status status) {
    return penmin::error_code_name(static_cast<penmin::ErrorCode>(status));
}

const char* penmin_last_error_detail(void) { return g_last_error.c_str(); }

void penmin_string_free(char* s) { delete[] s; }

penmin_status penmin_collection_create(const int64_t* ids, const double* empirical_risk,
                                       const double* pen0, const double* pen1,
                                       const double* complexity, size_t count,
                                       penmin_collection** out) {
    return guarded([&] {
        if (!ids || !empirical_risk || !pen0 || !pen1 || !complexity || !out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        std::vector<penmin::EstimatorRecord> records(count);
        for (size_t i = 0; i < count; ++i) {
            records[i] = penmin::EstimatorRecord{ids[i], empirical_risk[i], pen0[i], pen1[i],
                                                 complexity[i]};
        }
        *out = new penmin_collection{penmin::validate_collection(std::move(records))};
    });
}

penmin_status penmin_collection_from_csv(const char* filename, penmin_collection** out) {
    return guarded([&] {
        if (!filename || !out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        *out = new penmin_collection{penmin::load_collection_csv(filename)};
    });
}

void penmin_collection_free(penmin_collection* collection) { delete collection; }

size_t penmin_collection_size(const penmin_collection* collection) {
    return collection ? collection->impl.size() : 0;
}

int penmin_collection_has_negative_pen0(const penmin_collection* collection) {
    return collection && collection->impl.has_negative_pen0() ? 1 : 0;
}

penmin_status penmin_brute_force_argmin(const penmin_collection* collection, double c,
                                        int64_t* id_out) {
    return guarded([&] {
        if (!collection || !id_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        *id_out = penmin::brute_force_argmin(collection->impl, c);
    });
}

penmin_status penmin_compute_path(const penmin_collection* collection, penmin_path** out) {
    return guarded([&] {
        if (!collection || !out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        *out = new penmin_path{penmin::compute_path(collection->impl)};
    });
}

void penmin_path_free(penmin_path* path) { delete path; }

size_t penmin_path_jump_count(const penmin_path* path) {
    return path ? path->impl.jump_count() : 0;
}

penmin_status penmin_path_evaluate(const penmin_path* path, double c, int64_t* id_out) {
    return guarded([&] {
        if (!path || !id_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        *id_out = penmin::evaluate_path(path->impl, c);
    });
}

penmin_status penmin_path_to_json(const penmin_path* path, char** json_out) {
    return guarded([&] {
        if (!path || !json_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        *json_out = dup_string(penmin::path_to_json(path->impl).dump());
    });
}

penmin_status penmin_select_json(const penmin_collection* collection, const char* method,
                                 const char* params_json, char** json_out) {
    return guarded([&] {
        if (!collection || !method || !json_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        auto m = penmin::method_from_name(method);
        if (!m) {
            throw penmin::Error(penmin::ErrorCode::bad_argument,
                                std::string("unknown method '") + method + "'");
        }
        penmin::MethodParams params;
        if (params_json && *params_json) {
            const auto j = nlohmann::json::parse(params_json);
            auto num = [&](const char* key, double fallback) {
                return j.contains(key) && !j[key].is_null() ? j[key].get<double>() : fallback;
            };
            params.n = int(num("n", 0.0));
            params.t_n = num("Tn", params.t_n);
            params.eta = num("eta", params.eta);
            params.d0 = num("D0", params.d0);
            params.pct = num("pct", params.pct);
            params.sigma2 = num("sigma2", params.sigma2);
            params.overpen = num("overpen", params.overpen);
        }
        const penmin::SelectionOutcome outcome =
            penmin::minimal_penalty_select(collection->impl, *m, params);
        *json_out = dup_string(penmin::outcome_to_json(outcome).dump());
    });
}

penmin_status penmin_simulate(const char* config_json, const char* format, char** out) {
    return guarded([&] {
        if (!out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        const penmin::SimConfig config = parse_config(config_json);
        const std::string fmt = format ? format : "json";
        if (fmt != "text" && fmt != "json") {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "format must be json or text");
        }
        if (config.setting == penmin::Family::kernel) {
            const auto outcomes = penmin::run_kernel_study(config);
            *out = dup_string(fmt == "text"
                                  ? penmin::kernel_study_to_text(config, outcomes)
                                  : penmin::kernel_study_to_json(config, outcomes).dump(2) + "\n");
            return;
        }
        const penmin::MonteCarloReport report = penmin::run_monte_carlo(config);
        *out = dup_string(fmt == "text" ? penmin::report_to_text(report)
                                        : penmin::report_to_json(report).dump(2) + "\n");
    });
}

penmin_status penmin_replicate_collection_csv(const char* config_json, uint64_t replicate_index,
                                              char** csv_out) {
    return guarded([&] {
        if (!csv_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        const penmin::SimConfig config = parse_config(config_json);
        *csv_out = dup_string(penmin::replicate_collection_csv(config, replicate_index));
    });
}

penmin_status penmin_sweep_csv(const char* config_json, char** csv_out) {
    return guarded([&] {
        if (!csv_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        const penmin::SimConfig config = parse_config(config_json);
        const auto sweep = penmin::overpenalization_sweep(config);
        std::ostringstream csv;
        penmin::sweep_to_csv(csv, sweep);
        *csv_out = dup_string(csv.str());
    });
}

penmin_status penmin_reproduce(const char* target, const char* config_json,
                               const char* reference_path, const char* out_dir,
                               char** summary_json_out) {
    return guarded([&] {
        if (!target || !reference_path || !summary_json_out) {
            throw penmin::Error(penmin::ErrorCode::bad_argument, "null pointer argument");
        }
        const penmin::SimConfig config = parse_config(config_json);
        const auto reference = penmin::load_flat_config(reference_path);
        const penmin::ReproduceResult result = penmin::run_reproduce(target, config, reference);
        if (out_dir && *out_dir) {
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
        }
        for (const auto& artifact : result.artifacts) {
            const std::string dir = out_dir && *out_dir ? std::string(out_dir) + "/" : "";
            std::ofstream file(dir + artifact.filename);
            if (!file) {
                throw penmin::Error(penmin::ErrorCode::io,
                                    "cannot write '" + dir + artifact.filename + "'");
            }
            file << artifact.contents;
        }
        nlohmann::json summary = penmin::reproduce_summary_json(result);
        summary["text"] = penmin::reproduce_summary_text(result);
        *summary_json_out = dup_string(summary.dump(2) + "\n");
    });
}

} // extern "C"
