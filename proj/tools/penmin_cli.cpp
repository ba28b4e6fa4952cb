// Command-line front end for the penalty-calibration library. Talks to the
// shared library exclusively through the C API in penmin.h.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "penmin.h"

#ifndef PENMIN_REFERENCE_DEFAULT
#define PENMIN_REFERENCE_DEFAULT "data/reference_values.cfg"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComparisonFailed = 3;

int exit_code_for(penmin_status status) {
    if (status == PENMIN_OK) return kExitOk;
    if (status == PENMIN_ERR_IO) return kExitIo;
    return kExitUsage; // validation / parse / domain errors
}

int report_error(penmin_status status) {
    std::fprintf(stderr, "error: %s: %s\n", penmin_status_name(status),
                 penmin_last_error_detail());
    return exit_code_for(status);
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { penmin_string_free(ptr); }
};

struct OwnedCollection {
    penmin_collection* ptr = nullptr;
    ~OwnedCollection() { penmin_collection_free(ptr); }
};

struct OwnedPath {
    penmin_path* ptr = nullptr;
    ~OwnedPath() { penmin_path_free(ptr); }
};

// Numeric flags that should appear in JSON only when the user set them.
struct MaybeFlag {
    std::optional<double> value;
};

std::string json_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ConfigBuilder {
    std::string body;
    void add_raw(const std::string& key, const std::string& raw) {
        if (!body.empty()) body += ",";
        body += "\"" + key + "\":" + raw;
    }
    void add(const std::string& key, double v) { add_raw(key, json_number(v)); }
    void maybe(const std::string& key, const MaybeFlag& f) {
        if (f.value) add(key, *f.value);
    }
    std::string str() const { return "{" + body + "}"; }
};

std::uint64_t seed_fallback() {
    if (const char* env = std::getenv("PENMIN_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

std::string reference_path_default() {
    if (const char* env = std::getenv("PENMIN_REFERENCE")) return env;
    return PENMIN_REFERENCE_DEFAULT;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-penalty calibration, path computation and simulations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", [] {
        return "penmin (api " + std::to_string(penmin_api_version()) + ")";
    }());
    app.set_config("--config", "", "flat key = value config file; flags override it");

    // ---- path ----------------------------------------------------------
    auto* cmd_path = app.add_subcommand("path", "print the penalized-argmin path as JSON");
    std::string path_input;
    cmd_path->add_option("input", path_input, "collection CSV")->required();

    // ---- select --------------------------------------------------------
    auto* cmd_select = app.add_subcommand("select", "calibrate and select from a collection CSV");
    std::string select_input, select_method;
    MaybeFlag f_tn, f_eta, f_d0, f_pct, f_sigma2, f_overpen, f_n;
    cmd_select->add_option("input", select_input, "collection CSV")->required();
    cmd_select
        ->add_option("--method", select_method,
                     "maxjump|threshold|window|slope|capushe|median|consensus|mallows")
        ->required();
    auto add_maybe = [](CLI::App* cmd, const char* name, MaybeFlag& flag, const char* help) {
        cmd->add_option_function<double>(
            name, [&flag](double v) { flag.value = v; }, help);
    };
    add_maybe(cmd_select, "--Tn", f_tn, "threshold parameter T_n (default n/2)");
    add_maybe(cmd_select, "--eta", f_eta, "window width (default n^-1/2)");
    add_maybe(cmd_select, "--D0", f_d0, "smallest dimension in the slope fit (default n/2)");
    add_maybe(cmd_select, "--pct", f_pct, "platform length fraction (default 0.15)");
    add_maybe(cmd_select, "--sigma2", f_sigma2, "noise level for --method mallows");
    add_maybe(cmd_select, "--overpen", f_overpen, "overpenalization factor (default 1)");
    add_maybe(cmd_select, "--n", f_n, "sample size (needed by slope/capushe/median/consensus)");

    // ---- simulate ------------------------------------------------------
    auto* cmd_sim = app.add_subcommand("simulate", "run the seeded Monte-Carlo harness");
    std::string sim_setting = "easy", sim_format = "json", sim_out;
    int sim_n = 100, sim_reps = 2000, sim_jobs = 1;
    std::uint64_t sim_seed = seed_fallback();
    MaybeFlag s_sigma2, s_tn, s_eta, s_d0, s_pct, s_dm0;
    bool sim_sweep = false;
    cmd_sim->add_option("--setting", sim_setting, "easy|hard|kernel")->check(
        CLI::IsMember({"easy", "hard", "kernel"}));
    cmd_sim->add_option("--n", sim_n, "sample size (default 100)");
    cmd_sim->add_option("--N", sim_reps, "replicates (default 2000)");
    cmd_sim->add_option("--seed", sim_seed, "master seed (default $PENMIN_SEED or 1)");
    cmd_sim->add_option("--jobs", sim_jobs, "replicate parallelism (default 1)");
    add_maybe(cmd_sim, "--sigma2", s_sigma2,
              "noise level (default 0.25 for easy/hard, 1 for kernel)");
    add_maybe(cmd_sim, "--Tn", s_tn, "threshold parameter");
    add_maybe(cmd_sim, "--eta", s_eta, "window width");
    add_maybe(cmd_sim, "--D0", s_d0, "slope fit start");
    add_maybe(cmd_sim, "--pct", s_pct, "platform fraction");
    add_maybe(cmd_sim, "--Dm0", s_dm0, "residual-estimator dimension");
    cmd_sim->add_option("--format", sim_format, "json|text")->check(
        CLI::IsMember({"json", "text"}));
    cmd_sim->add_flag("--sweep", sim_sweep, "emit the overpenalization sweep CSV instead");
    bool sim_dump = false;
    cmd_sim->add_flag("--dump-collection", sim_dump,
                      "emit the first replicate's collection CSV instead");
    cmd_sim->add_option("-o,--output", sim_out, "write to file instead of stdout");

    // ---- reproduce -----------------------------------------------------
    auto* cmd_repro = app.add_subcommand("reproduce", "rerun a benchmark and compare");
    std::string repro_target, repro_out = ".", repro_reference = reference_path_default();
    int repro_n = 100, repro_reps = 2000, repro_jobs = 1;
    std::uint64_t repro_seed = seed_fallback();
    cmd_repro->add_option("target", repro_target, "table1|table3|table4|fig8")->required();
    cmd_repro->add_option("--N", repro_reps, "replicates (default 2000)");
    cmd_repro->add_option("--n", repro_n, "sample size (default 100)");
    cmd_repro->add_option("--seed", repro_seed, "master seed");
    cmd_repro->add_option("--jobs", repro_jobs, "replicate parallelism");
    cmd_repro->add_option("--out", repro_out, "output directory (default .)");
    cmd_repro->add_option("--reference", repro_reference,
                          "reference values file (default $PENMIN_REFERENCE or built-in path)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (cmd_path->parsed()) {
        OwnedCollection coll;
        penmin_status st = penmin_collection_from_csv(path_input.c_str(), &coll.ptr);
        if (st != PENMIN_OK) return report_error(st);
        OwnedPath path;
        st = penmin_compute_path(coll.ptr, &path.ptr);
        if (st != PENMIN_OK) return report_error(st);
        OwnedString json;
        st = penmin_path_to_json(path.ptr, &json.ptr);
        if (st != PENMIN_OK) return report_error(st);
        std::cout << json.ptr << "\n";
        return kExitOk;
    }

    if (cmd_select->parsed()) {
        OwnedCollection coll;
        penmin_status st = penmin_collection_from_csv(select_input.c_str(), &coll.ptr);
        if (st != PENMIN_OK) return report_error(st);
        if (penmin_collection_has_negative_pen0(coll.ptr)) {
            std::fprintf(stderr, "warning: collection has negative pen0 values\n");
        }
        ConfigBuilder params;
        params.maybe("Tn", f_tn);
        params.maybe("eta", f_eta);
        params.maybe("D0", f_d0);
        params.maybe("pct", f_pct);
        params.maybe("sigma2", f_sigma2);
        params.maybe("overpen", f_overpen);
        params.maybe("n", f_n);
        OwnedString json;
        st = penmin_select_json(coll.ptr, select_method.c_str(), params.str().c_str(), &json.ptr);
        if (st != PENMIN_OK) return report_error(st);
        std::cout << json.ptr << "\n";
        return kExitOk;
    }

    if (cmd_sim->parsed()) {
        ConfigBuilder config;
        config.add_raw("setting", "\"" + sim_setting + "\"");
        config.add("n", sim_n);
        config.add("sigma2",
                   s_sigma2.value ? *s_sigma2.value : (sim_setting == "kernel" ? 1.0 : 0.25));
        config.add("replicates", sim_reps);
        config.add("seed", double(sim_seed));
        config.add("jobs", sim_jobs);
        config.maybe("Tn", s_tn);
        config.maybe("eta", s_eta);
        config.maybe("D0", s_d0);
        config.maybe("pct", s_pct);
        config.maybe("Dm0", s_dm0);
        OwnedString out;
        penmin_status st;
        if (sim_dump) {
            st = penmin_replicate_collection_csv(config.str().c_str(), 0, &out.ptr);
        } else if (sim_sweep) {
            st = penmin_sweep_csv(config.str().c_str(), &out.ptr);
        } else {
            st = penmin_simulate(config.str().c_str(), sim_format.c_str(), &out.ptr);
        }
        if (st != PENMIN_OK) return report_error(st);
        if (sim_out.empty()) {
            std::cout << out.ptr;
        } else {
            std::FILE* f = std::fopen(sim_out.c_str(), "w");
            if (!f) {
                std::fprintf(stderr, "error: io: cannot write '%s'\n", sim_out.c_str());
                return kExitIo;
            }
            std::fputs(out.ptr, f);
            std::fclose(f);
        }
        return kExitOk;
    }

    if (cmd_repro->parsed()) {
        ConfigBuilder config;
        config.add("n", repro_n);
        config.add("replicates", repro_reps);
        config.add("seed", double(repro_seed));
        config.add("jobs", repro_jobs);
        OwnedString summary;
        penmin_status st = penmin_reproduce(repro_target.c_str(), config.str().c_str(),
                                            repro_reference.c_str(), repro_out.c_str(),
                                            &summary.ptr);
        if (st != PENMIN_OK) return report_error(st);
        const auto parsed = nlohmann::json::parse(summary.ptr);
        std::cout << parsed.at("text").get<std::string>();
        for (const auto& file : parsed.at("files")) {
            std::cout << "wrote " << repro_out << "/" << file.get<std::string>() << "\n";
        }
        return parsed.at("all_pass").get<bool>() ? kExitOk : kExitComparisonFailed;
    }

    return kExitUsage;
}
