#include "penmin/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "penmin/jump.hpp"
#include "penmin/path.hpp"
#include "penmin/rng.hpp"
#include "penmin/slope.hpp"
#include "penmin/varbounds.hpp"

namespace penmin {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs f(0..count-1) on `jobs` threads. Each index is independent and writes
// only its own slot, so the result is identical at any concurrency level.
template <typename F>
void parallel_for_indexed(int count, int jobs, F&& f) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
    };
    std::vector<std::thread> pool;
    const int threads = std::min(jobs, count);
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct ReplicateContext {
    RegressionProblem problem;
    ProjectionStats stats;
    PenalizedPath path;
    std::vector<double> comps;
    double oracle_risk = 0.0;
};

ReplicateContext make_context(const SimConfig& config, std::uint64_t replicate_index) {
    ReplicateContext ctx;
    ctx.problem = generate_problem(config.setting, config.n, config.sigma2,
                                   substream_seed(config.master_seed, replicate_index));
    ctx.stats = projection_stats(ctx.problem);
    ctx.path = compute_path(ctx.stats.collection);
    ctx.comps = complexities_along(ctx.stats.collection, ctx.path);
    double oracle = std::numeric_limits<double>::infinity();
    for (const auto& s : ctx.stats.stats) oracle = std::min(oracle, s.true_risk);
    ctx.oracle_risk = oracle;
    return ctx;
}

} // namespace

const char* sim_method_label(SimMethod m) noexcept {
    switch (m) {
    case SimMethod::max_jump: return "maxjump";
    case SimMethod::threshold: return "threshold";
    case SimMethod::window: return "window";
    case SimMethod::slope: return "slope";
    case SimMethod::capushe: return "capushe";
    case SimMethod::median: return "median";
    case SimMethod::consensus: return "consensus";
    case SimMethod::residual: return "residual";
    case SimMethod::mallows: return "mallows";
    case SimMethod::mallows_overpen: return "mallows_overpen";
    case SimMethod::count: break;
    }
    return "unknown";
}

ReplicateOutput run_replicate(const SimConfig& config, std::uint64_t replicate_index) {
    if (config.setting == Family::kernel) {
        throw Error(ErrorCode::wrong_family, "per-method replicates run on easy/hard settings");
    }
    const ReplicateContext ctx = make_context(config, replicate_index);
    const Collection& coll = ctx.stats.collection;

    ReplicateOutput out;
    out.oracle_risk = ctx.oracle_risk;

    double max_rel = 0.0;
    for (const auto& s : ctx.stats.stats) {
        const double scale = std::max({std::abs(s.p1), std::abs(s.p2), 1e-300});
        max_rel = std::max(max_rel, std::abs(s.p1 - s.p2) / scale);
    }
    out.max_p1p2_rel_diff = max_rel;

    auto ratio_of = [&](std::int64_t id) {
        // ids are the dimensions 1..n
        const double risk = ctx.stats.stats[static_cast<std::size_t>(id) - 1].true_risk;
        return risk == ctx.oracle_risk ? 1.0 : risk / ctx.oracle_risk;
    };
    auto pick_pen1 = [&](double c_hat) {
        return coll[detail::argmin_penalized_index(coll, c_hat, detail::PenaltyField::pen1)].id;
    };
    auto set = [&](SimMethod m, double c_hat, std::int64_t id) {
        auto& slot = out.methods[static_cast<std::size_t>(m)];
        slot.c_hat = c_hat;
        slot.model = id;
        slot.risk_ratio = ratio_of(id);
        slot.ok = true;
    };
    auto set_from_c = [&](SimMethod m, double c_hat) { set(m, c_hat, pick_pen1(c_hat)); };

    auto guarded = [&](SimMethod m, auto&& fn) {
        try {
            fn();
        } catch (const Error&) {
            out.methods[static_cast<std::size_t>(m)].ok = false;
        }
    };

    guarded(SimMethod::max_jump,
            [&] { set_from_c(SimMethod::max_jump, c_max_jump(ctx.path, ctx.comps).c_hat); });
    guarded(SimMethod::threshold, [&] {
        set_from_c(SimMethod::threshold,
                   c_threshold(ctx.path, ctx.comps, config.resolved_t_n()).c_hat);
    });
    guarded(SimMethod::window, [&] {
        set_from_c(SimMethod::window, c_window(ctx.path, ctx.comps, config.resolved_eta()).c_hat);
    });
    guarded(SimMethod::slope, [&] {
        set_from_c(SimMethod::slope, c_slope(coll, config.resolved_d0(), config.n).c_hat);
    });
    guarded(SimMethod::capushe, [&] {
        const CapusheResult cap = capushe(coll, config.n, config.pct);
        set(SimMethod::capushe, cap.c_hat, cap.selected_id);
    });

    guarded(SimMethod::median, [&] {
        std::array<double, 5> c{};
        for (int i = 0; i < 5; ++i) {
            const auto& slot = out.methods[static_cast<std::size_t>(i)];
            if (!slot.ok) throw Error(ErrorCode::internal, "component calibrator failed");
            c[static_cast<std::size_t>(i)] = slot.c_hat;
        }
        set_from_c(SimMethod::median, c_median(c));
    });

    guarded(SimMethod::consensus, [&] {
        std::array<std::int64_t, 5> votes{};
        for (int i = 0; i < 5; ++i) {
            const auto& slot = out.methods[static_cast<std::size_t>(i)];
            if (!slot.ok) throw Error(ErrorCode::internal, "component calibrator failed");
            votes[static_cast<std::size_t>(i)] = slot.model;
        }
        const std::int64_t fallback = out.methods[static_cast<std::size_t>(SimMethod::window)].model;
        auto [winner, agreed] = consensus(votes, fallback);
        out.consensus_agreed = agreed;
        set(SimMethod::consensus, kNaN, winner);
    });

    guarded(SimMethod::residual, [&] {
        const int d_m0 = static_cast<int>(std::lround(config.resolved_d_m0()));
        const auto& s = ctx.stats.stats.at(static_cast<std::size_t>(d_m0) - 1);
        const double sigma2_hat =
            sigma2_residual(s.empirical_risk * config.n, double(d_m0), config.n).value;
        set_from_c(SimMethod::residual, sigma2_hat);
    });

    guarded(SimMethod::mallows, [&] {
        set(SimMethod::mallows, kNaN, pick_pen1(config.sigma2));
    });
    guarded(SimMethod::mallows_overpen, [&] {
        set(SimMethod::mallows_overpen, kNaN, pick_pen1(config.overpen_factor * config.sigma2));
    });

    return out;
}

namespace {

MethodAggregate aggregate_method(const std::vector<ReplicateOutput>& reps, SimMethod m,
                                 double sigma2) {
    MethodAggregate agg;
    const std::size_t idx = static_cast<std::size_t>(m);
    long n_ok = 0, n_c = 0;
    double sum_c = 0.0, sum_ratio = 0.0;
    for (const auto& r : reps) {
        if (!r.methods[idx].ok) continue;
        ++n_ok;
        sum_ratio += r.methods[idx].risk_ratio;
        if (!std::isnan(r.methods[idx].c_hat)) {
            ++n_c;
            sum_c += r.methods[idx].c_hat;
        }
    }
    agg.n_ok = n_ok;
    if (n_ok == 0) return agg;

    agg.risk_ratio_mean = sum_ratio / double(n_ok);
    if (n_ok >= 2) {
        double ss = 0.0;
        for (const auto& r : reps) {
            if (!r.methods[idx].ok) continue;
            const double d = r.methods[idx].risk_ratio - agg.risk_ratio_mean;
            ss += d * d;
        }
        agg.risk_ratio_se = std::sqrt(ss / double(n_ok - 1)) / std::sqrt(double(n_ok));
    }

    if (n_c > 0 && sigma2 > 0.0) {
        const double mean_c_raw = sum_c / double(n_c);
        agg.mean_c = mean_c_raw / sigma2;
        double ss = 0.0, mse = 0.0;
        for (const auto& r : reps) {
            if (!r.methods[idx].ok || std::isnan(r.methods[idx].c_hat)) continue;
            const double d = r.methods[idx].c_hat - mean_c_raw;
            ss += d * d;
            const double e = r.methods[idx].c_hat - sigma2;
            mse += e * e;
        }
        agg.sd_c = n_c >= 2 ? std::sqrt(ss / double(n_c - 1)) / sigma2 : kNaN;
        agg.mse_c = mse / double(n_c) / (sigma2 * sigma2);
    }
    return agg;
}

AgreementFrequencies aggregate_frequencies(const std::vector<ReplicateOutput>& reps) {
    AgreementFrequencies f;
    long usable = 0;
    long all_eq = 0, exactly4 = 0, at_least3 = 0, all_diff = 0, mj_thr = 0, mtw_diff = 0;
    for (const auto& r : reps) {
        std::array<std::int64_t, 5> ids{};
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            const auto& slot = r.methods[static_cast<std::size_t>(i)];
            ok = ok && slot.ok;
            ids[static_cast<std::size_t>(i)] = slot.model;
        }
        if (!ok) continue;
        ++usable;
        int max_count = 0, distinct = 0;
        for (int i = 0; i < 5; ++i) {
            int count = 0;
            bool first = true;
            for (int j = 0; j < 5; ++j) {
                if (ids[j] == ids[i]) {
                    ++count;
                    if (j < i) first = false;
                }
            }
            if (first) ++distinct;
            max_count = std::max(max_count, count);
        }
        if (max_count == 5) ++all_eq;
        if (max_count == 4) ++exactly4;
        if (max_count >= 3) ++at_least3;
        if (distinct == 5) ++all_diff;
        // The maxjump and threshold constants are breakpoints of the same
        // path, so exact equality is the natural coincidence event.
        const double c_maxj = r.methods[std::size_t(SimMethod::max_jump)].c_hat;
        const double c_thr = r.methods[std::size_t(SimMethod::threshold)].c_hat;
        if (c_maxj == c_thr) ++mj_thr;
        if (ids[0] != ids[1] && ids[0] != ids[2] && ids[1] != ids[2]) ++mtw_diff;
    }
    if (usable > 0) {
        const double dn = double(usable);
        f.all_equal = all_eq / dn;
        f.exactly_four_equal = exactly4 / dn;
        f.at_least_three_equal = at_least3 / dn;
        f.all_different = all_diff / dn;
        f.maxjump_eq_threshold = mj_thr / dn;
        f.maxjump_threshold_window_all_different = mtw_diff / dn;
    }
    return f;
}

} // namespace

MonteCarloReport run_monte_carlo(const SimConfig& config) {
    if (config.replicates < 1) {
        throw Error(ErrorCode::bad_argument, "need at least one replicate");
    }
    std::vector<ReplicateOutput> reps(static_cast<std::size_t>(config.replicates));
    parallel_for_indexed(config.replicates, config.jobs, [&](int i) {
        reps[static_cast<std::size_t>(i)] = run_replicate(config, std::uint64_t(i));
    });

    MonteCarloReport report;
    report.setting = config.setting;
    report.n = config.n;
    report.sigma2 = config.sigma2;
    report.replicates = config.replicates;
    report.master_seed = config.master_seed;
    for (std::size_t m = 0; m < kSimMethodCount; ++m) {
        report.methods[m] = aggregate_method(reps, static_cast<SimMethod>(m), config.sigma2);
    }
    report.frequencies = aggregate_frequencies(reps);
    long agreed = 0;
    double max_rel = 0.0;
    for (const auto& r : reps) {
        if (r.consensus_agreed) ++agreed;
        max_rel = std::max(max_rel, r.max_p1p2_rel_diff);
    }
    report.consensus_agreed_count = agreed;
    report.max_p1p2_rel_diff = max_rel;
    return report;
}

AgreementFrequencies agreement_table(const SimConfig& config) {
    return run_monte_carlo(config).frequencies;
}

std::vector<SweepPoint> overpenalization_sweep(const SimConfig& config) {
    if (!(config.overpen_step > 0.0) || !(config.overpen_stop >= config.overpen_start)) {
        throw Error(ErrorCode::bad_argument, "malformed overpenalization grid");
    }
    const int points =
        int(std::floor((config.overpen_stop - config.overpen_start) / config.overpen_step + 0.5)) +
        1;
    const int reps = config.replicates;

    // Common random numbers: each replicate's path is evaluated on the whole
    // grid, stored per replicate and reduced in index order.
    std::vector<std::vector<double>> ratios(static_cast<std::size_t>(reps));
    parallel_for_indexed(reps, config.jobs, [&](int r) {
        const ReplicateContext ctx = make_context(config, std::uint64_t(r));
        std::vector<double> row(static_cast<std::size_t>(points));
        for (int k = 0; k < points; ++k) {
            const double c = config.overpen_start + config.overpen_step * k;
            const std::int64_t id = evaluate_path(ctx.path, 2.0 * c * config.sigma2);
            const double risk = ctx.stats.stats[static_cast<std::size_t>(id) - 1].true_risk;
            row[static_cast<std::size_t>(k)] = risk == ctx.oracle_risk ? 1.0 : risk / ctx.oracle_risk;
        }
        ratios[static_cast<std::size_t>(r)] = std::move(row);
    });

    std::vector<SweepPoint> out(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) sum += ratios[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
        const double mean = sum / double(reps);
        double ss = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double d = ratios[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] - mean;
            ss += d * d;
        }
        auto& p = out[static_cast<std::size_t>(k)];
        p.c = config.overpen_start + config.overpen_step * k;
        p.risk_ratio_mean = mean;
        p.se = reps >= 2 ? std::sqrt(ss / double(reps - 1)) / std::sqrt(double(reps)) : kNaN;
    }
    return out;
}

std::vector<KernelReplicateOutcome> run_kernel_study(const SimConfig& config) {
    if (config.setting != Family::kernel) {
        throw Error(ErrorCode::wrong_family, "kernel study needs the kernel setting");
    }
    const int n = config.n;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = double(i) / double(n - 1);
    const Matrix kernel = laplace_kernel(x, config.kernel_alpha);
    const RidgeGrid grid = ridge_grid(kernel, n); // design is fixed across replicates

    std::vector<KernelReplicateOutcome> out(static_cast<std::size_t>(config.replicates));
    parallel_for_indexed(config.replicates, config.jobs, [&](int r) {
        const RegressionProblem problem = generate_problem(
            Family::kernel, n, config.sigma2, substream_seed(config.master_seed, std::uint64_t(r)));
        const RidgeStats stats = ridge_stats(problem, grid);
        KernelReplicateOutcome& k = out[static_cast<std::size_t>(r)];

        const PenalizedPath path_min = compute_path(stats.collection_minimal);
        const auto comp_min = complexities_along(stats.collection_minimal, path_min);
        try {
            const JumpDiagnostics win = c_window(path_min, comp_min, config.resolved_eta());
            k.c_window_ratio = win.c_hat / config.sigma2;
            k.window_ok = true;
        } catch (const Error&) {
            k.window_ok = false;
        }

        const PenalizedPath path_naive = compute_path(stats.collection_naive);
        const auto comp_naive = complexities_along(stats.collection_naive, path_naive);
        const double eta = config.resolved_eta();
        const WindowArgmaxSet set =
            window_argmax_set(path_naive, comp_naive, 1.0 + eta, 1.0 / (1.0 + eta));
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& rec : stats.collection_naive.records()) {
            lo = std::min(lo, rec.complexity);
            hi = std::max(hi, rec.complexity);
        }
        k.naive_max_drop_fraction = hi > lo ? set.max_value / (hi - lo) : 0.0;
    });
    return out;
}

} // namespace penmin
