#include "penmin/select.hpp"

#include <cmath>

#include "penmin/path.hpp"

namespace penmin {

const char* method_name(Method m) noexcept {
    switch (m) {
    case Method::max_jump: return "maxjump";
    case Method::threshold: return "threshold";
    case Method::window: return "window";
    case Method::slope: return "slope";
    case Method::capushe: return "capushe";
    case Method::median: return "median";
    case Method::consensus: return "consensus";
    case Method::mallows: return "mallows";
    case Method::fpe: return "fpe";
    case Method::gcv: return "gcv";
    }
    return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
    for (Method m : {Method::max_jump, Method::threshold, Method::window, Method::slope,
                     Method::capushe, Method::median, Method::consensus, Method::mallows,
                     Method::fpe, Method::gcv}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

double MethodParams::resolved_t_n() const { return std::isnan(t_n) ? n / 2.0 : t_n; }
double MethodParams::resolved_eta() const {
    return std::isnan(eta) ? 1.0 / std::sqrt(double(n)) : eta;
}
double MethodParams::resolved_d0() const { return std::isnan(d0) ? n / 2.0 : d0; }

namespace {

SelectionOutcome finish_with_pen1(const Collection& collection, Method method, double c_hat,
                                  SelectDiagnostics diagnostics) {
    SelectionOutcome out;
    out.method = method;
    out.c_hat = c_hat;
    out.diagnostics = std::move(diagnostics);
    const std::size_t idx =
        detail::argmin_penalized_index(collection, c_hat, detail::PenaltyField::pen1);
    out.selected_id = collection[idx].id;
    return out;
}

void require_n(const MethodParams& params, Method method) {
    if (params.n <= 0) {
        throw Error(ErrorCode::bad_argument,
                    std::string(method_name(method)) + " needs the sample size n");
    }
}

} // namespace

SelectionOutcome minimal_penalty_select(const Collection& collection, Method method,
                                        const MethodParams& params) {
    switch (method) {
    case Method::max_jump: {
        const PenalizedPath path = compute_path(collection);
        const auto comp = complexities_along(collection, path);
        SelectDiagnostics diag;
        diag.jump = c_max_jump(path, comp);
        return finish_with_pen1(collection, method, diag.jump->c_hat, std::move(diag));
    }
    case Method::threshold: {
        const PenalizedPath path = compute_path(collection);
        const auto comp = complexities_along(collection, path);
        SelectDiagnostics diag;
        diag.jump = c_threshold(path, comp, params.resolved_t_n());
        diag.degenerate_threshold = diag.jump->c_hat == 0.0;
        return finish_with_pen1(collection, method, diag.jump->c_hat, std::move(diag));
    }
    case Method::window: {
        const PenalizedPath path = compute_path(collection);
        const auto comp = complexities_along(collection, path);
        SelectDiagnostics diag;
        diag.jump = c_window(path, comp, params.resolved_eta());
        return finish_with_pen1(collection, method, diag.jump->c_hat, std::move(diag));
    }
    case Method::slope: {
        require_n(params, method);
        SelectDiagnostics diag;
        diag.slope_fit = c_slope(collection, params.resolved_d0(), params.n);
        return finish_with_pen1(collection, method, diag.slope_fit->c_hat, std::move(diag));
    }
    case Method::capushe: {
        require_n(params, method);
        SelectDiagnostics diag;
        diag.capushe = capushe(collection, params.n, params.pct);
        return finish_with_pen1(collection, method, diag.capushe->c_hat, std::move(diag));
    }
    case Method::median: {
        require_n(params, method);
        const PenalizedPath path = compute_path(collection);
        const auto comp = complexities_along(collection, path);
        std::array<double, 5> c{};
        c[0] = c_max_jump(path, comp).c_hat;
        c[1] = c_threshold(path, comp, params.resolved_t_n()).c_hat;
        c[2] = c_window(path, comp, params.resolved_eta()).c_hat;
        c[3] = c_slope(collection, params.resolved_d0(), params.n).c_hat;
        c[4] = capushe(collection, params.n, params.pct).c_hat;
        SelectDiagnostics diag;
        diag.component_c = c;
        return finish_with_pen1(collection, method, c_median(c), std::move(diag));
    }
    case Method::consensus: {
        require_n(params, method);
        const PenalizedPath path = compute_path(collection);
        const auto comp = complexities_along(collection, path);
        auto pick = [&](double c_hat) {
            return collection[detail::argmin_penalized_index(collection, c_hat,
                                                             detail::PenaltyField::pen1)]
                .id;
        };
        const std::int64_t m_window = pick(c_window(path, comp, params.resolved_eta()).c_hat);
        std::array<std::int64_t, 5> votes = {
            pick(c_max_jump(path, comp).c_hat),
            pick(c_threshold(path, comp, params.resolved_t_n()).c_hat),
            m_window,
            pick(c_slope(collection, params.resolved_d0(), params.n).c_hat),
            capushe(collection, params.n, params.pct).selected_id,
        };
        auto [winner, agreed] = consensus(votes, m_window);
        SelectionOutcome out;
        out.method = method;
        out.selected_id = winner;
        out.c_hat = std::numeric_limits<double>::quiet_NaN();
        out.diagnostics.votes.assign(votes.begin(), votes.end());
        out.diagnostics.agreed = agreed;
        return out;
    }
    case Method::mallows:
        return mallows_select(collection, params.sigma2, params.overpen);
    case Method::fpe:
        require_n(params, method);
        return fpe_select(collection, params.n);
    case Method::gcv:
        require_n(params, method);
        return gcv_select(collection, params.n);
    }
    throw Error(ErrorCode::bad_argument, "unknown method");
}

SelectionOutcome mallows_select(const Collection& collection, double sigma2, double overpen) {
    if (!(sigma2 >= 0.0)) {
        throw Error(ErrorCode::negative_sigma2, "sigma2 must be >= 0");
    }
    if (!(overpen > 0.0)) {
        throw Error(ErrorCode::bad_argument, "overpenalization factor must be > 0");
    }
    SelectionOutcome out;
    out.method = Method::mallows;
    out.c_hat = overpen * sigma2;
    const std::size_t idx =
        detail::argmin_penalized_index(collection, out.c_hat, detail::PenaltyField::pen1);
    out.selected_id = collection[idx].id;
    return out;
}

double fpe_criterion(double empirical_risk, double d, int n) {
    if (!(d < n)) {
        throw Error(ErrorCode::full_dimension, "FPE needs D < n");
    }
    return empirical_risk * (1.0 + 2.0 * d / (double(n) - d));
}

double gcv_criterion(double empirical_risk, double df, int n) {
    if (!(df < n)) {
        throw Error(ErrorCode::full_df, "GCV needs df < n");
    }
    const double factor = double(n) / (double(n) - df);
    return empirical_risk * factor * factor;
}

namespace {

template <typename Criterion>
SelectionOutcome select_by_criterion(const Collection& collection, int n, Method method,
                                     ErrorCode empty_error, Criterion crit) {
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_id = 0;
    for (const auto& r : collection.records()) {
        if (!(r.complexity < n)) continue; // criterion undefined at full dimension
        const double value = crit(r.empirical_risk, r.complexity, n);
        if (!found || value < best) {
            found = true;
            best = value;
            best_id = r.id;
        }
    }
    if (!found) {
        throw Error(empty_error, "no record with complexity < n");
    }
    SelectionOutcome out;
    out.method = method;
    out.selected_id = best_id;
    out.c_hat = std::numeric_limits<double>::quiet_NaN();
    return out;
}

} // namespace

SelectionOutcome fpe_select(const Collection& collection, int n) {
    return select_by_criterion(collection, n, Method::fpe, ErrorCode::full_dimension,
                               fpe_criterion);
}

SelectionOutcome gcv_select(const Collection& collection, int n) {
    return select_by_criterion(collection, n, Method::gcv, ErrorCode::full_df, gcv_criterion);
}

} // namespace penmin
