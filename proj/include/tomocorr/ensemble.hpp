#pragma once

#include <atomic>
#include <cstdio>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "tomocorr/states.hpp"

namespace tomocorr {

enum class StateClass { X, Mixed, Pure };

inline const char* to_string(StateClass c) {
    switch (c) {
        case StateClass::X: return "x";
        case StateClass::Mixed: return "mixed";
        case StateClass::Pure: return "pure";
    }
    return "?";
}

/// One generated state with all three reports.
struct EnsembleRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    StateClass state_class = StateClass::Mixed;
    QuantumCausalReport q;
    TomographicReport tom;
    OptimalReport opt;
    std::optional<XStateClass> x_class;

    bool degenerate() const {
        return q.degenerate || tom.degenerate || opt.degenerate;
    }
};

struct SummaryStats {
    std::optional<double> pearson_r_dtom_dopt;
    std::optional<double> pearson_r_dq_dopt;
    std::optional<double> pearson_r_dq_dtom;
    std::optional<double> slope_dopt_on_dtom;  // through the origin
    std::optional<double> slope_dtom_on_dopt;
    std::optional<double> slope_dopt_on_dq;
    std::optional<double> sign_agreement_fraction;  // d_tom * d_opt > 0
    std::size_t type_i_count = 0;
    std::size_t type_ii_count = 0;
    std::size_t used = 0;
    std::size_t excluded_degenerate = 0;
};

namespace detail {

inline std::optional<double> pearson_r(const std::vector<double>& x,
                                       const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

inline std::optional<double> origin_slope(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    if (sxx <= 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace detail

inline SummaryStats compute_stats(const std::vector<EnsembleRecord>& records) {
    SummaryStats st;
    std::vector<double> dq, dtom, dopt;
    std::size_t agree = 0, decided = 0;
    for (const auto& r : records) {
        if (r.x_class) {
            if (r.x_class->kind == XStateKind::TypeI)
                ++st.type_i_count;
            else
                ++st.type_ii_count;
        }
        if (r.degenerate()) {
            ++st.excluded_degenerate;
            continue;
        }
        dq.push_back(r.q.d_q);
        dtom.push_back(r.tom.d_tom);
        dopt.push_back(r.opt.d_opt);
        ++decided;
        if (r.tom.d_tom * r.opt.d_opt > 0.0) ++agree;
    }
    st.used = decided;
    st.pearson_r_dtom_dopt = detail::pearson_r(dtom, dopt);
    st.pearson_r_dq_dopt = detail::pearson_r(dq, dopt);
    st.pearson_r_dq_dtom = detail::pearson_r(dq, dtom);
    st.slope_dopt_on_dtom = detail::origin_slope(dtom, dopt);
    st.slope_dtom_on_dopt = detail::origin_slope(dopt, dtom);
    st.slope_dopt_on_dq = detail::origin_slope(dq, dopt);
    if (decided > 0)
        st.sign_agreement_fraction = static_cast<double>(agree) / decided;
    return st;
}

/// Full per-state analysis used by both the ensemble runner and `analyze`.
inline EnsembleRecord analyze_state(const BipartiteState& s, OptimizationSettings cfg,
                                    std::optional<XStateParams> x_params = std::nullopt) {
    EnsembleRecord rec;
    rec.q = quantum_causal_report(s);
    rec.tom = tomographic_report(s);
    rec.opt = maximize_mutual_information(s, cfg);
    if (x_params) rec.x_class = classify_x_state(*x_params, rec.opt, rec.tom);
    return rec;
}

/// Generate `count` states of one class with per-state seeds
/// master_seed + index; states are analyzed on `threads` workers
/// (0 = hardware concurrency) and returned in index order.
inline std::vector<EnsembleRecord> run_ensemble(StateClass cls, std::size_t count,
                                                std::uint64_t master_seed,
                                                OptimizationSettings cfg = {},
                                                unsigned threads = 0) {
    if (count < 1) throw std::invalid_argument("run_ensemble: count < 1");
    std::vector<EnsembleRecord> records(count);

    auto work = [&](std::size_t index) {
        const std::uint64_t seed = master_seed + index;
        Rng rng(seed);
        OptimizationSettings local = cfg;
        local.seed = seed ^ 0x5DEECE66DULL;

        std::optional<XStateParams> xp;
        std::optional<BipartiteState> state;
        switch (cls) {
            case StateClass::X: {
                xp = generate_x_state(rng);
                state.emplace(xp->to_state());
                break;
            }
            case StateClass::Mixed:
                state.emplace(generate_mixed_state(rng));
                break;
            case StateClass::Pure: {
                std::uniform_real_distribution<double> u01(0.0, 1.0);
                PureSchmidtParams p;
                p.alpha = 0.01 + 0.98 * u01(rng);
                p.local_basis_a = {u01(rng) * std::numbers::pi,
                                   u01(rng) * 2.0 * std::numbers::pi};
                p.local_basis_b = {u01(rng) * std::numbers::pi,
                                   u01(rng) * 2.0 * std::numbers::pi};
                state.emplace(make_pure_schmidt(p));
                break;
            }
        }
        EnsembleRecord rec = analyze_state(*state, local, xp);
        rec.index = index;
        rec.seed = seed;
        rec.state_class = cls;
        records[index] = std::move(rec);
    };

    unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (n_threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) work(i);
    } else {
        n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(count));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mu;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard lock(err_mu);
                        if (!err) err = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    }
    return records;
}

// --- CSV emission -----------------------------------------------------------

inline const char* csv_header() {
    return "index,seed,class,s_a,s_b,s_ab,i_q,ind_ab_q,ind_ba_q,d_q,"
           "h_a0,h_b0,h_ab0,j_tom,disc_tom,ind_ab_tom,ind_ba_tom,d_tom,"
           "theta_a_opt,phi_a_opt,theta_b_opt,phi_b_opt,j_opt,h_a_opt,h_b_opt,"
           "disc_opt,ind_ab_opt,ind_ba_opt,d_opt,x_type,degenerate";
}

namespace detail {

inline std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_csv_row(std::ostream& os, const EnsembleRecord& r) {
    using detail::csv_number;
    os << r.index << ',' << r.seed << ',' << to_string(r.state_class);
    for (double v : {r.q.s_a, r.q.s_b, r.q.s_ab, r.q.i_ab, r.q.ind_a_given_b,
                     r.q.ind_b_given_a, r.q.d_q, r.tom.h_a0, r.tom.h_b0, r.tom.h_ab0,
                     r.tom.j_tom, r.tom.d_discord_tom, r.tom.ind_a_given_b,
                     r.tom.ind_b_given_a, r.tom.d_tom, r.opt.basis_a_opt.theta,
                     r.opt.basis_a_opt.phi, r.opt.basis_b_opt.theta, r.opt.basis_b_opt.phi,
                     r.opt.j_opt, r.opt.h_a_opt, r.opt.h_b_opt, r.opt.d_discord_opt,
                     r.opt.ind_a_given_b, r.opt.ind_b_given_a, r.opt.d_opt})
        os << ',' << csv_number(v);
    os << ',';
    if (r.x_class) os << (r.x_class->kind == XStateKind::TypeI ? "I" : "II");
    os << ',' << (r.degenerate() ? 1 : 0) << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<EnsembleRecord>& records,
                      bool timestamp_header, const std::string& timestamp = {}) {
    if (timestamp_header) os << "# generated " << timestamp << '\n';
    os << csv_header() << '\n';
    for (const auto& r : records) write_csv_row(os, r);
}

}  // namespace tomocorr
