#pragma once

#include <random>
#include <vector>

#include "tomocorr/tomography.hpp"

namespace tomocorr {

struct OptimizationSettings {
    int random_starts = 24;
    bool include_tomographic_start = true;
    double simplex_tolerance = 1e-10;  // on the objective value
    int max_iterations = 2000;         // per start
    std::uint64_t seed = 0;
};

/// "Optimal" scheme: bases maximizing the classical mutual information.
struct OptimalReport {
    MeasurementBasis basis_a_opt;
    MeasurementBasis basis_b_opt;
    double j_opt = 0.0;
    double h_a_opt = 0.0;
    double h_b_opt = 0.0;
    double d_discord_opt = 0.0;
    double ind_a_given_b = 0.0;  // NaN when degenerate
    double ind_b_given_a = 0.0;
    double d_opt = 0.0;
    bool degenerate = false;
    bool converged = true;  // false if any start hit max_iterations
};

namespace detail {

using Angles = std::array<double, 4>;  // theta_a, phi_a, theta_b, phi_b

inline double mutual_information_at(const BipartiteState& s, const Angles& x) {
    const MeasurementBasis ba = wrap_angles(x[0], x[1]);
    const MeasurementBasis bb = wrap_angles(x[2], x[3]);
    return classical_mutual_information(tomogram(s, ba, bb));
}

struct NelderMeadResult {
    Angles best{};
    double value = 0.0;
    bool converged = false;
};

/// Standard Nelder-Mead on the 4 basis angles; angle wrapping happens inside
/// the objective so the simplex itself moves in unconstrained coordinates.
inline NelderMeadResult nelder_mead_maximize(const BipartiteState& s, const Angles& start,
                                             double tol, int max_iter) {
    constexpr double refl = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;
    constexpr int n = 4;

    std::array<Angles, n + 1> pts;
    std::array<double, n + 1> val;
    pts[0] = start;
    for (int i = 0; i < n; ++i) {
        pts[i + 1] = start;
        pts[i + 1][i] += 0.25;
    }
    for (int i = 0; i <= n; ++i) val[i] = -mutual_information_at(s, pts[i]);

    auto order = [&] {
        for (int i = 1; i <= n; ++i)
            for (int j = i; j > 0 && val[j] < val[j - 1]; --j) {
                std::swap(val[j], val[j - 1]);
                std::swap(pts[j], pts[j - 1]);
            }
    };
    order();

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (val[n] - val[0] <= tol) break;

        Angles centroid{};
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;

        auto affine = [&](double c) {
            Angles p;
            for (int d = 0; d < n; ++d) p[d] = centroid[d] + c * (centroid[d] - pts[n][d]);
            return p;
        };

        const Angles xr = affine(refl);
        const double fr = -mutual_information_at(s, xr);
        if (fr < val[0]) {
            const Angles xe = affine(expand);
            const double fe = -mutual_information_at(s, xe);
            if (fe < fr) {
                pts[n] = xe;
                val[n] = fe;
            } else {
                pts[n] = xr;
                val[n] = fr;
            }
        } else if (fr < val[n - 1]) {
            pts[n] = xr;
            val[n] = fr;
        } else {
            const Angles xc = affine(fr < val[n] ? contract : -contract);
            const double fc = -mutual_information_at(s, xc);
            if (fc < std::min(fr, val[n])) {
                pts[n] = xc;
                val[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d)
                        pts[i][d] = pts[0][d] + shrink * (pts[i][d] - pts[0][d]);
                    val[i] = -mutual_information_at(s, pts[i]);
                }
            }
        }
        order();
    }
    return {pts[0], -val[0], iter < max_iter};
}

}  // namespace detail

/// i = 1 - J_opt/H_opt per side and their difference; degenerate when a
/// denominator entropy falls below entropy_epsilon.
inline void optimal_causal_quantities(double j_opt, double h_a, double h_b,
                                      OptimalReport& r) {
    if (h_a < 0.0 || h_b < 0.0)
        throw std::invalid_argument("optimal_causal_quantities: negative entropy");
    if (std::min(h_a, h_b) < entropy_epsilon) {
        r.degenerate = true;
        r.ind_a_given_b = nan_value();
        r.ind_b_given_a = nan_value();
        r.d_opt = nan_value();
    } else {
        r.degenerate = false;
        r.ind_a_given_b = 1.0 - j_opt / h_a;
        r.ind_b_given_a = 1.0 - j_opt / h_b;
        r.d_opt = r.ind_a_given_b - r.ind_b_given_a;
    }
}

/// Multistart Nelder-Mead maximization of J over local measurement bases.
/// The tomographic bases are always among the starts (when enabled), which
/// guarantees J_opt >= J_tom. Ties between starts go to the lowest index.
inline OptimalReport maximize_mutual_information(const BipartiteState& s,
                                                 const OptimizationSettings& cfg = {}) {
    if (cfg.random_starts < 1)
        throw std::invalid_argument("maximize_mutual_information: random_starts < 1");

    std::vector<detail::Angles> starts;
    if (cfg.include_tomographic_start) {
        const MeasurementBasis a0 = diagonalizing_basis(s.rho_a());
        const MeasurementBasis b0 = diagonalizing_basis(s.rho_b());
        starts.push_back({a0.theta, a0.phi, b0.theta, b0.phi});
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    constexpr double pi = std::numbers::pi;
    for (int k = 0; k < cfg.random_starts; ++k) {
        detail::Angles x;
        x[0] = u01(rng) * pi;
        x[1] = u01(rng) * 2.0 * pi;
        x[2] = u01(rng) * pi;
        x[3] = u01(rng) * 2.0 * pi;
        starts.push_back(x);
    }

    detail::NelderMeadResult best;
    best.value = -1.0;
    bool all_converged = true;
    for (const auto& start : starts) {
        const auto res = detail::nelder_mead_maximize(s, start, cfg.simplex_tolerance,
                                                      cfg.max_iterations);
        all_converged = all_converged && res.converged;
        if (res.value > best.value) best = res;
    }

    OptimalReport r;
    r.basis_a_opt = wrap_angles(best.best[0], best.best[1]);
    r.basis_b_opt = wrap_angles(best.best[2], best.best[3]);
    const Tomogram t = tomogram(s, r.basis_a_opt, r.basis_b_opt);
    r.j_opt = classical_mutual_information(t);
    r.h_a_opt = shannon_entropy(t.marginal_a);
    r.h_b_opt = shannon_entropy(t.marginal_b);
    const QuantumCausalReport q = quantum_causal_report(s);
    r.d_discord_opt = q.i_ab - r.j_opt;
    r.converged = all_converged;
    optimal_causal_quantities(r.j_opt, r.h_a_opt, r.h_b_opt, r);
    return r;
}

/// Brute-force maximum of J over a product grid of bases: `steps` points per
/// angle per qubit, theta in [0, pi] inclusive, phi in [0, 2*pi) exclusive.
/// Independent check of the simplex optimizer.
inline double grid_oracle(const BipartiteState& s, int steps) {
    if (steps < 8) throw std::invalid_argument("grid_oracle: steps < 8");
    constexpr double pi = std::numbers::pi;
    std::vector<MeasurementBasis> bases;
    bases.reserve(static_cast<std::size_t>(steps) * steps);
    for (int i = 0; i < steps; ++i)
        for (int j = 0; j < steps; ++j)
            bases.push_back({i * pi / (steps - 1), j * 2.0 * pi / steps});
    double best = 0.0;
    for (const auto& ba : bases)
        for (const auto& bb : bases)
            best = std::max(best, classical_mutual_information(tomogram(s, ba, bb)));
    return best;
}

}  // namespace tomocorr
