#pragma once

#include <random>

#include "tomocorr/optimizer.hpp"

namespace tomocorr {

using Rng = std::mt19937_64;

/// Parameters of a two-qubit X-state: nonzero entries only on the diagonal
/// and anti-diagonal of the 4x4 density matrix.
struct XStateParams {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    cplx rho14{};
    cplx rho23{};

    void validate() const {
        const double d[4] = {rho11, rho22, rho33, rho44};
        for (double x : d)
            if (!(x >= 0.0)) throw std::invalid_argument("XStateParams: negative diagonal");
        if (std::abs(rho11 + rho22 + rho33 + rho44 - 1.0) > 1e-12)
            throw std::invalid_argument("XStateParams: diagonal does not sum to 1");
        if (std::norm(rho14) > rho11 * rho44 + 1e-12)
            throw std::invalid_argument("XStateParams: |rho14|^2 > rho11*rho44");
        if (std::norm(rho23) > rho22 * rho33 + 1e-12)
            throw std::invalid_argument("XStateParams: |rho23|^2 > rho22*rho33");
    }

    Mat4 to_matrix() const {
        Mat4 m;
        m(0, 0) = rho11;
        m(1, 1) = rho22;
        m(2, 2) = rho33;
        m(3, 3) = rho44;
        m(0, 3) = rho14;
        m(3, 0) = std::conj(rho14);
        m(1, 2) = rho23;
        m(2, 1) = std::conj(rho23);
        return m;
    }

    BipartiteState to_state() const {
        validate();
        return BipartiteState(Density4(to_matrix()));
    }
};

/// Closed-form spectrum of an X-state, sorted descending.
inline std::array<double, 4> x_state_eigenvalues(const XStateParams& p) {
    p.validate();
    const double r1 = std::sqrt((p.rho11 - p.rho44) * (p.rho11 - p.rho44) +
                                4.0 * std::norm(p.rho14));
    const double r2 = std::sqrt((p.rho22 - p.rho33) * (p.rho22 - p.rho33) +
                                4.0 * std::norm(p.rho23));
    std::array<double, 4> lam = {0.5 * (p.rho11 + p.rho44 + r1),
                                 0.5 * (p.rho11 + p.rho44 - r1),
                                 0.5 * (p.rho22 + p.rho33 + r2),
                                 0.5 * (p.rho22 + p.rho33 - r2)};
    std::stable_sort(lam.begin(), lam.end(), std::greater<>());
    return lam;
}

/// Pure state alpha |u0 v0> + sqrt(1-alpha^2) |u1 v1>, with the local Schmidt
/// bases given as measurement bases (|u_k> = U(b)† |k>).
struct PureSchmidtParams {
    double alpha = std::numbers::sqrt2 / 2.0;
    MeasurementBasis local_basis_a;
    MeasurementBasis local_basis_b;
};

inline BipartiteState make_pure_schmidt(const PureSchmidtParams& p) {
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("make_pure_schmidt: alpha must lie in (0,1)");
    const Mat2 ua = basis_to_unitary(p.local_basis_a).dagger();
    const Mat2 ub = basis_to_unitary(p.local_basis_b).dagger();
    const double beta = std::sqrt(1.0 - p.alpha * p.alpha);
    std::array<cplx, 4> psi{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            psi[2 * i + j] = p.alpha * ua(i, 0) * ub(j, 0) + beta * ua(i, 1) * ub(j, 1);
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return BipartiteState(Density4(m));
}

/// Random X-state: normalized uniform diagonal, coherences
/// rho14 = a1 sqrt(rho11 rho44) e^{i f1}, rho23 = a2 sqrt(rho22 rho33) e^{i f2}
/// with a ~ U(0,1), f ~ U(0, 2*pi).
inline XStateParams generate_x_state(Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double p[4];
    double sum = 0.0;
    for (double& x : p) {
        x = u01(rng);
        sum += x;
    }
    XStateParams xs;
    xs.rho11 = p[0] / sum;
    xs.rho22 = p[1] / sum;
    xs.rho33 = p[2] / sum;
    xs.rho44 = p[3] / sum;
    const double a1 = u01(rng);
    const double a2 = u01(rng);
    const double f1 = u01(rng) * 2.0 * std::numbers::pi;
    const double f2 = u01(rng) * 2.0 * std::numbers::pi;
    xs.rho14 = std::polar(a1 * std::sqrt(xs.rho11 * xs.rho44), f1);
    xs.rho23 = std::polar(a2 * std::sqrt(xs.rho22 * xs.rho33), f2);
    return xs;
}

/// Random mixed state: convex mixture of four projectors onto vectors with
/// standard complex normal components, weights normalized U(0,1) draws.
inline BipartiteState generate_mixed_state(Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::array<std::array<cplx, 4>, 4> psi;
    for (auto& v : psi)
        for (auto& c : v) {
            const double re = n01(rng);
            const double im = n01(rng);
            c = cplx(re, im);
        }
    std::array<double, 4> w;
    double wsum = 0.0;
    for (auto& x : w) {
        x = u01(rng);
        wsum += x;
    }
    Mat4 m;
    for (int k = 0; k < 4; ++k) {
        double nrm = 0.0;
        for (const auto& c : psi[k]) nrm += std::norm(c);
        const double scale = w[k] / (wsum * nrm);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m(i, j) += scale * psi[k][i] * std::conj(psi[k][j]);
    }
    return BipartiteState(Density4(m));
}

inline XStateParams werner_params(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_params: p out of [0,1]");
    XStateParams xs;
    xs.rho11 = xs.rho44 = (1.0 + p) / 4.0;
    xs.rho22 = xs.rho33 = (1.0 - p) / 4.0;
    xs.rho14 = p / 2.0;
    return xs;
}

struct PhaseHadamardFit {
    double phi = 0.0;       // azimuth of the fitted equatorial basis
    double residual = 0.0;  // Frobenius distance modulo row phases/permutation
};

namespace detail {

inline double row_phase_distance(const Mat2& a, const Mat2& b) {
    double d2 = 0.0;
    for (int r = 0; r < 2; ++r) {
        double na = 0.0, nb = 0.0;
        cplx dot = 0.0;
        for (int k = 0; k < 2; ++k) {
            na += std::norm(a(r, k));
            nb += std::norm(b(r, k));
            dot += std::conj(b(r, k)) * a(r, k);
        }
        d2 += na + nb - 2.0 * std::abs(dot);
    }
    return std::sqrt(std::max(0.0, d2));
}

}  // namespace detail

/// Least-squares fit of a measurement unitary against the equatorial family
/// H·diag(1, e^{-i phi}) (the phase-flip x Hadamard bases, up to the row
/// operations a tomogram cannot see). Scans phi, minimizing the Frobenius
/// distance modulo row phases and outcome relabeling.
inline PhaseHadamardFit fit_phase_hadamard(const MeasurementBasis& b) {
    const Mat2 u = basis_to_unitary(b);
    Mat2 swapped;
    for (int k = 0; k < 2; ++k) {
        swapped(0, k) = u(1, k);
        swapped(1, k) = u(0, k);
    }
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    auto distance = [&](double phi) {
        Mat2 target;
        const cplx e = std::polar(1.0, -phi);
        target(0, 0) = inv_sqrt2;
        target(0, 1) = inv_sqrt2 * e;
        target(1, 0) = inv_sqrt2;
        target(1, 1) = -inv_sqrt2 * e;
        return std::min(detail::row_phase_distance(u, target),
                        detail::row_phase_distance(swapped, target));
    };

    constexpr int grid = 720;
    const double step = 2.0 * std::numbers::pi / grid;
    PhaseHadamardFit best{0.0, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < grid; ++i) {
        const double d = distance(i * step);
        if (d < best.residual) best = {i * step, d};
    }
    // golden-section refine inside the bracketing cells
    double lo = best.phi - step, hi = best.phi + step;
    constexpr double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = distance(x1), f2 = distance(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = distance(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = distance(x2);
        }
    }
    const double phi = 0.5 * (lo + hi);
    const double d = distance(phi);
    if (d < best.residual) {
        best.residual = d;
        best.phi = std::fmod(phi + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    }
    return best;
}

enum class XStateKind { TypeI, TypeII };

/// TypeI: the identity (tomographic) bases already maximize J.
/// TypeII: the optimum is an equatorial (Hadamard-with-phase) pair that
/// drives both marginal entropies to 1 bit and the optimal asymmetry to 0.
struct XStateClass {
    XStateKind kind = XStateKind::TypeI;
    double phi_a = 0.0;  // TypeII only
    double phi_b = 0.0;
    double fit_residual_a = 0.0;
    double fit_residual_b = 0.0;
    double j_gap = 0.0;  // J_opt - J_tom
};

struct ClassificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline XStateClass classify_x_state(const XStateParams& p, const OptimalReport& opt,
                                    const TomographicReport& tom) {
    p.validate();
    XStateClass c;
    c.j_gap = opt.j_opt - tom.j_tom;
    if (c.j_gap <= 1e-6) {
        c.kind = XStateKind::TypeI;
        return c;
    }
    c.kind = XStateKind::TypeII;
    if (std::abs(opt.h_a_opt - 1.0) > 1e-3 || std::abs(opt.h_b_opt - 1.0) > 1e-3 ||
        std::abs(opt.d_opt) > 1e-3)
        throw ClassificationError(
            "classify_x_state: type-II state without unit optimal entropies "
            "(optimizer failure)");
    const PhaseHadamardFit fa = fit_phase_hadamard(opt.basis_a_opt);
    const PhaseHadamardFit fb = fit_phase_hadamard(opt.basis_b_opt);
    c.phi_a = fa.phi;
    c.phi_b = fb.phi;
    c.fit_residual_a = fa.residual;
    c.fit_residual_b = fb.residual;
    return c;
}

}  // namespace tomocorr
