#pragma once

#include <span>

#include "tomocorr/basis.hpp"
#include "tomocorr/correlations.hpp"

namespace tomocorr {

/// Joint 4-outcome probability table for local measurements of both qubits,
/// indexed (m_A, m_B), plus its two marginals.
struct Tomogram {
    std::array<double, 4> joint{};       // index 2*m_A + m_B
    std::array<double, 2> marginal_a{};
    std::array<double, 2> marginal_b{};
};

inline double shannon_entropy(std::span<const double> p) {
    double sum = 0.0;
    for (double x : p) {
        if (x < -1e-12) throw std::invalid_argument("shannon_entropy: negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

/// Probabilities T[m_A, m_B] = <m_A m_B| (U_A ⊗ U_B) rho (U_A ⊗ U_B)† |m_A m_B>,
/// computed as quadratic forms over the conjugated measurement rows.
inline Tomogram tomogram(const BipartiteState& s, const MeasurementBasis& ba,
                         const MeasurementBasis& bb) {
    const Mat2 ua = basis_to_unitary(ba);
    const Mat2 ub = basis_to_unitary(bb);
    const Mat4& rho = s.rho_ab().matrix();
    Tomogram t;
    for (int ma = 0; ma < 2; ++ma)
        for (int mb = 0; mb < 2; ++mb) {
            std::array<cplx, 4> w;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    w[2 * i + j] = std::conj(ua(ma, i) * ub(mb, j));
            cplx p = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    p += std::conj(w[i]) * rho(i, j) * w[j];
            double v = p.real();
            if (v < 0.0) v = 0.0;  // Jacobi/round-off, never below -1e-12 for valid rho
            t.joint[2 * ma + mb] = v;
        }
    t.marginal_a = {t.joint[0] + t.joint[1], t.joint[2] + t.joint[3]};
    t.marginal_b = {t.joint[0] + t.joint[2], t.joint[1] + t.joint[3]};
    return t;
}

inline double classical_mutual_information(const Tomogram& t) {
    double j = shannon_entropy(t.marginal_a) + shannon_entropy(t.marginal_b) -
               shannon_entropy(t.joint);
    if (j < 0.0 && j > -1e-10) j = 0.0;
    return j;
}

/// Basis whose unitary diagonalizes rho with descending diagonal
/// (outcome 0 = most probable eigenstate). Maximally mixed input maps to
/// the identity basis.
inline MeasurementBasis diagonalizing_basis(const Density2& rho) {
    const Mat2& m = rho.matrix();
    if (std::abs(m(0, 0) - 0.5) <= 1e-12 && std::abs(m(1, 1) - 0.5) <= 1e-12 &&
        std::abs(m(0, 1)) <= 1e-12)
        return {0.0, 0.0};
    const auto es = hermitian_eigendecomposition(m);
    // U b = |0> for the dominant eigenvector b = (cos(t/2), e^{i phi} sin(t/2))
    cplx v0 = es.eigenvectors(0, 0);
    cplx v1 = es.eigenvectors(1, 0);
    const cplx g = std::abs(v0) > 1e-14 ? std::conj(v0) / std::abs(v0)
                                        : std::conj(v1) / std::abs(v1);
    v0 *= g;
    v1 *= g;
    const double theta = 2.0 * std::atan2(std::abs(v1), v0.real());
    const double phi = std::abs(v1) > 1e-14 ? std::arg(v1) : 0.0;
    return wrap_angles(theta, phi);
}

/// "Tomographic" scheme: measure in the subsystem-diagonalizing bases U^0.
struct TomographicReport {
    MeasurementBasis basis_a0;
    MeasurementBasis basis_b0;
    double h_a0 = 0.0;   // equals S_A
    double h_b0 = 0.0;   // equals S_B
    double h_ab0 = 0.0;
    double j_tom = 0.0;
    double d_discord_tom = 0.0;
    double ind_a_given_b = 0.0;  // NaN when degenerate
    double ind_b_given_a = 0.0;
    double d_tom = 0.0;
    bool degenerate = false;
};

inline TomographicReport tomographic_report(const BipartiteState& s) {
    TomographicReport r;
    r.basis_a0 = diagonalizing_basis(s.rho_a());
    r.basis_b0 = diagonalizing_basis(s.rho_b());
    const Tomogram t = tomogram(s, r.basis_a0, r.basis_b0);
    r.h_a0 = shannon_entropy(t.marginal_a);
    r.h_b0 = shannon_entropy(t.marginal_b);
    r.h_ab0 = shannon_entropy(t.joint);
    r.j_tom = classical_mutual_information(t);
    r.d_discord_tom = r.h_ab0 - von_neumann_entropy(s.rho_ab());
    if (std::min(r.h_a0, r.h_b0) < entropy_epsilon) {
        r.degenerate = true;
        r.ind_a_given_b = nan_value();
        r.ind_b_given_a = nan_value();
        r.d_tom = nan_value();
    } else {
        r.ind_a_given_b = 1.0 - r.j_tom / r.h_a0;
        r.ind_b_given_a = 1.0 - r.j_tom / r.h_b0;
        r.d_tom = r.ind_a_given_b - r.ind_b_given_a;
    }
    return r;
}

}  // namespace tomocorr
