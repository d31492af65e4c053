#pragma once

#include "tomocorr/eigen.hpp"
#include "tomocorr/matrix.hpp"

namespace tomocorr {

/// Validated density matrix: Hermitian, unit trace, positive semidefinite
/// within `tolerance`.
template <int N>
class Density {
  public:
    static constexpr double default_tolerance = 1e-10;

    explicit Density(const Mat<N>& m, double tolerance = default_tolerance)
        : m_(m), tol_(tolerance) {
        if (m.hermiticity_defect() > tol_)
            throw std::invalid_argument("Density: not Hermitian");
        if (std::abs(m.trace() - cplx{1.0}) > tol_)
            throw std::invalid_argument("Density: trace is not 1");
        const auto es = hermitian_eigendecomposition(m);
        if (es.eigenvalues[N - 1] < -tol_)
            throw std::invalid_argument("Density: negative eigenvalue");
    }

    const Mat<N>& matrix() const { return m_; }
    double tolerance() const { return tol_; }

    double purity() const { return (m_ * m_).trace().real(); }

    /// Eigenvalues sorted descending, with [-tolerance, 0) round-off clamped to 0.
    std::array<double, N> spectrum() const {
        auto ev = hermitian_eigendecomposition(m_).eigenvalues;
        for (auto& l : ev)
            if (l < 0.0) l = 0.0;
        return ev;
    }

  private:
    Mat<N> m_;
    double tol_;
};

using Density2 = Density<2>;
using Density4 = Density<4>;

enum class Subsystem { A, B };

inline Density2 partial_trace(const Density4& rho, Subsystem keep) {
    const Mat4& m = rho.matrix();
    Mat2 r;
    if (keep == Subsystem::A) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    } else {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = m(i, j) + m(i + 2, j + 2);
    }
    return Density2(r, rho.tolerance());
}

template <int N>
Density<N> conjugate_by(const Density<N>& rho, const Mat<N>& u) {
    if (u.unitarity_defect() > 1e-10)
        throw std::invalid_argument("conjugate_by: matrix is not unitary");
    return Density<N>(u * rho.matrix() * u.dagger(), rho.tolerance());
}

}  // namespace tomocorr
