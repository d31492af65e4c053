#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tomocorr/matrix.hpp"

namespace tomocorr {

template <int N>
struct EigenSystem {
    std::array<double, N> eigenvalues{};  // sorted descending
    Mat<N> eigenvectors;                  // column k pairs with eigenvalues[k]

    Mat<N> reconstruct() const {
        Mat<N> m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < N; ++k)
                    s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
                m(i, j) = s;
            }
        return m;
    }
};

namespace detail {

template <int N>
inline double off_diagonal_norm(const Mat<N>& m) {
    double s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for complex Hermitian matrices of dimension 2 or 4.
/// Each off-diagonal element is phased to a real value and annihilated by a
/// real Givens rotation; the accumulated unitary holds the eigenvectors.
template <int N>
EigenSystem<N> hermitian_eigendecomposition(const Mat<N>& input,
                                            double hermiticity_tol = 1e-8) {
    if (input.hermiticity_defect() > hermiticity_tol)
        throw std::invalid_argument("hermitian_eigendecomposition: matrix is not Hermitian");

    Mat<N> m = input;
    // symmetrize round-off
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
        m(i, i) = m(i, i).real();
    }

    Mat<N> v = Mat<N>::identity();
    constexpr int max_sweeps = 100;
    constexpr double conv = 1e-14;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(m) <= conv) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = std::abs(m(p, q));
                if (apq < 1e-300) continue;
                const cplx phase = m(p, q) / apq;  // m(p,q) = apq * phase
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // rotation R: R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase), R(q,q)=c
                // update m := R† m R
                const cplx rp = s * phase;
                for (int k = 0; k < N; ++k) {
                    const cplx mkp = m(k, p);
                    const cplx mkq = m(k, q);
                    m(k, p) = c * mkp - std::conj(rp) * mkq;
                    m(k, q) = rp * mkp + c * mkq;
                }
                for (int k = 0; k < N; ++k) {
                    const cplx mpk = m(p, k);
                    const cplx mqk = m(q, k);
                    m(p, k) = c * mpk - rp * mqk;
                    m(q, k) = std::conj(rp) * mpk + c * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (int k = 0; k < N; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(rp) * vkq;
                    v(k, q) = rp * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps && detail::off_diagonal_norm(m) > 1e-10)
        throw std::runtime_error("hermitian_eigendecomposition: Jacobi failed to converge");

    std::array<int, N> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m(i, i).real() > m(j, j).real(); });

    EigenSystem<N> out;
    for (int k = 0; k < N; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (int i = 0; i < N; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace tomocorr
