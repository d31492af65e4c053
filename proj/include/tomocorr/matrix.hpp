#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace tomocorr {

using cplx = std::complex<double>;

/// Fixed-size N×N complex matrix, row-major. For dim=4 the basis order is
/// |00>,|01>,|10>,|11> with the first index belonging to qubit A.
template <int N>
struct Mat {
    static_assert(N == 2 || N == 4);
    std::array<cplx, N * N> a{};

    cplx& operator()(int i, int j) { return a[i * N + j]; }
    const cplx& operator()(int i, int j) const { return a[i * N + j]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat dagger() const {
        Mat m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    Mat operator*(const Mat& o) const {
        Mat m;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const cplx v = (*this)(i, k);
                if (v == cplx{}) continue;
                for (int j = 0; j < N; ++j) m(i, j) += v * o(k, j);
            }
        return m;
    }

    Mat operator+(const Mat& o) const {
        Mat m;
        for (int i = 0; i < N * N; ++i) m.a[i] = a[i] + o.a[i];
        return m;
    }

    Mat operator-(const Mat& o) const {
        Mat m;
        for (int i = 0; i < N * N; ++i) m.a[i] = a[i] - o.a[i];
        return m;
    }

    Mat operator*(cplx s) const {
        Mat m;
        for (int i = 0; i < N * N; ++i) m.a[i] = a[i] * s;
        return m;
    }

    double max_abs_diff(const Mat& o) const {
        double d = 0.0;
        for (int i = 0; i < N * N; ++i) d = std::max(d, std::abs(a[i] - o.a[i]));
        return d;
    }

    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    double unitarity_defect() const {
        return (dagger() * (*this)).max_abs_diff(identity());
    }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

inline Mat4 tensor_product(const Mat2& x, const Mat2& y) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
    return m;
}

}  // namespace tomocorr
