#pragma once

#include <numbers>

#include "tomocorr/matrix.hpp"

namespace tomocorr {

/// Projective single-qubit measurement basis given by the Bloch axis of its
/// outcome-0 state. theta in [0, pi], phi in [0, 2*pi). Row phases of the
/// measurement unitary never affect tomogram probabilities, so two angles
/// identify the basis completely.
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    bool valid() const {
        return std::isfinite(theta) && std::isfinite(phi) && theta >= 0.0 &&
               theta <= std::numbers::pi && phi >= 0.0 &&
               phi < 2.0 * std::numbers::pi;
    }
};

/// Rotation whose rows are the measurement bras:
///   [  cos(t/2)            e^{-i phi} sin(t/2) ]
///   [ -e^{i phi} sin(t/2)  cos(t/2)            ]
inline Mat2 basis_to_unitary(const MeasurementBasis& b) {
    const double c = std::cos(b.theta / 2.0);
    const double s = std::sin(b.theta / 2.0);
    const cplx e = std::polar(1.0, b.phi);
    Mat2 u;
    u(0, 0) = c;
    u(0, 1) = std::conj(e) * s;
    u(1, 0) = -e * s;
    u(1, 1) = c;
    return u;
}

/// Wrap arbitrary reals onto the canonical (theta, phi) ranges. theta is
/// reflected at the [0, pi] boundaries (reflection past pi flips the axis,
/// which shows up as phi -> phi + pi); phi is reduced mod 2*pi.
inline MeasurementBasis wrap_angles(double theta, double phi) {
    constexpr double pi = std::numbers::pi;
    const double two_pi = 2.0 * pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta > pi) {
        theta = two_pi - theta;
        phi += pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return {theta, phi};
}

}  // namespace tomocorr
