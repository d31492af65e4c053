#pragma once

#include <limits>

#include "tomocorr/density.hpp"

namespace tomocorr {

/// Subsystem entropy below this is treated as zero; independence functions
/// divide by it and are reported as undefined instead.
inline constexpr double entropy_epsilon = 1e-9;

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

template <int N>
double von_neumann_entropy(const Density<N>& rho) {
    double s = 0.0;
    for (double l : rho.spectrum())
        if (l > 0.0) s -= l * std::log2(l);
    return s;
}

/// Two-qubit state with cached reduced density matrices.
class BipartiteState {
  public:
    explicit BipartiteState(const Density4& rho)
        : rho_ab_(rho),
          rho_a_(partial_trace(rho, Subsystem::A)),
          rho_b_(partial_trace(rho, Subsystem::B)) {}

    const Density4& rho_ab() const { return rho_ab_; }
    const Density2& rho_a() const { return rho_a_; }
    const Density2& rho_b() const { return rho_b_; }

  private:
    Density4 rho_ab_;
    Density2 rho_a_;
    Density2 rho_b_;
};

/// von Neumann entropies, quantum mutual information, independence
/// functions i_{A|B} = 1 - I/S_A (resp. B|A) and their difference d_q.
struct QuantumCausalReport {
    double s_a = 0.0;
    double s_b = 0.0;
    double s_ab = 0.0;
    double i_ab = 0.0;
    double ind_a_given_b = 0.0;  // NaN when degenerate
    double ind_b_given_a = 0.0;
    double d_q = 0.0;
    bool degenerate = false;
};

inline QuantumCausalReport quantum_causal_report(const BipartiteState& s) {
    QuantumCausalReport r;
    r.s_a = von_neumann_entropy(s.rho_a());
    r.s_b = von_neumann_entropy(s.rho_b());
    r.s_ab = von_neumann_entropy(s.rho_ab());
    r.i_ab = r.s_a + r.s_b - r.s_ab;
    if (std::min(r.s_a, r.s_b) < entropy_epsilon) {
        r.degenerate = true;
        r.ind_a_given_b = nan_value();
        r.ind_b_given_a = nan_value();
        r.d_q = nan_value();
    } else {
        r.ind_a_given_b = 1.0 - r.i_ab / r.s_a;
        r.ind_b_given_a = 1.0 - r.i_ab / r.s_b;
        r.d_q = r.ind_a_given_b - r.ind_b_given_a;
    }
    return r;
}

}  // namespace tomocorr
