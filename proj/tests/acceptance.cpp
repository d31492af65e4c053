// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "tomocorr/ensemble.hpp"

using namespace tomocorr;

namespace {

int failures = 0;

struct Criterion {
    const char* name;
    bool ok = true;
    int violations = 0;
    std::string note;

    void require(bool cond) {
        if (!cond) {
            ok = false;
            ++violations;
        }
    }
    void finish(double seconds) {
        std::printf("[%s] %-58s (%d violations, %.1fs)%s\n", ok ? "PASS" : "FAIL", name,
                    violations, seconds, note.empty() ? "" : ("  " + note).c_str());
        if (!ok) ++failures;
    }
};

double now() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

BipartiteState bell() {
    XStateParams p;
    p.rho11 = p.rho44 = 0.5;
    p.rho14 = 0.5;
    return p.to_state();
}

void criterion1_pure_closed_forms() {
    Criterion c{"1. pure-state closed forms (Bell + 100 random alpha)"};
    const double t0 = now();

    const BipartiteState b = bell();
    const auto q = quantum_causal_report(b);
    const auto tom = tomographic_report(b);
    const auto opt = maximize_mutual_information(b);
    c.require(std::abs(q.i_ab - 2.0) <= 1e-9);
    c.require(std::abs(q.ind_a_given_b + 1.0) <= 1e-9);
    c.require(std::abs(q.ind_b_given_a + 1.0) <= 1e-9);
    c.require(std::abs(q.d_q) <= 1e-9);
    c.require(std::abs(tom.j_tom - 1.0) <= 1e-9);
    c.require(std::abs(opt.j_opt - 1.0) <= 1e-9);
    c.require(std::abs(tom.d_discord_tom - 1.0) <= 1e-9);
    c.require(std::abs(opt.d_discord_opt - 1.0) <= 1e-9);

    Rng rng(2024);
    std::uniform_real_distribution<double> ua(0.01, 0.99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        PureSchmidtParams p;
        p.alpha = ua(rng);
        p.local_basis_a = {u01(rng) * std::numbers::pi, u01(rng) * 2 * std::numbers::pi};
        p.local_basis_b = {u01(rng) * std::numbers::pi, u01(rng) * 2 * std::numbers::pi};
        const BipartiteState s = make_pure_schmidt(p);
        const double a2 = p.alpha * p.alpha;
        const double expected = -a2 * std::log2(a2) - (1 - a2) * std::log2(1 - a2);
        const auto t = tomographic_report(s);
        const auto o = maximize_mutual_information(s);
        c.require(std::abs(t.j_tom - expected) <= 1e-6);
        c.require(std::abs(o.j_opt - expected) <= 1e-6);
        c.require(std::abs(t.ind_a_given_b) <= 1e-6);
        c.require(std::abs(t.ind_b_given_a) <= 1e-6);
        c.require(std::abs(t.d_tom) <= 1e-6);
        c.require(std::abs(o.ind_a_given_b) <= 1e-6);
        c.require(std::abs(o.ind_b_given_a) <= 1e-6);
        c.require(std::abs(o.d_opt) <= 1e-6);
    }
    c.finish(now() - t0);
}

void criterion2_exact_identities() {
    Criterion c{"2. exact identities on 1000 random mixed states"};
    const double t0 = now();
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng(4000 + i);
        const BipartiteState s(generate_mixed_state(rng));
        const auto q = quantum_causal_report(s);
        const auto t = tomographic_report(s);
        if (q.degenerate || t.degenerate) continue;
        c.require(std::abs(t.d_tom * q.i_ab - q.d_q * t.j_tom) <= 1e-9);
        c.require(t.d_tom * q.d_q >= -1e-15);
        c.require(std::abs(t.d_tom) <= std::abs(q.d_q));
    }
    c.finish(now() - t0);
}

void criterion3_inequalities() {
    Criterion c{"3. inequality suite on 1000 random mixed states (optimizer)"};
    const double t0 = now();
    OptimizationSettings cfg;
    const auto recs = run_ensemble(StateClass::Mixed, 1000, 4000, cfg, 0);
    for (const auto& r : recs) {
        c.require(r.opt.j_opt >= r.tom.j_tom - 1e-9);
        c.require(r.q.i_ab >= r.opt.j_opt - 1e-6);
        c.require(r.opt.h_a_opt >= r.q.s_a - 1e-9);
        c.require(r.opt.h_b_opt >= r.q.s_b - 1e-9);
        c.require(r.tom.d_discord_tom >= r.opt.d_discord_opt - 1e-6);
        c.require(r.opt.d_discord_opt >= -1e-6);
    }
    c.finish(now() - t0);
}

void criterion4_x_subclasses() {
    Criterion c{"4. X-state subclasses on 1000 generated X-states"};
    const double t0 = now();
    OptimizationSettings cfg;
    std::size_t t1 = 0, t2 = 0;
    try {
        const auto recs = run_ensemble(StateClass::X, 1000, 8000, cfg, 0);
        for (const auto& r : recs) {
            if (!r.x_class) {
                c.require(false);
                continue;
            }
            if (r.x_class->kind == XStateKind::TypeI) {
                ++t1;
                continue;
            }
            ++t2;
            c.require(std::abs(r.opt.h_a_opt - 1.0) <= 1e-3);
            c.require(std::abs(r.opt.h_b_opt - 1.0) <= 1e-3);
            c.require(std::abs(r.opt.d_opt) <= 1e-3);
            c.require(r.x_class->fit_residual_a <= 1e-3);
            c.require(r.x_class->fit_residual_b <= 1e-3);
        }
        c.require(t1 > 0);
        c.require(t2 > 0);
        c.note = "typeI=" + std::to_string(t1) + " typeII=" + std::to_string(t2);
    } catch (const ClassificationError& e) {
        c.require(false);
        c.note = e.what();
    }
    c.finish(now() - t0);
}

void criterion5_ensemble_statistics() {
    Criterion c{"5. ensemble statistics on 1000 random mixed states"};
    const double t0 = now();
    OptimizationSettings cfg;
    const auto recs = run_ensemble(StateClass::Mixed, 1000, 12000, cfg, 0);
    const auto st = compute_stats(recs);
    c.require(st.pearson_r_dtom_dopt.has_value());
    c.require(st.slope_dtom_on_dopt.has_value());
    c.require(st.sign_agreement_fraction.has_value());
    c.require(st.pearson_r_dq_dopt.has_value());
    c.require(st.slope_dopt_on_dq.has_value());
    if (st.pearson_r_dtom_dopt) c.require(std::abs(*st.pearson_r_dtom_dopt - 0.72) <= 0.10);
    // the 0.52 regression relates d_tom to d_opt in this direction
    if (st.slope_dtom_on_dopt) c.require(std::abs(*st.slope_dtom_on_dopt - 0.52) <= 0.10);
    if (st.sign_agreement_fraction)
        c.require(std::abs(*st.sign_agreement_fraction - 0.70) <= 0.07);
    if (st.pearson_r_dq_dopt) c.require(std::abs(*st.pearson_r_dq_dopt - 0.58) <= 0.10);
    if (st.slope_dopt_on_dq) c.require(std::abs(*st.slope_dopt_on_dq - 0.17) <= 0.08);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "r(dtom,dopt)=%.3f slope=%.3f sign=%.3f r(dq,dopt)=%.3f slope=%.3f",
                  st.pearson_r_dtom_dopt.value_or(nan_value()),
                  st.slope_dtom_on_dopt.value_or(nan_value()),
                  st.sign_agreement_fraction.value_or(nan_value()),
                  st.pearson_r_dq_dopt.value_or(nan_value()),
                  st.slope_dopt_on_dq.value_or(nan_value()));
    c.note = buf;
    c.finish(now() - t0);
}

void criterion6_optimizer_soundness() {
    Criterion c{"6. optimizer vs grid oracle on 50 random states + determinism"};
    const double t0 = now();
    OptimizationSettings cfg;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(600 + i);
        const BipartiteState s(generate_mixed_state(rng));
        const double grid = grid_oracle(s, 24);
        const double opt = maximize_mutual_information(s, cfg).j_opt;
        c.require(opt >= grid - 1e-3);
    }
    const auto a = run_ensemble(StateClass::Mixed, 10, 31, cfg, 1);
    const auto b = run_ensemble(StateClass::Mixed, 10, 31, cfg, 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        c.require(a[i].opt.j_opt == b[i].opt.j_opt);
        c.require(a[i].opt.d_opt == b[i].opt.d_opt ||
                  (std::isnan(a[i].opt.d_opt) && std::isnan(b[i].opt.d_opt)));
    }
    c.finish(now() - t0);
}

void criterion7_eigenvalue_closed_form() {
    Criterion c{"7. X-state eigenvalue closed form on 10000 random X-states"};
    const double t0 = now();
    Rng rng(777);
    for (int i = 0; i < 10000; ++i) {
        const XStateParams p = generate_x_state(rng);
        const auto closed = x_state_eigenvalues(p);
        const auto es = hermitian_eigendecomposition(p.to_matrix());
        for (int k = 0; k < 4; ++k)
            c.require(std::abs(closed[k] - es.eigenvalues[k]) <= 1e-10);
    }
    c.finish(now() - t0);
}

}  // namespace

int main() {
    criterion1_pure_closed_forms();
    criterion2_exact_identities();
    criterion3_inequalities();
    criterion4_x_subclasses();
    criterion5_ensemble_statistics();
    criterion6_optimizer_soundness();
    criterion7_eigenvalue_closed_form();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
