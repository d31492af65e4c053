// Command-line front end: single-state analysis, ensemble statistics,
// pure-state sweeps and invariant verification for two-qubit correlation
// and asymmetry measures.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "tomocorr/ensemble.hpp"

using json = nlohmann::json;
using namespace tomocorr;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_input_error = 2;

json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

json matrix_to_json(const Mat4& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rows.push_back({m(i, j).real(), m(i, j).imag()});
    return rows;
}

json record_to_json(const EnsembleRecord& r) {
    json j;
    j["index"] = r.index;
    j["seed"] = r.seed;
    j["class"] = to_string(r.state_class);
    j["s_a"] = r.q.s_a;
    j["s_b"] = r.q.s_b;
    j["s_ab"] = r.q.s_ab;
    j["i_q"] = r.q.i_ab;
    j["ind_ab_q"] = number_or_null(r.q.ind_a_given_b);
    j["ind_ba_q"] = number_or_null(r.q.ind_b_given_a);
    j["d_q"] = number_or_null(r.q.d_q);
    j["h_a0"] = r.tom.h_a0;
    j["h_b0"] = r.tom.h_b0;
    j["h_ab0"] = r.tom.h_ab0;
    j["j_tom"] = r.tom.j_tom;
    j["disc_tom"] = r.tom.d_discord_tom;
    j["ind_ab_tom"] = number_or_null(r.tom.ind_a_given_b);
    j["ind_ba_tom"] = number_or_null(r.tom.ind_b_given_a);
    j["d_tom"] = number_or_null(r.tom.d_tom);
    j["theta_a_opt"] = r.opt.basis_a_opt.theta;
    j["phi_a_opt"] = r.opt.basis_a_opt.phi;
    j["theta_b_opt"] = r.opt.basis_b_opt.theta;
    j["phi_b_opt"] = r.opt.basis_b_opt.phi;
    j["j_opt"] = r.opt.j_opt;
    j["h_a_opt"] = r.opt.h_a_opt;
    j["h_b_opt"] = r.opt.h_b_opt;
    j["disc_opt"] = r.opt.d_discord_opt;
    j["ind_ab_opt"] = number_or_null(r.opt.ind_a_given_b);
    j["ind_ba_opt"] = number_or_null(r.opt.ind_b_given_a);
    j["d_opt"] = number_or_null(r.opt.d_opt);
    if (r.x_class) {
        j["x_type"] = r.x_class->kind == XStateKind::TypeI ? "I" : "II";
        if (r.x_class->kind == XStateKind::TypeII) {
            j["x_phi_a"] = r.x_class->phi_a;
            j["x_phi_b"] = r.x_class->phi_b;
            j["x_fit_residual_a"] = r.x_class->fit_residual_a;
            j["x_fit_residual_b"] = r.x_class->fit_residual_b;
        }
        j["x_j_gap"] = r.x_class->j_gap;
    }
    j["degenerate"] = r.degenerate();
    return j;
}

json stats_to_json(const SummaryStats& st) {
    auto opt = [](const std::optional<double>& v) -> json {
        if (v) return *v;
        return nullptr;
    };
    json j;
    j["pearson_r_dtom_dopt"] = opt(st.pearson_r_dtom_dopt);
    j["pearson_r_dq_dopt"] = opt(st.pearson_r_dq_dopt);
    j["pearson_r_dq_dtom"] = opt(st.pearson_r_dq_dtom);
    j["slope_dopt_on_dtom"] = opt(st.slope_dopt_on_dtom);
    j["slope_dtom_on_dopt"] = opt(st.slope_dtom_on_dopt);
    j["slope_dopt_on_dq"] = opt(st.slope_dopt_on_dq);
    j["sign_agreement_fraction"] = opt(st.sign_agreement_fraction);
    j["type_i_count"] = st.type_i_count;
    j["type_ii_count"] = st.type_ii_count;
    j["used"] = st.used;
    j["excluded_degenerate"] = st.excluded_degenerate;
    return j;
}

std::string timestamp_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

cplx parse_complex(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("complex entries must be numbers or [re, im] pairs");
}

struct ParsedState {
    BipartiteState state;
    std::optional<XStateParams> x_params;
};

ParsedState state_from_json(const json& j) {
    if (j.contains("xstate")) {
        const json& x = j["xstate"];
        XStateParams p;
        const auto& d = x.at("diag");
        if (!d.is_array() || d.size() != 4)
            throw std::invalid_argument("xstate.diag must have 4 entries");
        p.rho11 = d[0].get<double>();
        p.rho22 = d[1].get<double>();
        p.rho33 = d[2].get<double>();
        p.rho44 = d[3].get<double>();
        if (x.contains("rho14")) p.rho14 = parse_complex(x["rho14"]);
        if (x.contains("rho23")) p.rho23 = parse_complex(x["rho23"]);
        return {p.to_state(), p};
    }
    if (j.contains("matrix")) {
        const json& rows = j["matrix"];
        if (!rows.is_array() || rows.size() != 16)
            throw std::invalid_argument("matrix must be 16 [re, im] pairs, row-major");
        Mat4 m;
        for (int i = 0; i < 16; ++i) m.a[i] = parse_complex(rows[i]);
        return {BipartiteState(Density4(m)), std::nullopt};
    }
    throw std::invalid_argument("state file needs an \"xstate\" or \"matrix\" entry");
}

ParsedState state_from_preset(const std::string& preset) {
    if (preset == "bell") {
        XStateParams p;
        p.rho11 = p.rho44 = 0.5;
        p.rho14 = 0.5;
        return {p.to_state(), p};
    }
    if (preset == "product") {
        XStateParams p;  // diag(0.7,0.3) x diag(0.6,0.4)
        p.rho11 = 0.42;
        p.rho22 = 0.28;
        p.rho33 = 0.18;
        p.rho44 = 0.12;
        return {p.to_state(), p};
    }
    if (preset.rfind("werner:", 0) == 0) {
        const XStateParams p = werner_params(std::stod(preset.substr(7)));
        return {p.to_state(), p};
    }
    throw std::invalid_argument("unknown preset \"" + preset +
                                "\" (use bell, product, werner:p)");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

// --- verify suites ---------------------------------------------------------

struct VerifyContext {
    std::uint64_t seed = 1;
    std::size_t count = 200;
    OptimizationSettings cfg;
    int failures = 0;

    void report(const std::string& name, int violations, std::size_t total) {
        std::printf("[%s] %-50s (%d/%zu violations)\n", violations == 0 ? "PASS" : "FAIL",
                    name.c_str(), violations, total);
        if (violations > 0) ++failures;
    }
};

void verify_identities(VerifyContext& v) {
    int bad = 0;
    for (std::uint64_t i = 0; i < v.count; ++i) {
        Rng rng(v.seed + i);
        const BipartiteState s(generate_mixed_state(rng));
        const auto q = quantum_causal_report(s);
        const auto t = tomographic_report(s);
        if (q.degenerate || t.degenerate) continue;
        if (std::abs(t.d_tom * q.i_ab - q.d_q * t.j_tom) > 1e-9) ++bad;
        if (t.d_tom * q.d_q < -1e-15) ++bad;
        if (std::abs(t.d_tom) > std::abs(q.d_q) + 1e-9) ++bad;
        if (std::abs(q.i_ab - (q.s_a + q.s_b - q.s_ab)) > 1e-12) ++bad;
    }
    v.report("ratio identity, sign and magnitude relations", bad, v.count);
}

void verify_inequalities(VerifyContext& v) {
    int bad = 0;
    const auto recs = run_ensemble(StateClass::Mixed, v.count, v.seed, v.cfg, 0);
    for (const auto& r : recs) {
        if (r.opt.j_opt < r.tom.j_tom - 1e-9) ++bad;
        if (r.q.i_ab < r.opt.j_opt - 1e-6) ++bad;
        if (r.opt.h_a_opt < r.q.s_a - 1e-9) ++bad;
        if (r.opt.h_b_opt < r.q.s_b - 1e-9) ++bad;
        if (r.tom.d_discord_tom < r.opt.d_discord_opt - 1e-6) ++bad;
        if (r.opt.d_discord_opt < -1e-6) ++bad;
        if (r.tom.d_discord_tom < -1e-9) ++bad;
    }
    v.report("entropy and discord inequalities", bad, recs.size());
}

void verify_eigen(VerifyContext& v) {
    int bad = 0;
    Rng rng(v.seed);
    for (std::size_t i = 0; i < v.count; ++i) {
        const XStateParams p = generate_x_state(rng);
        const auto closed = x_state_eigenvalues(p);
        const auto es = hermitian_eigendecomposition(p.to_matrix());
        for (int k = 0; k < 4; ++k)
            if (std::abs(closed[k] - es.eigenvalues[k]) > 1e-10) ++bad;
    }
    v.report("X-state closed-form eigenvalues vs eigensolver", bad, v.count);
}

void verify_oracle(VerifyContext& v) {
    int bad = 0;
    const std::size_t n = std::min<std::size_t>(v.count, 50);
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng(v.seed + i);
        const BipartiteState s(generate_mixed_state(rng));
        if (maximize_mutual_information(s, v.cfg).j_opt < grid_oracle(s, 24) - 1e-3) ++bad;
    }
    v.report("optimizer dominates grid oracle", bad, n);
}

// --- subcommand drivers ----------------------------------------------------

struct CommonOpts {
    std::string cls = "mixed";
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    int starts = 24;
    std::string out;
    std::string format = "csv";
    bool no_timestamp = false;
    unsigned threads = 0;
};

StateClass parse_class(const std::string& s) {
    if (s == "x") return StateClass::X;
    if (s == "mixed") return StateClass::Mixed;
    if (s == "pure") return StateClass::Pure;
    throw std::invalid_argument("unknown state class \"" + s + "\"");
}

int run_analyze(const std::string& preset, const std::string& file, const CommonOpts& o) {
    ParsedState parsed = [&] {
        if (!preset.empty()) return state_from_preset(preset);
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot read state file " + file);
        json j;
        in >> j;
        return state_from_json(j);
    }();

    OptimizationSettings cfg;
    cfg.random_starts = o.starts;
    cfg.seed = o.seed;
    EnsembleRecord rec = analyze_state(parsed.state, cfg, parsed.x_params);
    rec.seed = o.seed;
    rec.state_class = parsed.x_params ? StateClass::X : StateClass::Mixed;

    std::ofstream fout;
    std::ostream& os = open_output(fout, o.out);
    if (o.format == "json") {
        json j = record_to_json(rec);
        j["matrix"] = matrix_to_json(parsed.state.rho_ab().matrix());
        os << j.dump(2) << '\n';
    } else {
        os << csv_header() << '\n';
        write_csv_row(os, rec);
    }
    return exit_ok;
}

int run_ensemble_cmd(const CommonOpts& o) {
    OptimizationSettings cfg;
    cfg.random_starts = o.starts;
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = run_ensemble(parse_class(o.cls), o.count, o.seed, cfg, o.threads);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto stats = compute_stats(recs);

    std::ofstream fout;
    std::ostream& os = open_output(fout, o.out);
    if (o.format == "json") {
        json j;
        j["records"] = json::array();
        for (const auto& r : recs) j["records"].push_back(record_to_json(r));
        j["stats"] = stats_to_json(stats);
        j["runtime_seconds"] = secs;
        os << j.dump(2) << '\n';
    } else {
        write_csv(os, recs, !o.no_timestamp, timestamp_now());
        json j = stats_to_json(stats);
        j["runtime_seconds"] = secs;
        (o.out.empty() ? std::cerr : std::cout) << j.dump(2) << '\n';
    }
    return exit_ok;
}

int run_sweep_pure(const CommonOpts& o) {
    std::vector<EnsembleRecord> recs;
    OptimizationSettings cfg;
    cfg.random_starts = o.starts;
    cfg.seed = o.seed;
    for (std::size_t i = 0; i < o.count; ++i) {
        PureSchmidtParams p;
        p.alpha = static_cast<double>(i + 1) / (o.count + 1);
        EnsembleRecord rec = analyze_state(make_pure_schmidt(p), cfg);
        rec.index = i;
        rec.seed = o.seed;
        rec.state_class = StateClass::Pure;
        recs.push_back(std::move(rec));
    }
    std::ofstream fout;
    std::ostream& os = open_output(fout, o.out);
    if (o.format == "json") {
        json j = json::array();
        for (const auto& r : recs) j.push_back(record_to_json(r));
        os << j.dump(2) << '\n';
    } else {
        write_csv(os, recs, !o.no_timestamp, timestamp_now());
    }
    return exit_ok;
}

int run_verify(const std::string& suite, const CommonOpts& o) {
    VerifyContext v;
    v.seed = o.seed;
    v.count = o.count;
    v.cfg.random_starts = o.starts;
    if (suite == "default" || suite == "identities") verify_identities(v);
    if (suite == "default" || suite == "inequalities") verify_inequalities(v);
    if (suite == "default" || suite == "eigen") verify_eigen(v);
    if (suite == "default" || suite == "oracle") verify_oracle(v);
    return v.failures == 0 ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum, tomographic and optimal-basis correlation analysis "
                 "of two-qubit states"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string preset, file, suite = "default";

    auto add_common = [&](CLI::App* cmd, bool with_class) {
        if (with_class)
            cmd->add_option("--class", o.cls, "state class: x | mixed | pure");
        cmd->add_option("--count", o.count, "number of states");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--starts", o.starts, "optimizer random starts");
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--no-timestamp", o.no_timestamp, "suppress CSV timestamp header");
        cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    };

    auto* analyze = app.add_subcommand("analyze", "analyze a single state");
    analyze->add_option("--preset", preset, "bell | product | werner:p");
    analyze->add_option("--file", file, "JSON state file (xstate params or 4x4 matrix)");
    add_common(analyze, false);

    auto* ensemble = app.add_subcommand("ensemble", "generate and analyze an ensemble");
    add_common(ensemble, true);

    auto* sweep = app.add_subcommand("sweep-pure", "sweep the Schmidt coefficient");
    add_common(sweep, false);

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("--suite", suite,
                       "default | identities | inequalities | eigen | oracle")
        ->check(CLI::IsMember({"default", "identities", "inequalities", "eigen", "oracle"}));
    add_common(verify, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) {
            if (preset.empty() == file.empty()) {
                std::cerr << "analyze: provide exactly one of --preset or --file\n";
                return exit_input_error;
            }
            if (analyze->count("--format") == 0) o.format = "json";  // analyze defaults to json
            return run_analyze(preset, file, o);
        }
        if (app.got_subcommand(ensemble)) return run_ensemble_cmd(o);
        if (app.got_subcommand(sweep)) return run_sweep_pure(o);
        if (app.got_subcommand(verify)) return run_verify(suite, o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_ok;
}
