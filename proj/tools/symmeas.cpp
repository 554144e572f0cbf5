// Command-line front end: single-shot bounds, figure sweeps, POVM validation,
// and JSON dumps of builtin states and POVM effects.

#include "symmeas/io.hpp"
#include "symmeas/sweep.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace symmeas;

struct StateFlags {
    std::string family;
    std::string file;
    Eigen::Index d = 3;
    double f = 1.0;
    double tau = 0.5;
    std::vector<double> q;
    double noise = 1.0;
};

void add_state_flags(CLI::App* cmd, StateFlags& s) {
    cmd->add_option("--state", s.family,
                    "builtin family: tiles|isotropic|horodecki|corners|maximally-mixed");
    cmd->add_option("--state-file", s.file, "JSON state file {dA,dB,re,im}");
    cmd->add_option("--d", s.d, "local dimension (isotropic, maximally-mixed)");
    cmd->add_option("--f", s.f, "isotropic fidelity");
    cmd->add_option("--tau", s.tau, "Horodecki parameter");
    cmd->add_option("--q", s.q, "corners simplex q1 q2 q3 q4")->expected(4);
    cmd->add_option("--noise", s.noise, "white-noise weight p applied to the state");
}

DensityMatrix make_state(const StateFlags& s) {
    DensityMatrix rho;
    if (!s.file.empty()) {
        std::ifstream in(s.file);
        if (!in) throw std::invalid_argument("cannot open state file: " + s.file);
        json j;
        in >> j;
        rho = density_from_json(j);
    } else if (s.family == "tiles") {
        rho = tiles_state();
    } else if (s.family == "isotropic") {
        rho = isotropic(s.d, s.f);
    } else if (s.family == "horodecki") {
        rho = horodecki_state(s.tau);
    } else if (s.family == "corners") {
        if (s.q.size() != 4) throw std::invalid_argument("corners state requires --q q1 q2 q3 q4");
        rho = corners_state({s.q[0], s.q[1], s.q[2], s.q[3]});
    } else if (s.family == "maximally-mixed") {
        rho = mix_white_noise(isotropic(s.d, 1.0), 0.0);
    } else {
        throw std::invalid_argument("unknown state family: '" + s.family + "'");
    }
    if (s.noise < 1.0) rho = mix_white_noise(rho, s.noise);
    return rho;
}

struct PovmFlags {
    std::string method = "nm";
    std::string grouping = "canonical";
    Eigen::Index N = 0, M = 0;
    double t = 0.01;
    double x = 0.04984;
};

void add_povm_flags(CLI::App* cmd, PovmFlags& p,
                    const std::string& grouping_flag = "--preset") {
    cmd->add_option("--povm", p.method, "bound method: nm|gsic|sic|realignment");
    cmd->add_option(grouping_flag, p.grouping, "grouping preset: canonical|paper-ex1|paper-ex4");
    cmd->add_option("--N", p.N, "number of POVMs");
    cmd->add_option("--M", p.M, "outcomes per POVM");
    cmd->add_option("--t", p.t, "construction parameter t");
    cmd->add_option("--x", p.x, "GSIC purity parameter x");
}

SymmetricPovm make_nm_povm(Eigen::Index d, const PovmFlags& p) {
    Grouping g = (p.grouping == "canonical" && p.N > 0)
                     ? canonical_grouping(d, p.N, p.M)
                     : grouping_preset(p.grouping, d, p.N, p.M);
    return build_nm_povm(gell_mann_basis(d), g, p.t);
}

BoundReport evaluate(const DensityMatrix& rho, const PovmFlags& p) {
    if (p.method == "nm") return nm_bound(rho, make_nm_povm(rho.dA, p));
    if (p.method == "gsic") return gsic_bound(rho, rho.dA, p.x);
    if (p.method == "sic") return sic_bound(rho, rho.dA);
    if (p.method == "realignment") return realignment_bound(rho);
    throw std::invalid_argument("unknown bound method: '" + p.method + "'");
}

int cmd_bound(const StateFlags& sf, const PovmFlags& pf) {
    BoundReport r = evaluate(make_state(sf), pf);
    std::printf("method        %s\n", r.method.c_str());
    std::printf("trace_norm_P  %.12f\n", r.trace_norm_P);
    std::printf("threshold     %.12f\n", r.threshold);
    std::printf("bound_raw     %+.12f\n", r.bound_raw);
    std::printf("bound         %.12f\n", r.bound);
    return 0;
}

int cmd_validate(Eigen::Index d, const PovmFlags& pf) {
    auto basis = gell_mann_basis(d);
    Grouping g = (pf.grouping == "canonical" && pf.N > 0)
                     ? canonical_grouping(d, pf.N, pf.M)
                     : grouping_preset(pf.grouping, d, pf.N, pf.M);
    auto [t_lo, t_hi] = t_range(basis, g);
    if (pf.t < t_lo || pf.t > t_hi) {
        std::fprintf(stderr, "t = %g outside the admissible interval [%.6f, %.6f]\n", pf.t, t_lo,
                     t_hi);
        return 1;
    }
    PovmReport r = validate_povm(build_nm_povm(basis, g, pf.t));
    std::printf("trace condition   %.3e\n", r.dev_single_trace);
    std::printf("purity condition  %.3e\n", r.dev_purity);
    std::printf("intra overlap     %.3e\n", r.dev_intra_overlap);
    std::printf("cross overlap     %.3e\n", r.dev_cross_overlap);
    std::printf("completeness      %.3e\n", r.dev_completeness);
    std::printf("positivity margin %+.3e\n", r.positivity_margin);
    std::printf("2-design residual %.3e\n", r.dev_design);
    std::printf("%s\n", r.passes() ? "all checks pass" : "CHECKS FAILED");
    return r.passes() ? 0 : 1;
}

SweepSpec make_custom_sweep(const StateFlags& sf, const std::string& param, double from, double to,
                            int steps, const std::vector<std::string>& method_tags,
                            const PovmFlags& pf) {
    SweepSpec spec;
    spec.name = "custom";
    spec.parameter = param;
    spec.from = from;
    spec.to = to;
    spec.steps = steps;
    StateFlags base = sf;
    spec.state_at = [base, param](double v) {
        StateFlags s = base;
        if (param == "p")
            s.noise = v;
        else if (param == "f")
            s.f = v;
        else if (param == "tau")
            s.tau = v;
        else if (param == "q1")
            s.q = {v, (1 - v - (-v / 3 + 0.5)) / 2, (1 - v - (-v / 3 + 0.5)) / 2, -v / 3 + 0.5};
        else
            throw std::invalid_argument("unknown sweep parameter: '" + param + "'");
        return make_state(s);
    };
    for (const auto& tag : method_tags) {
        MethodSpec m;
        m.kind = method_from_tag(tag);
        m.label = tag;
        if (m.kind == Method::nm) m.povm = make_nm_povm(sf.d, pf);
        if (m.kind == Method::gsic) m.x = pf.x;
        spec.methods.push_back(std::move(m));
    }
    return spec;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path) {
    spec.validate();
    std::ostringstream csv;
    run_sweep(spec, csv);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
        out << csv.str();
    }
    if (auto crossing = find_threshold_crossing(spec, spec.methods.front())) {
        std::fprintf(stderr, "%s crossing of %s at %s = %.6f\n", spec.methods.front().label.c_str(),
                     "bound_raw", spec.parameter.c_str(), *crossing);
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Symmetric-measurement concurrence bounds"};
    app.require_subcommand(1);

    StateFlags sf;
    PovmFlags pf;
    std::string out_path;
    std::string preset;
    std::string param = "p";
    double from = 0, to = 1;
    int steps = 201;
    std::vector<std::string> methods;
    bool sic_flag = false;

    auto* bound = app.add_subcommand("bound", "evaluate one bound on one state");
    add_state_flags(bound, sf);
    add_povm_flags(bound, pf);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    sweep->add_option("--preset", preset, "figure preset: fig1|fig2|fig3");
    sweep->add_option("--out", out_path, "output CSV path ('-' for stdout)");
    sweep->add_option("--steps", steps, "grid points (>= 2)");
    add_state_flags(sweep, sf);
    add_povm_flags(sweep, pf, "--grouping");
    sweep->add_option("--param", param, "sweep parameter: p|f|tau|q1");
    sweep->add_option("--from", from, "sweep start");
    sweep->add_option("--to", to, "sweep end");
    sweep->add_option("--methods", methods, "bound methods for custom sweeps")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "check the (N,M)-POVM defining conditions");
    validate->add_option("--d", sf.d, "local dimension");
    add_povm_flags(validate, pf);

    auto* state = app.add_subcommand("state", "dump a builtin state as JSON");
    add_state_flags(state, sf);
    state->add_option("--out", out_path, "output path ('-' for stdout)");

    auto* povm = app.add_subcommand("povm", "dump POVM effects as JSON");
    povm->add_option("--d", sf.d, "local dimension");
    add_povm_flags(povm, pf);
    povm->add_flag("--sic", sic_flag, "dump the SIC POVM instead of a Gell-Mann construction");
    povm->add_option("--out", out_path, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // malformed command line
    }

    if (bound->parsed()) return cmd_bound(sf, pf);
    if (validate->parsed()) return cmd_validate(sf.d, pf);
    if (sweep->parsed()) {
        SweepSpec spec = preset.empty()
                             ? make_custom_sweep(sf, param, from, to, steps, methods, pf)
                             : figure_preset(preset, steps);
        return cmd_sweep(spec, out_path);
    }
    json j;
    if (state->parsed()) j = to_json(make_state(sf));
    if (povm->parsed()) {
        SymmetricPovm p = sic_flag ? sic_povm(sf.d) : make_nm_povm(sf.d, pf);
        j = to_json(p);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
        out << j.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "infeasible configuration: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
