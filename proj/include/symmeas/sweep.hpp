#pragma once

#include "symmeas/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace symmeas {

enum class Method { nm, gsic, sic, realignment };

inline Method method_from_tag(const std::string& tag) {
    if (tag == "nm") return Method::nm;
    if (tag == "gsic") return Method::gsic;
    if (tag == "sic") return Method::sic;
    if (tag == "realignment") return Method::realignment;
    throw std::invalid_argument("unknown bound method: " + tag);
}

struct MethodSpec {
    Method kind = Method::nm;
    std::string label;
    SymmetricPovm povm;  // nm only
    double x = 0;        // gsic only

    BoundReport evaluate(const DensityMatrix& rho) const {
        switch (kind) {
            case Method::nm: return nm_bound(rho, povm);
            case Method::gsic: return gsic_bound(rho, rho.dA, x);
            case Method::sic: return sic_bound(rho, rho.dA);
            case Method::realignment: return realignment_bound(rho);
        }
        throw std::logic_error("unreachable");
    }
};

/// One-parameter family of states plus a list of bound methods; drives both
/// the figure presets and user-defined sweeps.
struct SweepSpec {
    std::string name;
    std::string parameter;
    double from = 0;
    double to = 0;
    int steps = 0;
    std::function<DensityMatrix(double)> state_at;
    std::vector<MethodSpec> methods;

    void validate() const {
        if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
        if (!(from < to)) throw std::invalid_argument("sweep: require from < to");
        if (methods.empty()) throw std::invalid_argument("sweep: no methods given");
    }
};

/// Writes `param,<label1>,...` with clamped bounds, 17 significant digits.
inline void run_sweep(const SweepSpec& spec, std::ostream& out) {
    spec.validate();
    out << spec.parameter;
    for (const auto& m : spec.methods) out << ',' << m.label;
    out << '\n';
    char buf[32];
    for (int i = 0; i < spec.steps; ++i) {
        const double p = spec.from + (spec.to - spec.from) * double(i) / double(spec.steps - 1);
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << buf;
        DensityMatrix rho = spec.state_at(p);
        for (const auto& m : spec.methods) {
            std::snprintf(buf, sizeof buf, "%.17g", m.evaluate(rho).bound);
            out << ',' << buf;
        }
        out << '\n';
    }
}

/// Locates the sign change of bound_raw for one method by bisection;
/// nullopt when no crossing lies in [from, to].
inline std::optional<double> find_threshold_crossing(const SweepSpec& spec,
                                                     const MethodSpec& method,
                                                     double param_tol = 1e-6) {
    auto raw = [&](double p) { return method.evaluate(spec.state_at(p)).bound_raw; };
    double lo = spec.from, hi = spec.to;
    double flo = raw(lo), fhi = raw(hi);
    if (flo * fhi > 0) return std::nullopt;
    while (hi - lo > param_tol) {
        const double mid = 0.5 * (lo + hi);
        if (raw(mid) * flo <= 0)
            hi = mid;
        else {
            lo = mid;
            flo = raw(lo);
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

namespace detail {

inline MethodSpec nm_method(const SymmetricPovm& povm, const std::string& label) {
    MethodSpec m;
    m.kind = Method::nm;
    m.label = label;
    m.povm = povm;
    return m;
}

inline std::vector<MethodSpec> standard_d3_methods() {
    std::vector<MethodSpec> methods;
    methods.push_back(nm_method(
        build_nm_povm(gell_mann_basis(3), grouping_preset("paper-ex1", 3), 0.01), "nm_8_2"));
    MethodSpec gsic;
    gsic.kind = Method::gsic;
    gsic.label = "gsic_x0.04984";
    gsic.x = 0.04984;
    methods.push_back(gsic);
    MethodSpec sic;
    sic.kind = Method::sic;
    sic.label = "sic";
    methods.push_back(sic);
    MethodSpec re;
    re.kind = Method::realignment;
    re.label = "realignment";
    methods.push_back(re);
    return methods;
}

}  // namespace detail

/// fig1: tiles state mixed with white noise, p in [0.8, 1].
/// fig2: Horodecki family at q = 0.995, tau in [0.01, 0.99].
/// fig3: 4x4 corners family on the line q4 = -q1/3 + 1/2, q1 in [0, 0.75].
inline SweepSpec figure_preset(const std::string& name, int steps = 201) {
    SweepSpec spec;
    spec.name = name;
    spec.steps = steps;
    if (name == "fig1") {
        spec.parameter = "p";
        spec.from = 0.8;
        spec.to = 1.0;
        const DensityMatrix tiles = tiles_state();
        spec.state_at = [tiles](double p) { return mix_white_noise(tiles, p); };
        spec.methods = detail::standard_d3_methods();
    } else if (name == "fig2") {
        spec.parameter = "tau";
        spec.from = 0.01;
        spec.to = 0.99;
        spec.state_at = [](double tau) { return mix_white_noise(horodecki_state(tau), 0.995); };
        spec.methods = detail::standard_d3_methods();
    } else if (name == "fig3") {
        spec.parameter = "q1";
        spec.from = 0.0;
        spec.to = 0.75;
        spec.state_at = [](double q1) {
            const double q4 = -q1 / 3 + 0.5;
            const double q2 = (1 - q1 - q4) / 2;
            return corners_state({q1, q2, q2, q4});
        };
        spec.methods = {detail::nm_method(
            build_nm_povm(gell_mann_basis(4), grouping_preset("paper-ex4", 4), 0.01), "nm_5_4")};
    } else {
        throw std::invalid_argument("unknown figure preset: " + name);
    }
    spec.validate();
    return spec;
}

}  // namespace symmeas
