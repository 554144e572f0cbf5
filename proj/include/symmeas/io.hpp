#pragma once

#include "symmeas/bounds.hpp"
#include "symmeas/povm.hpp"
#include "symmeas/states.hpp"

#include <json.hpp>

#include <string>

namespace symmeas {

using json = nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.contains("re") || !j.at("re").is_array())
        throw std::invalid_argument("matrix: missing field 're'");
    const auto& re = j.at("re");
    const Eigen::Index rows = Eigen::Index(re.size());
    if (rows == 0) throw std::invalid_argument("matrix: field 're' is empty");
    const Eigen::Index cols = Eigen::Index(re.at(0).size());
    const bool has_im = j.contains("im");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (Eigen::Index(re.at(std::size_t(i)).size()) != cols)
            throw std::invalid_argument("matrix: ragged field 're'");
        for (Eigen::Index jj = 0; jj < cols; ++jj) {
            const double imag =
                has_im ? j.at("im").at(std::size_t(i)).at(std::size_t(jj)).get<double>() : 0.0;
            m(i, jj) = Complex(re.at(std::size_t(i)).at(std::size_t(jj)).get<double>(), imag);
        }
    }
    return m;
}

inline json to_json(const DensityMatrix& rho) {
    json j = matrix_to_json(rho.mat);
    j["dA"] = rho.dA;
    j["dB"] = rho.dB;
    return j;
}

inline DensityMatrix density_from_json(const json& j) {
    if (!j.contains("dA") || !j.contains("dB"))
        throw std::invalid_argument("state: missing field 'dA' or 'dB'");
    DensityMatrix rho{j.at("dA").get<Eigen::Index>(), j.at("dB").get<Eigen::Index>(),
                      matrix_from_json(j)};
    rho.validate();
    return rho;
}

/// Audit dump of a POVM: parameters plus every effect in re/im form.
inline json to_json(const SymmetricPovm& p) {
    json j{{"d", p.dim}, {"N", p.N}, {"M", p.M}, {"x", p.x}};
    if (std::isfinite(p.t)) j["t"] = p.t;
    json effects = json::array();
    for (Eigen::Index a = 0; a < p.N; ++a) {
        json row = json::array();
        for (Eigen::Index k = 0; k < p.M; ++k) row.push_back(matrix_to_json(p.effect(a, k)));
        effects.push_back(std::move(row));
    }
    j["effects"] = std::move(effects);
    if (!p.grouping.assignment.empty()) j["grouping"] = p.grouping.assignment;
    return j;
}

/// POVM config {d, N, M, t, grouping: preset name or explicit partition}.
inline SymmetricPovm povm_from_config(const json& j) {
    for (const char* field : {"d", "N", "M", "t"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("povm config: missing field '") + field + "'");
    const auto d = j.at("d").get<Eigen::Index>();
    const auto N = j.at("N").get<Eigen::Index>();
    const auto M = j.at("M").get<Eigen::Index>();
    Grouping grouping;
    if (!j.contains("grouping") || j.at("grouping").is_null()) {
        grouping = canonical_grouping(d, N, M);
    } else if (j.at("grouping").is_string()) {
        grouping = grouping_preset(j.at("grouping").get<std::string>(), d, N, M);
    } else {
        grouping = Grouping{d, N, M, j.at("grouping").get<std::vector<std::vector<std::size_t>>>()};
        grouping.validate();
    }
    return build_nm_povm(gell_mann_basis(d), grouping, j.at("t").get<double>());
}

inline json to_json(const BoundReport& r) {
    json j{{"method", r.method},
           {"trace_norm_P", r.trace_norm_P},
           {"threshold", r.threshold},
           {"bound_raw", r.bound_raw},
           {"bound", r.bound},
           {"d", r.d}};
    if (r.N > 0) j["N"] = r.N;
    if (r.M > 0) j["M"] = r.M;
    if (std::isfinite(r.x)) j["x"] = r.x;
    if (std::isfinite(r.t)) j["t"] = r.t;
    return j;
}

}  // namespace symmeas
