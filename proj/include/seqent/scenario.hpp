#pragma once

// Scenario documents: a dimension, named observables given as matrices of
// [re, im] pairs, and an optional state.
//
//   {
//     "dim": 2,
//     "observables": {
//       "Z": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
//       "X": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
//     },
//     "state": {"vector": [[1, 0], [0, 0]]},
//     "labels": {"Z": "spin along z"}
//   }
//
// "state" may instead hold {"matrix": [...]} with a density matrix.

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hermitian.hpp"
#include "state.hpp"

namespace seqent {

/// Malformed or unreadable scenario document.
class ScenarioError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct NamedObservable {
    std::string name;
    std::string label;
    HermitianObservable observable;
};

struct Scenario {
    long dim = 0;
    std::vector<NamedObservable> observables;  // document order
    std::optional<DensityOperator> state;

    const HermitianObservable& find(const std::string& name) const {
        for (const auto& o : observables) {
            if (o.name == name) return o.observable;
        }
        throw ScenarioError("unknown observable '" + name + "'");
    }

    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (const auto& o : observables) n.push_back(o.name);
        return n;
    }
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline Complex parse_complex(const ordered_json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ScenarioError(where + ": complex entries must be [re, im] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexVector parse_vector(const ordered_json& j, long dim, const std::string& where) {
    if (!j.is_array()) throw ScenarioError(where + ": expected an array");
    if (static_cast<long>(j.size()) != dim) {
        throw DimensionMismatch(where + ": length " + std::to_string(j.size()) + " vs dim " +
                                std::to_string(dim));
    }
    ComplexVector v(dim);
    for (long i = 0; i < dim; ++i) v(i) = parse_complex(j[static_cast<std::size_t>(i)], where);
    return v;
}

inline ComplexMatrix parse_matrix(const ordered_json& j, long dim, const std::string& where) {
    if (!j.is_array()) throw ScenarioError(where + ": expected an array of rows");
    if (static_cast<long>(j.size()) != dim) {
        throw DimensionMismatch(where + ": " + std::to_string(j.size()) + " rows vs dim " +
                                std::to_string(dim));
    }
    ComplexMatrix m(dim, dim);
    for (long r = 0; r < dim; ++r) {
        m.row(r) = parse_vector(j[static_cast<std::size_t>(r)], dim, where).transpose();
    }
    return m;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    detail::ordered_json doc;
    try {
        doc = detail::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
        throw ScenarioError("scenario: integer field 'dim' is required");
    }
    Scenario s;
    s.dim = doc["dim"].get<long>();
    if (s.dim < kMinDim || s.dim > kMaxDim) {
        throw ScenarioError("scenario: dim must be between 2 and 16");
    }
    if (!doc.contains("observables") || !doc["observables"].is_object() || doc["observables"].empty()) {
        throw ScenarioError("scenario: 'observables' must be a non-empty object");
    }
    std::map<std::string, std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_object()) throw ScenarioError("scenario: 'labels' must be an object");
        for (const auto& [k, v] : doc["labels"].items()) {
            if (!v.is_string()) throw ScenarioError("scenario: labels must be strings");
            labels[k] = v.get<std::string>();
        }
    }
    for (const auto& [name, value] : doc["observables"].items()) {
        const ComplexMatrix m = detail::parse_matrix(value, s.dim, "observable '" + name + "'");
        if (!is_hermitian(m)) {
            throw ScenarioError("observable '" + name + "' is not Hermitian within 1e-8");
        }
        s.observables.push_back({name, labels.count(name) ? labels[name] : name, HermitianObservable(m)});
    }
    if (doc.contains("state")) {
        const auto& st = doc["state"];
        try {
            if (st.is_object() && st.contains("vector")) {
                s.state = DensityOperator(PureState::normalized(detail::parse_vector(st["vector"], s.dim, "state")));
            } else if (st.is_object() && st.contains("matrix")) {
                s.state = DensityOperator(detail::parse_matrix(st["matrix"], s.dim, "state"));
            } else {
                throw ScenarioError("scenario: 'state' must hold 'vector' or 'matrix'");
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const DimensionMismatch&) {
            throw;
        } catch (const InvalidArgument& e) {
            throw ScenarioError(std::string("scenario: invalid state: ") + e.what());
        }
    }
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

/// Serializes observables (and an optional state) in the scenario format.
inline std::string write_scenario(const std::vector<std::pair<std::string, ComplexMatrix>>& observables,
                                  const std::optional<ComplexVector>& state = {}) {
    if (observables.empty()) throw InvalidArgument("write_scenario: no observables");
    auto pair = [](Complex z) { return detail::ordered_json::array({z.real(), z.imag()}); };
    detail::ordered_json doc;
    const long dim = observables.front().second.rows();
    doc["dim"] = dim;
    doc["observables"] = detail::ordered_json::object();
    for (const auto& [name, m] : observables) {
        detail::ordered_json rows = detail::ordered_json::array();
        for (long r = 0; r < m.rows(); ++r) {
            detail::ordered_json row = detail::ordered_json::array();
            for (long c = 0; c < m.cols(); ++c) row.push_back(pair(m(r, c)));
            rows.push_back(row);
        }
        doc["observables"][name] = rows;
    }
    if (state) {
        detail::ordered_json v = detail::ordered_json::array();
        for (long i = 0; i < state->size(); ++i) v.push_back(pair((*state)(i)));
        doc["state"] = {{"vector", v}};
    }
    return doc.dump(2);
}

}  // namespace seqent
