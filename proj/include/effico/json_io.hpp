// SPDX-License-Identifier: MIT
//
// JSON readers for markets, distributions and models, and writers for
// solution sets. Rationals travel as "p/q" strings.
#pragma once

#include "effico/distribution.hpp"
#include "effico/error.hpp"
#include "effico/market.hpp"
#include "effico/solution.hpp"
#include "effico/stochvol.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace effico {

using Json = nlohmann::ordered_json;

template <class S>
S scalar_from_json(const Json& j) {
    if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
    if (j.is_number_integer()) return S(j.get<long long>());
    if (j.is_number()) {
        if constexpr (is_exact_v<S>) {
            // decimal text, not the nearest binary double
            return ScalarTraits<S>::parse(j.dump());
        } else {
            return j.get<double>();
        }
    }
    throw Error(ErrorCode::InvalidArgument, "expected a number or a \"p/q\" string, got " + j.dump());
}

template <class S>
std::vector<S> vector_from_json(const Json& j) {
    require(j.is_array(), ErrorCode::InvalidArgument, "expected an array, got " + j.dump());
    std::vector<S> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(scalar_from_json<S>(v));
    return out;
}

/// 15 significant digits.
inline Json decimal_json(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return Json::parse(buf);
}

template <class S>
Json scalar_to_json(const S& v, bool decimal = false) {
    if constexpr (is_exact_v<S>) {
        if (decimal) return decimal_json(to_double(v));
        return ScalarTraits<S>::to_string(v);
    } else {
        return decimal_json(v);
    }
}

template <class S>
Json vector_to_json(const std::vector<S>& v, bool decimal = false) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(x, decimal));
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
    }
}

/// {"n": 3, "s0": [2], "sT": [[4, 2, 1]]}; "n" is optional.
template <class S>
DiscreteMarket<S> market_from_json(const Json& j) {
    require(j.is_object() && j.contains("s0") && j.contains("sT"), ErrorCode::InvalidArgument,
            "market needs \"s0\" and \"sT\"");
    auto s0 = vector_from_json<S>(j.at("s0"));
    require(j.at("sT").is_array(), ErrorCode::InvalidArgument, "\"sT\" must be an array of rows");
    std::vector<std::vector<S>> sT;
    for (const auto& row : j.at("sT")) sT.push_back(vector_from_json<S>(row));
    DiscreteMarket<S> m(std::move(s0), std::move(sT));
    if (j.contains("n")) {
        require(j.at("n").is_number_integer() && j.at("n").get<long long>() == static_cast<long long>(m.states()),
                ErrorCode::DimensionMismatch, "\"n\" disagrees with the length of the sT rows");
    }
    return m;
}

/// {"values": [1, 2, 4]}
template <class S>
DiscreteDistribution<S> distribution_from_json(const Json& j) {
    require(j.is_object() && j.contains("values"), ErrorCode::InvalidArgument, "distribution needs \"values\"");
    return DiscreteDistribution<S>(vector_from_json<S>(j.at("values")));
}

/// {"mu":0.05,"sigma_h":0.3,"sigma_l":0.15,"p":0.5,"T":1.0,"s0":1.0}; absent keys keep defaults.
inline RegimeSwitchModel model_from_json(const Json& j) {
    require(j.is_object(), ErrorCode::InvalidArgument, "model must be a JSON object");
    RegimeSwitchModel m;
    const std::pair<const char*, double*> fields[] = {{"mu", &m.mu}, {"sigma_h", &m.sigma_h}, {"sigma_l", &m.sigma_l},
                                                      {"p", &m.p},   {"T", &m.T},             {"s0", &m.s0}};
    for (const auto& [key, dst] : fields) {
        if (j.contains(key)) *dst = scalar_from_json<double>(j.at(key));
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const auto& f : fields) known = known || item.key() == f.first;
        require(known, ErrorCode::InvalidArgument, "unknown model field \"" + item.key() + "\"");
    }
    m.validate();
    return m;
}

inline Json model_to_json(const RegimeSwitchModel& m) {
    return Json{{"mu", m.mu}, {"sigma_h", m.sigma_h}, {"sigma_l", m.sigma_l}, {"p", m.p}, {"T", m.T}, {"s0", m.s0}};
}

template <class S>
Json payoff_set_to_json(const PayoffSet<S>& p, bool decimal) {
    Json j = Json::object();
    if (p.is_point()) {
        j["Z"] = vector_to_json(p.vertices[0], decimal);
    } else if (p.is_segment()) {
        // Z(t) = Z + t * direction
        j["Z"] = vector_to_json(p.vertices[0], decimal);
        j["direction"] = vector_to_json(p.direction(), decimal);
        j["t_range"] = Json::array({scalar_to_json(S(0), decimal), scalar_to_json(p.length(), decimal)});
    } else {
        Json hull = Json::array();
        for (const auto& v : p.vertices) hull.push_back(vector_to_json(v, decimal));
        j["Z_hull"] = std::move(hull);
    }
    return j;
}

template <class S>
Json kernel_set_to_json(const KernelSet<S>& k, bool decimal) {
    Json j = Json::object();
    if (k.u_range && !k.u_range->degenerate()) {
        j["u_range"] = Json::array({scalar_to_json(k.u_range->lo, decimal), scalar_to_json(k.u_range->hi, decimal)});
        j["xi_lo"] = vector_to_json(k.at_lo, decimal);
        j["xi_hi"] = vector_to_json(k.at_hi, decimal);
    } else {
        if (k.u_range) j["u"] = scalar_to_json(k.u_range->lo, decimal);
        j["xi"] = vector_to_json(k.at_lo, decimal);
    }
    return j;
}

template <class S>
Json solution_to_json(const SolutionSet<S>& s, bool decimal = false) {
    Json j = Json::object();
    j["problem"] = std::string(to_string(s.kind));
    j["value"] = scalar_to_json(s.value, decimal);
    Json opts = Json::array();
    for (const auto& o : s.optimizers) {
        Json e = payoff_set_to_json(o.payoff, decimal);
        e["kernel"] = kernel_set_to_json(o.kernel, decimal);
        e["boundary"] = o.boundary();
        opts.push_back(std::move(e));
    }
    j["optimizers"] = std::move(opts);
    return j;
}

}  // namespace effico
