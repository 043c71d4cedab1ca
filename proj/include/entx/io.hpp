#pragma once

#include <entx/channels.hpp>
#include <entx/gallery.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace entx::io {

using nlohmann::json;

struct file_error : error {
    using error::error;
};

/// 17 significant digits guarantee a bitwise double round-trip through decimal.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_number(const json& j, const char* what) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') {
            throw file_error(std::string("malformed number in ") + what);
        }
        return v;
    }
    throw file_error(std::string("expected a number in ") + what);
}

inline json complex_to_json(const cplx& z) {
    return json::array({fmt17(z.real()), fmt17(z.imag())});
}

inline cplx complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) {
        throw file_error(std::string("expected a [re, im] pair in ") + what);
    }
    return cplx(parse_number(j[0], what), parse_number(j[1], what));
}

inline json state_to_json(const PureState& psi) {
    json amps = json::array();
    for (const auto& z : psi.amplitudes) {
        amps.push_back(complex_to_json(z));
    }
    return json{{"dims", {psi.dA, psi.dB}}, {"amplitudes", std::move(amps)}};
}

inline PureState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("amplitudes")) {
        throw file_error("state file must carry dims and amplitudes");
    }
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2) {
        throw file_error("dims must be [dA, dB]");
    }
    const std::size_t dA = dims[0].get<std::size_t>();
    const std::size_t dB = dims[1].get<std::size_t>();
    const auto& amps = j["amplitudes"];
    if (!amps.is_array() || amps.size() != dA * dB) {
        throw file_error("amplitude count does not match dims");
    }
    ComplexVector v;
    v.reserve(amps.size());
    for (const auto& a : amps) {
        v.push_back(complex_from_json(a, "amplitudes"));
    }
    try {
        return PureState(dA, dB, std::move(v));
    } catch (const error& e) {
        throw file_error(std::string("invalid state: ") + e.what());
    }
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const auto& z : m.data) {
        entries.push_back(complex_to_json(z));
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
        throw file_error("matrix must carry rows, cols and entries");
    }
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != rows * cols) {
        throw file_error("matrix entry count does not match shape");
    }
    std::vector<cplx> data;
    data.reserve(entries.size());
    for (const auto& e : entries) {
        data.push_back(complex_from_json(e, "entries"));
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

inline json channel_to_json(const SeparableChannel& ch) {
    json kraus = json::array();
    for (const auto& [ka, kb] : ch.kraus) {
        kraus.push_back(json{{"a", matrix_to_json(ka)}, {"b", matrix_to_json(kb)}});
    }
    return json{{"dims_in", {ch.dA_in, ch.dB_in}},
                {"dims_out", {ch.dA_out, ch.dB_out}},
                {"kraus", std::move(kraus)}};
}

inline SeparableChannel channel_from_json(const json& j, bool allow_unchecked) {
    if (!j.is_object() || !j.contains("dims_in") || !j.contains("dims_out") ||
        !j.contains("kraus")) {
        throw file_error("channel file must carry dims_in, dims_out and kraus");
    }
    auto dims = [&](const char* key) -> std::pair<std::size_t, std::size_t> {
        const auto& d = j[key];
        if (!d.is_array() || d.size() != 2) {
            throw file_error(std::string(key) + " must be [dA, dB]");
        }
        return {d[0].get<std::size_t>(), d[1].get<std::size_t>()};
    };
    const auto [dA_in, dB_in] = dims("dims_in");
    const auto [dA_out, dB_out] = dims("dims_out");
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> kraus;
    for (const auto& k : j["kraus"]) {
        if (!k.is_object() || !k.contains("a") || !k.contains("b")) {
            throw file_error("each kraus element must carry a and b");
        }
        kraus.emplace_back(matrix_from_json(k["a"]), matrix_from_json(k["b"]));
    }
    try {
        return SeparableChannel(dA_in, dB_in, dA_out, dB_out, std::move(kraus), allow_unchecked);
    } catch (const error& e) {
        throw file_error(std::string("invalid channel: ") + e.what());
    }
}

inline json report_to_json(const gallery::VerificationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}});
    }
    return json{{"params", rep.params}, {"checks", std::move(checks)},
                {"overall", rep.overall()}};
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw file_error("cannot open " + path);
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw file_error("malformed JSON in " + path);
    }
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw file_error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

}  // namespace entx::io
