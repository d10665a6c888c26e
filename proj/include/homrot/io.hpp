#pragma once

// Text and JSON encodings for matrices, points and planes.
//
// Text matrix: 4 lines of 4 whitespace-separated decimals.
// JSON matrix: {"m": [[...4],[...4],[...4],[...4]]}.
// Vectors (points/planes): 4 numbers in text, {"v": [...4]} in JSON
// (a bare 4-element array is accepted on input).
// Numbers are printed with 17 significant digits and round-trip exactly.

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "projective.hpp"

namespace homrot {

namespace detail {

template <typename T>
std::string num17(T x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
    return buf;
}

} // namespace detail

template <typename T>
std::string format_matrix_text(const Mat4<T>& M) {
    std::string out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (c) out += ' ';
            out += detail::num17(M(r, c));
        }
        out += '\n';
    }
    return out;
}

template <typename T>
std::string format_vec_text(const Vec4<T>& v) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (i) out += ' ';
        out += detail::num17(v[i]);
    }
    out += '\n';
    return out;
}

template <typename T>
Mat4<T> parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    Mat4<T> M;
    for (int i = 0; i < 16; ++i) {
        double x;
        if (!(in >> x)) throw std::invalid_argument("matrix text: expected 16 numbers");
        M.m[i] = static_cast<T>(x);
    }
    double extra;
    if (in >> extra) throw std::invalid_argument("matrix text: trailing data");
    return M;
}

template <typename T>
Vec4<T> parse_vec_text(const std::string& text) {
    std::istringstream in(text);
    Vec4<T> v;
    for (int i = 0; i < 4; ++i) {
        double x;
        if (!(in >> x)) throw std::invalid_argument("vector text: expected 4 numbers");
        v[i] = static_cast<T>(x);
    }
    double extra;
    if (in >> extra) throw std::invalid_argument("vector text: trailing data");
    return v;
}

template <typename T>
nlohmann::json matrix_to_json(const Mat4<T>& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back(M(r, c));
        rows.push_back(row);
    }
    return {{"m", rows}};
}

template <typename T>
Mat4<T> matrix_from_json(const nlohmann::json& j) {
    const nlohmann::json& rows = j.contains("m") ? j.at("m") : j;
    if (!rows.is_array() || rows.size() != 4)
        throw std::invalid_argument("matrix json: expected 4 rows under \"m\"");
    Mat4<T> M;
    for (int r = 0; r < 4; ++r) {
        if (!rows[r].is_array() || rows[r].size() != 4)
            throw std::invalid_argument("matrix json: each row needs 4 numbers");
        for (int c = 0; c < 4; ++c) M(r, c) = rows[r][c].template get<T>();
    }
    return M;
}

template <typename T>
nlohmann::json vec_to_json(const Vec4<T>& v) {
    return {{"v", {v[0], v[1], v[2], v[3]}}};
}

template <typename T>
Vec4<T> vec_from_json(const nlohmann::json& j) {
    const nlohmann::json& arr = j.contains("v") ? j.at("v") : j;
    if (!arr.is_array() || arr.size() != 4)
        throw std::invalid_argument("vector json: expected 4 numbers under \"v\"");
    return {arr[0].template get<T>(), arr[1].template get<T>(), arr[2].template get<T>(),
            arr[3].template get<T>()};
}

/// Parse a matrix from either encoding; JSON is detected by a leading '{'.
template <typename T>
Mat4<T> parse_matrix_auto(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return matrix_from_json<T>(nlohmann::json::parse(text));
        break;
    }
    return parse_matrix_text<T>(text);
}

} // namespace homrot
