#pragma once

#include <spectratope/polyhedra.hpp>
#include <spectratope/realize.hpp>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace spectratope::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

/// Accepts "p", "p/q" or a JSON integer.
inline Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    throw Error(ErrorCode::Parse, "expected a rational string or integer, got " + j.dump());
}

inline Json to_json(const RatVector& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(to_json(x));
    }
    return out;
}

inline RatVector vector_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw Error(ErrorCode::Parse, "expected an array of rationals");
    }
    RatVector out;
    out.reserve(j.size());
    for (const auto& x : j) {
        out.push_back(rational_from_json(x));
    }
    return out;
}

inline Json to_json(const RatMatrix& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(to_json(RatVector(m.row(i).begin(), m.row(i).end())));
    }
    return out;
}

inline Json to_json(const Matrix<double>& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(Json(std::vector<double>(m.row(i).begin(), m.row(i).end())));
    }
    return out;
}

inline RatMatrix matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw Error(ErrorCode::Parse, "expected a nonempty array of rows");
    }
    std::vector<Rational> data;
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols || cols == 0) {
            throw Error(ErrorCode::Parse, "matrix rows must be nonempty arrays of equal length");
        }
        for (const auto& x : row) {
            data.push_back(rational_from_json(x));
        }
    }
    return RatMatrix(j.size(), cols, std::move(data));
}

inline Matrix<double> double_matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw Error(ErrorCode::Parse, "expected a nonempty array of numeric rows");
    }
    std::vector<double> data;
    const std::size_t cols = j.front().size();
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw Error(ErrorCode::Parse, "numeric matrix rows must have equal length");
        }
        for (const auto& x : row) {
            data.push_back(x.get<double>());
        }
    }
    return Matrix<double>(j.size(), cols, std::move(data));
}

/**
 * Reads a matrix from text: a JSON array of rows, or one row per line with
 * entries separated by commas or whitespace.
 */
inline RatMatrix parse_matrix_text(std::string_view text)
{
    const std::string_view body = detail::trim(text);
    if (body.empty()) {
        throw Error(ErrorCode::Parse, "empty matrix input");
    }
    if (body.front() == '[') {
        Json j;
        try {
            j = Json::parse(body);
        } catch (const Json::parse_error& e) {
            throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
        }
        return matrix_from_json(j);
    }
    std::vector<Rational> data;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::istringstream lines{std::string(body)};
    std::string line;
    while (std::getline(lines, line)) {
        for (char& c : line) {
            if (c == ',') {
                c = ' ';
            }
        }
        std::istringstream tokens(line);
        std::string token;
        std::size_t count = 0;
        while (tokens >> token) {
            data.push_back(parse_rational(token));
            ++count;
        }
        if (count == 0) {
            continue;
        }
        if (rows > 0 && count != cols) {
            throw Error(ErrorCode::Parse, "row " + std::to_string(rows + 1) + " has " + std::to_string(count) +
                                              " entries, expected " + std::to_string(cols));
        }
        cols = count;
        ++rows;
    }
    return RatMatrix(rows, cols, std::move(data));
}

inline Json to_json(const HRep& h)
{
    Json rows = Json::array();
    for (const auto& r : h.rows) {
        rows.push_back(Json{{"a", to_json(r.normal)}, {"b", to_json(r.offset)}, {"tag", to_string(r.tag)}});
    }
    return Json{{"dim", h.dim}, {"rows", std::move(rows)}};
}

inline HRep hrep_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
        throw Error(ErrorCode::Parse, "H-representation needs 'dim' and 'rows'");
    }
    HRep h;
    h.dim = j.at("dim").get<std::size_t>();
    for (const auto& r : j.at("rows")) {
        Inequality row{vector_from_json(r.at("a")), rational_from_json(r.at("b")),
                       parse_tag(r.at("tag").get<std::string>())};
        if (row.normal.size() != h.dim) {
            throw Error(ErrorCode::LengthMismatch, "inequality normal has length " +
                                                       std::to_string(row.normal.size()) + ", dim is " +
                                                       std::to_string(h.dim));
        }
        h.rows.push_back(std::move(row));
    }
    return h;
}

inline Json to_json(const CertificateFlags& f)
{
    return Json{{"nonnegative", f.nonnegative},
                {"symmetric", f.symmetric},
                {"row_stochastic", f.row_stochastic},
                {"doubly_stochastic", f.doubly_stochastic},
                {"trisymmetric", f.trisymmetric}};
}

inline CertificateFlags flags_from_json(const Json& j)
{
    const auto flag = [&](const char* key) { return j.contains(key) && j.at(key).get<bool>(); };
    return {flag("nonnegative"), flag("symmetric"), flag("row_stochastic"), flag("doubly_stochastic"),
            flag("trisymmetric")};
}

inline Json to_json(const RealizationCertificate& c)
{
    Json out{{"method", to_string(c.method)},
             {"basis", to_json(c.basis)},
             {"diagonal", to_json(c.diagonal)},
             {"realizer", to_json(c.realizer)},
             {"flags", to_json(c.flags)},
             {"numeric", c.numeric},
             {"padded_zeros", c.padded_zeros}};
    if (c.numeric) {
        out["symmetrizer"] = c.symmetrizer;
        out["numeric_realizer"] = to_json(c.numeric_realizer);
    }
    return out;
}

inline RealizationCertificate certificate_from_json(const Json& j)
{
    try {
        RealizationCertificate c;
        c.method = parse_method(j.at("method").get<std::string>());
        c.basis = matrix_from_json(j.at("basis"));
        c.diagonal = vector_from_json(j.at("diagonal"));
        c.realizer = matrix_from_json(j.at("realizer"));
        c.flags = flags_from_json(j.at("flags"));
        c.numeric = j.value("numeric", false);
        c.padded_zeros = j.value("padded_zeros", std::size_t{0});
        if (c.numeric) {
            c.symmetrizer = j.at("symmetrizer").get<std::vector<double>>();
            c.numeric_realizer = double_matrix_from_json(j.at("numeric_realizer"));
        }
        return c;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("malformed certificate: ") + e.what());
    }
}

inline Json to_json(const ConditionReport& r)
{
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        Json witness{{"k", v.k}};
        if (v.condition == NecessaryCondition::JLL) {
            witness["m"] = v.m;
        }
        witness["lhs"] = to_json(v.lhs);
        witness["rhs"] = to_json(v.rhs);
        violations.push_back(Json{{"condition", to_string(v.condition)}, {"witness", std::move(witness)}});
    }
    return Json{{"passed", r.passed()},
                {"k_max", r.k_max},
                {"bound_sufficient", r.bound_sufficient},
                {"violations", std::move(violations)}};
}

/// Failure indices are written 1-based.
inline Json to_json(const VerificationReport& r)
{
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json entry{{"check", f.check}, {"detail", f.detail}};
        if (f.index) {
            entry["index"] = Json::array({f.index->first + 1, f.index->second + 1});
        }
        failures.push_back(std::move(entry));
    }
    return Json{{"passed", r.passed()}, {"failures", std::move(failures)}};
}

/// Indented JSON with arrays of scalars kept on one line, so matrices read row by row.
inline void write_pretty(std::string& out, const Json& j, int depth = 0)
{
    const auto scalar = [](const Json& x) { return !x.is_structured(); };
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    if (j.is_array()) {
        if (j.empty() || std::ranges::all_of(j, scalar)) {
            out += j.dump();
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            write_pretty(out, j[i], depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "]";
    } else if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, value] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            write_pretty(out, value, depth + 1);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += close_pad + "}";
    } else {
        out += j.dump();
    }
}

inline std::string pretty(const Json& j)
{
    std::string out;
    write_pretty(out, j);
    return out + "\n";
}

inline std::string join(const RatVector& v, const char* sep = ",")
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += to_string(v[i]);
    }
    return out;
}

/// One vertex per line; header x1,...,xd.
inline std::string vertices_csv(const std::vector<RatVector>& vertices, std::size_t dim)
{
    std::string out;
    for (std::size_t i = 0; i < dim; ++i) {
        out += (i > 0 ? ",x" : "x") + std::to_string(i + 1);
    }
    out += '\n';
    for (const auto& v : vertices) {
        out += join(v) + '\n';
    }
    return out;
}

/// Header a1,...,ad,b,tag; tags are quoted since entry tags contain a comma.
inline std::string hrep_csv(const HRep& h)
{
    std::string out;
    for (std::size_t i = 0; i < h.dim; ++i) {
        out += "a" + std::to_string(i + 1) + ",";
    }
    out += "b,tag\n";
    for (const auto& r : h.rows) {
        out += join(r.normal) + "," + to_string(r.offset) + ",\"" + to_string(r.tag) + "\"\n";
    }
    return out;
}

inline std::string matrix_text(const RatMatrix& m, int decimal_digits = -1)
{
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += decimal_digits < 0 ? to_string(m(i, j)) : to_decimal(m(i, j), decimal_digits);
        }
        out += '\n';
    }
    return out;
}

inline std::string matrix_csv(const RatMatrix& m)
{
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += join(RatVector(m.row(i).begin(), m.row(i).end())) + '\n';
    }
    return out;
}

} // namespace spectratope::io
