#pragma once

/**
 * @file json_io.hpp
 * @brief Matrix JSON format:
 *        {"domain": "real" | "rational" | {"fp": p}, "rows": [[..4..] x4]}.
 *
 * Rational entries are "num/den" strings (den omitted when 1), real entries
 * decimal floats, F_p entries integers in [0, p), emitted as strings when
 * they do not fit a 64-bit integer.
 */

#include <optional>
#include <string>

#include <json.hpp>

#include "lorentz/errors.hpp"
#include "lorentz/mat4.hpp"
#include "lorentz/prime_field.hpp"
#include "lorentz/rational.hpp"
#include "lorentz/transform.hpp"

namespace lorentz {

using Json = nlohmann::ordered_json;

inline Json integer_to_json(const Integer& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw ParseError("expected an integer or a decimal string");
}

inline Json to_json(const Mat4<double>& m) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return Json{{"domain", "real"}, {"rows", rows}};
}

inline Json to_json(const Mat4<Rational>& m) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return Json{{"domain", "rational"}, {"rows", rows}};
}

inline Json to_json(const Mat4<FpElem>& m) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 4; ++j) row.push_back(integer_to_json(m(i, j).value()));
        rows.push_back(row);
    }
    return Json{{"domain", Json{{"fp", integer_to_json(m(0, 0).field()->modulus())}}},
                {"rows", rows}};
}

template <class S>
Json to_json(const LorentzTransform<S>& t) {
    return to_json(t.matrix());
}

/// One of the three matrix domains, as parsed from the wire format.
struct ParsedMatrix {
    std::string domain;  // "real", "rational" or "fp"
    std::optional<Mat4<double>> real;
    std::optional<Mat4<Rational>> rational;
    std::optional<Mat4<FpElem>> fp;
    FieldPtr field;  // set when domain == "fp"
};

inline ParsedMatrix parse_matrix(const Json& j) {
    if (!j.is_object() || !j.contains("domain") || !j.contains("rows"))
        throw ParseError("matrix object needs \"domain\" and \"rows\"");
    const Json& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != 4)
        throw ParseError("\"rows\" must be an array of 4 rows");
    for (const auto& r : rows)
        if (!r.is_array() || r.size() != 4) throw ParseError("each row must have 4 entries");

    ParsedMatrix out;
    const Json& dom = j.at("domain");
    if (dom.is_string() && dom.get<std::string>() == "real") {
        out.domain = "real";
        Mat4<double> m;
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) {
                const Json& e = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
                if (!e.is_number()) throw ParseError("real entries must be numbers");
                m(i, c) = e.get<double>();
            }
        out.real = m;
    } else if (dom.is_string() && dom.get<std::string>() == "rational") {
        out.domain = "rational";
        Mat4<Rational> m = Mat4<Rational>::filled(Rational(0));
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) {
                const Json& e = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
                if (e.is_string())
                    m(i, c) = Rational::parse(e.get<std::string>());
                else if (e.is_number_integer())
                    m(i, c) = Rational(static_cast<long>(e.get<long long>()));
                else
                    throw ParseError("rational entries must be \"num/den\" strings or integers");
            }
        out.rational = m;
    } else if (dom.is_object() && dom.contains("fp")) {
        out.domain = "fp";
        out.field = PrimeField::make(integer_from_json(dom.at("fp")));
        Mat4<FpElem> m = Mat4<FpElem>::filled(FpElem(0, out.field));
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c)
                m(i, c) = FpElem(integer_from_json(rows[static_cast<size_t>(i)][static_cast<size_t>(c)]),
                                 out.field);
        out.fp = m;
    } else {
        throw ParseError("domain must be \"real\", \"rational\" or {\"fp\": p}");
    }
    return out;
}

} // namespace lorentz
