#pragma once

/**
 * JSON serialization for Q-function families and check reports.
 *
 * Family documents ("tq-family/1") carry the grading, the shift base t,
 * the truncation order, the spectral parameters as exact fraction
 * strings, and one coefficient list per index subset (subsets are
 * ordered by their bit mask).  Reduced families additionally carry the
 * rank r and the square-root parameters w; loading such a document
 * re-runs the full reduction-closure validation.
 *
 * Report documents ("tq-report/1") round-trip exactly: for every report
 * R, report_from_json(report_to_json(R)) == R.
 *
 * Every malformed document throws MalformedInput.
 */

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tqfold/br_family.hpp"
#include "tqfold/errors.hpp"
#include "tqfold/qfamily.hpp"
#include "tqfold/report.hpp"

namespace tqfold {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFamilySchema = "tq-family/1";
inline constexpr const char* kReportSchema = "tq-report/1";

namespace detail {

// Wrap a JSON/library failure into the single external-input error type
// so callers can map "bad file" to one exit path.
template <typename Fn>
auto as_input(const char* what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const MalformedInput&) {
        throw;
    } catch (const Json::exception& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    }
}

inline Rat parse_fraction(const Json& j, const char* what) {
    if (!j.is_string()) throw MalformedInput(std::string(what) + ": expected a fraction string");
    return as_input(what, [&] { return rat_parse(j.get<std::string>()); });
}

inline void require_schema(const Json& j, const char* schema) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string() ||
        j["schema"].get<std::string>() != schema)
        throw MalformedInput(std::string("document does not declare schema ") + schema);
}

inline int get_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw MalformedInput(std::string("missing integer field '") + key + "'");
    return j[key].get<int>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Families

inline Json family_to_json(const QFamily& fam) {
    const Grading& g = fam.grading();
    Json j;
    j["schema"] = kFamilySchema;
    j["grading"] = Json{{"M", g.M}, {"N", g.N}};
    j["t"] = rat_str(fam.base().t());
    j["order"] = fam.order();
    Json z = Json::array();
    for (int a = 1; a <= g.size(); ++a) z.push_back(rat_str(fam.z().z(a)));
    j["z"] = std::move(z);
    Json q = Json::array();
    for (const Series& s : fam.entries()) {
        Json coeffs = Json::array();
        for (int k = 0; k < fam.order(); ++k) coeffs.push_back(rat_str(s.coeff(k)));
        q.push_back(std::move(coeffs));
    }
    j["q"] = std::move(q);
    return j;
}

inline Json family_to_json(const BrFamily& fam) {
    Json j = family_to_json(fam.base());
    j["r"] = fam.r();
    Json w = Json::array();
    for (const Rat& wb : fam.w()) w.push_back(rat_str(wb));
    j["w"] = std::move(w);
    return j;
}

inline QFamily qfamily_from_json(const Json& j) {
    detail::require_schema(j, kFamilySchema);
    return detail::as_input("family document", [&]() -> QFamily {
        if (!j.contains("grading") || !j["grading"].is_object())
            throw MalformedInput("family document: missing grading object");
        Grading g(detail::get_int(j["grading"], "M"), detail::get_int(j["grading"], "N"));
        ShiftBase base(detail::parse_fraction(j.contains("t") ? j["t"] : Json(), "shift base t"));
        int order = detail::get_int(j, "order");
        if (!j.contains("z") || !j["z"].is_array() ||
            static_cast<int>(j["z"].size()) != g.size())
            throw MalformedInput("family document: need one z entry per index");
        std::vector<Rat> z;
        for (const Json& zj : j["z"]) z.push_back(detail::parse_fraction(zj, "z entry"));
        if (!j.contains("q") || !j["q"].is_array() ||
            j["q"].size() != (size_t(1) << g.size()))
            throw MalformedInput("family document: need one coefficient list per subset");
        std::vector<Series> q;
        for (const Json& qj : j["q"]) {
            if (!qj.is_array()) throw MalformedInput("family document: coefficient list expected");
            if (static_cast<int>(qj.size()) > order)
                throw MalformedInput("family document: more coefficients than the order admits");
            std::vector<Rat> coeffs;
            for (const Json& cj : qj) coeffs.push_back(detail::parse_fraction(cj, "coefficient"));
            q.push_back(Series::truncated(std::move(coeffs), order));
        }
        return QFamily(g, ZParams(g, std::move(z)), base, order, std::move(q));
    });
}

// True when the document also carries a reduction (rank and square roots).
inline bool family_json_is_reduced(const Json& j) {
    return j.is_object() && j.contains("r") && j.contains("w");
}

inline BrFamily br_family_from_json(const Json& j) {
    QFamily base = qfamily_from_json(j);
    return detail::as_input("reduced family document", [&]() -> BrFamily {
        if (!family_json_is_reduced(j))
            throw MalformedInput("reduced family document: missing rank or square roots");
        int r = detail::get_int(j, "r");
        if (!j["w"].is_array()) throw MalformedInput("reduced family document: w must be a list");
        std::vector<Rat> w;
        for (const Json& wj : j["w"]) w.push_back(detail::parse_fraction(wj, "w entry"));
        return BrFamily(r, std::move(base), std::move(w));
    });
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

// Instance parameters are serialized as a key/value map.  The in-memory
// form is a "k=v k=v ..." string; a params string that does not follow
// that shape is carried under the single key "_".
inline Json params_to_json(const std::string& params) {
    Json map = Json::object();
    if (params.empty()) return map;
    std::istringstream in(params);
    std::vector<std::pair<std::string, std::string>> items;
    std::string token;
    bool shaped = true;
    while (in >> token) {
        size_t eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            shaped = false;
            break;
        }
        items.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    if (!shaped) return Json{{"_", params}};
    for (auto& [k, v] : items) map[k] = v;
    return map;
}

inline std::string params_from_json(const Json& map) {
    if (!map.is_object()) throw MalformedInput("report params: expected an object");
    if (map.size() == 1 && map.contains("_")) return map["_"].get<std::string>();
    std::string out;
    for (auto it = map.begin(); it != map.end(); ++it) {
        if (!it.value().is_string())
            throw MalformedInput("report params: values must be strings");
        if (!out.empty()) out += ' ';
        out += it.key() + "=" + it.value().get<std::string>();
    }
    return out;
}

inline const char* tag_upper(Report::Tag tag) {
    switch (tag) {
        case Report::Tag::Proven: return "PROVEN";
        case Report::Tag::Conjecture: return "CONJECTURE";
        default: return "EXPECTED";
    }
}

}  // namespace detail

inline Json report_to_json(const Report& rep) {
    Json j;
    j["check_name"] = rep.check;
    j["params"] = detail::params_to_json(rep.params);
    j["status"] = rep.status_str();
    j["tag"] = detail::tag_upper(rep.tag);
    j["residual_first_nonzero_order"] =
        rep.residual_first_nonzero ? Json(*rep.residual_first_nonzero) : Json(nullptr);
    j["truncation_order"] = rep.truncation_order;
    j["elapsed_ms"] = rep.elapsed_ms;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

inline Report report_from_json(const Json& j) {
    return detail::as_input("report document", [&]() -> Report {
        Report rep;
        if (!j.is_object()) throw MalformedInput("report document: expected an object");
        if (!j.contains("check_name") || !j["check_name"].is_string())
            throw MalformedInput("report document: missing check_name");
        rep.check = j["check_name"].get<std::string>();
        rep.params = detail::params_from_json(j.contains("params") ? j["params"] : Json::object());
        std::string status = j.value("status", std::string());
        if (status == "PASS")
            rep.status = Report::Status::Pass;
        else if (status == "FAIL")
            rep.status = Report::Status::Fail;
        else if (status == "ERROR")
            rep.status = Report::Status::Error;
        else
            throw MalformedInput("report document: unknown status '" + status + "'");
        std::string tag = j.value("tag", std::string());
        if (tag == "PROVEN")
            rep.tag = Report::Tag::Proven;
        else if (tag == "CONJECTURE")
            rep.tag = Report::Tag::Conjecture;
        else if (tag == "EXPECTED")
            rep.tag = Report::Tag::Expected;
        else
            throw MalformedInput("report document: unknown tag '" + tag + "'");
        if (!j.contains("residual_first_nonzero_order"))
            throw MalformedInput("report document: missing residual_first_nonzero_order");
        const Json& resid = j["residual_first_nonzero_order"];
        if (resid.is_number_integer())
            rep.residual_first_nonzero = resid.get<int>();
        else if (!resid.is_null())
            throw MalformedInput("report document: residual order must be an integer or null");
        if (rep.status == Report::Status::Pass && rep.residual_first_nonzero)
            throw MalformedInput("report document: a passing check cannot carry a residual order");
        rep.truncation_order = detail::get_int(j, "truncation_order");
        if (!j.contains("elapsed_ms") || !j["elapsed_ms"].is_number_integer())
            throw MalformedInput("report document: missing elapsed_ms");
        rep.elapsed_ms = j["elapsed_ms"].get<long long>();
        rep.note = j.value("note", std::string());
        return rep;
    });
}

inline Json report_set_to_json(const std::vector<Report>& reports, bool strict = false) {
    Json j;
    j["schema"] = kReportSchema;
    Json list = Json::array();
    for (const Report& rep : reports) list.push_back(report_to_json(rep));
    j["reports"] = std::move(list);
    j["ok"] = reports_ok(reports, strict);
    return j;
}

inline std::vector<Report> report_set_from_json(const Json& j) {
    detail::require_schema(j, kReportSchema);
    if (!j.contains("reports") || !j["reports"].is_array())
        throw MalformedInput("report document: missing reports list");
    std::vector<Report> out;
    for (const Json& rj : j["reports"]) out.push_back(report_from_json(rj));
    return out;
}

// ---------------------------------------------------------------------------
// File helpers

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot read file: " + path);
    return detail::as_input("file parse", [&] { return Json::parse(in); });
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
    if (!out.flush()) throw Error("write failed: " + path);
}

}  // namespace tqfold
