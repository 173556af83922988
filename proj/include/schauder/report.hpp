#pragma once

// Measurement records produced by the verification checks.

#include "schauder/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace schauder {

/// Shortest round-trip form (at most 17 significant digits), '.' separator, locale independent.
inline std::string csv_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Param {
    std::string name;
    double value = 0.0;
};

/// One sweep point.
struct Row {
    std::string label;
    std::vector<Param> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct SlopeFit {
    std::string name;
    double slope = 0.0;
    double half_width = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    int n_points = 0;
    bool pass = false;
};

struct EmpiricalConstant {
    std::string name;
    double value = 0.0;
    std::string witness;
};

enum class Relation { le, ge, in_band };

/// A pass/fail comparison. For in_band the value must lie in [lower, bound].
struct Item {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    Relation relation = Relation::le;
    double lower = 0.0;
    bool pass = false;
    std::string note;
};

inline Item make_item(std::string name, double value, Relation rel, double bound, double lower = 0.0,
                      std::string note = {})
{
    Item it{std::move(name), value, bound, rel, lower, false, std::move(note)};
    switch (rel) {
        case Relation::le: it.pass = value <= bound; break;
        case Relation::ge: it.pass = value >= bound; break;
        case Relation::in_band: it.pass = value >= lower && value <= bound; break;
    }
    return it;
}

/// A failed item for a measurement that could not be taken.
inline Item failed_item(std::string name, std::string note)
{
    Item it;
    it.name = std::move(name);
    it.value = std::numeric_limits<double>::quiet_NaN();
    it.note = std::move(note);
    it.pass = false;
    return it;
}

struct VerifyReport {
    std::string check;
    std::vector<Row> rows;
    std::vector<SlopeFit> fits;
    std::vector<EmpiricalConstant> constants;
    std::vector<Item> items;
    std::vector<std::string> notes;
    bool pass = false;

    void finalize()
    {
        pass = !items.empty() || !fits.empty();
        for (const auto& i : items) pass = pass && i.pass;
        for (const auto& f : fits) pass = pass && f.pass;
    }

    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (const auto& i : items) {
            if (!i.pass) out.push_back(i.name + (i.note.empty() ? "" : " (" + i.note + ")"));
        }
        for (const auto& f : fits) {
            if (!f.pass) out.push_back(f.name);
        }
        return out;
    }
};

/// Unweighted least-squares slope of log(y) against log(x).
/// half_width is two standard errors from the residual spread.
inline SlopeFit fit_loglog(std::string name, const std::vector<double>& x, const std::vector<double>& y, double expected,
                           double tolerance)
{
    if (x.size() != y.size()) throw InvalidArgument("fit_loglog: size mismatch");
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 3) throw InvalidArgument("fit_loglog: '" + name + "' has fewer than 3 usable points");
    const auto n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidArgument("fit_loglog: '" + name + "' has no spread in x");
    SlopeFit f;
    f.name = std::move(name);
    f.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + f.slope * (lx[i] - mx));
        ssr += r * r;
    }
    f.half_width = 2.0 * std::sqrt(ssr / (n - 2.0) / sxx);
    f.expected = expected;
    f.tolerance = tolerance;
    f.n_points = static_cast<int>(lx.size());
    f.pass = std::abs(f.slope - expected) <= tolerance;
    return f;
}

// ---------------------------------------------------------------------------
// Serialization

inline const char* relation_name(Relation r)
{
    switch (r) {
        case Relation::le: return "<=";
        case Relation::ge: return ">=";
        case Relation::in_band: return "in";
    }
    return "?";
}

/// JSON cannot hold NaN or infinities; they are written as strings.
inline nlohmann::ordered_json json_number(double v)
{
    if (std::isfinite(v)) return v;
    return csv_double(v);
}

inline nlohmann::ordered_json to_json(const VerifyReport& r)
{
    using J = nlohmann::ordered_json;
    J j;
    j["check"] = r.check;
    j["pass"] = r.pass;
    J items = J::array();
    for (const auto& i : r.items) {
        J e;
        e["name"] = i.name;
        e["value"] = json_number(i.value);
        e["relation"] = relation_name(i.relation);
        if (i.relation == Relation::in_band) e["lower"] = json_number(i.lower);
        e["bound"] = json_number(i.bound);
        e["pass"] = i.pass;
        if (!i.note.empty()) e["note"] = i.note;
        items.push_back(e);
    }
    j["items"] = items;
    J fits = J::array();
    for (const auto& f : r.fits) {
        fits.push_back(J{{"name", f.name},
                         {"slope", json_number(f.slope)},
                         {"half_width", json_number(f.half_width)},
                         {"expected", f.expected},
                         {"tolerance", f.tolerance},
                         {"n_points", f.n_points},
                         {"pass", f.pass}});
    }
    j["fits"] = fits;
    J consts = J::array();
    for (const auto& c : r.constants) {
        consts.push_back(J{{"name", c.name}, {"value", json_number(c.value)}, {"witness", c.witness}});
    }
    j["constants"] = consts;
    J rows = J::array();
    for (const auto& row : r.rows) {
        J p = J::object();
        for (const auto& q : row.params) p[q.name] = json_number(q.value);
        rows.push_back(J{{"label", row.label},
                         {"params", p},
                         {"lhs", json_number(row.lhs)},
                         {"rhs", json_number(row.rhs)},
                         {"ratio", json_number(row.ratio)}});
    }
    j["rows"] = rows;
    j["notes"] = r.notes;
    return j;
}

/// RFC 4180 quoting for fields holding commas, quotes or newlines.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

/// One line per sweep point: check,label,params,lhs,rhs,ratio.
inline std::string to_csv(const VerifyReport& r)
{
    std::string out = "check,label,params,lhs,rhs,ratio\n";
    for (const auto& row : r.rows) {
        std::string params;
        for (std::size_t i = 0; i < row.params.size(); ++i) {
            if (i) params += ';';
            params += row.params[i].name + '=' + csv_double(row.params[i].value);
        }
        out += csv_field(r.check) + ',' + csv_field(row.label) + ',' + csv_field(params) + ',' + csv_double(row.lhs) + ',' + csv_double(row.rhs) + ',' +
               csv_double(row.ratio) + '\n';
    }
    return out;
}

}  // namespace schauder
