#pragma once

// Files: Field CSV with a JSON grid sidecar, problem-family manifests, hashed output manifests.

#include "schauder/error.hpp"
#include "schauder/field.hpp"
#include "schauder/manufactured.hpp"
#include "schauder/report.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace schauder {

namespace fs = std::filesystem;

inline double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidArgument("parse: not a number: '" + std::string(s) + "'");
    }
    return v;
}

inline std::string read_text(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const fs::path& p, const std::string& text)
{
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + p.string());
    out << text;
    if (!out) throw InvalidArgument("write failed for " + p.string());
}

// ---------------------------------------------------------------------------
// Grid specs and fields

inline nlohmann::ordered_json to_json(const GridSpec& g)
{
    nlohmann::ordered_json j;
    j["dim"] = g.dim();
    std::vector<double> lo;
    std::vector<double> hi;
    for (int k = 0; k < g.dim(); ++k) {
        lo.push_back(g.bounds.lo[static_cast<std::size_t>(k)]);
        hi.push_back(g.bounds.hi[static_cast<std::size_t>(k)]);
    }
    j["x_lo"] = lo;
    j["x_hi"] = hi;
    j["t_lo"] = g.bounds.t_lo;
    j["t_hi"] = g.bounds.t_hi;
    j["nx"] = g.nx;
    j["nt"] = g.nt;
    return j;
}

inline GridSpec grid_from_json(const nlohmann::json& j)
{
    try {
        Box b;
        b.dim = j.at("dim").get<int>();
        const auto lo = j.at("x_lo").get<std::vector<double>>();
        const auto hi = j.at("x_hi").get<std::vector<double>>();
        if (static_cast<int>(lo.size()) != b.dim || static_cast<int>(hi.size()) != b.dim) {
            throw InvalidArgument("grid: bounds length does not match dim");
        }
        for (int k = 0; k < b.dim; ++k) {
            b.lo[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
            b.hi[static_cast<std::size_t>(k)] = hi[static_cast<std::size_t>(k)];
        }
        b.t_lo = j.at("t_lo").get<double>();
        b.t_hi = j.at("t_hi").get<double>();
        b.validate();
        return GridSpec(b, j.at("nx").get<int>(), j.at("nt").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("grid: malformed JSON: ") + e.what());
    }
}

inline fs::path sidecar_path(const fs::path& csv) { return fs::path(csv).replace_extension(".json"); }

/// Header ix0[,ix1[,ix2]],it,value; one row per node in flat order.
inline std::string field_csv(const Field& f)
{
    const auto& g = f.spec();
    std::string out;
    for (int k = 0; k < g.dim(); ++k) out += "ix" + std::to_string(k) + ',';
    out += "it,value\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const auto idx = g.unflatten(i);
        for (int k = 0; k < g.dim(); ++k) out += std::to_string(idx.ix[static_cast<std::size_t>(k)]) + ',';
        out += std::to_string(idx.it) + ',' + csv_double(f.value(i)) + '\n';
    }
    return out;
}

inline void write_field(const Field& f, const fs::path& csv)
{
    write_text(csv, field_csv(f));
    write_text(sidecar_path(csv), to_json(f.spec()).dump(2) + '\n');
}

inline Field read_field(const fs::path& csv)
{
    const GridSpec g = grid_from_json(nlohmann::json::parse(read_text(sidecar_path(csv))));
    std::istringstream in(read_text(csv));
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("field: empty CSV " + csv.string());
    std::vector<double> vals(g.node_count());
    std::vector<char> seen(g.node_count(), 0);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> cols;
        std::string_view rest(line);
        while (true) {
            const auto pos = rest.find(',');
            cols.push_back(rest.substr(0, pos));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        if (static_cast<int>(cols.size()) != g.dim() + 2) throw InvalidArgument("field: wrong column count in " + csv.string());
        GridSpec::Index idx;
        for (int k = 0; k < g.dim(); ++k) {
            idx.ix[static_cast<std::size_t>(k)] = static_cast<int>(parse_double(cols[static_cast<std::size_t>(k)]));
        }
        idx.it = static_cast<int>(parse_double(cols[static_cast<std::size_t>(g.dim())]));
        const std::size_t flat = g.flatten(idx);
        vals[flat] = parse_double(cols.back());
        seen[flat] = 1;
        ++rows;
    }
    if (rows != g.node_count() || std::count(seen.begin(), seen.end(), 0) != 0) {
        throw InvalidArgument("field: CSV does not cover every node of its grid");
    }
    return Field(g, std::move(vals), Provenance::sampled);
}

// ---------------------------------------------------------------------------
// Problem-family manifests

inline nlohmann::ordered_json family_manifest(const FamilyConfig& cfg)
{
    using J = nlohmann::ordered_json;
    J j;
    j["seed"] = cfg.seed;
    j["alpha"] = cfg.alpha;
    j["lambda"] = cfg.lambda;
    j["Lambda"] = cfg.Lambda;
    j["dim"] = cfg.dim;
    j["count"] = cfg.count;
    j["amplitude_scale"] = cfg.amplitude_scale;
    J terms = J::array();
    for (const auto& pp : family_params(cfg)) {
        J t;
        t["index"] = pp.index;
        t["mu"] = pp.mu;
        J mods = J::array();
        for (const auto& m : pp.modulation) {
            mods.push_back(J{{"coeff", m.coeff},
                             {"px", std::vector<int>(m.px.begin(), m.px.begin() + pp.dim)},
                             {"pt", m.pt}});
        }
        t["modulation"] = mods;
        J ents = J::array();
        for (const auto& e : pp.entries) {
            ents.push_back(J{{"k", e.k},
                             {"omega", e.omega},
                             {"phase", e.phase},
                             {"w_cusp", e.w_cusp},
                             {"cusp_x", std::vector<double>(e.cusp_x.begin(), e.cusp_x.begin() + pp.dim)},
                             {"cusp_t", e.cusp_t}});
        }
        t["entries"] = ents;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

/// Rebuild the problems exactly from a manifest.
inline std::vector<ManufacturedProblem> problems_from_manifest(const nlohmann::json& j)
{
    try {
        std::vector<ManufacturedProblem> out;
        const int dim = j.at("dim").get<int>();
        for (const auto& t : j.at("terms")) {
            ProblemParams pp;
            pp.index = t.at("index").get<int>();
            pp.dim = dim;
            pp.alpha = j.at("alpha").get<double>();
            pp.lambda = j.at("lambda").get<double>();
            pp.Lambda = j.at("Lambda").get<double>();
            pp.mu = t.at("mu").get<double>();
            for (const auto& m : t.at("modulation")) {
                Monomial mo;
                mo.coeff = m.at("coeff").get<double>();
                const auto px = m.at("px").get<std::vector<int>>();
                if (static_cast<int>(px.size()) != dim) throw InvalidArgument("manifest: monomial length mismatch");
                for (int k = 0; k < dim; ++k) mo.px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k)];
                mo.pt = m.at("pt").get<int>();
                pp.modulation.push_back(mo);
            }
            for (const auto& e : t.at("entries")) {
                EntryParams ep;
                ep.k = e.at("k").get<double>();
                ep.omega = e.at("omega").get<double>();
                ep.phase = e.at("phase").get<double>();
                ep.w_cusp = e.at("w_cusp").get<double>();
                const auto cx = e.at("cusp_x").get<std::vector<double>>();
                if (static_cast<int>(cx.size()) != dim) throw InvalidArgument("manifest: cusp center length mismatch");
                for (int k = 0; k < dim; ++k) ep.cusp_x[static_cast<std::size_t>(k)] = cx[static_cast<std::size_t>(k)];
                ep.cusp_t = e.at("cusp_t").get<double>();
                pp.entries.push_back(ep);
            }
            out.push_back(build_problem(pp));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("manifest: malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Output manifests

inline std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256: digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Write manifest.json listing each file with its size and SHA-256.
inline void write_manifest(const fs::path& dir, const std::vector<std::string>& files,
                           const nlohmann::ordered_json& config)
{
    nlohmann::ordered_json j;
    j["created_utc"] = utc_timestamp();
    j["config"] = config;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& name : files) {
        const std::string data = read_text(dir / name);
        list.push_back({{"file", name}, {"bytes", data.size()}, {"sha256", sha256_hex(data)}});
    }
    j["files"] = list;
    write_text(dir / "manifest.json", j.dump(2) + '\n');
}

}  // namespace schauder
