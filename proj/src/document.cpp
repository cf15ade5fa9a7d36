#include "ihom/document.hpp"
#include "ihom/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ihom {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Position of the first quoted occurrence of a string token, for value-level errors.
std::string locate(const std::string& text, const std::string& token) {
    auto pos = text.find("\"" + token + "\"");
    if (pos == std::string::npos) return "";
    return " at " + line_col(text, pos + 1);
}

struct Reader {
    const std::string& text;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        throw Error(ErrorCode::ParseError, path + ": " + msg);
    }

    const json& field(const json& obj, const char* key, const std::string& path) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
        return *it;
    }

    std::int64_t integer(const json& j, const std::string& path) const {
        if (!j.is_number_integer()) fail(path, "expected an integer");
        return j.get<std::int64_t>();
    }

    std::int64_t label(const std::string& key, const std::string& path) const {
        std::int64_t v = 0;
        std::size_t used = 0;
        try {
            v = std::stoll(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || key.empty()) fail(path, "vertex key '" + key + "' is not an integer");
        return v;
    }

    std::vector<std::int64_t> labels(const json& j, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected an array of vertex ids");
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], path + "/" + std::to_string(i)));
        return out;
    }

    Point point(const json& j, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected an array of rational strings");
        Point p;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_string()) fail(path + "/" + std::to_string(i), "rationals are written as strings \"p/q\"");
            const std::string s = j[i].get<std::string>();
            auto q = parse_rational(s);
            if (!q) fail(path + "/" + std::to_string(i), "malformed rational \"" + s + "\"" + locate(text, s));
            p.push_back(*q);
        }
        return p;
    }
};

}  // namespace

bool ComplexDocument::has_tag(const std::string& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}

ComplexDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw Error(ErrorCode::ParseError, line_col(text, at) + ": " + msg);
    }
    Reader r{text};
    if (!j.is_object()) r.fail("/", "expected an object");
    static const std::vector<std::string> known{"format",   "name",   "tags",         "formal_dim", "simplices",
                                                "filtration", "coordinates", "perversities", "chains"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) r.fail("/" + it.key(), "unknown field");

    ComplexDocument doc;
    doc.format = static_cast<int>(r.integer(r.field(j, "format", "/"), "/format"));
    if (doc.format != 1) throw Error(ErrorCode::ValidationError, "unsupported format " + std::to_string(doc.format));
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) r.fail("/name", "expected a string");
        doc.name = it->get<std::string>();
    }
    if (auto it = j.find("tags"); it != j.end()) {
        if (!it->is_array()) r.fail("/tags", "expected an array of strings");
        for (const auto& t : *it) {
            if (!t.is_string()) r.fail("/tags", "expected an array of strings");
            doc.tags.push_back(t.get<std::string>());
        }
    }
    doc.formal_dim = static_cast<int>(r.integer(r.field(j, "formal_dim", "/"), "/formal_dim"));
    const json& sims = r.field(j, "simplices", "/");
    if (!sims.is_array()) r.fail("/simplices", "expected an array");
    for (std::size_t i = 0; i < sims.size(); ++i) doc.simplices.push_back(r.labels(sims[i], "/simplices/" + std::to_string(i)));

    if (auto it = j.find("filtration"); it != j.end()) {
        if (!it->is_object() || it->size() != 1) r.fail("/filtration", "expected {\"vertex\": {...}} or {\"simplex\": [...]}");
        if (auto v = it->find("vertex"); v != it->end()) {
            if (!v->is_object()) r.fail("/filtration/vertex", "expected an object");
            for (auto e = v->begin(); e != v->end(); ++e)
                doc.vertex_filtration[r.label(e.key(), "/filtration/vertex")] =
                    static_cast<int>(r.integer(e.value(), "/filtration/vertex/" + e.key()));
        } else if (auto s = it->find("simplex"); s != it->end()) {
            if (!s->is_array()) r.fail("/filtration/simplex", "expected an array");
            for (std::size_t i = 0; i < s->size(); ++i) {
                const std::string path = "/filtration/simplex/" + std::to_string(i);
                const json& e = (*s)[i];
                if (!e.is_array() || e.size() != 2) r.fail(path, "expected [simplex, value]");
                doc.simplex_filtration.emplace_back(r.labels(e[0], path + "/0"),
                                                    static_cast<int>(r.integer(e[1], path + "/1")));
            }
        } else {
            r.fail("/filtration", "expected \"vertex\" or \"simplex\"");
        }
    }
    if (auto it = j.find("coordinates"); it != j.end()) {
        if (!it->is_object()) r.fail("/coordinates", "expected an object");
        for (auto e = it->begin(); e != it->end(); ++e)
            doc.coordinates[r.label(e.key(), "/coordinates")] = r.point(e.value(), "/coordinates/" + e.key());
    }
    if (auto it = j.find("perversities"); it != j.end()) {
        if (!it->is_object()) r.fail("/perversities", "expected an object");
        for (auto e = it->begin(); e != it->end(); ++e) {
            if (!e.value().is_string()) r.fail("/perversities/" + e.key(), "expected a spec string");
            doc.perversities[e.key()] = e.value().get<std::string>();
        }
    }
    if (auto it = j.find("chains"); it != j.end()) {
        if (!it->is_object()) r.fail("/chains", "expected an object");
        ChainTriangulation L;
        const json& pts = r.field(*it, "points", "/chains");
        if (!pts.is_array()) r.fail("/chains/points", "expected an array");
        for (std::size_t i = 0; i < pts.size(); ++i) L.points.push_back(r.point(pts[i], "/chains/points/" + std::to_string(i)));
        const json& ss = r.field(*it, "simplices", "/chains");
        if (!ss.is_array()) r.fail("/chains/simplices", "expected an array");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            std::vector<std::size_t> s;
            for (auto v : r.labels(ss[i], "/chains/simplices/" + std::to_string(i))) {
                if (v < 0 || static_cast<std::size_t>(v) >= L.points.size())
                    throw Error(ErrorCode::ValidationError, "chain simplex names a missing point");
                s.push_back(static_cast<std::size_t>(v));
            }
            L.simplices.push_back(std::move(s));
        }
        doc.chains = std::move(L);
    }
    return doc;
}

ComplexDocument load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str());
    } catch (const Error& e) {
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        throw Error(e.code(), path.filename().string() + ": " + msg);
    }
}

std::string serialize_document(const ComplexDocument& doc) {
    json j;
    j["format"] = doc.format;
    if (!doc.name.empty()) j["name"] = doc.name;
    if (!doc.tags.empty()) j["tags"] = doc.tags;
    j["formal_dim"] = doc.formal_dim;
    j["simplices"] = doc.simplices;
    if (!doc.vertex_filtration.empty()) {
        json v = json::object();
        for (const auto& [l, f] : doc.vertex_filtration) v[std::to_string(l)] = f;
        j["filtration"] = {{"vertex", v}};
    } else if (!doc.simplex_filtration.empty()) {
        json s = json::array();
        for (const auto& [sim, f] : doc.simplex_filtration) s.push_back(json::array({sim, f}));
        j["filtration"] = {{"simplex", s}};
    }
    auto point = [](const Point& p) {
        json a = json::array();
        for (const auto& q : p) a.push_back(format_rational(q));
        return a;
    };
    if (!doc.coordinates.empty()) {
        json c = json::object();
        for (const auto& [l, p] : doc.coordinates) c[std::to_string(l)] = point(p);
        j["coordinates"] = c;
    }
    if (!doc.perversities.empty()) j["perversities"] = doc.perversities;
    if (doc.chains) {
        json pts = json::array();
        for (const auto& p : doc.chains->points) pts.push_back(point(p));
        j["chains"] = {{"points", pts}, {"simplices", doc.chains->simplices}};
    }
    return j.dump(2) + "\n";
}

RawComplex document_raw(const ComplexDocument& doc) {
    RawComplex raw;
    raw.formal_dim = doc.formal_dim;
    raw.simplices = doc.simplices;
    raw.vertex_filtration = doc.vertex_filtration;
    raw.simplex_filtration = doc.simplex_filtration;
    raw.coordinates = doc.coordinates;
    return raw;
}

FilteredComplex document_complex(const ComplexDocument& doc) { return build_complex(document_raw(doc)); }

ComplexDocument document_from_complex(const FilteredComplex& X, const std::string& name) {
    RawComplex raw = to_raw(X);
    ComplexDocument doc;
    doc.name = name;
    doc.formal_dim = raw.formal_dim;
    doc.simplices = raw.simplices;
    doc.simplex_filtration = raw.simplex_filtration;
    doc.coordinates = raw.coordinates;
    return doc;
}

namespace {

ExtInt ext_value(const std::string& s, const std::string& spec) {
    auto v = ExtInt::parse(s);
    if (!v) throw Error(ErrorCode::ParseError, "bad perversity value '" + s + "' in '" + spec + "'");
    return *v;
}

std::vector<std::pair<std::string, std::string>> pairs(const std::string& spec) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "expected key:value in '" + spec + "'");
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Perversity parse_perversity(const std::string& spec, const FilteredComplex& X, const ComplexDocument* doc) {
    static const std::map<std::string, GMPreset> presets{
        {"0", GMPreset::Zero},        {"zero", GMPreset::Zero},         {"0̄", GMPreset::Zero},
        {"m", GMPreset::LowerMiddle}, {"lower", GMPreset::LowerMiddle}, {"m̄", GMPreset::LowerMiddle},
        {"n", GMPreset::UpperMiddle}, {"upper", GMPreset::UpperMiddle}, {"n̄", GMPreset::UpperMiddle},
        {"t", GMPreset::Top},         {"top", GMPreset::Top},           {"t̄", GMPreset::Top}};
    if (auto it = presets.find(spec); it != presets.end()) return gm_perversity(X, it->second);
    if (doc) {
        if (auto it = doc->perversities.find(spec); it != doc->perversities.end()) {
            if (it->second == spec) throw Error(ErrorCode::ValidationError, "perversity '" + spec + "' names itself");
            return parse_perversity(it->second, X, nullptr);
        }
    }
    if (spec.rfind("k:", 0) == 0) return constant_perversity(X, ext_value(spec.substr(2), spec));
    if (spec.empty()) throw Error(ErrorCode::ParseError, "empty perversity spec");
    if (spec[0] == 'c' && spec.find(':') != std::string::npos) {
        std::map<int, ExtInt> by_codim;
        for (const auto& [k, v] : pairs(spec)) {
            if (k.size() < 2 || k[0] != 'c' || !all_digits(k.substr(1)))
                throw Error(ErrorCode::ParseError, "expected c<codim>:<value> in '" + spec + "'");
            by_codim[std::stoi(k.substr(1))] = ext_value(v, spec);
        }
        return codimensional_perversity(X, by_codim);
    }
    if (spec[0] == 's' && spec.find(':') != std::string::npos) {
        std::vector<std::optional<ExtInt>> vals(X.strata().size());
        for (const auto& [k, v] : pairs(spec)) {
            if (k.size() < 2 || k[0] != 's' || !all_digits(k.substr(1)))
                throw Error(ErrorCode::ParseError, "expected s<stratum>:<value> in '" + spec + "'");
            const std::size_t id = std::stoul(k.substr(1));
            if (id >= vals.size()) throw Error(ErrorCode::ValidationError, "unknown stratum s" + k.substr(1));
            if (X.strata()[id].regular) throw Error(ErrorCode::ValidationError, "stratum " + k + " is regular");
            vals[id] = ext_value(v, spec);
        }
        std::vector<ExtInt> out;
        for (const Stratum& S : X.strata()) {
            if (S.regular) {
                out.push_back(ExtInt(0));
            } else if (!vals[S.id]) {
                throw Error(ErrorCode::ValidationError, "no value for singular stratum s" + std::to_string(S.id));
            } else {
                out.push_back(*vals[S.id]);
            }
        }
        return Perversity(std::move(out), PerversityTag::General);
    }
    throw Error(ErrorCode::ValidationError, "unknown perversity '" + spec + "'");
}

std::vector<std::pair<std::filesystem::path, ComplexDocument>> load_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::ValidationError, "no corpus at " + dir.string());
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::filesystem::path, ComplexDocument>> out;
    for (const auto& f : files) out.emplace_back(f, load_document(f));
    return out;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ihom
