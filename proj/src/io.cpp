#include "sunflower/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "sunflower/error.hpp"

namespace sunflower::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::uint64_t as_uint(const Json& j, const std::string& what,
                      std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ParseError(what + " must be a nonnegative integer, got " + j.dump());
    auto v = j.get<std::uint64_t>();
    if (v > max) throw ParseError(what + " is out of range: " + j.dump());
    return v;
}

std::vector<std::uint64_t> as_uint_list(const Json& j, const std::string& what,
                                        std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
    if (!j.is_array()) throw ParseError(what + " must be an array");
    std::vector<std::uint64_t> out;
    for (const auto& v : j) out.push_back(as_uint(v, what + " entry", max));
    return out;
}

FiniteSet as_set(const Json& j, const std::string& what) {
    std::vector<Atom> atoms;
    for (auto v : as_uint_list(j, what, std::numeric_limits<Atom>::max())) atoms.push_back(static_cast<Atom>(v));
    return FiniteSet(std::move(atoms));
}

Json set_json(const FiniteSet& s) { return Json(std::vector<Atom>(s.begin(), s.end())); }

// Library errors raised while building a decoded value become parse errors.
template <typename F>
auto decoding(const char* what, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid ") + what + ": " + e.what());
    }
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        auto cut = msg.find(": ");
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         (cut == std::string::npos ? msg : msg.substr(cut + 2)));
    }
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

void write_json(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << value.dump(2) << '\n';
}

Json encode(const SetFamily& family) {
    Json j;
    if (auto hint = family.universe_hint()) j["universe"] = *hint;
    j["sets"] = Json::array();
    for (const auto& s : family.members()) j["sets"].push_back(set_json(s));
    return j;
}

SetFamily decode_family(const Json& j) {
    std::optional<Atom> hint;
    if (j.is_object() && j.contains("universe") && !j["universe"].is_null())
        hint = static_cast<Atom>(as_uint(j["universe"], "universe", std::numeric_limits<Atom>::max()));
    const Json& sets = field(j, "sets");
    if (!sets.is_array()) throw ParseError("'sets' must be an array");
    std::vector<FiniteSet> members;
    for (std::size_t i = 0; i < sets.size(); ++i) members.push_back(as_set(sets[i], "sets[" + std::to_string(i) + "]"));
    return decoding("set family", [&] { return SetFamily(std::move(members), hint); });
}

Json encode(const SunflowerWitness& witness) {
    return Json{{"core", set_json(witness.core)}, {"members", witness.members}};
}

SunflowerWitness decode_witness(const Json& j) {
    SunflowerWitness w;
    w.core = as_set(field(j, "core"), "core");
    for (auto v : as_uint_list(field(j, "members"), "members")) w.members.push_back(static_cast<std::size_t>(v));
    return w;
}

SfCertificate make_certificate(std::size_t n, std::size_t k, const SfAnswer& answer) {
    SfCertificate cert{n, k, answer.value, {}, answer.exact()};
    if (const auto& w = answer.extremal_witness) cert.extremal.assign(w->members().begin(), w->members().end());
    return cert;
}

Json encode(const SfCertificate& cert) {
    Json extremal = Json::array();
    for (const auto& s : cert.extremal) extremal.push_back(set_json(s));
    return Json{{"n", cert.n},
                {"k", cert.k},
                {"value", cert.value},
                {"extremal", extremal},
                {"status", cert.exact ? "exact" : "bound"}};
}

SfCertificate decode_sf_certificate(const Json& j) {
    SfCertificate cert;
    cert.n = as_uint(field(j, "n"), "n");
    cert.k = as_uint(field(j, "k"), "k");
    cert.value = as_uint(field(j, "value"), "value");
    const Json& ext = field(j, "extremal");
    if (!ext.is_array()) throw ParseError("'extremal' must be an array");
    for (const auto& s : ext) cert.extremal.push_back(as_set(s, "extremal member"));
    const Json& status = field(j, "status");
    if (status == "exact")
        cert.exact = true;
    else if (status != "bound")
        throw ParseError("status must be \"exact\" or \"bound\", got " + status.dump());
    return cert;
}

Json encode(const FinStructure& m) {
    Json sig = Json::array();
    Json tables = Json::object();
    std::size_t n = m.size();
    for (std::size_t s = 0; s < m.signature().size(); ++s) {
        const Symbol& sym = m.signature()[s];
        sig.push_back({{"name", sym.name}, {"arity", sym.arity}});
        const auto& t = m.table(s);
        if (sym.arity == 1) {
            tables[sym.name] = t;
        } else {
            Json rows = Json::array();
            for (std::size_t x = 0; x < n; ++x)
                rows.push_back(std::vector<ElemId>(t.begin() + static_cast<long>(x * n),
                                                   t.begin() + static_cast<long>((x + 1) * n)));
            tables[sym.name] = rows;
        }
    }
    return Json{{"signature", sig}, {"size", n}, {"tables", tables}};
}

StructurePtr decode_structure(const Json& j) {
    const Json& sig_json = field(j, "signature");
    if (!sig_json.is_array()) throw ParseError("'signature' must be an array");
    std::vector<Symbol> symbols;
    for (const auto& s : sig_json) {
        const Json& name = field(s, "name");
        if (!name.is_string()) throw ParseError("symbol name must be a string");
        symbols.push_back({name.get<std::string>(), static_cast<unsigned>(as_uint(field(s, "arity"), "arity", 2))});
    }
    std::size_t n = as_uint(field(j, "size"), "size", std::numeric_limits<ElemId>::max());
    const Json& tables_json = field(j, "tables");
    std::vector<std::vector<ElemId>> tables;
    for (const auto& sym : symbols) {
        const Json& t = field(tables_json, sym.name.c_str());
        std::vector<ElemId> flat;
        std::string what = "table '" + sym.name + "'";
        if (sym.arity == 1) {
            for (auto v : as_uint_list(t, what, std::numeric_limits<ElemId>::max())) flat.push_back(static_cast<ElemId>(v));
        } else {
            if (!t.is_array() || t.size() != n) throw ParseError(what + " must have " + std::to_string(n) + " rows");
            for (const auto& row : t) {
                auto vals = as_uint_list(row, what + " row", std::numeric_limits<ElemId>::max());
                if (vals.size() != n) throw ParseError(what + " rows must have " + std::to_string(n) + " entries");
                for (auto v : vals) flat.push_back(static_cast<ElemId>(v));
            }
        }
        tables.push_back(std::move(flat));
    }
    return decoding("structure", [&] {
        return std::make_shared<const FinStructure>(Signature(std::move(symbols)), n, std::move(tables));
    });
}

Json encode(const NBetaSub& sub) {
    return Json{{"beta", sub.beta().values()}, {"base", set_json(sub.base())}};
}

NBetaSub decode_nbeta_sub(const Json& j) {
    auto beta = as_uint_list(field(j, "beta"), "beta");
    FiniteSet base = as_set(field(j, "base"), "base");
    return decoding("substructure", [&] { return NBetaSub(BetaFn(beta), base); });
}

Json encode(const NBetaElement& e) { return Json{{"tuple", e.tuple}, {"rot", e.rot}}; }

NBetaElement decode_element(const Json& j) {
    NBetaElement e;
    for (auto v : as_uint_list(field(j, "tuple"), "tuple", std::numeric_limits<Atom>::max()))
        e.tuple.push_back(static_cast<Atom>(v));
    e.rot = as_uint(field(j, "rot"), "rot");
    return e;
}

Json encode(const BetaCertificate& cert) {
    Json j{{"alpha", cert.alpha},
           {"beta", cert.beta},
           {"horizon", cert.horizon},
           {"checked_k", cert.checked_k},
           {"ok", cert.ok}};
    if (cert.violating_k) j["violating_k"] = *cert.violating_k;
    return j;
}

BetaCertificate decode_beta_certificate(const Json& j) {
    BetaCertificate cert;
    const Json& alpha = field(j, "alpha");
    if (!alpha.is_string()) throw ParseError("'alpha' must be a string");
    cert.alpha = alpha.get<std::string>();
    cert.beta = as_uint_list(field(j, "beta"), "beta");
    cert.horizon = as_uint(field(j, "horizon"), "horizon");
    cert.checked_k = as_uint(field(j, "checked_k"), "checked_k");
    const Json& ok = field(j, "ok");
    if (!ok.is_boolean()) throw ParseError("'ok' must be a boolean");
    cert.ok = ok.get<bool>();
    if (j.contains("violating_k")) cert.violating_k = as_uint(j["violating_k"], "violating_k");
    return cert;
}

std::vector<std::uint64_t> parse_int_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty entry in list '" + text + "'");
        std::string trimmed = item.substr(first, last - first + 1);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
        if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
            throw ParseError("bad integer '" + trimmed + "' in list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ParseError("empty list");
    return out;
}

}  // namespace sunflower::io
