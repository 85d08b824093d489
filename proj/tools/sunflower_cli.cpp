// sunflower: command-line front end for the sunflower toolkit.
//
// Exit status: 0 success (or sunflower found), 1 negative outcome (not found,
// not isomorphic, a check failed), 2 invalid input, 3 a size cap or horizon
// was hit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sunflower/algcore.hpp"
#include "sunflower/bounds.hpp"
#include "sunflower/error.hpp"
#include "sunflower/flora.hpp"
#include "sunflower/io.hpp"
#include "sunflower/setcore.hpp"
#include "sunflower/sfsearch.hpp"
#include "sunflower/verify.hpp"

namespace fs = std::filesystem;
using namespace sunflower;
using io::Json;

namespace {

struct Common {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::size_t max_universe = 64;
    std::string out;
};

void emit(const Common& common, const Json& value) {
    if (common.out.empty()) {
        std::cout << value.dump(2) << '\n';
    } else {
        io::write_json(common.out, value);
    }
}

std::vector<Atom> atom_list(const std::string& text) {
    std::vector<Atom> out;
    if (text.empty()) return out;
    for (auto v : io::parse_int_list(text)) out.push_back(static_cast<Atom>(v));
    return out;
}

BetaFn beta_arg(const std::string& text) { return BetaFn(io::parse_int_list(text)); }

std::optional<fs::path> cache_dir() { return SfTable::env_dir(); }

int cmd_find_sunflower(const std::string& file, std::size_t n, std::optional<std::size_t> k, const Common& common) {
    SetFamily family = io::decode_family(io::read_json(file));
    std::size_t bound = k ? *k : family.max_member_size();
    auto witness = greedy_sunflower(family, n, bound);
    if (!witness) {
        std::cerr << "no " << n << "-sunflower among " << family.size() << " sets\n";
        return 1;
    }
    if (!verify_witness(family, *witness)) throw Error("internal error: witness failed verification");
    emit(common, io::encode(*witness));
    return 0;
}

int cmd_exact_sf(std::size_t n, std::size_t k, std::size_t max_family, std::optional<double> time_limit,
                 bool exactly, const Common& common) {
    SearchBudget budget;
    budget.max_universe = common.max_universe;
    budget.max_family = max_family;
    budget.time_hint = time_limit;
    budget.threads = common.threads;
    io::SfCertificate cert;
    if (exactly) {
        cert = io::make_certificate(n, k, exact_sf(n, k, budget, FamilyShape::Exactly));
    } else {
        SfTable table(budget, cache_dir());
        cert = table.get(n, k).certificate;
    }
    if (!cert.exact) std::cerr << "search budget exhausted: value is a lower bound\n";
    emit(common, io::encode(cert));
    return 0;
}

int cmd_build(const std::string& kind, std::size_t k, std::size_t copies, const std::string& beta,
              const std::string& base, std::size_t cap, const Common& common) {
    if (kind == "mk") {
        emit(common, io::encode(*build_mk_fragment({k, copies})));
        return 0;
    }
    if (kind == "nbeta") {
        if (beta.empty()) throw PreconditionError("build nbeta needs --beta");
        auto mat = materialize(beta_arg(beta), FiniteSet(atom_list(base)), cap);
        Json j = io::encode(*mat.structure);
        Json elements = Json::array();
        for (const auto& e : mat.elements) elements.push_back(io::encode(e));
        j["elements"] = elements;
        emit(common, j);
        return 0;
    }
    throw PreconditionError("unknown structure kind '" + kind + "' (expected mk or nbeta)");
}

int cmd_closure(const std::string& file, const std::string& elements, const std::string& beta, const Common& common) {
    Json input = io::read_json(file);
    if (!beta.empty()) {
        std::vector<NBetaElement> seeds;
        if (input.is_array()) {
            for (const auto& e : input) seeds.push_back(io::decode_element(e));
        } else {
            seeds.push_back(io::decode_element(input));
        }
        emit(common, io::encode(nbeta_closure(beta_arg(beta), seeds)));
        return 0;
    }
    auto m = io::decode_structure(input);
    auto sub = closure(m, FiniteSet(atom_list(elements)));
    emit(common, Json{{"carrier", std::vector<Atom>(sub.carrier().begin(), sub.carrier().end())}});
    return 0;
}

GenSub load_sub(const Json& j, std::optional<Materialized>& mat) {
    if (j.contains("beta")) {
        auto sub = io::decode_nbeta_sub(j);
        mat = materialize(sub.beta(), sub.base());
        return whole(mat->structure);
    }
    return whole(io::decode_structure(j));
}

int cmd_iso(const std::string& a_file, const std::string& b_file, bool fix_common, const Common& common) {
    std::optional<Materialized> ma, mb;
    GenSub a = load_sub(io::read_json(a_file), ma);
    GenSub b = load_sub(io::read_json(b_file), mb);
    ElemMap forced;
    if (fix_common) {
        if (!ma || !mb) throw PreconditionError("--fix-common needs two N_beta substructures");
        for (const auto& [e, id] : ma->index)
            if (auto hit = mb->index.find(e); hit != mb->index.end()) forced[id] = hit->second;
    }
    auto iso = find_isomorphism(a, b, forced);
    Json out{{"isomorphic", iso.has_value()}};
    if (iso) {
        Json pairs = Json::array();
        for (auto [x, y] : *iso) pairs.push_back(Json::array({x, y}));
        out["map"] = pairs;
    }
    emit(common, out);
    return iso ? 0 : 1;
}

void write_report_files(const fs::path& dir, const std::string& stem, const std::string& text, const Json& json) {
    fs::create_directories(dir);
    std::ofstream(dir / (stem + ".txt")) << text;
    io::write_json(dir / (stem + ".json"), json);
}

int cmd_verify(const std::string& suite, std::size_t cases, const std::string& beta, std::size_t max_base,
               std::optional<std::size_t> k, std::optional<std::size_t> n, std::size_t copies, const Common& common) {
    SuiteReport report;
    if (suite == "invariants") {
        report = run_invariant_suite({cases}, common.seed);
    } else if (suite == "proposition") {
        PropositionParams p;
        if (k) p.k_max = *k;
        if (n) p.n_max = *n;
        p.copies = copies;
        report = run_proposition_suite(p);
    } else if (suite == "theorem") {
        TheoremParams p;
        if (!beta.empty()) p.beta = io::parse_int_list(beta);
        p.max_base = max_base;
        p.cases = cases;
        report = run_theorem_suite(p, common.seed);
        report.checks.push_back(chain_sunflower_check(BetaFn({3, 4, 5, 6, 7}), 5));
    } else {
        throw PreconditionError("unknown suite '" + suite + "' (expected invariants, proposition or theorem)");
    }
    std::cout << report.table();
    if (!common.out.empty()) write_report_files(common.out, "verify_" + suite, report.table(), report.to_json());
    return report.ok() ? 0 : 1;
}

int cmd_synth_beta(const std::string& alpha, std::uint64_t checked_k, const Common& common) {
    auto synth = synth_beta(MonotoneMap::parse(alpha), checked_k);
    emit(common, io::encode(synth.certificate));
    return synth.certificate.ok ? 0 : 1;
}

int cmd_report(const std::string& alpha, std::uint64_t checked_k, const std::string& ns, std::optional<std::uint64_t> k,
               const Common& common) {
    ReportParams p;
    p.alpha = alpha;
    p.checked_k = checked_k;
    p.k_max = k;
    p.ns.clear();
    for (auto v : io::parse_int_list(ns)) p.ns.push_back(static_cast<std::size_t>(v));
    SearchBudget budget;
    budget.max_universe = common.max_universe;
    budget.threads = common.threads;
    std::optional<fs::path> certs = cache_dir();
    if (!certs && !common.out.empty()) certs = fs::path(common.out) / "certificates";
    SfTable table(budget, certs);
    auto report = run_report(p, table);
    std::cout << report.table();
    if (!common.out.empty()) write_report_files(common.out, "report", report.table(), report.to_json());
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sunflowers in set systems and in substructures of algebraic structures"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", common.threads, "Worker threads for exact search")->capture_default_str();
    app.add_option("--max-universe", common.max_universe, "Atom cap for exact search")->capture_default_str();
    app.add_option("--out", common.out, "Output file (directory for verify/report)");

    std::string file, file_b;
    std::size_t n = 0, k = 0;
    std::optional<std::size_t> k_opt, n_opt;
    auto* find = app.add_subcommand("find-sunflower", "Find an n-sunflower in a set-family file");
    find->add_option("family", file, "Set-family JSON file")->required();
    find->add_option("--n", n, "Sunflower size")->required();
    find->add_option("--k", k_opt, "Member size bound (default: largest member)");

    std::size_t max_family = 64;
    std::optional<double> time_limit;
    bool exactly = false;
    auto* exact = app.add_subcommand("exact-sf", "Exact SF(n, k) with a certificate");
    exact->add_option("n", n, "Sunflower size")->required();
    exact->add_option("k", k, "Member size bound")->required();
    exact->add_option("--max-family", max_family, "Family size cap")->capture_default_str();
    exact->add_option("--time-limit", time_limit, "Soft time limit in seconds");
    exact->add_flag("--exactly", exactly, "Members of size exactly k instead of at most k");

    std::string kind, beta, base;
    std::size_t copies = 1, verify_copies = 8, cap = 4096;
    auto* build = app.add_subcommand("build", "Materialize an M_k fragment or an N_beta substructure");
    build->add_option("kind", kind, "mk or nbeta")->required();
    build->add_option("--k", k, "Cycle length (mk)");
    build->add_option("--copies", copies, "Number of cycles (mk)")->capture_default_str();
    build->add_option("--beta", beta, "Cycle lengths, e.g. 3,4,5 (nbeta)");
    build->add_option("--base", base, "Base atoms, e.g. 0,1 (nbeta)");
    build->add_option("--cap", cap, "Largest carrier to materialize")->capture_default_str();

    std::string elements;
    auto* clos = app.add_subcommand("closure", "Generated substructure");
    clos->add_option("input", file, "Structure file, or N_beta element(s) with --beta")->required();
    clos->add_option("--elements", elements, "Seed element ids, e.g. 0,5");
    clos->add_option("--beta", beta, "Treat the input as N_beta elements");

    bool fix_common = false;
    auto* iso = app.add_subcommand("iso", "Isomorphism between two structures or N_beta substructures");
    iso->add_option("a", file, "First file")->required();
    iso->add_option("b", file_b, "Second file")->required();
    iso->add_flag("--fix-common", fix_common, "Fix the shared elements of two N_beta substructures");

    std::string suite;
    std::size_t cases = 1000, max_base = 3;
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("suite", suite, "invariants, proposition or theorem")->required();
    verify->add_option("--cases", cases, "Random cases")->capture_default_str();
    verify->add_option("--beta", beta, "Cycle lengths (theorem)");
    verify->add_option("--max-base", max_base, "Largest base (theorem)")->capture_default_str();
    verify->add_option("--k", k_opt, "Largest cycle length (proposition)");
    verify->add_option("--n", n_opt, "Largest sunflower size (proposition)");
    verify->add_option("--copies", verify_copies, "Cycles per fragment (proposition)")->capture_default_str();

    std::string alpha = "k+3";
    std::uint64_t checked_k = 10000;
    auto* synth = app.add_subcommand("synth-beta", "Synthesize and certify beta from alpha");
    synth->add_option("--alpha", alpha, "Map spec: k+3, affine:a,b, poly:..., step:b,w,r, table:...;slope=s")
        ->capture_default_str();
    synth->add_option("--checked-k", checked_k, "Certify every k up to this")->capture_default_str();

    std::string ns = "2,3";
    std::optional<std::uint64_t> k_max;
    auto* report = app.add_subcommand("report", "Experiment tables: exact SF values and N_beta bounds");
    report->add_option("--alpha", alpha, "Map spec")->capture_default_str();
    report->add_option("--checked-k", checked_k, "Certification horizon for beta")->capture_default_str();
    report->add_option("--n", ns, "Sunflower sizes, e.g. 2,3")->capture_default_str();
    report->add_option("--k", k_max, "Largest size bound (default gamma(2))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*find) return cmd_find_sunflower(file, n, k_opt, common);
        if (*exact) return cmd_exact_sf(n, k, max_family, time_limit, exactly, common);
        if (*build) return cmd_build(kind, k, copies, beta, base, cap, common);
        if (*clos) return cmd_closure(file, elements, beta, common);
        if (*iso) return cmd_iso(file, file_b, fix_common, common);
        if (*verify) return cmd_verify(suite, cases, beta, max_base, k_opt, n_opt, verify_copies, common);
        if (*synth) return cmd_synth_beta(alpha, checked_k, common);
        if (*report) return cmd_report(alpha, checked_k, ns, k_max, common);
    } catch (const ParseError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const HorizonExceeded& e) {
        std::cerr << "horizon exceeded: " << e.what() << '\n';
        return 3;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
