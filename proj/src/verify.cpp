#include "sunflower/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sunflower/algcore.hpp"
#include "sunflower/error.hpp"
#include "sunflower/flora.hpp"
#include "sunflower/setcore.hpp"

namespace sunflower {

using io::Json;

namespace {

void record(CheckTally& tally, bool pass, const std::function<Json()>& describe) {
    ++tally.cases;
    if (pass) return;
    if (tally.failures++ == 0) tally.counterexample = describe();
}

Json sets_json(std::span<const FiniteSet> sets) {
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(std::vector<Atom>(s.begin(), s.end()));
    return out;
}

Json subs_json(std::span<const NBetaSub> subs) {
    Json out = Json::array();
    for (const auto& s : subs) out.push_back(std::vector<Atom>(s.base().begin(), s.base().end()));
    return out;
}

// Calls f on every `size`-subset of {0, ..., n-1}.
void for_each_subset(std::size_t n, std::size_t size, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == size) {
            f(pick);
            return;
        }
        for (std::size_t i = from; i + (size - pick.size()) <= n; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

std::string pad_right(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }
std::string pad_left(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

FiniteSet random_set(std::mt19937_64& rng, std::size_t max_size, std::size_t universe) {
    std::vector<Atom> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(rng() % (max_size + 1), universe));
    return FiniteSet(pool);
}

}  // namespace

bool SuiteReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.failures == 0; });
}

std::string SuiteReport::table() const {
    std::ostringstream out;
    out << "suite " << suite << ", seed " << seed << "\n";
    out << "parameters " << parameters.dump() << "\n";
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    out << pad_right("check", width) << "  " << pad_left("cases", 8) << "  " << pad_left("failures", 8) << "\n";
    for (const auto& c : checks) {
        out << pad_right(c.name, width) << "  " << pad_left(std::to_string(c.cases), 8) << "  "
            << pad_left(std::to_string(c.failures), 8) << "\n";
        if (c.failures) out << "  first counterexample: " << c.counterexample.dump() << "\n";
    }
    for (const auto& n : notices) out << "notice: " << n << "\n";
    out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

Json SuiteReport::to_json() const {
    Json checks_json = Json::array();
    for (const auto& c : checks)
        checks_json.push_back({{"name", c.name},
                               {"cases", c.cases},
                               {"failures", c.failures},
                               {"counterexample", c.counterexample}});
    return Json{{"suite", suite},     {"seed", seed},       {"parameters", parameters},
                {"checks", checks_json}, {"notices", notices}, {"ok", ok()}};
}

SuiteReport run_invariant_suite(const InvariantParams& params, std::uint64_t seed) {
    SuiteReport report{"invariants", seed, Json{{"cases", params.cases}}, {}, {}};
    std::mt19937_64 rng(seed);
    CheckTally order{"sunflower verdict ignores member order"};
    CheckTally core{"core lies in every member"};
    CheckTally padding{"padding preserves every sub-family"};
    CheckTally greedy{"greedy finder agrees with exhaustive search"};
    CheckTally lemma{"lemma threshold forces a sunflower"};
    CheckTally seq{"seqsize recurrence"};
    CheckTally inverse{"gamma_circ inverts gamma"};
    CheckTally er{"er_bound dominates exact values, k >= 2"};
    CheckTally er_one{"k = 1 exact value is er_bound + 1"};

    for (std::size_t c = 0; c < params.cases; ++c) {
        std::size_t members = 1 + rng() % 6;
        std::set<FiniteSet> seen;
        std::vector<FiniteSet> sets;
        for (int tries = 0; sets.size() < members && tries < 100; ++tries) {
            FiniteSet s = random_set(rng, 3, 6);
            if (seen.insert(s).second) sets.push_back(s);
        }
        SetFamily family(sets);
        auto verdict = is_sunflower(family);
        auto shuffled = sets;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        record(order, is_sunflower(shuffled) == verdict, [&] { return sets_json(sets); });
        if (verdict)
            record(core, std::all_of(sets.begin(), sets.end(), [&](const FiniteSet& s) { return is_subset(*verdict, s); }),
                   [&] { return sets_json(sets); });

        auto padded = pad_family(family, 3);
        bool kept = true;
        for (std::uint32_t mask = 0; mask < (1u << sets.size()); ++mask) {
            std::vector<FiniteSet> sub, sub_padded;
            for (std::size_t i = 0; i < sets.size(); ++i)
                if (mask & (1u << i)) {
                    sub.push_back(sets[i]);
                    sub_padded.push_back(padded.family.members()[padded.image[i]]);
                }
            kept = kept && is_sunflower(sub).has_value() == is_sunflower(sub_padded).has_value();
        }
        record(padding, kept, [&] { return sets_json(sets); });

        std::size_t n = 2 + rng() % 3;
        auto found = greedy_sunflower(family, n, 3);
        bool exists = find_sunflower_exhaustive(family.members(), n).has_value();
        record(greedy, found.has_value() == exists && (!found || verify_witness(family, *found)),
               [&] { return Json{{"n", n}, {"family", sets_json(sets)}}; });

        std::size_t a = rng() % 12, b = 1 + rng() % 6;
        record(seq, a == 0 || seqsize(a, b) == a * seqsize(a - 1, b - 1),
               [&] { return Json{{"n", a}, {"k", b}}; });

        std::vector<std::uint64_t> bv{3 + rng() % 3};
        for (std::size_t i = 1, h = 1 + rng() % 5; i < h; ++i) bv.push_back(bv.back() + 1 + rng() % 5);
        BetaFn beta(bv);
        bool inv = true;
        for (std::size_t m = 0; m <= beta.horizon(); ++m) {
            inv = inv && gamma_circ(beta, gamma(beta, m)) == m;
            if (m > 0) {
                BigInt t = gamma(beta, m - 1) + 1;
                inv = inv && gamma_circ(beta, t) == m;
            }
        }
        record(inverse, inv, [&] { return Json{{"beta", bv}}; });
    }

    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 3}}) {
        auto rep = empirical_sf_check(n, k, std::max<std::size_t>(1, params.cases / 10), seed);
        record(lemma, rep.failures.empty(), [&] {
            return Json{{"n", n}, {"k", k}, {"family", io::encode(rep.failures.front())}};
        });
    }

    SearchBudget budget;
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}, {5, 1}}) {
        auto ans = exact_sf(n, k, budget);
        auto describe = [&] { return Json{{"n", n}, {"k", k}, {"value", ans.value}}; };
        if (k == 1)
            record(er_one, ans.exact() && BigInt(ans.value) == er_bound(n, k) + 1, describe);
        else
            record(er, ans.exact() && BigInt(ans.value) <= er_bound(n, k), describe);
    }

    report.checks = {order, core, padding, greedy, lemma, seq, inverse, er, er_one};
    return report;
}

SuiteReport run_proposition_suite(const PropositionParams& params) {
    SuiteReport report{"proposition",
                       0,
                       Json{{"k_min", params.k_min},
                            {"k_max", params.k_max},
                            {"copies", params.copies},
                            {"n_max", params.n_max}},
                       {},
                       {}};
    CheckTally cycles{"size-k substructures are the k-cycles"};
    CheckTally petals{"n distinct size-k members form an empty-core sunflower"};
    CheckTally empirical{"empirical SF equals n"};
    for (std::size_t k = params.k_min; k <= params.k_max; ++k) {
        auto frag = build_mk_fragment({k, params.copies});
        auto list = substructures_up_to(frag, k);
        if (list.truncated) report.notices.push_back("substructure list truncated at k = " + std::to_string(k));
        std::vector<FiniteSet> all, full;
        for (const auto& s : list.subs) {
            all.push_back(s.carrier());
            if (s.size() == k) full.push_back(s.carrier());
        }
        bool shape = full.size() == params.copies && all.size() == params.copies + 1;
        for (const auto& s : full) shape = shape && closure(frag, {*s.begin()}).carrier() == s;
        record(cycles, shape, [&] { return Json{{"k", k}, {"carriers", sets_json(all)}}; });

        for (std::size_t n = 1; n <= std::min(params.n_max, full.size()); ++n) {
            for_each_subset(full.size(), n, [&](const std::vector<std::size_t>& pick) {
                std::vector<FiniteSet> fam;
                for (auto i : pick) fam.push_back(full[i]);
                auto core = is_sunflower(fam);
                record(petals, core && core->empty(), [&] { return Json{{"k", k}, {"family", sets_json(fam)}}; });
            });
        }

        for (std::size_t n = 2; n <= std::min(params.n_max, all.size()); ++n) {
            // least l such that every l distinct substructures of size <= k contain an n-sunflower
            std::optional<std::size_t> sf;
            for (std::size_t l = 1; l <= all.size() && !sf; ++l) {
                bool forced = true;
                for_each_subset(all.size(), l, [&](const std::vector<std::size_t>& pick) {
                    if (!forced) return;
                    std::vector<FiniteSet> fam;
                    for (auto i : pick) fam.push_back(all[i]);
                    forced = find_sunflower_exhaustive(fam, n).has_value();
                });
                if (forced) sf = l;
            }
            record(empirical, sf == n, [&] {
                return Json{{"k", k}, {"n", n}, {"sf", sf ? Json(*sf) : Json(nullptr)}};
            });
        }
    }
    report.checks = {cycles, petals, empirical};
    return report;
}

namespace {

class MaterialCache {
public:
    explicit MaterialCache(BetaFn beta) : beta_(std::move(beta)) {}
    const Materialized& get(const FiniteSet& base) {
        auto it = cache_.find(base);
        if (it == cache_.end()) it = cache_.emplace(base, materialize(beta_, base)).first;
        return it->second;
    }

private:
    BetaFn beta_;
    std::map<FiniteSet, Materialized> cache_;
};

// Common elements of two substructures, paired by identity across their materializations.
ElemMap shared_pairs(const Materialized& a, const Materialized& b) {
    ElemMap forced;
    for (const auto& [e, id] : a.index) {
        auto hit = b.index.find(e);
        if (hit != b.index.end()) forced[id] = hit->second;
    }
    return forced;
}

bool strongly_uniform_pair(MaterialCache& cache, const NBetaSub& x, const NBetaSub& y) {
    const auto& mx = cache.get(x.base());
    const auto& my = cache.get(y.base());
    return find_isomorphism(whole(mx.structure), whole(my.structure), shared_pairs(mx, my)).has_value();
}

}  // namespace

SuiteReport run_theorem_suite(const TheoremParams& params, std::uint64_t seed) {
    BetaFn beta(params.beta);
    SuiteReport report{"theorem",
                       seed,
                       Json{{"beta", params.beta},
                            {"max_base", params.max_base},
                            {"universe", params.universe},
                            {"cases", params.cases},
                            {"max_family", params.max_family}},
                       {},
                       {}};
    if (params.max_base > beta.horizon())
        throw PreconditionError("max_base exceeds the beta horizon");
    if (params.max_family < 2) throw PreconditionError("max_family must be at least 2");
    std::mt19937_64 rng(seed);
    MaterialCache cache(beta);
    CheckTally inj{"b-injectivity"};
    CheckTally meet{"intersection commutation"};
    CheckTally ext{"unique isomorphism extension"};
    CheckTally size{"size law"};
    CheckTally gen{"single-generator recovery"};
    CheckTally transfer{"transfer equivalence"};
    CheckTally equal_size{"equal size implies isomorphic"};
    CheckTally strong{"uniform sunflowers are strongly uniform"};

    for (std::size_t c = 0; c < params.cases; ++c) {
        std::size_t count = 2 + rng() % (params.max_family - 1);
        std::set<FiniteSet> bases;
        for (int tries = 0; bases.size() < count && tries < 100; ++tries)
            bases.insert(random_set(rng, params.max_base, params.universe));
        std::vector<NBetaSub> fam;
        for (const auto& b : bases) fam.emplace_back(beta, b);
        auto fam_json = [&] { return subs_json(fam); };

        for (const auto& sub : fam) {
            const auto& mat = cache.get(sub.base());
            const auto& m = *mat.structure;
            // distinguished base elements read off the tables: c(x) = x and p0(x) = x
            std::vector<Atom> b_atoms;
            bool singletons = true;
            for (ElemId x = 0; x < m.size(); ++x)
                if (m.apply(1, x) == x && m.apply(2, x) == x) {
                    singletons = singletons && mat.elements[x].tuple.size() == 1;
                    b_atoms.push_back(mat.elements[x].tuple.front());
                }
            record(inj, singletons && FiniteSet(b_atoms) == sub.base(),
                   [&] { return Json{{"base", std::vector<Atom>(sub.base().begin(), sub.base().end())}}; });

            auto carrier = sub.carrier();
            record(size,
                   BigInt(carrier.size()) == nbeta_size(beta, sub.base().size()) && m.size() == carrier.size(),
                   [&] { return Json{{"base", std::vector<Atom>(sub.base().begin(), sub.base().end())}}; });

            bool recovered;
            if (sub.base().empty()) {
                recovered = m.size() == 0;
            } else {
                NBetaElement g = single_generator(sub);
                std::vector<NBetaElement> seeds{g};
                recovered = closure(mat.structure, {mat.id_of(g)}).size() == m.size() &&
                            nbeta_closure_fixpoint(beta, seeds) == carrier;
            }
            record(gen, recovered,
                   [&] { return Json{{"base", std::vector<Atom>(sub.base().begin(), sub.base().end())}}; });
        }

        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = 0; j < fam.size(); ++j) {
                const auto& a = fam[i];
                const auto& b = fam[j];
                auto ca = a.carrier(), cb = b.carrier();
                record(inj, (a.base() == b.base()) == (ca == cb), fam_json);
                if (j <= i) continue;

                std::vector<NBetaElement> common;
                std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
                record(meet, common == NBetaSub(beta, intersect(a.base(), b.base())).carrier(), fam_json);

                const auto& ma = cache.get(a.base());
                const auto& mb = cache.get(b.base());
                if (ma.elements.size() == mb.elements.size()) {
                    record(equal_size, find_isomorphism(whole(ma.structure), whole(mb.structure)).has_value(),
                           fam_json);
                } else {
                    record(equal_size, a.base().size() != b.base().size(), fam_json);
                }

                if (a.base().size() != b.base().size()) continue;
                auto isos = all_isomorphisms(whole(ma.structure), whole(mb.structure));
                std::set<ElemMap> found(isos.begin(), isos.end());
                std::vector<Atom> src(a.base().begin(), a.base().end());
                std::vector<Atom> dst(b.base().begin(), b.base().end());
                std::size_t bijections = 0;
                bool every = true;
                do {
                    ++bijections;
                    BaseMap pi;
                    for (std::size_t t = 0; t < src.size(); ++t) pi[src[t]] = dst[t];
                    ElemMap induced;
                    for (std::size_t x = 0; x < ma.elements.size(); ++x)
                        induced[static_cast<ElemId>(x)] = mb.id_of(map_element(pi, ma.elements[x]));
                    every = every && found.count(induced) == 1;
                } while (std::next_permutation(dst.begin(), dst.end()));
                record(ext, every && found.size() == bijections, fam_json);
            }

        auto t = transfer_sunflower(fam);
        auto direct = carrier_sunflower(fam);
        record(transfer,
               t.sunflower == direct.has_value() && (!direct || t.core->carrier() == *direct), fam_json);

        auto strong_check = [&](const std::vector<NBetaSub>& f) {
            bool ok = true;
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j) ok = ok && strongly_uniform_pair(cache, f[i], f[j]);
            return ok;
        };
        bool uniform = std::all_of(fam.begin(), fam.end(), [&](const NBetaSub& s) {
            const auto& m0 = cache.get(fam.front().base());
            const auto& ms = cache.get(s.base());
            return find_isomorphism(whole(m0.structure), whole(ms.structure)).has_value();
        });
        if (uniform && t.sunflower) record(strong, strong_check(fam), fam_json);

        // a constructed uniform sunflower on fresh atoms
        std::size_t m = 1 + rng() % params.max_base;
        std::size_t core_size = rng() % m;
        std::size_t members = 2 + rng() % (params.max_family - 1);
        std::vector<Atom> core_atoms;
        Atom next = static_cast<Atom>(rng() % 4);
        for (std::size_t i = 0; i < core_size; ++i) core_atoms.push_back(next++);
        std::vector<NBetaSub> flower;
        for (std::size_t p = 0; p < members; ++p) {
            auto atoms = core_atoms;
            for (std::size_t i = core_size; i < m; ++i) atoms.push_back(next++);
            flower.emplace_back(beta, FiniteSet(atoms));
        }
        record(strong, transfer_sunflower(flower).sunflower && strong_check(flower),
               [&] { return subs_json(flower); });
    }
    report.checks = {inj, meet, ext, size, gen, transfer, equal_size, strong};
    return report;
}

CheckTally chain_sunflower_check(const BetaFn& beta, std::size_t length) {
    CheckTally tally{"nested one-generated chain has no 3-sunflower"};
    std::vector<NBetaSub> chain;
    for (std::size_t len = 1; len <= length; ++len) {
        std::vector<Atom> atoms(len);
        std::iota(atoms.begin(), atoms.end(), 0);
        NBetaSub sub(beta, FiniteSet(atoms));
        std::vector<NBetaElement> one{single_generator(sub)};
        record(tally, nbeta_closure(beta, one).base() == sub.base(), [&] { return Json{{"chain_length", len}}; });
        chain.push_back(std::move(sub));
    }
    for_each_subset(chain.size(), 3, [&](const std::vector<std::size_t>& pick) {
        std::vector<NBetaSub> triple;
        for (auto i : pick) triple.push_back(chain[i]);
        record(tally, !carrier_sunflower(triple) && !transfer_sunflower(triple).sunflower,
               [&] { return subs_json(triple); });
    });
    return tally;
}

SfTable::SfTable(SearchBudget budget, std::optional<std::filesystem::path> dir)
    : budget_(budget), dir_(std::move(dir)) {
    budget_.validate();
    if (dir_) std::filesystem::create_directories(*dir_);
}

std::optional<std::filesystem::path> SfTable::env_dir() {
    const char* v = std::getenv("SUNFLOWER_CACHE_DIR");
    if (!v || !*v) return std::nullopt;
    return std::filesystem::path(v);
}

const SfTable::Entry& SfTable::get(std::size_t n, std::size_t k) {
    auto key = std::make_pair(n, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry entry;
    if (dir_) {
        entry.path = *dir_ / ("sf_n" + std::to_string(n) + "_k" + std::to_string(k) + ".json");
        if (std::filesystem::exists(*entry.path)) {
            try {
                auto cert = io::decode_sf_certificate(io::read_json(*entry.path));
                if (cert.exact && cert.n == n && cert.k == k && certificate_consistent(cert)) {
                    entry.certificate = cert;
                    return memo_.emplace(key, std::move(entry)).first->second;
                }
            } catch (const ParseError&) {
                // unreadable cache entries are recomputed and overwritten
            }
        }
    }
    entry.certificate = io::make_certificate(n, k, exact_sf(n, k, budget_));
    if (entry.path && entry.certificate.exact) io::write_json(*entry.path, io::encode(entry.certificate));
    if (!entry.certificate.exact) entry.path.reset();
    return memo_.emplace(key, std::move(entry)).first->second;
}

bool certificate_consistent(const io::SfCertificate& cert) {
    if (cert.n < 2 || cert.value != cert.extremal.size() + 1) return false;
    std::set<FiniteSet> distinct(cert.extremal.begin(), cert.extremal.end());
    if (distinct.size() != cert.extremal.size()) return false;
    for (const auto& s : cert.extremal)
        if (s.size() > cert.k) return false;
    return !find_sunflower_exhaustive(cert.extremal, cert.n).has_value();
}

std::size_t largest_base_within(const BetaFn& beta, std::uint64_t k) {
    std::size_t m = 0;
    while (m < beta.horizon() && gamma(beta, m + 1) <= k) ++m;
    if (m == beta.horizon()) {
        // smallest possible size of a substructure over horizon+1 atoms
        std::size_t h = beta.horizon();
        BigInt next = seqsize(h + 1, h + 1) * (beta.at(h) + 1);
        for (std::size_t j = 1; j <= h; ++j) next += seqsize(h + 1, j) * beta.at(j);
        if (BigInt(k) >= next)
            throw HorizonExceeded("size bound " + std::to_string(k) + " reaches past the beta horizon");
    }
    return m;
}

NBetaCell nbeta_cell(const BetaFn& beta, const MonotoneMap& alpha, std::size_t n, std::uint64_t k,
                     SfTable& table) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    NBetaCell cell;
    cell.n = n;
    cell.k = k;
    cell.base_bound = largest_base_within(beta, k);
    cell.thm = thm_bound(alpha, n, k);
    cell.derived = derived_sf_bound(beta, n, k);
    if (n == 1 || cell.base_bound == 0) {
        cell.value = n;
        cell.exact = true;
        return cell;
    }
    const auto& entry = table.get(n, cell.base_bound);
    cell.value = entry.certificate.value;
    cell.exact = entry.certificate.exact;
    cell.certificate = entry.path;
    return cell;
}

ExperimentReport run_report(const ReportParams& params, SfTable& table) {
    auto alpha = MonotoneMap::parse(params.alpha);
    auto synth = synth_beta(alpha, params.checked_k);
    ExperimentReport report;
    report.beta_certificate = synth.certificate;
    std::uint64_t k_max = params.k_max ? *params.k_max : gamma(synth.beta, std::min<std::size_t>(2, synth.beta.horizon())).convert_to<std::uint64_t>();
    Json cells_json = Json::array();
    for (auto [n, k] : params.exact_cells) cells_json.push_back(Json::array({n, k}));
    report.parameters = Json{{"alpha", params.alpha},
                             {"checked_k", params.checked_k},
                             {"n", params.ns},
                             {"k_max", k_max},
                             {"exact_cells", cells_json}};
    for (auto [n, k] : params.exact_cells) report.exact.push_back({{n, k}, table.get(n, k)});
    for (auto n : params.ns)
        for (std::uint64_t k = 0; k <= k_max; ++k) report.cells.push_back(nbeta_cell(synth.beta, alpha, n, k, table));
    return report;
}

namespace {

std::string path_text(const std::optional<std::filesystem::path>& p) { return p ? p->string() : "-"; }

}  // namespace

bool ExperimentReport::ok() const {
    for (const auto& [cell, entry] : exact)
        if (!certificate_consistent(entry.certificate)) return false;
    for (const auto& c : cells)
        if (BigInt(c.value) > c.thm || BigInt(c.value) > c.derived) return false;
    return beta_certificate.ok;
}

std::string ExperimentReport::table() const {
    std::ostringstream out;
    out << "beta synthesis: alpha " << beta_certificate.alpha << ", beta (";
    for (std::size_t i = 0; i < beta_certificate.beta.size(); ++i) out << (i ? "," : "") << beta_certificate.beta[i];
    out << "), certified for k <= " << beta_certificate.checked_k << ": " << (beta_certificate.ok ? "ok" : "FAILED")
        << "\n\n";

    out << "exact SF(n,k) over families of sets of size <= k\n";
    out << pad_left("n", 3) << pad_left("k", 4) << pad_left("SF", 6) << "  " << pad_right("status", 7)
        << "certificate\n";
    for (const auto& [cell, entry] : exact)
        out << pad_left(std::to_string(cell.first), 3) << pad_left(std::to_string(cell.second), 4)
            << pad_left(std::to_string(entry.certificate.value), 6) << "  "
            << pad_right(entry.certificate.exact ? "exact" : "bound", 7) << path_text(entry.path) << "\n";

    out << "\nSF over N_beta substructures of size <= k\n";
    out << "  thm     = alpha(k) * (n-1)^alpha(k)\n";
    out << "  derived = m! * (n-1)^(m!), m = gamma_circ(k)\n";
    out << pad_left("n", 3) << pad_left("k", 5) << pad_left("base", 6) << pad_left("SF", 5) << "  "
        << pad_right("status", 7) << pad_left("thm", 12) << pad_left("derived", 12) << "  within  certificate\n";
    for (const auto& c : cells) {
        bool in_thm = BigInt(c.value) <= c.thm, in_derived = BigInt(c.value) <= c.derived;
        std::string within = in_thm && in_derived ? "both" : in_thm ? "thm" : in_derived ? "derived" : "none";
        out << pad_left(std::to_string(c.n), 3) << pad_left(std::to_string(c.k), 5)
            << pad_left(std::to_string(c.base_bound), 6) << pad_left(std::to_string(c.value), 5) << "  "
            << pad_right(c.exact ? "exact" : "bound", 7) << pad_left(c.thm.str(), 12)
            << pad_left(c.derived.str(), 12) << "  " << pad_right(within, 8) << path_text(c.certificate) << "\n";
    }
    out << "\nresult: " << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

Json ExperimentReport::to_json() const {
    Json exact_json = Json::array();
    for (const auto& [cell, entry] : exact)
        exact_json.push_back({{"n", cell.first},
                              {"k", cell.second},
                              {"value", entry.certificate.value},
                              {"status", entry.certificate.exact ? "exact" : "bound"},
                              {"certificate", entry.path ? Json(entry.path->string()) : Json(nullptr)}});
    Json cells_json = Json::array();
    for (const auto& c : cells)
        cells_json.push_back({{"n", c.n},
                              {"k", c.k},
                              {"base_bound", c.base_bound},
                              {"value", c.value},
                              {"status", c.exact ? "exact" : "bound"},
                              {"certificate", c.certificate ? Json(c.certificate->string()) : Json(nullptr)},
                              {"thm_bound", {{"formula", "alpha(k)*(n-1)^alpha(k)"}, {"value", c.thm.str()}}},
                              {"derived_bound", {{"formula", "m!*(n-1)^(m!), m=gamma_circ(k)"}, {"value", c.derived.str()}}},
                              {"within_thm", BigInt(c.value) <= c.thm},
                              {"within_derived", BigInt(c.value) <= c.derived}});
    return Json{{"parameters", parameters},
                {"beta_certificate", io::encode(beta_certificate)},
                {"exact", exact_json},
                {"cells", cells_json},
                {"ok", ok()}};
}

}  // namespace sunflower
