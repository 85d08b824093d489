#include "sunflower/flora.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sunflower/error.hpp"

namespace sunflower {

StructurePtr build_mk_fragment(const MkFragmentSpec& spec) {
    if (spec.k == 0 || spec.copies == 0) throw PreconditionError("M_k fragment needs k, copies >= 1");
    std::size_t size = spec.k * spec.copies;
    std::vector<ElemId> f(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t block = i / spec.k;
        f[i] = static_cast<ElemId>(block * spec.k + (i % spec.k + 1) % spec.k);
    }
    return std::make_shared<const FinStructure>(Signature({{"f", 1}}), size,
                                                std::vector<std::vector<ElemId>>{std::move(f)});
}

void check_element(const BetaFn& beta, const NBetaElement& e) {
    if (e.tuple.empty()) throw PreconditionError("element tuple must be nonempty");
    if (e.tuple.size() > beta.horizon())
        throw HorizonExceeded("element tuple of length " + std::to_string(e.tuple.size()) +
                              " exceeds the horizon " + std::to_string(beta.horizon()));
    std::vector<Atom> sorted = e.tuple;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("element tuple repeats an atom");
    if (e.rot >= beta.at(e.tuple.size())) throw PreconditionError("element rotation out of range");
}

NBetaElement nbeta_apply(const BetaFn& beta, NBetaSymbol sym, std::span<const NBetaElement> args) {
    std::size_t want = sym == NBetaSymbol::A ? 2 : 1;
    if (args.size() != want) throw PreconditionError("wrong number of arguments");
    for (const auto& e : args) check_element(beta, e);
    const NBetaElement& x = args[0];
    switch (sym) {
        case NBetaSymbol::S:
            return {x.tuple, (x.rot + 1) % beta.at(x.tuple.size())};
        case NBetaSymbol::C:
            return {x.tuple, 0};
        case NBetaSymbol::P0:
            if (!x.distinguished() || x.tuple.size() == 1) return x;
            return {{x.tuple.front()}, 0};
        case NBetaSymbol::P1:
            if (!x.distinguished() || x.tuple.size() == 1) return x;
            return {std::vector<Atom>(x.tuple.begin() + 1, x.tuple.end()), 0};
        case NBetaSymbol::A: {
            const NBetaElement& y = args[1];
            if (!x.distinguished() || !y.distinguished() || x.tuple.size() != 1) return x;
            Atom head = x.tuple.front();
            if (std::find(y.tuple.begin(), y.tuple.end(), head) != y.tuple.end()) return x;
            if (y.tuple.size() >= beta.horizon())
                throw HorizonExceeded("a(x, y) would need a tuple of length " +
                                      std::to_string(y.tuple.size() + 1));
            NBetaElement out{{head}, 0};
            out.tuple.insert(out.tuple.end(), y.tuple.begin(), y.tuple.end());
            return out;
        }
    }
    throw PreconditionError("unknown symbol");
}

NBetaSub::NBetaSub(BetaFn beta, FiniteSet base) : beta_(std::move(beta)), base_(std::move(base)) {
    if (base_.size() > beta_.horizon())
        throw HorizonExceeded("base of " + std::to_string(base_.size()) +
                              " atoms exceeds the horizon " + std::to_string(beta_.horizon()));
}

std::vector<NBetaElement> NBetaSub::carrier() const {
    std::vector<NBetaElement> out;
    std::vector<Atom> atoms(base_.begin(), base_.end());
    std::vector<Atom> tuple;
    std::vector<char> used(atoms.size(), 0);
    auto extend = [&](auto&& self) -> void {
        if (!tuple.empty()) {
            std::uint64_t len = beta_.at(tuple.size());
            for (std::uint64_t r = 0; r < len; ++r) out.push_back({tuple, r});
        }
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            tuple.push_back(atoms[i]);
            self(self);
            tuple.pop_back();
            used[i] = 0;
        }
    };
    extend(extend);
    std::sort(out.begin(), out.end());
    return out;
}

bool NBetaSub::contains(const NBetaElement& e) const {
    if (e.tuple.empty() || e.tuple.size() > beta_.horizon()) return false;
    if (e.rot >= beta_.at(e.tuple.size())) return false;
    return std::all_of(e.tuple.begin(), e.tuple.end(), [&](Atom a) { return base_.contains(a); });
}

FiniteSet base_of(const NBetaSub& sub) { return sub.base(); }

NBetaSub sub_from_base(const BetaFn& beta, const FiniteSet& base) { return NBetaSub(beta, base); }

std::vector<NBetaElement> nbeta_closure_fixpoint(const BetaFn& beta,
                                                 std::span<const NBetaElement> seeds) {
    std::set<NBetaElement> seen;
    std::vector<NBetaElement> list;
    auto add = [&](NBetaElement e) {
        if (seen.insert(e).second) list.push_back(std::move(e));
    };
    for (const auto& s : seeds) {
        check_element(beta, s);
        add(s);
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (auto sym : {NBetaSymbol::S, NBetaSymbol::C, NBetaSymbol::P0, NBetaSymbol::P1}) {
            NBetaElement arg = list[i];
            add(nbeta_apply(beta, sym, std::span<const NBetaElement>(&arg, 1)));
        }
        for (std::size_t j = 0; j <= i; ++j) {
            NBetaElement xy[2] = {list[i], list[j]};
            add(nbeta_apply(beta, NBetaSymbol::A, xy));
            NBetaElement yx[2] = {list[j], list[i]};
            add(nbeta_apply(beta, NBetaSymbol::A, yx));
        }
    }
    std::sort(list.begin(), list.end());
    return list;
}

NBetaSub nbeta_closure(const BetaFn& beta, std::span<const NBetaElement> seeds,
                       std::size_t verify_cap) {
    std::vector<Atom> atoms;
    for (const auto& s : seeds) {
        check_element(beta, s);
        atoms.insert(atoms.end(), s.tuple.begin(), s.tuple.end());
    }
    NBetaSub sub(beta, FiniteSet(std::move(atoms)));
    if (gamma(beta, sub.base().size()) <= verify_cap && nbeta_closure_fixpoint(beta, seeds) != sub.carrier())
        throw Error("symbolic closure disagrees with the fixpoint closure");
    return sub;
}

BigInt nbeta_size(const BetaFn& beta, std::size_t m) { return gamma(beta, m); }

namespace {

void check_same_beta(std::span<const NBetaSub> family) {
    for (const auto& s : family)
        if (!(s.beta() == family.front().beta()))
            throw PreconditionError("substructures are over different beta");
}

}  // namespace

TransferResult transfer_sunflower(std::span<const NBetaSub> family) {
    if (family.empty()) return {true, std::nullopt};
    check_same_beta(family);
    std::vector<FiniteSet> bases;
    for (const auto& s : family) bases.push_back(s.base());
    SetFamily base_family(bases);
    auto core = is_sunflower(base_family);
    if (!core) return {false, std::nullopt};
    return {true, sub_from_base(family.front().beta(), *core)};
}

std::optional<std::vector<NBetaElement>> carrier_sunflower(std::span<const NBetaSub> family) {
    std::map<NBetaElement, Atom> ids;
    std::vector<NBetaElement> by_id;
    std::vector<FiniteSet> carriers;
    for (const auto& s : family) {
        std::vector<Atom> members;
        for (auto& e : s.carrier()) {
            auto [it, fresh] = ids.emplace(e, static_cast<Atom>(by_id.size()));
            if (fresh) by_id.push_back(e);
            members.push_back(it->second);
        }
        carriers.emplace_back(std::move(members));
    }
    auto core = is_sunflower(carriers);
    if (!core) return std::nullopt;
    std::vector<NBetaElement> out;
    for (Atom a : *core) out.push_back(by_id[a]);
    std::sort(out.begin(), out.end());
    return out;
}

NBetaElement map_element(const BaseMap& map, const NBetaElement& e) {
    NBetaElement out{{}, e.rot};
    for (Atom a : e.tuple) out.tuple.push_back(map.at(a));
    return out;
}

std::vector<UniformWitness> strong_uniformize(std::span<const NBetaSub> family) {
    if (family.empty()) return {};
    check_same_beta(family);
    for (const auto& s : family)
        if (s.base().size() != family.front().base().size())
            throw PreconditionError("family is not uniform: base sizes differ");
    if (!transfer_sunflower(family).sunflower) throw PreconditionError("family is not a sunflower");
    std::vector<UniformWitness> out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            const auto& a = family[i].base();
            const auto& b = family[j].base();
            FiniteSet shared = intersect(a, b);
            FiniteSet only_a = difference(a, shared);
            FiniteSet only_b = difference(b, shared);
            UniformWitness w{i, j, {}};
            for (Atom x : shared) w.base_map[x] = x;
            auto ib = only_b.begin();
            for (Atom x : only_a) w.base_map[x] = *ib++;
            out.push_back(std::move(w));
        }
    }
    return out;
}

namespace {

void check_embedding(const NBetaSub& source, const Embedding& e, const char* name) {
    std::set<Atom> image;
    if (e.map.size() != source.base().size())
        throw PreconditionError(std::string("embedding into ") + name + " must map every base atom");
    for (auto [from, to] : e.map) {
        if (!source.base().contains(from) || !e.target.base().contains(to))
            throw PreconditionError(std::string("embedding into ") + name + " leaves its bases");
        if (!image.insert(to).second)
            throw PreconditionError(std::string("embedding into ") + name + " is not injective");
    }
}

}  // namespace

Amalgam sap_amalgamate(const BetaFn& beta, const NBetaSub& a, const Embedding& into_b,
                       const Embedding& into_c) {
    check_embedding(a, into_b, "B");
    check_embedding(a, into_c, "C");
    Atom fresh = 0;
    for (const auto* base : {&a.base(), &into_b.target.base(), &into_c.target.base()})
        if (auto top = base->max_atom()) fresh = std::max<Atom>(fresh, *top + 1);

    std::map<Atom, Atom> c_to_a;
    for (auto [from, to] : into_c.map) c_to_a[to] = from;

    Amalgam out{NBetaSub(beta, FiniteSet{}), {}, {}};
    std::vector<Atom> atoms(into_b.target.base().begin(), into_b.target.base().end());
    for (Atom x : into_b.target.base()) out.from_b[x] = x;
    for (Atom x : into_c.target.base()) {
        auto hit = c_to_a.find(x);
        if (hit != c_to_a.end()) {
            out.from_c[x] = into_b.map.at(hit->second);
        } else {
            out.from_c[x] = fresh;
            atoms.push_back(fresh++);
        }
    }
    out.target = NBetaSub(beta, FiniteSet(std::move(atoms)));
    return out;
}

NBetaElement single_generator(const NBetaSub& sub) {
    if (sub.base().empty())
        throw PreconditionError("the empty substructure has no single generator");
    return {std::vector<Atom>(sub.base().begin(), sub.base().end()), 0};
}

const Signature& nbeta_signature() {
    static const Signature sig({{"s", 1}, {"c", 1}, {"p0", 1}, {"p1", 1}, {"a", 2}});
    return sig;
}

Materialized materialize(const BetaFn& beta, const FiniteSet& base, std::size_t cap) {
    NBetaSub sub(beta, base);
    if (nbeta_size(beta, base.size()) > cap)
        throw CapExceeded("materialized carrier would exceed " + std::to_string(cap) + " elements");
    Materialized out;
    out.elements = sub.carrier();
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        out.index.emplace(out.elements[i], static_cast<ElemId>(i));
    std::size_t n = out.elements.size();
    std::vector<std::vector<ElemId>> tables;
    for (auto sym : {NBetaSymbol::S, NBetaSymbol::C, NBetaSymbol::P0, NBetaSymbol::P1}) {
        std::vector<ElemId> t(n);
        for (std::size_t i = 0; i < n; ++i)
            t[i] = out.index.at(nbeta_apply(beta, sym, std::span(&out.elements[i], 1)));
        tables.push_back(std::move(t));
    }
    std::vector<ElemId> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            NBetaElement args[2] = {out.elements[i], out.elements[j]};
            a[i * n + j] = out.index.at(nbeta_apply(beta, NBetaSymbol::A, args));
        }
    tables.push_back(std::move(a));
    out.structure = std::make_shared<const FinStructure>(nbeta_signature(), n, std::move(tables));
    return out;
}

}  // namespace sunflower
