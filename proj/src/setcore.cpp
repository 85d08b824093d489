#include "sunflower/setcore.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <string>

#include "sunflower/error.hpp"

namespace sunflower {

FiniteSet::FiniteSet(std::initializer_list<Atom> atoms) : FiniteSet(std::vector<Atom>(atoms)) {}

FiniteSet::FiniteSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool FiniteSet::contains(Atom a) const noexcept {
    return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

std::optional<Atom> FiniteSet::max_atom() const noexcept {
    if (atoms_.empty()) return std::nullopt;
    return atoms_.back();
}

FiniteSet intersect(const FiniteSet& a, const FiniteSet& b) {
    std::vector<Atom> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FiniteSet(std::move(out));
}

FiniteSet unite(const FiniteSet& a, const FiniteSet& b) {
    std::vector<Atom> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FiniteSet(std::move(out));
}

FiniteSet difference(const FiniteSet& a, const FiniteSet& b) {
    std::vector<Atom> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FiniteSet(std::move(out));
}

bool is_subset(const FiniteSet& a, const FiniteSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const FiniteSet& a, const FiniteSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return true;
}

SetFamily::SetFamily(std::vector<FiniteSet> members, std::optional<Atom> universe_hint)
    : members_(std::move(members)), hint_(universe_hint) {
    std::vector<const FiniteSet*> sorted;
    sorted.reserve(members_.size());
    for (const auto& m : members_) sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return *x < *y; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (*sorted[i - 1] == *sorted[i])
            throw PreconditionError("set family has a repeated member");
    if (hint_) {
        for (const auto& m : members_) {
            auto top = m.max_atom();
            if (top && *top >= *hint_)
                throw PreconditionError("atom " + std::to_string(*top) +
                                        " is not below the universe bound " +
                                        std::to_string(*hint_));
        }
    }
}

Atom SetFamily::atom_bound() const noexcept {
    Atom bound = hint_.value_or(0);
    for (const auto& m : members_)
        if (auto top = m.max_atom()) bound = std::max<Atom>(bound, *top + 1);
    return bound;
}

std::size_t SetFamily::max_member_size() const noexcept {
    std::size_t best = 0;
    for (const auto& m : members_) best = std::max(best, m.size());
    return best;
}

FiniteSet SetFamily::support() const {
    std::vector<Atom> all;
    for (const auto& m : members_) all.insert(all.end(), m.begin(), m.end());
    return FiniteSet(std::move(all));
}

std::vector<FiniteSet> SetFamily::select(std::span<const std::size_t> indices) const {
    std::vector<FiniteSet> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(members_.at(i));
    return out;
}

std::optional<FiniteSet> is_sunflower(std::span<const FiniteSet> members) {
    if (members.size() <= 1) return FiniteSet{};
    FiniteSet core = intersect(members[0], members[1]);
    for (std::size_t i = 0; i < members.size(); ++i) {
        // every member must contain the core, and pairs must meet nowhere else
        if (!is_subset(core, members[i])) return std::nullopt;
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (intersect(members[i], members[j]) != core) return std::nullopt;
    }
    return core;
}

std::optional<FiniteSet> is_sunflower(const SetFamily& family) {
    return is_sunflower(family.members());
}

bool verify_witness(const SetFamily& family, const SunflowerWitness& witness) {
    const auto& idx = witness.members;
    if (!std::is_sorted(idx.begin(), idx.end())) return false;
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return false;
    for (auto i : idx)
        if (i >= family.size()) return false;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (intersect(family[idx[a]], family[idx[b]]) != witness.core) return false;
    if (idx.size() <= 1) return witness.core.empty();
    return true;
}

PaddedFamily pad_family(const SetFamily& family, std::size_t k) {
    Atom next = family.atom_bound();
    std::vector<FiniteSet> out;
    out.reserve(family.size());
    for (const auto& m : family) {
        if (m.size() > k)
            throw PreconditionError("member of size " + std::to_string(m.size()) +
                                    " exceeds padding size " + std::to_string(k));
        std::vector<Atom> atoms(m.begin(), m.end());
        while (atoms.size() < k) atoms.push_back(next++);
        out.emplace_back(std::move(atoms));
    }
    PaddedFamily result{SetFamily(std::move(out)), {}};
    result.image.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) result.image[i] = i;
    return result;
}

namespace {

struct IsoSearch {
    std::vector<Atom> from_atoms;  // in assignment order
    std::vector<Atom> to_atoms;
    std::map<Atom, std::size_t> from_degree;
    std::map<Atom, std::size_t> to_degree;
    std::vector<std::vector<const FiniteSet*>> completes_at;  // members fully assigned at step i
    std::set<FiniteSet> targets;
    AtomMap map;
    std::set<Atom> used;

    bool run(std::size_t step) {
        if (step == from_atoms.size()) return true;
        Atom a = from_atoms[step];
        for (Atom b : to_atoms) {
            if (used.count(b) || to_degree[b] != from_degree[a]) continue;
            map[a] = b;
            used.insert(b);
            bool ok = true;
            for (const FiniteSet* m : completes_at[step]) {
                std::vector<Atom> img;
                for (Atom x : *m) img.push_back(map.at(x));
                if (!targets.count(FiniteSet(std::move(img)))) {
                    ok = false;
                    break;
                }
            }
            if (ok && run(step + 1)) return true;
            used.erase(b);
            map.erase(a);
        }
        return false;
    }
};

}  // namespace

std::optional<AtomMap> find_family_isomorphism(const SetFamily& a, const SetFamily& b) {
    if (a.size() != b.size()) return std::nullopt;
    auto sizes = [](const SetFamily& f) {
        std::vector<std::size_t> s;
        for (const auto& m : f) s.push_back(m.size());
        std::sort(s.begin(), s.end());
        return s;
    };
    if (sizes(a) != sizes(b)) return std::nullopt;
    FiniteSet sa = a.support();
    FiniteSet sb = b.support();
    if (sa.size() != sb.size()) return std::nullopt;

    IsoSearch search;
    for (const auto& m : a)
        for (Atom x : m) ++search.from_degree[x];
    for (const auto& m : b)
        for (Atom x : m) ++search.to_degree[x];
    search.from_atoms.assign(sa.begin(), sa.end());
    std::stable_sort(search.from_atoms.begin(), search.from_atoms.end(), [&](Atom x, Atom y) {
        return search.from_degree[x] > search.from_degree[y];
    });
    search.to_atoms.assign(sb.begin(), sb.end());
    std::map<Atom, std::size_t> position;
    for (std::size_t i = 0; i < search.from_atoms.size(); ++i) position[search.from_atoms[i]] = i;
    search.completes_at.resize(search.from_atoms.size());
    for (const auto& m : a) {
        if (m.empty()) continue;  // the empty member maps to the empty member, sizes already agree
        std::size_t last = 0;
        for (Atom x : m) last = std::max(last, position[x]);
        search.completes_at[last].push_back(&m);
    }
    for (const auto& m : b) search.targets.insert(m);
    if (!search.run(0)) return std::nullopt;
    return search.map;
}

}  // namespace sunflower
