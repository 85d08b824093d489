#include "sunflower/algcore.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "sunflower/error.hpp"

namespace sunflower {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> names;
    for (const auto& s : symbols_) {
        if (s.arity != 1 && s.arity != 2)
            throw PreconditionError("symbol '" + s.name + "' must be unary or binary");
        if (!names.insert(s.name).second)
            throw PreconditionError("duplicate symbol name '" + s.name + "'");
    }
}

std::optional<std::size_t> Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

FinStructure::FinStructure(Signature sig, std::size_t size, std::vector<std::vector<ElemId>> tables)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
    if (tables_.size() != sig_.size())
        throw PreconditionError("structure needs exactly one table per symbol");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        std::size_t expected = sig_[i].arity == 1 ? size_ : size_ * size_;
        if (tables_[i].size() != expected)
            throw PreconditionError("table for '" + sig_[i].name + "' has " +
                                    std::to_string(tables_[i].size()) + " entries, expected " +
                                    std::to_string(expected));
        for (ElemId v : tables_[i])
            if (v >= size_)
                throw PreconditionError("table for '" + sig_[i].name + "' leaves the universe");
    }
}

GenSub::GenSub(StructurePtr parent, FiniteSet carrier)
    : parent_(std::move(parent)), carrier_(std::move(carrier)) {}

namespace {

// Closes `members` (flags) starting from the listed new elements, appending to `list`.
void close_from(const FinStructure& m, std::vector<char>& in, std::vector<ElemId>& list,
                std::size_t first_new) {
    const auto& sig = m.signature();
    auto add = [&](ElemId e) {
        if (!in[e]) {
            in[e] = 1;
            list.push_back(e);
        }
    };
    for (std::size_t i = first_new; i < list.size(); ++i) {
        ElemId x = list[i];
        for (std::size_t s = 0; s < sig.size(); ++s) {
            if (sig[s].arity == 1) {
                add(m.apply(s, x));
            } else {
                // pairs with every element already present, x included
                for (std::size_t j = 0; j <= i; ++j) {
                    add(m.apply(s, x, list[j]));
                    add(m.apply(s, list[j], x));
                }
            }
        }
    }
}

}  // namespace

GenSub closure(const StructurePtr& m, const FiniteSet& seed) {
    std::vector<char> in(m->size(), 0);
    std::vector<ElemId> list;
    for (Atom a : seed) {
        if (a >= m->size())
            throw PreconditionError("seed element " + std::to_string(a) + " is outside the structure");
        if (!in[a]) {
            in[a] = 1;
            list.push_back(a);
        }
    }
    close_from(*m, in, list, 0);
    return GenSub(m, FiniteSet(std::move(list)));
}

GenSub whole(const StructurePtr& m) {
    std::vector<Atom> all(m->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Atom>(i);
    return GenSub(m, FiniteSet(std::move(all)));
}

SubstructureList substructures_up_to(const StructurePtr& m, std::size_t k, std::size_t cap) {
    SubstructureList out;
    std::set<FiniteSet> seen{FiniteSet{}};
    std::deque<FiniteSet> queue{FiniteSet{}};
    while (!queue.empty() && !out.truncated) {
        FiniteSet base = std::move(queue.front());
        queue.pop_front();
        std::vector<char> in(m->size(), 0);
        for (Atom a : base) in[a] = 1;
        for (ElemId x = 0; x < m->size(); ++x) {
            if (in[x]) continue;
            std::vector<char> grown = in;
            std::vector<ElemId> list(base.begin(), base.end());
            std::size_t first_new = list.size();
            grown[x] = 1;
            list.push_back(x);
            // base is already closed; only pairs involving new elements need work
            close_from(*m, grown, list, first_new);
            if (list.size() > k) continue;
            FiniteSet carrier(std::move(list));
            if (seen.insert(carrier).second) {
                if (seen.size() > cap) {
                    out.truncated = true;
                    break;
                }
                queue.push_back(std::move(carrier));
            }
        }
    }
    for (const auto& c : seen) out.subs.emplace_back(m, c);
    std::sort(out.subs.begin(), out.subs.end(), [](const GenSub& a, const GenSub& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.carrier() < b.carrier();
    });
    return out;
}

namespace {

// Isomorphism-invariant fingerprint of each element of a substructure.
std::unordered_map<ElemId, std::uint64_t> fingerprints(const GenSub& sub) {
    const auto& m = sub.parent();
    const auto& sig = m.signature();
    std::unordered_map<ElemId, std::uint64_t> out;
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    for (Atom x : sub.carrier()) {
        std::uint64_t h = 0;
        for (std::size_t s = 0; s < sig.size(); ++s) {
            if (sig[s].arity == 1) {
                // tail length and cycle length of the f-orbit of x
                std::unordered_map<ElemId, std::size_t> when;
                ElemId y = x;
                std::size_t step = 0;
                while (!when.count(y)) {
                    when[y] = step++;
                    y = m.apply(s, y);
                }
                h = mix(h, when[y]);
                h = mix(h, step - when[y]);
            } else {
                h = mix(h, m.apply(s, x, x) == x);
            }
        }
        std::vector<char> in(m.size(), 0);
        std::vector<ElemId> list{x};
        in[x] = 1;
        close_from(m, in, list, 0);
        h = mix(h, list.size());
        out[x] = h;
    }
    return out;
}

class IsoSearch {
public:
    IsoSearch(const GenSub& a, const GenSub& b, std::size_t limit)
        : a_(a), b_(b), limit_(limit), fa_(fingerprints(a)), fb_(fingerprints(b)) {
        order_.assign(a.carrier().begin(), a.carrier().end());
        std::unordered_map<ElemId, std::size_t> gen_size;
        for (ElemId x : order_) {
            std::vector<char> in(a.parent().size(), 0);
            std::vector<ElemId> list{x};
            in[x] = 1;
            close_from(a.parent(), in, list, 0);
            gen_size[x] = list.size();
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&](ElemId x, ElemId y) { return gen_size[x] > gen_size[y]; });
    }

    std::vector<ElemMap> run(const ElemMap& forced) {
        results_.clear();
        if (a_.size() != b_.size()) return {};
        if (a_.parent().signature() != b_.parent().signature()) return {};
        State st;
        st.fwd.assign(a_.parent().size(), -1);
        st.bwd.assign(b_.parent().size(), -1);
        std::deque<std::pair<ElemId, ElemId>> queue;
        for (auto [u, v] : forced) {
            if (!a_.carrier().contains(u) || !b_.carrier().contains(v)) return {};
            if (!enforce(st, u, v, queue)) return {};
        }
        if (!propagate(st, queue)) return {};
        search(st);
        return std::move(results_);
    }

private:
    struct State {
        std::vector<std::int64_t> fwd;
        std::vector<std::int64_t> bwd;
        std::vector<std::pair<ElemId, ElemId>> mapped;
    };

    bool enforce(State& st, ElemId u, ElemId v, std::deque<std::pair<ElemId, ElemId>>& queue) {
        if (st.fwd[u] >= 0) return st.fwd[u] == v;
        if (st.bwd[v] >= 0) return false;
        if (fa_.at(u) != fb_.at(v)) return false;
        st.fwd[u] = v;
        st.bwd[v] = u;
        st.mapped.emplace_back(u, v);
        queue.emplace_back(u, v);
        return true;
    }

    bool propagate(State& st, std::deque<std::pair<ElemId, ElemId>>& queue) {
        const auto& ma = a_.parent();
        const auto& mb = b_.parent();
        const auto& sig = ma.signature();
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < sig.size(); ++s) {
                if (sig[s].arity == 1) {
                    if (!enforce(st, ma.apply(s, x), mb.apply(s, y), queue)) return false;
                    continue;
                }
                std::size_t known = st.mapped.size();
                for (std::size_t i = 0; i < known; ++i) {
                    auto [x2, y2] = st.mapped[i];
                    if (!enforce(st, ma.apply(s, x, x2), mb.apply(s, y, y2), queue)) return false;
                    if (!enforce(st, ma.apply(s, x2, x), mb.apply(s, y2, y), queue)) return false;
                }
            }
        }
        return true;
    }

    void search(const State& st) {
        if (results_.size() >= limit_) return;
        auto next = std::find_if(order_.begin(), order_.end(), [&](ElemId x) { return st.fwd[x] < 0; });
        if (next == order_.end()) {
            ElemMap map;
            for (auto [u, v] : st.mapped) map[u] = v;
            results_.push_back(std::move(map));
            return;
        }
        ElemId x = *next;
        for (Atom y : b_.carrier()) {
            if (st.bwd[y] >= 0 || fb_.at(y) != fa_.at(x)) continue;
            State child = st;
            std::deque<std::pair<ElemId, ElemId>> queue;
            if (enforce(child, x, y, queue) && propagate(child, queue)) search(child);
            if (results_.size() >= limit_) return;
        }
    }

    const GenSub& a_;
    const GenSub& b_;
    std::size_t limit_;
    std::unordered_map<ElemId, std::uint64_t> fa_;
    std::unordered_map<ElemId, std::uint64_t> fb_;
    std::vector<ElemId> order_;
    std::vector<ElemMap> results_;
};

}  // namespace

std::optional<ElemMap> find_isomorphism(const GenSub& a, const GenSub& b, const ElemMap& forced) {
    auto found = all_isomorphisms(a, b, forced, 1);
    if (found.empty()) return std::nullopt;
    return std::move(found.front());
}

std::vector<ElemMap> all_isomorphisms(const GenSub& a, const GenSub& b, const ElemMap& forced,
                                      std::size_t limit) {
    if (a.size() != b.size()) return {};
    IsoSearch search(a, b, limit);
    return search.run(forced);
}

bool is_isomorphism(const GenSub& a, const GenSub& b, const ElemMap& map) {
    if (a.size() != b.size() || map.size() != a.size()) return false;
    if (a.parent().signature() != b.parent().signature()) return false;
    std::set<ElemId> image;
    for (auto [u, v] : map) {
        if (!a.carrier().contains(u) || !b.carrier().contains(v)) return false;
        image.insert(v);
    }
    if (image.size() != map.size()) return false;
    const auto& sig = a.parent().signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        for (auto [u, v] : map) {
            if (sig[s].arity == 1) {
                if (map.at(a.parent().apply(s, u)) != b.parent().apply(s, v)) return false;
                continue;
            }
            for (auto [u2, v2] : map)
                if (map.at(a.parent().apply(s, u, u2)) != b.parent().apply(s, v, v2)) return false;
        }
    }
    return true;
}

bool is_uniform(std::span<const GenSub> family) {
    // isomorphism is an equivalence relation, so comparing against the first suffices
    for (std::size_t i = 1; i < family.size(); ++i)
        if (!find_isomorphism(family[0], family[i])) return false;
    return true;
}

bool is_strongly_uniform(std::span<const GenSub> family) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            ElemMap fixed;
            for (Atom x : intersect(family[i].carrier(), family[j].carrier())) fixed[x] = x;
            if (!find_isomorphism(family[i], family[j], fixed)) return false;
        }
    return true;
}

ExtensionReport extension_check(const StructurePtr& m, std::size_t size_bound, std::size_t iso_cap) {
    ExtensionReport report;
    auto subs = substructures_up_to(m, size_bound);
    report.truncated = subs.truncated;
    report.substructures = subs.subs.size();
    GenSub all = whole(m);
    for (const auto& a : subs.subs) {
        for (const auto& b : subs.subs) {
            if (a.size() != b.size()) continue;
            for (auto& sigma : all_isomorphisms(a, b)) {
                if (report.isomorphisms_checked >= iso_cap) {
                    report.truncated = true;
                    return report;
                }
                ++report.isomorphisms_checked;
                if (!find_isomorphism(all, all, sigma))
                    report.failures.push_back({a.carrier(), b.carrier(), std::move(sigma)});
            }
        }
    }
    return report;
}

}  // namespace sunflower
