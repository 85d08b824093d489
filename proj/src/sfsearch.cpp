#include "sunflower/sfsearch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "sunflower/error.hpp"

namespace sunflower {

void SearchBudget::validate() const {
    if (max_universe == 0 || max_family == 0 || threads == 0)
        throw PreconditionError("search budget fields must be positive");
    if (time_hint && *time_hint <= 0.0)
        throw PreconditionError("time hint must be positive");
}

std::uint64_t lemma_threshold(std::size_t n, std::size_t k) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value = 1;
    auto mul = [&](std::uint64_t f) {
        if (f != 0 && value > cap / f)
            value = cap;
        else
            value *= f;
    };
    for (std::size_t i = 2; i <= k; ++i) mul(i);
    for (std::size_t i = 0; i < k; ++i) mul(n == 0 ? 0 : n - 1);
    return value;
}

namespace {

// Picks `need` members out of `pool` that pairwise meet in exactly `core`.
bool pick_petals(std::span<const FiniteSet> members, const std::vector<std::size_t>& pool,
                 std::size_t need, const FiniteSet& core, std::size_t from,
                 std::vector<std::size_t>& chosen) {
    if (need == 0) return true;
    for (std::size_t p = from; p + need <= pool.size(); ++p) {
        const auto& cand = members[pool[p]];
        bool ok = true;
        for (auto c : chosen)
            if (intersect(members[c], cand) != core) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(pool[p]);
        if (pick_petals(members, pool, need - 1, core, p + 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

// Does adding `extra` to `family` create an n-sunflower containing `extra`?
bool completes_sunflower(std::span<const FiniteSet> family, const FiniteSet& extra, std::size_t n) {
    if (n <= 1) return true;
    if (family.size() + 1 < n) return false;
    std::map<FiniteSet, std::vector<std::size_t>> by_core;
    for (std::size_t i = 0; i < family.size(); ++i)
        by_core[intersect(family[i], extra)].push_back(i);
    for (const auto& [core, pool] : by_core) {
        if (pool.size() + 1 < n) continue;
        std::vector<std::size_t> chosen;
        if (pick_petals(family, pool, n - 1, core, 0, chosen)) return true;
    }
    return false;
}

struct Item {
    FiniteSet set;
    std::size_t index;
};

std::optional<std::vector<std::size_t>> find_disjoint(const std::vector<Item>& items,
                                                      std::size_t n) {
    std::vector<FiniteSet> sets;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < items.size(); ++i) {
        sets.push_back(items[i].set);
        pool.push_back(i);
    }
    std::vector<std::size_t> chosen;
    if (!pick_petals(sets, pool, n, FiniteSet{}, 0, chosen)) return std::nullopt;
    std::vector<std::size_t> out;
    for (auto c : chosen) out.push_back(items[c].index);
    return out;
}

std::optional<SunflowerWitness> erdos_rado(const std::vector<Item>& items, std::size_t n) {
    if (n == 0) return SunflowerWitness{};
    if (items.size() < n) return std::nullopt;
    if (n == 1) return SunflowerWitness{FiniteSet{}, {items.front().index}};

    std::vector<std::size_t> disjoint_pick;
    std::vector<const FiniteSet*> kept;
    for (const auto& it : items) {
        bool ok = std::all_of(kept.begin(), kept.end(),
                              [&](const FiniteSet* k) { return disjoint(*k, it.set); });
        if (!ok) continue;
        kept.push_back(&it.set);
        disjoint_pick.push_back(it.index);
        if (disjoint_pick.size() == n) {
            std::sort(disjoint_pick.begin(), disjoint_pick.end());
            return SunflowerWitness{FiniteSet{}, disjoint_pick};
        }
    }

    std::map<Atom, std::size_t> popularity;
    for (const auto& it : items)
        for (Atom a : it.set) ++popularity[a];
    std::vector<std::pair<Atom, std::size_t>> atoms(popularity.begin(), popularity.end());
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });

    for (const auto& [atom, count] : atoms) {
        if (count < n) break;
        std::vector<Item> link;
        link.reserve(count);
        FiniteSet single{atom};
        for (const auto& it : items)
            if (it.set.contains(atom)) link.push_back({difference(it.set, single), it.index});
        if (auto w = erdos_rado(link, n)) {
            w->core = unite(w->core, single);
            std::sort(w->members.begin(), w->members.end());
            return w;
        }
    }

    // The greedy disjoint pass is maximal, not maximum.
    if (auto pick = find_disjoint(items, n)) {
        std::sort(pick->begin(), pick->end());
        return SunflowerWitness{FiniteSet{}, *pick};
    }
    return std::nullopt;
}

}  // namespace

std::optional<SunflowerWitness> greedy_sunflower(const SetFamily& family, std::size_t n,
                                                 std::size_t k) {
    if (family.max_member_size() > k)
        throw PreconditionError("family has a member larger than k = " + std::to_string(k));
    std::vector<Item> items;
    items.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) items.push_back({family[i], i});
    return erdos_rado(items, n);
}

std::optional<SunflowerWitness> find_sunflower_exhaustive(std::span<const FiniteSet> members,
                                                          std::size_t n) {
    if (n == 0) return SunflowerWitness{};
    if (members.size() < n) return std::nullopt;
    if (n == 1) return SunflowerWitness{FiniteSet{}, {0}};
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            FiniteSet core = intersect(members[i], members[j]);
            std::vector<std::size_t> pool;
            for (std::size_t l = j + 1; l < members.size(); ++l)
                if (intersect(members[l], members[i]) == core &&
                    intersect(members[l], members[j]) == core)
                    pool.push_back(l);
            std::vector<std::size_t> chosen;
            if (pool.size() + 2 < n || !pick_petals(members, pool, n - 2, core, 0, chosen))
                continue;
            chosen.insert(chosen.begin(), {i, j});
            std::sort(chosen.begin(), chosen.end());
            return SunflowerWitness{core, chosen};
        }
    }
    return std::nullopt;
}

namespace {

struct FreeSearch {
    std::span<const FiniteSet> members;
    std::size_t n;
    std::vector<FiniteSet> current;
    std::vector<std::size_t> current_idx;
    std::vector<std::size_t> best;

    void run(std::size_t i) {
        if (current_idx.size() > best.size()) best = current_idx;
        if (i == members.size()) return;
        if (current_idx.size() + (members.size() - i) <= best.size()) return;
        if (!completes_sunflower(current, members[i], n)) {
            current.push_back(members[i]);
            current_idx.push_back(i);
            run(i + 1);
            current.pop_back();
            current_idx.pop_back();
        }
        run(i + 1);
    }
};

}  // namespace

std::vector<std::size_t> max_sunflower_free(std::span<const FiniteSet> members, std::size_t n) {
    FreeSearch search{members, n, {}, {}, {}};
    search.run(0);
    return search.best;
}

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first search over families listed in increasing lexicographic order
// whose atoms first appear in increasing order (each member introduces only
// the smallest unused atoms). Every family has a relabelling of that form: its
// lexicographically least relabelling.
class ExactSearch {
public:
    ExactSearch(std::size_t n, std::size_t k, FamilyShape shape, const SearchBudget& budget)
        : n_(n), k_(k), shape_(shape), budget_(budget) {
        if (budget.time_hint)
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(*budget.time_hint));
    }

    // A free family of exactly `target` members, if one exists (nullopt also on budget stop).
    std::optional<std::vector<FiniteSet>> find(std::size_t target) {
        constexpr std::size_t split_depth = 2;
        std::vector<std::pair<std::vector<FiniteSet>, std::size_t>> frontier;
        std::vector<FiniteSet> fam;
        std::optional<std::vector<FiniteSet>> shallow;
        collect(fam, 0, std::min(target, split_depth), target, frontier, shallow);
        if (shallow) return shallow;

        std::atomic<std::size_t> next{0};
        std::size_t best_index = frontier.size();
        std::optional<std::vector<FiniteSet>> best;
        std::mutex mu;
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= frontier.size() || stopped()) return;
                {
                    std::lock_guard lock(mu);
                    if (i > best_index) return;
                }
                auto local = frontier[i].first;
                if (dfs(local, frontier[i].second, target)) {
                    std::lock_guard lock(mu);
                    if (i < best_index) {
                        best_index = i;
                        best = std::move(local);
                    }
                }
            }
        };
        std::size_t nthreads = std::max<std::size_t>(1, std::min(budget_.threads, frontier.size()));
        if (nthreads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        return best;
    }

    [[nodiscard]] bool stopped() const { return timed_out_.load(); }
    [[nodiscard]] bool truncated() const { return truncated_.load(); }
    [[nodiscard]] std::uint64_t nodes() const { return nodes_.load(); }

private:
    void candidates(const std::vector<FiniteSet>& fam, std::size_t used,
                    std::vector<std::pair<FiniteSet, std::size_t>>& out) {
        out.clear();
        std::size_t lo = shape_ == FamilyShape::Exactly ? k_ : 0;
        for (std::size_t size = lo; size <= k_; ++size) {
            for (std::size_t old = 0; old <= std::min(size, used); ++old) {
                std::size_t fresh = size - old;
                if (used + fresh > budget_.max_universe) {
                    truncated_ = true;
                    continue;
                }
                std::vector<Atom> combo(old);
                for (std::size_t i = 0; i < old; ++i) combo[i] = static_cast<Atom>(i);
                for (;;) {
                    std::vector<Atom> atoms = combo;
                    for (std::size_t f = 0; f < fresh; ++f) atoms.push_back(static_cast<Atom>(used + f));
                    FiniteSet s(std::move(atoms));
                    if ((fam.empty() || fam.back() < s) && !completes_sunflower(fam, s, n_))
                        out.emplace_back(std::move(s), used + fresh);
                    // next combination of `old` atoms out of `used`
                    std::size_t pos = old;
                    while (pos > 0 && combo[pos - 1] == used - old + pos - 1) --pos;
                    if (pos == 0) break;
                    ++combo[pos - 1];
                    for (std::size_t q = pos; q < old; ++q) combo[q] = combo[q - 1] + 1;
                }
            }
        }
        std::sort(out.begin(), out.end());
    }

    bool tick() {
        auto count = ++nodes_;
        if (deadline_ && (count & 1023u) == 0 && Clock::now() > *deadline_) timed_out_ = true;
        return !timed_out_.load();
    }

    bool dfs(std::vector<FiniteSet>& fam, std::size_t used, std::size_t target) {
        if (!tick()) return false;
        if (fam.size() == target) return true;
        std::vector<std::pair<FiniteSet, std::size_t>> cands;
        candidates(fam, used, cands);
        for (auto& [s, next_used] : cands) {
            fam.push_back(s);
            if (dfs(fam, next_used, target)) return true;
            fam.pop_back();
            if (stopped()) return false;
        }
        return false;
    }

    void collect(std::vector<FiniteSet>& fam, std::size_t used, std::size_t depth,
                 std::size_t target,
                 std::vector<std::pair<std::vector<FiniteSet>, std::size_t>>& frontier,
                 std::optional<std::vector<FiniteSet>>& shallow) {
        if (shallow) return;
        tick();
        if (fam.size() == depth) {
            if (depth == target)
                shallow = fam;
            else
                frontier.emplace_back(fam, used);
            return;
        }
        std::vector<std::pair<FiniteSet, std::size_t>> cands;
        candidates(fam, used, cands);
        for (auto& [s, next_used] : cands) {
            fam.push_back(s);
            collect(fam, next_used, depth, target, frontier, shallow);
            fam.pop_back();
        }
    }

    std::size_t n_;
    std::size_t k_;
    FamilyShape shape_;
    SearchBudget budget_;
    std::optional<Clock::time_point> deadline_;
    std::atomic<bool> timed_out_{false};
    std::atomic<bool> truncated_{false};
    std::atomic<std::uint64_t> nodes_{0};
};

}  // namespace

SfAnswer exact_sf(std::size_t n, std::size_t k, const SearchBudget& budget, FamilyShape shape) {
    if (n < 2) throw PreconditionError("exact_sf needs n >= 2");
    if (k < 1) throw PreconditionError("exact_sf needs k >= 1");
    budget.validate();

    ExactSearch search(n, k, shape, budget);
    SfAnswer answer;
    answer.value = 1;
    answer.extremal_witness = SetFamily{};
    for (std::size_t target = 1;; ++target) {
        if (target > budget.max_family) break;
        auto found = search.find(target);
        if (search.stopped()) break;
        if (!found) {
            // a complete refutation only counts if no branch was cut by the universe cap
            if (!search.truncated()) answer.status = SfStatus::Exact;
            answer.value = target;
            break;
        }
        answer.value = target + 1;
        answer.extremal_witness = SetFamily(std::move(*found));
    }
    answer.nodes = search.nodes();
    return answer;
}

SetFamily random_uniform_family(std::size_t size, std::size_t k, std::size_t universe,
                                std::uint64_t seed) {
    // C(universe, k) must be at least `size`
    long double available = 1;
    for (std::size_t i = 0; i < k; ++i)
        available = available * static_cast<long double>(universe - i) / static_cast<long double>(i + 1);
    if (k > universe || available + 0.5L < static_cast<long double>(size))
        throw PreconditionError("universe too small for the requested family");

    std::mt19937_64 rng(seed);
    std::vector<Atom> pool(universe);
    for (std::size_t i = 0; i < universe; ++i) pool[i] = static_cast<Atom>(i);
    std::set<FiniteSet> seen;
    std::vector<FiniteSet> out;
    while (out.size() < size) {
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng() % (universe - i));
            std::swap(pool[i], pool[j]);
        }
        FiniteSet s(std::vector<Atom>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)));
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    return SetFamily(std::move(out));
}

EmpiricalReport empirical_sf_check(std::size_t n, std::size_t k, std::size_t count,
                                   std::uint64_t seed) {
    EmpiricalReport report;
    report.n = n;
    report.k = k;
    report.count = count;
    report.family_size = static_cast<std::size_t>(lemma_threshold(n, k));
    // smallest universe with at least twice as many k-sets as needed
    std::size_t universe = std::max<std::size_t>(k, 1);
    for (;; ++universe) {
        long double c = 1;
        for (std::size_t i = 0; i < k; ++i)
            c = c * static_cast<long double>(universe - i) / static_cast<long double>(i + 1);
        if (c >= 2.0L * static_cast<long double>(report.family_size)) break;
    }
    report.universe = universe;

    std::mt19937_64 seeder(seed);
    for (std::size_t i = 0; i < count; ++i) {
        SetFamily family = random_uniform_family(report.family_size, k, universe, seeder());
        auto w = greedy_sunflower(family, n, k);
        if (w && w->members.size() == n && verify_witness(family, *w) &&
            is_sunflower(family.select(w->members)) == w->core)
            ++report.found;
        else
            report.failures.push_back(std::move(family));
    }
    return report;
}

}  // namespace sunflower
