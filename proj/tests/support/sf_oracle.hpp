#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sunflower/setcore.hpp"

namespace sunflower::testing {

// Independent oracle for the largest n-sunflower-free family of sets of size
// <= k (or == k). Members are chosen as an *ordered* sequence with no order
// constraint between them; atoms are relabelled in order of first occurrence,
// which any sequence admits. Slower than the library search but shares none
// of its pruning.
struct Oracle {
    std::size_t n, k;
    bool exactly;
    std::size_t limit;
    std::size_t best = 0;
    std::vector<FiniteSet> best_family;
    std::vector<FiniteSet> fam;

    bool free_with(const FiniteSet& s) const {
        std::vector<FiniteSet> all = fam;
        all.push_back(s);
        // brute force over all n-subsets containing s
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
            if (pick.size() + 1 == n) {
                std::vector<FiniteSet> sub{s};
                for (auto i : pick) sub.push_back(fam[i]);
                return is_sunflower(sub).has_value();
            }
            for (std::size_t i = from; i < fam.size(); ++i) {
                pick.push_back(i);
                if (rec(i + 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        return !rec(0);
    }

    void run(std::size_t used) {
        if (fam.size() > best) {
            best = fam.size();
            best_family = fam;
        }
        if (fam.size() == limit) return;
        for (std::size_t size = exactly ? k : 0; size <= k; ++size)
            for (std::uint32_t mask = 0; mask < (1u << used); ++mask) {
                std::size_t old = static_cast<std::size_t>(__builtin_popcount(mask));
                if (old > size) continue;
                std::vector<Atom> atoms;
                for (std::size_t a = 0; a < used; ++a)
                    if (mask & (1u << a)) atoms.push_back(static_cast<Atom>(a));
                for (std::size_t f = 0; f < size - old; ++f) atoms.push_back(static_cast<Atom>(used + f));
                FiniteSet s(atoms);
                if (std::find(fam.begin(), fam.end(), s) != fam.end() || !free_with(s)) continue;
                fam.push_back(s);
                run(used + size - old);
                fam.pop_back();
            }
    }
};

inline Oracle run_oracle(std::size_t n, std::size_t k, bool exactly, std::size_t limit) {
    Oracle o{n, k, exactly, limit};
    o.run(0);
    return o;
}

}  // namespace sunflower::testing
