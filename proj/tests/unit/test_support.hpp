#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "sunflower/setcore.hpp"

namespace sunflower::testing {

// Random family of up to `max_members` distinct sets of size <= max_size over `universe` atoms.
inline SetFamily random_family(std::mt19937_64& rng, std::size_t max_members, std::size_t max_size,
                               std::size_t universe) {
    std::size_t members = 1 + rng() % max_members;
    std::set<FiniteSet> seen;
    std::vector<FiniteSet> out;
    for (std::size_t tries = 0; out.size() < members && tries < 50 * members; ++tries) {
        std::size_t sz = rng() % (max_size + 1);
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < sz; ++i) atoms.push_back(static_cast<Atom>(rng() % universe));
        FiniteSet s(atoms);
        if (seen.insert(s).second) out.push_back(s);
    }
    return SetFamily(out);
}

// Every sub-family (as index list) of a family with at most ~16 members.
template <typename F>
void for_each_subfamily(std::size_t size, F&& f) {
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < size; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        f(idx);
    }
}

}  // namespace sunflower::testing
