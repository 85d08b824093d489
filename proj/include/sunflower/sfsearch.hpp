#pragma once

// Sunflower finding: the constructive Erdos-Rado recursion, an exhaustive
// finder used as its completion, and an isomorph-pruned exact search for
// small SF(n, k) values.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sunflower/setcore.hpp"

namespace sunflower {

struct SearchBudget {
    std::size_t max_universe = 64;
    std::size_t max_family = 64;
    std::optional<double> time_hint;  // seconds
    std::size_t threads = 1;

    void validate() const;
};

/// Families may use sets of size at most k, or exactly k.
enum class FamilyShape { AtMost, Exactly };

enum class SfStatus { Exact, ExceedsBudget };

struct SfAnswer {
    SfStatus status = SfStatus::ExceedsBudget;
    /// The exact SF value, or the best proven lower bound when the budget ran out.
    std::size_t value = 0;
    /// A largest n-sunflower-free family found (value - 1 members when exact).
    std::optional<SetFamily> extremal_witness;
    std::uint64_t nodes = 0;

    [[nodiscard]] bool exact() const noexcept { return status == SfStatus::Exact; }
};

/// k!(n-1)^k saturated to 64 bits; the size at which the lemma guarantees an n-sunflower.
[[nodiscard]] std::uint64_t lemma_threshold(std::size_t n, std::size_t k);

/// Erdos-Rado style search: a maximal pairwise-disjoint subfamily first, else
/// recurse into the link of the most popular atom (ties by least id), trying
/// further atoms and an exhaustive disjoint search before giving up. Returns
/// a witness whenever the family contains an n-sunflower.
/// Throws PreconditionError if some member is larger than k.
[[nodiscard]] std::optional<SunflowerWitness> greedy_sunflower(const SetFamily& family,
                                                               std::size_t n, std::size_t k);

/// Exhaustive n-sunflower search over the given members (indices refer to the span).
[[nodiscard]] std::optional<SunflowerWitness> find_sunflower_exhaustive(
    std::span<const FiniteSet> members, std::size_t n);

/// Indices of a largest sub-family with no n-sunflower (exhaustive; small inputs only).
[[nodiscard]] std::vector<std::size_t> max_sunflower_free(std::span<const FiniteSet> members,
                                                          std::size_t n);

/// Exact SF(n, k): the least l such that every family of l distinct sets of
/// size <= k (or exactly k) contains an n-sunflower.
[[nodiscard]] SfAnswer exact_sf(std::size_t n, std::size_t k, const SearchBudget& budget,
                                FamilyShape shape = FamilyShape::AtMost);

struct EmpiricalReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t family_size = 0;
    std::size_t universe = 0;
    std::size_t count = 0;
    std::size_t found = 0;
    std::vector<SetFamily> failures;
};

/// Draws `count` random distinct k-uniform families of size k!(n-1)^k from the
/// seed and runs greedy_sunflower on each, re-checking every witness.
[[nodiscard]] EmpiricalReport empirical_sf_check(std::size_t n, std::size_t k, std::size_t count,
                                                 std::uint64_t seed);

/// `size` distinct random k-subsets of {0, ..., universe-1}.
[[nodiscard]] SetFamily random_uniform_family(std::size_t size, std::size_t k,
                                              std::size_t universe, std::uint64_t seed);

}  // namespace sunflower
