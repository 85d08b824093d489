#pragma once

// Plain set systems: finite sets of integer atoms, families of them, the
// sunflower predicate and the size-padding transformation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace sunflower {

using Atom = std::uint32_t;

/// A finite set of atoms, stored sorted and duplicate-free.
class FiniteSet {
public:
    FiniteSet() = default;
    FiniteSet(std::initializer_list<Atom> atoms);
    explicit FiniteSet(std::vector<Atom> atoms);

    [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return atoms_.empty(); }
    [[nodiscard]] bool contains(Atom a) const noexcept;
    [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }
    [[nodiscard]] auto begin() const noexcept { return atoms_.begin(); }
    [[nodiscard]] auto end() const noexcept { return atoms_.end(); }
    /// Largest atom, if any.
    [[nodiscard]] std::optional<Atom> max_atom() const noexcept;

    /// Lexicographic on the sorted atom sequence; a proper prefix sorts first.
    friend auto operator<=>(const FiniteSet&, const FiniteSet&) = default;
    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

private:
    std::vector<Atom> atoms_;
};

[[nodiscard]] FiniteSet intersect(const FiniteSet& a, const FiniteSet& b);
[[nodiscard]] FiniteSet unite(const FiniteSet& a, const FiniteSet& b);
[[nodiscard]] FiniteSet difference(const FiniteSet& a, const FiniteSet& b);
[[nodiscard]] bool is_subset(const FiniteSet& a, const FiniteSet& b);
[[nodiscard]] bool disjoint(const FiniteSet& a, const FiniteSet& b);

/// A set of finite sets, kept in insertion order. Members must be pairwise
/// distinct; when a universe hint is given every atom must lie below it.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(std::vector<FiniteSet> members,
                       std::optional<Atom> universe_hint = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const FiniteSet& operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] std::span<const FiniteSet> members() const noexcept { return members_; }
    [[nodiscard]] std::optional<Atom> universe_hint() const noexcept { return hint_; }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    /// One past the largest atom in use, or the hint if that is larger.
    [[nodiscard]] Atom atom_bound() const noexcept;
    /// Size of the largest member (0 for the empty family).
    [[nodiscard]] std::size_t max_member_size() const noexcept;
    /// Union of all members.
    [[nodiscard]] FiniteSet support() const;
    /// The sub-family picked out by the given indices.
    [[nodiscard]] std::vector<FiniteSet> select(std::span<const std::size_t> indices) const;

private:
    std::vector<FiniteSet> members_;
    std::optional<Atom> hint_;
};

/// A core plus indices into a family certifying a sunflower.
struct SunflowerWitness {
    FiniteSet core;
    std::vector<std::size_t> members;  // sorted, distinct

    friend bool operator==(const SunflowerWitness&, const SunflowerWitness&) = default;
};

/// Common pairwise intersection of distinct members, or nullopt if the
/// pairwise intersections disagree. Families of size <= 1 have empty core.
[[nodiscard]] std::optional<FiniteSet> is_sunflower(std::span<const FiniteSet> members);
[[nodiscard]] std::optional<FiniteSet> is_sunflower(const SetFamily& family);

/// True iff the witness indices are valid, distinct, and pairwise meet in exactly the core.
[[nodiscard]] bool verify_witness(const SetFamily& family, const SunflowerWitness& witness);

struct PaddedFamily {
    SetFamily family;
    std::vector<std::size_t> image;  // image[i] = index of the padded version of member i
};

/// Pads every member to exactly k atoms with fresh atoms allocated consecutively
/// above every atom in use (and above the universe hint). Sunflower status of
/// every sub-family is preserved. Throws PreconditionError if a member exceeds k.
[[nodiscard]] PaddedFamily pad_family(const SetFamily& family, std::size_t k);

using AtomMap = std::map<Atom, Atom>;

/// An atom bijection between the supports of two families mapping one family
/// onto the other, if one exists.
[[nodiscard]] std::optional<AtomMap> find_family_isomorphism(const SetFamily& a,
                                                             const SetFamily& b);

}  // namespace sunflower
