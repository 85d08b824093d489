#pragma once

// Finite algebraic structures given by explicit function tables (unary and
// binary symbols only), generated substructures, isomorphism search and the
// uniformity predicates on families of substructures.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sunflower/setcore.hpp"

namespace sunflower {

using ElemId = std::uint32_t;

struct Symbol {
    std::string name;
    unsigned arity = 1;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
    [[nodiscard]] const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    [[nodiscard]] std::span<const Symbol> symbols() const noexcept { return symbols_; }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// A finite structure over {0, ..., size-1}. Table i belongs to symbol i of the
/// signature: `size` entries for a unary symbol, `size*size` row-major entries
/// (table[x*size + y] = f(x, y)) for a binary one.
class FinStructure {
public:
    FinStructure(Signature sig, std::size_t size, std::vector<std::vector<ElemId>> tables);

    [[nodiscard]] const Signature& signature() const noexcept { return sig_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] const std::vector<ElemId>& table(std::size_t symbol) const { return tables_[symbol]; }
    [[nodiscard]] ElemId apply(std::size_t symbol, ElemId x) const { return tables_[symbol][x]; }
    [[nodiscard]] ElemId apply(std::size_t symbol, ElemId x, ElemId y) const {
        return tables_[symbol][static_cast<std::size_t>(x) * size_ + y];
    }

private:
    Signature sig_;
    std::size_t size_;
    std::vector<std::vector<ElemId>> tables_;
};

using StructurePtr = std::shared_ptr<const FinStructure>;

/// A closed subset of a parent structure.
class GenSub {
public:
    GenSub(StructurePtr parent, FiniteSet carrier);

    [[nodiscard]] const FinStructure& parent() const noexcept { return *parent_; }
    [[nodiscard]] const StructurePtr& parent_ptr() const noexcept { return parent_; }
    [[nodiscard]] const FiniteSet& carrier() const noexcept { return carrier_; }
    [[nodiscard]] std::size_t size() const noexcept { return carrier_.size(); }

    friend bool operator==(const GenSub& a, const GenSub& b) {
        return a.parent_ == b.parent_ && a.carrier_ == b.carrier_;
    }

private:
    StructurePtr parent_;
    FiniteSet carrier_;
};

/// Least closed superset of `seed`. Throws PreconditionError if seed leaves the universe.
[[nodiscard]] GenSub closure(const StructurePtr& m, const FiniteSet& seed);

/// The whole structure as a substructure of itself.
[[nodiscard]] GenSub whole(const StructurePtr& m);

struct SubstructureList {
    std::vector<GenSub> subs;  // sorted by (size, carrier)
    bool truncated = false;
};

/// Every closed subset of size <= k (each is generated by its own elements).
/// Stops and sets `truncated` once `cap` substructures have been collected.
[[nodiscard]] SubstructureList substructures_up_to(const StructurePtr& m, std::size_t k,
                                                   std::size_t cap = 100000);

using ElemMap = std::map<ElemId, ElemId>;

/// An isomorphism carrier(a) -> carrier(b) commuting with every symbol and
/// agreeing with `forced`, if one exists. The parents may differ but must share
/// a signature.
[[nodiscard]] std::optional<ElemMap> find_isomorphism(const GenSub& a, const GenSub& b,
                                                      const ElemMap& forced = {});

/// Every such isomorphism, up to `limit` of them.
[[nodiscard]] std::vector<ElemMap> all_isomorphisms(
    const GenSub& a, const GenSub& b, const ElemMap& forced = {},
    std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Table check: `map` is a bijection carrier(a) -> carrier(b) commuting with every symbol.
[[nodiscard]] bool is_isomorphism(const GenSub& a, const GenSub& b, const ElemMap& map);

/// Pairwise isomorphic.
[[nodiscard]] bool is_uniform(std::span<const GenSub> family);
/// Pairwise isomorphic via maps fixing the carrier intersection pointwise.
[[nodiscard]] bool is_strongly_uniform(std::span<const GenSub> family);

struct NonExtending {
    FiniteSet from;
    FiniteSet to;
    ElemMap sigma;
};

struct ExtensionReport {
    std::size_t substructures = 0;
    std::size_t isomorphisms_checked = 0;
    std::vector<NonExtending> failures;
    bool truncated = false;
};

/// For every isomorphism between substructures of size <= size_bound, checks
/// that it extends to an automorphism of the (finite) structure. A necessary
/// condition for ultrahomogeneity of whatever infinite structure this is a
/// fragment of, not a sufficient one.
[[nodiscard]] ExtensionReport extension_check(const StructurePtr& m, std::size_t size_bound,
                                              std::size_t iso_cap = 1000000);

}  // namespace sunflower
