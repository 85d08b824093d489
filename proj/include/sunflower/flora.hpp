#pragma once

// The two structures whose substructure families have small sunflower numbers:
//
//  * M_k: disjoint k-cycles of a single unary bijection f. Every nonempty
//    substructure is a whole cycle, so distinct size-k substructures are
//    pairwise disjoint.
//
//  * N_beta over the signature {s, c, p0, p1, a}: an element is a
//    repetition-free tuple t of base atoms together with a rotation
//    0 <= r < beta(|t|). s rotates, c resets the rotation, p0/p1 split a
//    distinguished tuple (r = 0) into its head and tail, and a(x, y) prepends
//    the base atom x to the tuple y when x is not already an entry. A
//    substructure is determined by its base (the atoms it mentions), and
//    holds every tuple over that base with every rotation.
//
// The infinite N_beta is represented symbolically; `horizon` (the number of
// known beta values) bounds the tuple length, and `materialize` turns a finite
// base into explicit function tables for the algcore checks.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sunflower/algcore.hpp"
#include "sunflower/bounds.hpp"
#include "sunflower/setcore.hpp"

namespace sunflower {

struct MkFragmentSpec {
    std::size_t k = 1;       // cycle length
    std::size_t copies = 1;  // number of cycles
};

/// copies*k elements; f maps i to the next element of its block of k, cyclically.
[[nodiscard]] StructurePtr build_mk_fragment(const MkFragmentSpec& spec);

struct NBetaElement {
    std::vector<Atom> tuple;
    std::uint64_t rot = 0;

    [[nodiscard]] bool distinguished() const noexcept { return rot == 0; }
    friend auto operator<=>(const NBetaElement&, const NBetaElement&) = default;
    friend bool operator==(const NBetaElement&, const NBetaElement&) = default;
};

enum class NBetaSymbol { S, C, P0, P1, A };

/// Throws PreconditionError unless the tuple is repetition-free, 1 <= length <= horizon
/// and rot < beta(length).
void check_element(const BetaFn& beta, const NBetaElement& e);

/// Applies one symbol. `args` has one element for unary symbols and two for `a`.
/// Throws HorizonExceeded when `a` would build a tuple longer than the horizon.
[[nodiscard]] NBetaElement nbeta_apply(const BetaFn& beta, NBetaSymbol sym,
                                       std::span<const NBetaElement> args);

/// A substructure of N_beta, identified by its base.
class NBetaSub {
public:
    /// Throws HorizonExceeded if the base has more atoms than the horizon.
    NBetaSub(BetaFn beta, FiniteSet base);

    [[nodiscard]] const BetaFn& beta() const noexcept { return beta_; }
    [[nodiscard]] const FiniteSet& base() const noexcept { return base_; }
    /// Every element over the base, sorted.
    [[nodiscard]] std::vector<NBetaElement> carrier() const;
    [[nodiscard]] bool contains(const NBetaElement& e) const;

    friend bool operator==(const NBetaSub&, const NBetaSub&) = default;

private:
    BetaFn beta_;
    FiniteSet base_;
};

[[nodiscard]] FiniteSet base_of(const NBetaSub& sub);
[[nodiscard]] NBetaSub sub_from_base(const BetaFn& beta, const FiniteSet& base);

/// The substructure generated by the seeds: its base is the set of atoms they
/// mention. For carriers of at most `verify_cap` elements the result is
/// re-derived by a plain fixpoint over nbeta_apply and a mismatch raises Error.
[[nodiscard]] NBetaSub nbeta_closure(const BetaFn& beta, std::span<const NBetaElement> seeds,
                                     std::size_t verify_cap = 256);

/// Plain fixpoint closure under all five symbols, for cross-checks.
[[nodiscard]] std::vector<NBetaElement> nbeta_closure_fixpoint(const BetaFn& beta,
                                                               std::span<const NBetaElement> seeds);

/// Number of elements of a substructure whose base has m atoms.
[[nodiscard]] BigInt nbeta_size(const BetaFn& beta, std::size_t m);

struct TransferResult {
    bool sunflower = false;
    std::optional<NBetaSub> core;
};

/// A family of substructures is a sunflower iff the family of their bases is;
/// the core is the substructure over the common base intersection.
/// Throws PreconditionError if members differ in beta or repeat.
[[nodiscard]] TransferResult transfer_sunflower(std::span<const NBetaSub> family);

/// The same verdict computed on carriers directly (the core, as elements, if any).
[[nodiscard]] std::optional<std::vector<NBetaElement>> carrier_sunflower(
    std::span<const NBetaSub> family);

using BaseMap = std::map<Atom, Atom>;

/// Applies an atom map entrywise to a tuple.
[[nodiscard]] NBetaElement map_element(const BaseMap& map, const NBetaElement& e);

struct UniformWitness {
    std::size_t from = 0;
    std::size_t to = 0;
    BaseMap base_map;  // fixes base(from) & base(to) pointwise
};

/// For every ordered pair of members, a base bijection fixing the shared base
/// atoms; its entrywise extension is an isomorphism that is the identity on the
/// carrier intersection. Throws PreconditionError unless the family is uniform
/// (equal base sizes) and a sunflower.
[[nodiscard]] std::vector<UniformWitness> strong_uniformize(std::span<const NBetaSub> family);

/// An injective map from the base of one substructure into the base of `target`.
struct Embedding {
    NBetaSub target;
    BaseMap map;
};

struct Amalgam {
    NBetaSub target;
    BaseMap from_b;  // base(B) -> base(target)
    BaseMap from_c;  // base(C) -> base(target)
};

/// Strong amalgamation over A: B is kept in place, the part of C outside the
/// image of A is sent to fresh atoms above every atom in use, so the two images
/// meet exactly in the image of A. Throws PreconditionError on non-injective or
/// ill-typed embeddings and HorizonExceeded if the amalgam base is too large.
[[nodiscard]] Amalgam sap_amalgamate(const BetaFn& beta, const NBetaSub& a, const Embedding& into_b,
                                     const Embedding& into_c);

/// The full-length distinguished tuple over the base in increasing atom order;
/// it generates the whole substructure. Throws PreconditionError on an empty base.
[[nodiscard]] NBetaElement single_generator(const NBetaSub& sub);

/// Explicit tables for the substructure over `base`: symbols s, c, p0, p1 (unary), a (binary).
struct Materialized {
    StructurePtr structure;
    std::vector<NBetaElement> elements;  // element i of the structure
    std::map<NBetaElement, ElemId> index;

    [[nodiscard]] ElemId id_of(const NBetaElement& e) const { return index.at(e); }
};

/// Throws CapExceeded if the carrier has more than `cap` elements.
[[nodiscard]] Materialized materialize(const BetaFn& beta, const FiniteSet& base,
                                       std::size_t cap = 4096);

/// Signature {s, c, p0, p1, a} shared by every materialized fragment.
[[nodiscard]] const Signature& nbeta_signature();

}  // namespace sunflower
