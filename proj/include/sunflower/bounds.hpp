#pragma once

// Exact integer machinery: falling factorials, cycle-length sequences and the
// size function they induce, generalized inverses of monotone maps, the
// Erdos-Rado bound and the bound for the slow-growth structures, and
// synthesis of a cycle-length sequence from a target growth function.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sunflower {

using BigInt = boost::multiprecision::cpp_int;

[[nodiscard]] BigInt factorial(std::size_t n);

/// Number of repetition-free sequences of length k over n symbols: n(n-1)...(n-k+1).
[[nodiscard]] BigInt seqsize(std::size_t n, std::size_t k);

/// Strictly increasing cycle lengths beta(1) < beta(2) < ... < beta(H), beta(1) >= 3.
/// Index 0 is never used.
class BetaFn {
public:
    explicit BetaFn(std::vector<std::uint64_t> values);

    [[nodiscard]] std::size_t horizon() const noexcept { return values_.size(); }
    /// beta(m) for 1 <= m <= horizon(); throws HorizonExceeded otherwise.
    [[nodiscard]] std::uint64_t at(std::size_t m) const;
    [[nodiscard]] const std::vector<std::uint64_t>& values() const noexcept { return values_; }

    friend bool operator==(const BetaFn&, const BetaFn&) = default;

private:
    std::vector<std::uint64_t> values_;
};

/// Sum over 1 <= j <= m of seqsize(m, j) * beta(j): the number of elements of a
/// substructure whose base has m atoms.
[[nodiscard]] BigInt gamma(const BetaFn& beta, std::size_t m);

/// Least m <= horizon with gamma(beta, m) >= t. Throws HorizonExceeded past gamma(H).
[[nodiscard]] std::size_t gamma_circ(const BetaFn& beta, const BigInt& t);

/// A nondecreasing, divergent map from naturals to naturals.
///
/// Spec strings:
///   "affine:a,b"          a*k + b            (a >= 1)
///   "<a>k+<b>"            shorthand for affine, e.g. "k+3", "2k+3"
///   "poly:c0,c1,...,cd"   c0 + c1 k + ... + cd k^d   (cd >= 1, d >= 1)
///   "step:base,width,rise"  base + rise * floor(k / width)   (width, rise >= 1)
///   "table:v0,v1,...;slope=s"  v_k inside the table, then grows by s per step (s >= 1)
/// Maps that cannot diverge (zero slope, constant polynomial, flat table tail) are rejected.
class MonotoneMap {
public:
    static MonotoneMap parse(const std::string& spec);
    static MonotoneMap affine(std::uint64_t a, std::uint64_t b);
    static MonotoneMap step(std::uint64_t base, std::uint64_t width, std::uint64_t rise);
    static MonotoneMap table(std::vector<std::uint64_t> values, std::uint64_t slope);

    /// Value at k, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t operator()(std::uint64_t k) const;
    [[nodiscard]] const std::string& spec() const noexcept { return spec_; }

private:
    enum class Kind { Poly, Step, Table };
    MonotoneMap() = default;
    void check() const;

    Kind kind_ = Kind::Poly;
    std::vector<std::uint64_t> params_;
    std::uint64_t slope_ = 0;
    std::string spec_;
};

/// Least k with alpha(k) >= t. Throws HorizonExceeded if not reached below 2^48.
[[nodiscard]] std::uint64_t alpha_circ(const MonotoneMap& alpha, const BigInt& t);

/// k!(n-1)^k.
[[nodiscard]] BigInt er_bound(std::size_t n, std::size_t k);

/// alpha(k) * (n-1)^alpha(k).
[[nodiscard]] BigInt thm_bound(const MonotoneMap& alpha, std::size_t n, std::uint64_t k);

/// m! (n-1)^(m!) with m = gamma_circ(beta, k).
[[nodiscard]] BigInt derived_sf_bound(const BetaFn& beta, std::size_t n, std::uint64_t k);

struct BetaCertificate {
    std::string alpha;
    std::vector<std::uint64_t> beta;
    std::size_t horizon = 0;       // number of beta values
    std::uint64_t checked_k = 0;   // every k in [0, checked_k] was checked
    bool ok = false;
    std::optional<std::uint64_t> violating_k;
};

struct BetaSynthesis {
    BetaFn beta;
    BetaCertificate certificate;
};

/// Builds beta(m) = max(beta(m-1) + 1, alpha_circ(alpha, (m+1)!)), beta(1) >= 3,
/// until gamma reaches `checked_k`, then certifies (gamma_circ(beta, k))! <= alpha(k)
/// for all k <= checked_k with check_beta_certificate. Throws PreconditionError if
/// alpha(0) < 3 and Error if the certificate fails.
[[nodiscard]] BetaSynthesis synth_beta(const MonotoneMap& alpha, std::uint64_t checked_k);

/// Re-derives every quantity from the raw beta values and alpha alone (no use of
/// gamma, gamma_circ or the synthesizer) and returns the first k <= checked_k with
/// (least m such that size(m) >= k)! > alpha(k), if any.
[[nodiscard]] std::optional<std::uint64_t> check_beta_certificate(
    const MonotoneMap& alpha, const std::vector<std::uint64_t>& beta, std::uint64_t checked_k);

}  // namespace sunflower
