#pragma once

// Seeded invariant suites and the experiment report: everything the `verify`
// and `report` subcommands print, as plain data with a text and a JSON form.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sunflower/bounds.hpp"
#include "sunflower/io.hpp"
#include "sunflower/sfsearch.hpp"

namespace sunflower {

struct CheckTally {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    io::Json counterexample = nullptr;  // first failing case
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    io::Json parameters;
    std::vector<CheckTally> checks;
    std::vector<std::string> notices;  // truncations and other caveats

    [[nodiscard]] bool ok() const;
    [[nodiscard]] std::string table() const;
    [[nodiscard]] io::Json to_json() const;
};

struct InvariantParams {
    std::size_t cases = 300;
};

/// Set-level invariants: sunflower predicate, padding, greedy finder, bounds arithmetic.
[[nodiscard]] SuiteReport run_invariant_suite(const InvariantParams& params, std::uint64_t seed);

struct PropositionParams {
    std::size_t k_min = 2;
    std::size_t k_max = 6;
    std::size_t copies = 8;
    std::size_t n_max = 5;
};

/// Families of substructures of M_k fragments: every n distinct size-k members
/// form a sunflower with empty core and the empirical SF equals n.
[[nodiscard]] SuiteReport run_proposition_suite(const PropositionParams& params);

struct TheoremParams {
    std::vector<std::uint64_t> beta{3, 4, 5};
    std::size_t max_base = 3;
    std::size_t universe = 6;
    std::size_t cases = 1000;
    std::size_t max_family = 4;
};

/// The eight N_beta invariants over seeded random families of substructures.
[[nodiscard]] SuiteReport run_theorem_suite(const TheoremParams& params, std::uint64_t seed);

/// Every 3 members of the chain base {0} < {0,1} < ... of `length` one-generated
/// substructures, checked exhaustively: none is a sunflower.
[[nodiscard]] CheckTally chain_sunflower_check(const BetaFn& beta, std::size_t length);

/// Exact SF values, memoized in memory and optionally as certificate files.
/// A certificate read from disk is re-checked before it is trusted.
class SfTable {
public:
    explicit SfTable(SearchBudget budget, std::optional<std::filesystem::path> dir = std::nullopt);

    struct Entry {
        io::SfCertificate certificate;
        std::optional<std::filesystem::path> path;
    };

    const Entry& get(std::size_t n, std::size_t k);

    /// Certificate directory from SUNFLOWER_CACHE_DIR, if set.
    [[nodiscard]] static std::optional<std::filesystem::path> env_dir();

private:
    SearchBudget budget_;
    std::optional<std::filesystem::path> dir_;
    std::map<std::pair<std::size_t, std::size_t>, Entry> memo_;
};

/// Re-checks a certificate: the extremal family is distinct, within shape, of
/// size value - 1 and free of n-sunflowers. Exactness itself is not re-proved.
[[nodiscard]] bool certificate_consistent(const io::SfCertificate& cert);

/// SF over substructures of N_beta of size at most k, reduced to sets: those
/// substructures are exactly the ones over bases of at most `base_bound` atoms,
/// the largest m with gamma(m) <= k. When only the empty substructure
/// qualifies no family of two or more members exists and the value is n.
struct NBetaCell {
    std::size_t n = 0;
    std::uint64_t k = 0;
    std::size_t base_bound = 0;
    std::size_t value = 0;
    bool exact = false;
    std::optional<std::filesystem::path> certificate;
    BigInt thm;      // alpha(k) (n-1)^alpha(k)
    BigInt derived;  // m! (n-1)^(m!), m = gamma_circ(k)
};

[[nodiscard]] std::size_t largest_base_within(const BetaFn& beta, std::uint64_t k);
[[nodiscard]] NBetaCell nbeta_cell(const BetaFn& beta, const MonotoneMap& alpha, std::size_t n,
                                   std::uint64_t k, SfTable& table);

struct ReportParams {
    std::string alpha = "k+3";
    std::uint64_t checked_k = 10000;
    std::vector<std::size_t> ns{2, 3};
    std::optional<std::uint64_t> k_max;  // defaults to gamma(2)
    std::vector<std::pair<std::size_t, std::size_t>> exact_cells{
        {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {4, 1}, {5, 1}, {6, 1}};
};

struct ExperimentReport {
    io::Json parameters;
    BetaCertificate beta_certificate;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, SfTable::Entry>> exact;
    std::vector<NBetaCell> cells;

    [[nodiscard]] std::string table() const;
    [[nodiscard]] io::Json to_json() const;
    /// Every cell within both bounds and every exact value consistent.
    [[nodiscard]] bool ok() const;
};

[[nodiscard]] ExperimentReport run_report(const ReportParams& params, SfTable& table);

}  // namespace sunflower
