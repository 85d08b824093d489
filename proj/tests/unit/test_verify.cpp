#include <filesystem>

#include "doctest.h"
#include "sunflower/error.hpp"
#include "sunflower/verify.hpp"

using namespace sunflower;

TEST_CASE("invariant suite passes and is deterministic") {
    auto a = run_invariant_suite({60}, 4);
    auto b = run_invariant_suite({60}, 4);
    CHECK(a.ok());
    CHECK(a.table() == b.table());
    CHECK(a.to_json() == b.to_json());
    CHECK(a.checks.size() == 9);
    for (const auto& c : a.checks) CHECK(c.cases > 0);
}

TEST_CASE("proposition suite") {
    auto r = run_proposition_suite({2, 4, 6, 4});
    CHECK(r.ok());
    CHECK(r.notices.empty());
    REQUIRE(r.checks.size() == 3);
    CHECK(r.checks[2].cases == 3 * 3);
}

TEST_CASE("theorem suite") {
    TheoremParams p;
    p.cases = 60;
    auto r = run_theorem_suite(p, 9);
    CHECK(r.ok());
    CHECK(r.checks.size() == 8);
    for (const auto& c : r.checks) CHECK(c.cases > 0);
    CHECK(r.to_json() == run_theorem_suite(p, 9).to_json());
    p.max_base = 4;
    CHECK_THROWS_AS((void)run_theorem_suite(p, 0), PreconditionError);
}

TEST_CASE("suite failures carry a counterexample") {
    SuiteReport r{"x", 0, nullptr, {CheckTally{"c", 3, 1, io::Json{{"n", 2}}}}, {}};
    CHECK_FALSE(r.ok());
    CHECK(r.table().find("first counterexample: {\"n\":2}") != std::string::npos);
    CHECK(r.to_json()["ok"] == false);
}

TEST_CASE("chain of one-generated substructures") {
    auto t = chain_sunflower_check(BetaFn({3, 4, 5, 6, 7}), 5);
    CHECK(t.failures == 0);
    CHECK(t.cases == 5 + 10);
}

TEST_CASE("largest base within a size bound") {
    BetaFn beta({3, 4, 21});
    CHECK(largest_base_within(beta, 0) == 0);
    CHECK(largest_base_within(beta, 2) == 0);
    CHECK(largest_base_within(beta, 3) == 1);
    CHECK(largest_base_within(beta, 13) == 1);
    CHECK(largest_base_within(beta, 14) == 2);
    // gamma(3) = 9 + 24 + 126 = 159; any 4-atom base has more than 4! * 22 elements
    CHECK(largest_base_within(beta, 159) == 3);
    CHECK(largest_base_within(beta, 500) == 3);
    CHECK_THROWS_AS((void)largest_base_within(beta, 100000), HorizonExceeded);
}

TEST_CASE("certificate cache") {
    auto dir = std::filesystem::temp_directory_path() / "sunflower_cache_test";
    std::filesystem::remove_all(dir);
    SearchBudget budget;
    {
        SfTable table(budget, dir);
        const auto& e = table.get(3, 2);
        CHECK(e.certificate.value == 7);
        CHECK(e.certificate.exact);
        REQUIRE(e.path);
        CHECK(std::filesystem::exists(*e.path));
        CHECK(certificate_consistent(e.certificate));
    }
    {
        SfTable table(budget, dir);
        CHECK(table.get(3, 2).certificate.value == 7);
    }
    // a tampered certificate is rejected and recomputed
    io::SfCertificate bad{3, 2, 9, {{0}, {1}}, true};
    CHECK_FALSE(certificate_consistent(bad));
    io::write_json(dir / "sf_n3_k2.json", io::encode(bad));
    {
        SfTable table(budget, dir);
        CHECK(table.get(3, 2).certificate.value == 7);
    }
    CHECK(io::decode_sf_certificate(io::read_json(dir / "sf_n3_k2.json")).value == 7);
    std::filesystem::remove_all(dir);
}

TEST_CASE("N_beta cells") {
    SfTable table(SearchBudget{});
    BetaFn beta({3, 4, 21});
    auto alpha = MonotoneMap::parse("k+3");
    auto c = nbeta_cell(beta, alpha, 3, 14, table);
    CHECK(c.base_bound == 2);
    CHECK(c.value == 7);
    CHECK(c.exact);
    CHECK(c.derived == 8);
    CHECK(c.thm == BigInt(17) * BigInt(131072));
    auto low = nbeta_cell(beta, alpha, 3, 1, table);
    CHECK(low.base_bound == 0);
    CHECK(low.value == 3);
    CHECK(low.derived == 2);
}

TEST_CASE("experiment report") {
    SfTable table(SearchBudget{});
    ReportParams p;
    p.checked_k = 200;
    p.exact_cells = {{2, 1}, {3, 2}};
    auto r = run_report(p, table);
    CHECK(r.beta_certificate.ok);
    CHECK(r.cells.size() == 2 * 15);
    CHECK(r.exact.size() == 2);
    CHECK(r.to_json() == run_report(p, table).to_json());
    CHECK(r.table().find("derived = m! * (n-1)^(m!)") != std::string::npos);
}
