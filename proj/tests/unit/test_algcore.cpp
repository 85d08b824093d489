#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "sunflower/algcore.hpp"
#include "sunflower/error.hpp"
#include "sunflower/flora.hpp"

using namespace sunflower;

namespace {

StructurePtr unary(std::vector<ElemId> f) {
    std::size_t n = f.size();
    return std::make_shared<const FinStructure>(Signature({{"f", 1}}), n,
                                                std::vector<std::vector<ElemId>>{std::move(f)});
}

StructurePtr random_structure(std::mt19937_64& rng, std::size_t n) {
    std::vector<ElemId> f(n), g(n * n);
    for (auto& v : f) v = static_cast<ElemId>(rng() % n);
    for (auto& v : g) v = static_cast<ElemId>(rng() % n);
    return std::make_shared<const FinStructure>(Signature({{"f", 1}, {"g", 2}}), n,
                                                std::vector<std::vector<ElemId>>{f, g});
}

// Brute force: try every bijection between the carriers.
std::size_t count_isos_brute(const GenSub& a, const GenSub& b) {
    if (a.size() != b.size()) return 0;
    std::vector<Atom> src(a.carrier().begin(), a.carrier().end());
    std::vector<Atom> dst(b.carrier().begin(), b.carrier().end());
    std::size_t count = 0;
    do {
        ElemMap m;
        for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = dst[i];
        if (is_isomorphism(a, b, m)) ++count;
    } while (std::next_permutation(dst.begin(), dst.end()));
    return count;
}

}  // namespace

TEST_CASE("structure tables are validated") {
    CHECK_THROWS_AS(unary({0, 3}), PreconditionError);
    CHECK_THROWS_AS(Signature({{"f", 1}, {"f", 2}}), PreconditionError);
    CHECK_THROWS_AS(Signature({{"h", 3}}), PreconditionError);
    CHECK_NOTHROW(unary({}));
}

TEST_CASE("closure of seeds") {
    auto m = build_mk_fragment({4, 3});
    CHECK(closure(m, {5}).carrier() == FiniteSet{4, 5, 6, 7});
    CHECK(closure(m, {0, 9}).carrier() == FiniteSet{0, 1, 2, 3, 8, 9, 10, 11});
    CHECK(closure(m, {}).carrier().empty());
    CHECK_THROWS_AS((void)closure(m, {12}), PreconditionError);
    CHECK(whole(m).size() == 12);

    auto g = std::make_shared<const FinStructure>(
        Signature({{"g", 2}}), 4, std::vector<std::vector<ElemId>>{{0, 2, 2, 3,  //
                                                                     2, 1, 3, 3,  //
                                                                     2, 3, 2, 3,  //
                                                                     3, 3, 3, 3}});
    CHECK(closure(g, {0}).carrier() == FiniteSet{0});
    CHECK(closure(g, {0, 1}).carrier() == FiniteSet{0, 1, 2, 3});
}

TEST_CASE("substructures of M_k fragments") {
    auto m = build_mk_fragment({4, 3});
    auto four = substructures_up_to(m, 4);
    CHECK_FALSE(four.truncated);
    REQUIRE(four.subs.size() == 4);
    CHECK(four.subs[0].carrier().empty());
    CHECK(four.subs[1].carrier() == FiniteSet{0, 1, 2, 3});
    CHECK(four.subs[3].carrier() == FiniteSet{8, 9, 10, 11});
    CHECK(substructures_up_to(m, 3).subs.size() == 1);
    CHECK(substructures_up_to(m, 0).subs.size() == 1);
    CHECK(substructures_up_to(m, 12).subs.size() == 8);
    CHECK(substructures_up_to(m, 12, 3).truncated);
}

TEST_CASE("substructures agree with brute force over subsets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng() % 6;
        auto m = random_structure(rng, n);
        std::set<FiniteSet> expect;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Atom> s;
            for (Atom x = 0; x < n; ++x)
                if (mask & (1u << x)) s.push_back(x);
            FiniteSet set(s);
            if (closure(m, set).carrier() == set && set.size() <= 4) expect.insert(set);
        }
        std::set<FiniteSet> got;
        for (auto& s : substructures_up_to(m, 4).subs) got.insert(s.carrier());
        CHECK(got == expect);
    }
}

TEST_CASE("isomorphisms between cycles") {
    auto m = build_mk_fragment({4, 2});
    GenSub a(m, {0, 1, 2, 3}), b(m, {4, 5, 6, 7});
    auto isos = all_isomorphisms(a, b);
    CHECK(isos.size() == 4);
    for (auto& iso : isos) CHECK(is_isomorphism(a, b, iso));
    auto forced = find_isomorphism(a, b, {{1, 6}});
    REQUIRE(forced);
    CHECK(forced->at(0) == 5);
    CHECK(forced->at(3) == 4);
    CHECK_FALSE(find_isomorphism(a, GenSub(m, {})));
    CHECK(all_isomorphisms(GenSub(m, {}), GenSub(m, {})).size() == 1);

    auto other = build_mk_fragment({3, 1});
    CHECK_FALSE(find_isomorphism(a, whole(other)));
}

TEST_CASE("isomorphism search agrees with brute force") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + rng() % 6;
        auto m1 = random_structure(rng, n);
        // a relabelled copy half the time, an unrelated structure otherwise
        StructurePtr m2;
        if (trial % 2 == 0) {
            std::vector<ElemId> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<ElemId> f(n), g(n * n);
            for (ElemId x = 0; x < n; ++x) {
                f[perm[x]] = perm[m1->apply(0, x)];
                for (ElemId y = 0; y < n; ++y) g[perm[x] * n + perm[y]] = perm[m1->apply(1, x, y)];
            }
            m2 = std::make_shared<const FinStructure>(m1->signature(), n,
                                                      std::vector<std::vector<ElemId>>{f, g});
        } else {
            m2 = random_structure(rng, n);
        }
        auto a = whole(m1), b = whole(m2);
        std::size_t brute = count_isos_brute(a, b);
        CHECK(all_isomorphisms(a, b).size() == brute);
        CHECK(find_isomorphism(a, b).has_value() == (brute > 0));
        if (trial % 2 == 0) CHECK(brute > 0);
    }
}

TEST_CASE("isomorphisms compose and invert") {
    auto m = build_mk_fragment({3, 3});
    GenSub a(m, {0, 1, 2}), b(m, {3, 4, 5}), c(m, {6, 7, 8});
    for (auto& ab : all_isomorphisms(a, b))
        for (auto& bc : all_isomorphisms(b, c)) {
            ElemMap ac, ba;
            for (auto [x, y] : ab) {
                ac[x] = bc.at(y);
                ba[y] = x;
            }
            CHECK(is_isomorphism(a, c, ac));
            CHECK(is_isomorphism(b, a, ba));
        }
}

TEST_CASE("uniform versus strongly uniform") {
    // 0 -> 1 -> 1, 2 -> 2, 3 -> 4 -> 4
    auto m = unary({1, 1, 2, 4, 4});
    std::vector<GenSub> fam{GenSub(m, {0, 1, 2}), GenSub(m, {1, 3, 4})};
    CHECK(is_uniform(fam));
    CHECK_FALSE(is_strongly_uniform(fam));

    auto cycles = build_mk_fragment({3, 3});
    std::vector<GenSub> disjoint{GenSub(cycles, {0, 1, 2}), GenSub(cycles, {3, 4, 5}),
                                 GenSub(cycles, {6, 7, 8})};
    CHECK(is_uniform(disjoint));
    CHECK(is_strongly_uniform(disjoint));

    std::vector<GenSub> mixed{GenSub(m, {2}), GenSub(m, {1, 0})};
    CHECK_FALSE(is_uniform(mixed));
}

TEST_CASE("extension check") {
    auto good = extension_check(build_mk_fragment({4, 3}), 4);
    CHECK(good.failures.empty());
    CHECK(good.substructures == 4);
    CHECK(good.isomorphisms_checked == 1 + 9 * 4);
    CHECK_FALSE(good.truncated);

    // fixed points 0 and 2, with 1 -> 0: sigma {0}->{2} cannot extend
    auto bad = unary({0, 0, 2});
    auto report = extension_check(bad, 3);
    CHECK_FALSE(report.failures.empty());
    bool found = std::any_of(report.failures.begin(), report.failures.end(), [](const NonExtending& f) {
        return f.from == FiniteSet{0} && f.to == FiniteSet{2};
    });
    CHECK(found);

    auto empty = extension_check(unary({}), 2);
    CHECK(empty.failures.empty());
    CHECK(empty.substructures == 1);
    CHECK(empty.isomorphisms_checked == 1);
}
