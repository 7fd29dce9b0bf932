#include <doctest.h>

#include <algorithm>

#include "covmat/benchgen.hpp"
#include "covmat/reduct.hpp"
#include "oracles.hpp"
#include "support.hpp"

using covmat::BoolMatrix;
using covmat::CharKind;
using covmat::Covering;
using covmat::CoveringSystem;
using covmat::DecisionSystem;
using covmat::ProductPair;
using covmat::ReductReport;

namespace {

bool contains_reduct(const ReductReport& report, std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    return std::find(report.reducts.begin(), report.reducts.end(), names) !=
           report.reducts.end();
}

// Independent enumeration: characteristic matrices from the block-scan
// oracles, products from the int-loop references, minimality by scanning
// all matching subsets.
std::vector<std::vector<std::string>> brute_force_reducts(const DecisionSystem& s,
                                                          CharKind kind) {
    const std::size_t m = s.conditional.size();
    const CoveringSystem decision_only{s.universe, s.decision};
    const auto decision_ints =
        oracles::to_ints(covmat::family_matrix(s.decision, s.universe.size()));

    auto products_for = [&](unsigned mask) {
        CoveringSystem sub{s.universe, {}};
        for (std::size_t k = 0; k < m; ++k) {
            if (mask & (1U << k)) {
                sub.coverings.push_back(s.conditional[k]);
            }
        }
        const BoolMatrix characteristic = kind == CharKind::Type1
                                              ? oracles::comembership_oracle(sub)
                                              : oracles::neighborhood_oracle(sub);
        const auto ci = oracles::to_ints(characteristic);
        return std::make_pair(oracles::loop_bool_product(ci, decision_ints),
                              oracles::loop_odot_product(ci, decision_ints));
    };

    const auto reference = products_for((1U << m) - 1);
    std::vector<unsigned> matching;
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        if (products_for(mask) == reference) {
            matching.push_back(mask);
        }
    }
    std::vector<std::vector<std::string>> out;
    for (const unsigned mask : matching) {
        bool minimal = true;
        for (const unsigned other : matching) {
            if (other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        }
        if (!minimal) {
            continue;
        }
        std::vector<std::string> names;
        for (std::size_t k = 0; k < m; ++k) {
            if (mask & (1U << k)) {
                names.push_back(s.conditional[k].name);
            }
        }
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
    return out;
}

DecisionSystem random_decision_system(std::uint64_t seed) {
    covmat::GenSpec spec;
    spec.objects = 3 + seed % 6;
    spec.coverings = 2 + seed % 3;
    spec.blocks_per_covering = 1 + seed % std::min<std::size_t>(3, spec.objects);
    spec.extra_membership_prob = (seed % 4) / 6.0;
    spec.seed = seed * 5231 + 3;
    const CoveringSystem s = covmat::generate_system(spec);

    covmat::GenSpec dspec = spec;
    dspec.coverings = 1;
    dspec.blocks_per_covering = 1 + seed % 2;
    dspec.seed = seed * 911 + 77;
    CoveringSystem d = covmat::generate_system(dspec);
    d.coverings[0].name = "D";
    return {s.universe, s.coverings, d.coverings};
}

}  // namespace

TEST_CASE("type-1 decision products of the worked decision system") {
    const DecisionSystem s = support::example_decision();

    const std::size_t full[] = {0, 1, 2};
    const ProductPair whole = covmat::decision_products_t1(s, full);
    CHECK(whole.dot == BoolMatrix(5, 2, true));
    CHECK(whole.odot == BoolMatrix(5, 2));

    const std::size_t only_c1[] = {0};
    const ProductPair c1 = covmat::decision_products_t1(s, only_c1);
    CHECK(c1.dot == support::from_rows({"11", "11", "11", "11", "01"}));
    CHECK(c1.odot == support::from_rows({"00", "00", "00", "00", "01"}));

    const std::size_t only_c3[] = {2};
    const ProductPair c3 = covmat::decision_products_t1(s, only_c3);
    CHECK(c3.dot == support::from_rows({"11", "11", "01", "01", "11"}));
    CHECK(c3.odot == support::from_rows({"00", "00", "01", "01", "00"}));

    const std::size_t pair_c1c3[] = {0, 2};
    const ProductPair both = covmat::decision_products_t1(s, pair_c1c3);
    CHECK(both.dot == whole.dot);
    CHECK(both.odot == whole.odot);
}

TEST_CASE("type-2 decision products match the loop references") {
    const DecisionSystem s = support::example_decision();
    const auto decision_ints =
        oracles::to_ints(covmat::family_matrix(s.decision, s.universe.size()));

    const std::size_t full[] = {0, 1, 2};
    const ProductPair whole = covmat::decision_products_t2(s, full);
    const auto pi_ints = oracles::to_ints(support::block_matrix_5());
    CHECK(whole.dot ==
          oracles::from_ints(oracles::loop_bool_product(pi_ints, decision_ints)));
    CHECK(whole.odot ==
          oracles::from_ints(oracles::loop_odot_product(pi_ints, decision_ints)));

    const std::size_t only_c2[] = {1};
    const ProductPair c2 = covmat::decision_products_t2(s, only_c2);
    const CoveringSystem sub{s.universe, {s.conditional[1]}};
    const auto c2_ints = oracles::to_ints(oracles::neighborhood_oracle(sub));
    CHECK(c2.dot == oracles::from_ints(oracles::loop_bool_product(c2_ints, decision_ints)));
    CHECK(c2.odot ==
          oracles::from_ints(oracles::loop_odot_product(c2_ints, decision_ints)));

    CHECK_THROWS_AS(covmat::decision_products_t2(s, {}), std::invalid_argument);
    CHECK_THROWS_AS(covmat::decision_products_t1(s, {}), std::invalid_argument);
}

TEST_CASE("the worked decision system has the expected type-1 reduct") {
    const ReductReport report =
        covmat::find_reducts(support::example_decision(), CharKind::Type1);
    CHECK(contains_reduct(report, {"C1", "C3"}));
    CHECK(report.subsets_tested == 7);
    // The full family is preserved by definition and must not be minimal
    // when a proper subset already matches.
    CHECK_FALSE(contains_reduct(report, {"C1", "C2", "C3"}));
}

TEST_CASE("a single conditional covering is its own sole reduct") {
    DecisionSystem s = support::example_decision();
    s.conditional = {s.conditional[0]};
    const ReductReport report = covmat::find_reducts(s, CharKind::Type1);
    REQUIRE(report.reducts.size() == 1);
    CHECK(report.reducts[0] == std::vector<std::string>{"C1"});
    CHECK(report.subsets_tested == 1);
}

TEST_CASE("find_reducts matches brute force on both kinds") {
    const DecisionSystem example = support::example_decision();
    CHECK(covmat::find_reducts(example, CharKind::Type2).reducts ==
          brute_force_reducts(example, CharKind::Type2));
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const DecisionSystem s = random_decision_system(seed);
        CHECK(covmat::find_reducts(s, CharKind::Type1).reducts ==
              brute_force_reducts(s, CharKind::Type1));
        CHECK(covmat::find_reducts(s, CharKind::Type2).reducts ==
              brute_force_reducts(s, CharKind::Type2));
    }
}

TEST_CASE("reported reducts are independent of covering order") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DecisionSystem s = random_decision_system(seed);
        DecisionSystem reversed = s;
        std::reverse(reversed.conditional.begin(), reversed.conditional.end());
        CHECK(covmat::find_reducts(s, CharKind::Type1).reducts ==
              covmat::find_reducts(reversed, CharKind::Type1).reducts);
        CHECK(covmat::find_reducts(s, CharKind::Type2).reducts ==
              covmat::find_reducts(reversed, CharKind::Type2).reducts);
    }
}

TEST_CASE("the enumeration bound is enforced by name") {
    const DecisionSystem s = support::example_decision();
    CHECK_THROWS_WITH_AS(
        covmat::find_reducts(s, CharKind::Type1, 2),
        "reduct enumeration refused: 3 conditional coverings exceed the bound of 2",
        covmat::ReductBoundError);
}

TEST_CASE("recheck after adding the partition covering keeps the reduct") {
    const DecisionSystem s = support::example_decision();
    const ReductReport before = covmat::find_reducts(s, CharKind::Type1);
    REQUIRE(contains_reduct(before, {"C1", "C3"}));
    const ReductReport after = covmat::recheck_after_add(s, before, support::example_c4());
    CHECK(contains_reduct(after, {"C1", "C3"}));
    // Only the subsets involving the new covering were evaluated.
    CHECK(after.subsets_tested == 15);
    CHECK(after.subsets_evaluated == 8);
    // Reference products are unchanged: the type-1 matrix was already
    // saturated.
    CHECK(after.reference == before.reference);
}

TEST_CASE("recheck of an added duplicate keeps the reference products") {
    const DecisionSystem s = support::example_decision();
    const ReductReport before = covmat::find_reducts(s, CharKind::Type2);
    Covering duplicate = s.conditional[1];
    duplicate.name = "C2copy";
    const ReductReport after = covmat::recheck_after_add(s, before, duplicate);
    CHECK(after.reference == before.reference);
}

TEST_CASE("recheck equals a fresh enumeration on the extended system") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const DecisionSystem s = random_decision_system(seed);
        covmat::GenSpec extra;
        extra.objects = s.universe.size();
        extra.coverings = 1;
        extra.blocks_per_covering = 1 + seed % 2;
        extra.extra_membership_prob = 0.25;
        extra.seed = seed + 123456;
        Covering added = covmat::generate_system(extra).coverings[0];
        added.name = "Cnew";

        DecisionSystem extended = s;
        extended.conditional.push_back(added);

        for (const CharKind kind : {CharKind::Type1, CharKind::Type2}) {
            const ReductReport prior = covmat::find_reducts(s, kind);
            const ReductReport incremental = covmat::recheck_after_add(s, prior, added);
            const ReductReport fresh = covmat::find_reducts(extended, kind);
            CHECK(incremental.reducts == fresh.reducts);
            CHECK(incremental.reference == fresh.reference);
            CHECK(incremental.subsets_tested == fresh.subsets_tested);
        }
    }
}

TEST_CASE("recheck validates its inputs") {
    const DecisionSystem s = support::example_decision();
    const ReductReport report = covmat::find_reducts(s, CharKind::Type1);
    const Covering wrong{"W", {{0, 1}}};
    CHECK_THROWS_AS(covmat::recheck_after_add(s, report, wrong), std::invalid_argument);
    DecisionSystem other = s;
    other.conditional.pop_back();
    CHECK_THROWS_AS(covmat::recheck_after_add(other, report, support::example_c4()),
                    std::invalid_argument);
}
