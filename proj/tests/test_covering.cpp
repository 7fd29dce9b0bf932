#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "covmat/benchgen.hpp"
#include "covmat/covering.hpp"
#include "oracles.hpp"
#include "support.hpp"

using covmat::BoolMatrix;
using covmat::Covering;
using covmat::CoveringSystem;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(COVMAT_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_rule(const std::vector<covmat::Violation>& violations, const std::string& rule) {
    for (const auto& v : violations) {
        if (v.rule == rule) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("validate accepts the example system") {
    CHECK(covmat::validate(support::example_system()).empty());
    CHECK(covmat::validate(support::example_system_plus()).empty());
}

TEST_CASE("validate reports an uncovered object") {
    CoveringSystem s;
    s.universe.labels = {"x1", "x2", "x3"};
    s.coverings = {{"C1", {{0}, {1}}}};
    const auto violations = covmat::validate(s);
    REQUIRE_FALSE(violations.empty());
    CHECK(has_rule(violations, "union != universe"));
}

TEST_CASE("validate reports an empty block") {
    CoveringSystem s;
    s.universe.labels = {"x1", "x2"};
    s.coverings = {{"C1", {{0, 1}, {}}}};
    const auto violations = covmat::validate(s);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "empty block");
    CHECK(violations[0].covering == "C1");
    CHECK(violations[0].block == 1);
}

TEST_CASE("validate reports duplicate covering names and bad indices") {
    CoveringSystem s;
    s.universe.labels = {"x1", "x2"};
    s.coverings = {{"C1", {{0, 1}}}, {"C1", {{0, 1, 7}}}};
    const auto violations = covmat::validate(s);
    CHECK(has_rule(violations, "duplicate covering name"));
    CHECK(has_rule(violations, "index out of range"));
}

TEST_CASE("covering_matrix lays blocks out as columns") {
    CHECK(covmat::covering_matrix(support::example_c4(), 5) ==
          support::from_rows({"100", "100", "010", "010", "001"}));
    // A single universal block gives one all-ones column.
    CHECK(covmat::covering_matrix({"U", {{0, 1, 2}}}, 3) == BoolMatrix(3, 1, true));
    // Singleton blocks give a column permutation of the identity.
    const Covering singletons{"S", {{1}, {0}, {2}}};
    CHECK(covmat::covering_matrix(singletons, 3) ==
          support::from_rows({"010", "100", "001"}));
}

TEST_CASE("system_matrix concatenates covering matrices in order") {
    const CoveringSystem s = support::example_system();
    const BoolMatrix m = covmat::system_matrix(s);
    CHECK(m == support::from_rows({"101010", "101010", "100101", "100101", "010110"}));

    // One covering: identical to its own matrix.
    CoveringSystem single{s.universe, {s.coverings[0]}};
    CHECK(covmat::system_matrix(single) == covmat::covering_matrix(s.coverings[0], 5));
}

TEST_CASE("system_matrix column count is the total block count") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        covmat::GenSpec spec;
        spec.objects = 4 + seed % 9;
        spec.coverings = 1 + seed % 4;
        spec.blocks_per_covering = 1 + seed % 3;
        spec.extra_membership_prob = 0.2;
        spec.seed = seed;
        const CoveringSystem s = covmat::generate_system(spec);
        std::size_t blocks = 0;
        for (const auto& c : s.coverings) {
            blocks += c.blocks.size();
        }
        CHECK(covmat::system_matrix(s).cols() == blocks);
        CHECK(covmat::system_matrix(s).rows() == s.universe.size());
    }
}

TEST_CASE("subsystem keeps the selected coverings in order") {
    const CoveringSystem s = support::example_system();
    const std::size_t keep12[] = {0, 1};
    const CoveringSystem d1 = covmat::subsystem(s, keep12);
    REQUIRE(d1.coverings.size() == 2);
    CHECK(d1.coverings[0].name == "C1");
    CHECK(d1.coverings[1].name == "C2");

    const std::size_t keep13[] = {0, 2};
    const CoveringSystem d2 = covmat::subsystem(s, keep13);
    CHECK(d2.coverings[1].name == "C3");

    const std::size_t all[] = {0, 1, 2};
    const CoveringSystem same = covmat::subsystem(s, all);
    CHECK(covmat::system_matrix(same) == covmat::system_matrix(s));

    const std::size_t bad[] = {3};
    CHECK_THROWS_AS(covmat::subsystem(s, bad), std::out_of_range);
    CHECK_THROWS_AS(covmat::subsystem(s, {}), std::invalid_argument);
}

TEST_CASE("subsystem matrices are column slices of the system matrix") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        covmat::GenSpec spec;
        spec.objects = 5 + seed % 6;
        spec.coverings = 2 + seed % 3;
        spec.blocks_per_covering = 2;
        spec.extra_membership_prob = 0.3;
        spec.seed = 100 + seed;
        const CoveringSystem s = covmat::generate_system(spec);
        const std::size_t keep[] = {0, s.coverings.size() - 1};
        const BoolMatrix sliced = covmat::system_matrix(covmat::subsystem(s, keep));
        const BoolMatrix whole = covmat::system_matrix(s);
        // Columns of the kept coverings, found by offset.
        std::size_t offset_last = 0;
        for (std::size_t k = 0; k + 1 < s.coverings.size(); ++k) {
            offset_last += s.coverings[k].blocks.size();
        }
        const std::size_t first_cols = s.coverings.front().blocks.size();
        const std::size_t last_cols = s.coverings.back().blocks.size();
        REQUIRE(sliced.cols() == first_cols + last_cols);
        for (std::size_t i = 0; i < whole.rows(); ++i) {
            for (std::size_t j = 0; j < first_cols; ++j) {
                CHECK(sliced.get(i, j) == whole.get(i, j));
            }
            for (std::size_t j = 0; j < last_cols; ++j) {
                CHECK(sliced.get(i, first_cols + j) == whole.get(i, offset_last + j));
            }
        }
    }
}

TEST_CASE("example fixture parses and round-trips structurally") {
    const std::string text = read_fixture("ex32.json");
    const covmat::SystemDocument doc = covmat::parse_system(text);
    CHECK(covmat::validate(doc.system).empty());
    CHECK(doc.system.universe.labels ==
          std::vector<std::string>{"x1", "x2", "x3", "x4", "x5"});
    REQUIRE(doc.system.coverings.size() == 3);
    CHECK_FALSE(doc.has_decision());
    // Equal as JSON values, i.e. equal up to whitespace.
    CHECK(nlohmann::json::parse(covmat::serialize(doc)) == nlohmann::json::parse(text));
}

TEST_CASE("decision fixture parses into a decision system") {
    const covmat::SystemDocument doc = covmat::parse_system(read_fixture("ex51.json"));
    REQUIRE(doc.has_decision());
    const covmat::DecisionSystem ds = doc.decision_system();
    CHECK(ds.conditional.size() == 3);
    REQUIRE(ds.decision.size() == 1);
    CHECK(ds.decision[0].blocks.size() == 2);
    CHECK(covmat::validate(ds).empty());
}

TEST_CASE("parse errors carry field context") {
    CHECK_THROWS_WITH_AS(covmat::parse_system(read_fixture("missing_universe.json")),
                         "missing \"universe\"", covmat::ParseError);
    CHECK_THROWS_AS(covmat::parse_system("{ not json"), covmat::ParseError);
    const std::string unknown_label = R"({
      "universe": ["x1", "x2"],
      "coverings": [ { "name": "C1", "blocks": [["x1", "x9"], ["x2"]] } ]
    })";
    CHECK_THROWS_WITH_AS(covmat::parse_system(unknown_label),
                         "coverings[0].blocks[0][1]: unknown object label \"x9\"",
                         covmat::ParseError);
    const std::string duplicate = R"({
      "universe": ["x1"],
      "coverings": [ { "name": "C1", "blocks": [[0]] },
                     { "name": "C1", "blocks": [[0]] } ]
    })";
    CHECK_THROWS_WITH_AS(covmat::parse_system(duplicate),
                         "coverings[1]: duplicate covering name \"C1\"", covmat::ParseError);
}

TEST_CASE("parse and serialize invert each other on generated systems") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        covmat::GenSpec spec;
        spec.objects = 3 + seed % 10;
        spec.coverings = 1 + seed % 4;
        spec.blocks_per_covering = 1 + seed % 3;
        spec.extra_membership_prob = (seed % 5) / 4.0;
        spec.seed = 500 + seed;
        const CoveringSystem s = covmat::generate_system(spec);
        const covmat::SystemDocument parsed = covmat::parse_system(covmat::serialize(s));
        CHECK(parsed.system.universe.labels == s.universe.labels);
        REQUIRE(parsed.system.coverings.size() == s.coverings.size());
        for (std::size_t k = 0; k < s.coverings.size(); ++k) {
            CHECK(parsed.system.coverings[k].name == s.coverings[k].name);
            CHECK(parsed.system.coverings[k].blocks == s.coverings[k].blocks);
        }
    }
}

TEST_CASE("standalone covering documents parse against a universe") {
    const covmat::Covering c4 =
        covmat::parse_covering(read_fixture("c4.json"), support::example_system().universe);
    CHECK(c4.name == "C4");
    CHECK(c4.blocks == support::example_c4().blocks);
    CHECK_THROWS_AS(
        covmat::parse_covering("{ \"name\": \"C\" }", support::example_system().universe),
        covmat::ParseError);
}
