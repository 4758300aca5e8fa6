#include <doctest.h>

#include "otk/registry.hpp"

using namespace otk;
using registry::GroupAxis;
using registry::Registry;

#ifndef OTK_DATA_DIR
#define OTK_DATA_DIR "data"
#endif

namespace {

const char* kSmallRegistry =
    "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
    "alpha-7B\tAlpha\tfalse\t7\t128\tfalse\t-\n"
    "alpha-14B\tAlpha\tfalse\t14\t128\tfalse\t-\n"
    "alpha-32B\tAlpha\tfalse\t32\t128\tfalse\t-\n"
    "beta-32B\tBeta\ttrue\t32\t128\ttrue\thigh\n"
    "gamma\tGamma\ttrue\t-\t200\ttrue\tlow\n";

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("default registry transcribes the model roster") {
    auto reg = Registry::load(std::string(OTK_DATA_DIR) + "/registry.tsv");
    REQUIRE_FALSE(reg.empty());

    const auto* r1 = reg.find("DeepSeek-R1");
    REQUIRE(r1 != nullptr);
    CHECK(r1->reasoning);
    CHECK(*r1->params_b == 671.0);
    CHECK_FALSE(r1->function_calling);
    CHECK(r1->family == "DS-R1");

    const auto* sonnet = reg.find("Claude-3.5-Sonnet");
    REQUIRE(sonnet != nullptr);
    CHECK(sonnet->function_calling);
    CHECK(*sonnet->context_k == 200);
    CHECK_FALSE(sonnet->reasoning);
    CHECK_FALSE(sonnet->params_b.has_value());

    const auto* o1_high = reg.find("o1_high");
    REQUIRE(o1_high != nullptr);
    CHECK(*o1_high->reasoning_effort == "high");
}

TEST_CASE("empty registry file parses to an empty roster") {
    auto reg = Registry::parse("");
    CHECK(reg.empty());
}

TEST_CASE("duplicate and malformed rows are rejected") {
    const std::string dup =
        "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
        "m\tF\tfalse\t-\t-\tfalse\t-\n"
        "m\tF\tfalse\t-\t-\tfalse\t-\n";
    CHECK_THROWS_AS(Registry::parse(dup), std::runtime_error);

    const std::string short_row =
        "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
        "m\tF\tfalse\n";
    CHECK_THROWS_AS(Registry::parse(short_row), std::runtime_error);

    const std::string bad_bool =
        "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
        "m\tF\tmaybe\t-\t-\tfalse\t-\n";
    CHECK_THROWS_AS(Registry::parse(bad_bool), std::runtime_error);
}

TEST_CASE("group_indices partitions by reasoning") {
    auto reg = Registry::parse(kSmallRegistry);
    std::vector<std::string> ids{"alpha-7B", "beta-32B", "alpha-14B", "gamma", "alpha-7B"};
    auto groups = registry::group_indices(ids, reg, GroupAxis::reasoning);
    REQUIRE(groups.size() == 2);
    CHECK(groups.at("non-reasoning").size() == 3);
    CHECK(groups.at("reasoning").size() == 2);

    // Partition: disjoint and exhaustive.
    std::size_t total = 0;
    std::vector<bool> seen(ids.size(), false);
    for (const auto& [label, indices] : groups) {
        for (auto i : indices) {
            CHECK_FALSE(seen[i]);
            seen[i] = true;
            ++total;
        }
    }
    CHECK(total == ids.size());
}

TEST_CASE("group_indices supports every axis as a partition") {
    auto reg = Registry::parse(kSmallRegistry);
    std::vector<std::string> ids{"alpha-7B", "alpha-14B", "alpha-32B", "beta-32B", "gamma"};
    for (auto axis : {GroupAxis::reasoning, GroupAxis::family, GroupAxis::size_bucket,
                      GroupAxis::function_calling, GroupAxis::reasoning_effort}) {
        auto groups = registry::group_indices(ids, reg, axis);
        std::size_t total = 0;
        for (const auto& [label, indices] : groups) total += indices.size();
        CHECK(total == ids.size());
    }
}

TEST_CASE("size buckets split at the configured boundary") {
    auto reg = Registry::parse(kSmallRegistry);
    std::vector<std::string> ids{"alpha-7B", "alpha-14B", "alpha-32B"};
    auto groups = registry::group_indices(ids, reg, GroupAxis::size_bucket);
    REQUIRE(groups.count("<=14B") == 1);
    REQUIRE(groups.count(">14B") == 1);
    CHECK(groups.at("<=14B").size() == 2);  // 7B and 14B
    CHECK(groups.at(">14B").size() == 1);   // 32B

    // Models without a parameter count go to an explicit leftover bucket.
    std::vector<std::string> with_closed{"alpha-7B", "gamma"};
    auto g2 = registry::group_indices(with_closed, reg, GroupAxis::size_bucket);
    CHECK(g2.count("unknown-size") == 1);
}

TEST_CASE("unknown model ids are listed in the error") {
    auto reg = Registry::parse(kSmallRegistry);
    std::vector<std::string> ids{"alpha-7B", "mystery-1", "mystery-2"};
    CHECK_THROWS_WITH_AS(registry::group_indices(ids, reg, GroupAxis::reasoning),
                         doctest::Contains("mystery-1"), std::runtime_error);
}

TEST_CASE("family axis matches the roster families") {
    auto reg = Registry::parse(kSmallRegistry);
    std::vector<std::string> ids{"alpha-7B", "beta-32B", "alpha-32B"};
    auto groups = registry::group_indices(ids, reg, GroupAxis::family);
    CHECK(groups.at("Alpha").size() == 2);
    CHECK(groups.at("Beta").size() == 1);
}

TEST_CASE("axis names round-trip") {
    for (auto axis : {GroupAxis::reasoning, GroupAxis::family, GroupAxis::size_bucket,
                      GroupAxis::function_calling, GroupAxis::reasoning_effort}) {
        auto parsed = registry::axis_from_string(registry::to_string(axis));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == axis);
    }
    CHECK_FALSE(registry::axis_from_string("bogus").has_value());
}

}  // TEST_SUITE
