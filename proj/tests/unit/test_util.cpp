#include <doctest.h>

#include <filesystem>
#include <random>

#include "otk/config.hpp"
#include "otk/util.hpp"

using namespace otk;

TEST_SUITE("util") {

TEST_CASE("fnv1a64 and hex64 are stable") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xdeadbeefULL) == "00000000deadbeef");
    CHECK(fnv1a64("abc") != fnv1a64("acb"));
}

TEST_CASE("combined_hash separates boundaries") {
    CHECK(combined_hash({"ab", "c"}) != combined_hash({"a", "bc"}));
}

TEST_CASE("derive_seed is deterministic and label-sensitive") {
    CHECK(derive_seed(1, "x") == derive_seed(1, "x"));
    CHECK(derive_seed(1, "x") != derive_seed(2, "x"));
    CHECK(derive_seed(1, "x") != derive_seed(1, "y"));
}

TEST_CASE("uniform helpers stay in range") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto v = uniform_below(rng, 7);
        CHECK(v < 7);
    }
    CHECK_THROWS_AS(uniform_below(rng, 0), std::invalid_argument);

    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(uniform01(a) == uniform01(b));
}

TEST_CASE("bernoulli consumes one draw regardless of p") {
    std::mt19937_64 a(7), b(7);
    (void)bernoulli(a, 0.0);
    (void)bernoulli(b, 0.5);
    CHECK(a() == b());
}

TEST_CASE("string helpers") {
    CHECK(to_lower("AbC") == "abc");
    CHECK(contains_ci("Some ERROR happened", "error"));
    CHECK_FALSE(contains_ci("all good", "error"));
    CHECK(trim("  x \t") == "x");
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(format_fixed(1.23456, 3) == "1.235");
    CHECK(format_fixed(-7.894, 3) == "-7.894");
}

TEST_CASE("atomic_write_file writes and replaces") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("otk-util-" + hex64(fnv1a64("t")));
    fs::create_directories(dir);
    const fs::path file = dir / "out.txt";
    atomic_write_file(file, "first");
    CHECK(*read_file(file) == "first");
    atomic_write_file(file, "second");
    CHECK(*read_file(file) == "second");
    // No leftover temp files.
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++count;
    }
    CHECK(count == 1);
    fs::remove_all(dir);
}

TEST_CASE("key=value config parsing") {
    auto cfg = KeyValueConfig::parse(
        "# comment\n"
        "alpha = 1.5\n"
        "name= spaced value \n"
        "flag = true\n"
        "count = 12\n");
    CHECK(cfg.get_double("alpha", 0) == 1.5);
    CHECK(cfg.get("name", "") == "spaced value");
    CHECK(cfg.get_bool("flag", false));
    CHECK(cfg.get_int("count", 0) == 12);
    CHECK(cfg.get_int("missing", 7) == 7);
    CHECK_FALSE(cfg.get("missing").has_value());

    CHECK_THROWS_AS(KeyValueConfig::parse("novalue\n"), std::runtime_error);
    CHECK_THROWS_AS(cfg.get_double("name", 0), std::runtime_error);
    CHECK_THROWS_AS(cfg.get_bool("alpha", false), std::runtime_error);
}

}  // TEST_SUITE
