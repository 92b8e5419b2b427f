#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdaemon/config.hpp"
#include "qdaemon/csv.hpp"

using namespace qdaemon;

TEST_CASE("config parsing: comments, types, pi forms") {
    const std::string text =
        "# run configuration\n"
        "half_size = 124\n"
        "upsilon0 = 0.1\n"
        "kappa_R = pi/4\n"
        "kappa_D = pi\n"
        "omega = 16pi\n"
        "mirror = true\n"
        "betas = 0.5, 0.1, 0.005\n";
    const Config cfg = Config::parse_text(text, "test.cfg");
    CHECK(cfg.get_int("half_size") == 124);
    CHECK(cfg.get_real("upsilon0") == 0.1);
    CHECK(cfg.get_real("kappa_R") == pi / 4);
    CHECK(cfg.get_real("kappa_D") == pi);
    CHECK(cfg.get_real("omega") == 16 * pi);
    CHECK(cfg.get_bool("mirror", false));
    const auto betas = cfg.get_real_list("betas");
    REQUIRE(betas.size() == 3);
    CHECK(betas[1] == 0.1);
    CHECK(cfg.get_real("absent", 7.0) == 7.0);
}

TEST_CASE("config errors carry line numbers") {
    try {
        Config::parse_text("a = 1\nnot a pair\n", "bad.cfg");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
    }
    try {
        const Config cfg = Config::parse_text("x = twelve\n", "bad2.cfg");
        cfg.get_real("x");
        FAIL("expected a type error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad2.cfg:1") != std::string::npos);
    }
    CHECK_THROWS_AS(Config::parse_text("k = 1\nk = 2\n"), ConfigError);
}

TEST_CASE("unused keys are reported") {
    const Config cfg = Config::parse_text("a = 1\nb = 2\n");
    (void)cfg.get_real("a");
    const auto unused = cfg.unused_keys();
    REQUIRE(unused.size() == 1);
    CHECK(unused[0] == "b");
}

TEST_CASE("canonical text is sorted and hash-stable") {
    const Config c1 = Config::parse_text("b = 2\na = 1\n");
    const Config c2 = Config::parse_text("a = 1\n# comment\nb = 2\n");
    CHECK(c1.canonical_text() == c2.canonical_text());
    CHECK(fnv1a(c1.canonical_text()) == fnv1a(c2.canonical_text()));
}

TEST_CASE("float formatting round-trips and is shortest") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(std::strtod(format_double(pi).c_str(), nullptr) == pi);
    CHECK(std::strtod(format_double(1e-300).c_str(), nullptr) == 1e-300);
}

TEST_CASE("csv quoting") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("csv writer emits deterministic bytes") {
    const std::string path = "test_csv_out.csv";
    auto write_once = [&]() {
        CsvWriter w(path);
        w.row({"tau", "value"});
        w.begin_row().col(0.25).col(3);
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string first = write_once();
    const std::string second = write_once();
    CHECK(first == second);
    CHECK(first == "tau,value\n0.25,3\n");
    std::remove(path.c_str());
}
