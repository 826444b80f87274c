#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>

#include "oracle.hpp"
#include "vdw/certificates.hpp"
#include "vdw/core.hpp"

using namespace vdw;

namespace {

// quadratic re-check of the period definition
int naive_period(const Coloring& c) {
    const int n = c.size();
    for (int p = 1; p < n; ++p) {
        bool ok = true;
        for (int i = 1; i + p <= n; ++i)
            if (c.at(i) != c.at(i + p)) {
                ok = false;
                break;
            }
        if (ok) return p;
    }
    return n;
}

}  // namespace

TEST_CASE("parse strips whitespace") {
    CHECK(parse_certificate("0011\n0011", 2) ==
          Coloring({0, 0, 1, 1, 0, 0, 1, 1}));
    CHECK(parse_certificate(" 0\t1 \r\n2", 3) == Coloring({0, 1, 2}));
}

TEST_CASE("parse maps letters to colors 10..35") {
    CHECK(parse_certificate("A", 11) == Coloring({10}));
    CHECK(parse_certificate("a", 11) == Coloring({10}));
    CHECK(parse_certificate("9AZ", 36) == Coloring({9, 10, 35}));
    CHECK(parse_certificate("z", 36) == Coloring({35}));
}

TEST_CASE("parse reports the offending offset") {
    // 'x' maps to color 33, far beyond r=2
    try {
        parse_certificate("0x1", 2);
        FAIL("expected ColorOutOfRangeError");
    } catch (const ColorOutOfRangeError& e) {
        CHECK(e.position() == 2);
        CHECK(e.color() == 33);
    }
    // '!' is not in the alphabet at all
    try {
        parse_certificate("00!1", 4);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    // offsets count whitespace
    try {
        parse_certificate("0 \n!", 4);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("parse rejects empty input and bad r") {
    CHECK_THROWS_AS(parse_certificate("", 2), ParseError);
    CHECK_THROWS_AS(parse_certificate(" \n\t", 2), ParseError);
    CHECK_THROWS_AS(parse_certificate("0", 0), InvalidParameterError);
    CHECK_THROWS_AS(parse_certificate("0", 37), InvalidParameterError);
}

TEST_CASE("format basics") {
    CHECK(format_certificate(Coloring({0, 1, 10}), 80) == "01A");
    CHECK(format_certificate(Coloring({0, 0, 1, 1, 0}), 4) == "0011\n0");
    CHECK(format_certificate(Coloring({0, 1, 2, 3}), 2) == "01\n23");
    CHECK(format_certificate(Coloring({0, 1}), 2) == "01");  // no trailing break
    CHECK_THROWS_AS(format_certificate(Coloring({36}), 80), ColorOutOfRangeError);
    CHECK_THROWS_AS(format_certificate(Coloring({0}), 0), InvalidParameterError);
}

TEST_CASE("format then parse is the identity") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> pick_n(1, 120);
    std::uniform_int_distribution<int> pick_r(1, 36);
    std::uniform_int_distribution<int> pick_w(1, 100);
    for (int iter = 0; iter < 200; ++iter) {
        const int r = pick_r(rng);
        auto c = oracle::random_coloring(rng, pick_n(rng), r);
        const int width = pick_w(rng);
        CHECK(parse_certificate(format_certificate(c, width), r) == c);
    }
}

TEST_CASE("detect_period on small sequences") {
    CHECK(detect_period(Coloring({0, 1, 0, 1})) == 2);
    CHECK(detect_period(Coloring({0, 0, 1, 1})) == 4);
    CHECK(detect_period(Coloring({0})) == 1);
    CHECK(detect_period(Coloring({0, 0, 0})) == 1);
    CHECK(detect_period(Coloring({0, 0, 1, 0, 0, 1, 0})) == 3);
}

TEST_CASE("detect_period matches the quadratic definition") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = std::uniform_int_distribution<int>(1, 60)(rng);
        const int r = std::uniform_int_distribution<int>(1, 3)(rng);
        auto c = oracle::random_coloring(rng, n, r);
        CHECK(detect_period(c) == naive_period(c));
    }
}

TEST_CASE("unroll repeats the block") {
    CHECK(unroll(Coloring({0, 1}), 5) == Coloring({0, 1, 0, 1, 0}));
    CHECK(unroll(Coloring({0, 0, 1}), 7) == Coloring({0, 0, 1, 0, 0, 1, 0}));
    CHECK(detect_period(unroll(Coloring({0, 0, 1}), 7)) == 3);
    Coloring block({2, 0, 1, 1});
    CHECK(unroll(block, block.size()) == block);
    CHECK(unroll(Coloring({0, 1, 2}), 2) == Coloring({0, 1}));
    CHECK_THROWS_AS(unroll(Coloring(), 3), InvalidParameterError);
}

TEST_CASE("unrolled sequences never exceed the block period") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        const int p = std::uniform_int_distribution<int>(1, 12)(rng);
        auto block = oracle::random_coloring(rng, p, 3);
        const int n = p + std::uniform_int_distribution<int>(0, 50)(rng);
        CHECK(detect_period(unroll(block, n)) <= p);
    }
}

TEST_CASE("a reported period divides into aligned repeats") {
    std::mt19937_64 rng(1010);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = std::uniform_int_distribution<int>(2, 80)(rng);
        auto c = oracle::random_coloring(rng, n, 2);
        const int p = detect_period(c);
        if (p > n / 2) continue;
        for (int i = 1; i <= n; ++i)
            for (int m = 1; i + m * p <= n; ++m) CHECK(c.at(i) == c.at(i + m * p));
    }
}

TEST_CASE("comment lines are stripped before parsing") {
    CHECK(parse_certificate(strip_certificate_comments("# header\n0011\n# x\n"), 2) ==
          Coloring({0, 0, 1, 1}));
    // '#' only starts a comment at the beginning of a line
    CHECK_THROWS_AS(parse_certificate(strip_certificate_comments("00#11"), 2),
                    ParseError);
}

TEST_CASE("certificate files load through the comment filter") {
    const std::string path = "test_cert_tmp.txt";
    {
        std::ofstream out(path);
        out << "# W(2,3) sample\n0011\n0011\n";
    }
    CHECK(load_certificate_file(path, 2) == Coloring({0, 0, 1, 1, 0, 0, 1, 1}));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_certificate_file("does_not_exist.txt", 2), Error);
}

TEST_CASE("database metadata") {
    const auto& db = db_entries();
    REQUIRE(db.size() == 5);

    CHECK(db[0].name == "W(7,3)");
    CHECK(db[0].claimed_bound == 336);
    CHECK(db[0].old_bound == 273);
    CHECK(db[4].name == "W(11,3)");
    CHECK(db[4].num_colors == 11);
    CHECK(db[4].claimed_bound == 816);

    const int expected_r[] = {7, 8, 9, 10, 11};
    const int expected_claimed[] = {336, 449, 559, 701, 816};
    const int expected_old[] = {273, 354, 454, 592, 731};
    for (std::size_t i = 0; i < db.size(); ++i) {
        CHECK(db[i].num_colors == expected_r[i]);
        CHECK(db[i].ap_length == 3);
        CHECK(db[i].claimed_bound == expected_claimed[i]);
        CHECK(db[i].old_bound == expected_old[i]);
        CHECK(db[i].claimed_bound > db[i].old_bound);
        // every body parses under its own r and has the claimed length
        const Coloring c = parse_certificate(db[i].text, db[i].num_colors);
        CHECK(c.size() == db[i].claimed_bound);
    }
}

TEST_CASE("W(11,3) really uses the eleventh color symbol") {
    const auto& rec = db_entries()[4];
    const Coloring c = parse_certificate(rec.text, rec.num_colors);
    CHECK(c.max_color() == 10);
    CHECK(c.num_colors_used() == 11);
}

TEST_CASE("the W(7,3) body is two identical halves") {
    const Coloring c = parse_certificate(db_entries()[0].text, 7);
    REQUIRE(c.size() == 336);
    CHECK(detect_period(c) == 168);
    for (int i = 1; i <= 168; ++i) CHECK(c.at(i) == c.at(i + 168));
}
