#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "graphcodes/linear_code.hpp"
#include "graphcodes/rng.hpp"

using namespace graphcodes;

namespace {

BitVec random_word(size_t n, SplitMix64& rng) {
    BitVec v(n);
    for (size_t i = 0; i < n; ++i) v.set(i, rng.coin());
    return v;
}

// distinct random positions
BitVec random_error(size_t n, size_t weight, SplitMix64& rng) {
    BitVec e(n);
    for (size_t placed = 0; placed < weight;) {
        size_t p = (size_t)rng.below(n);
        if (!e.get(p)) { e.set(p, true); ++placed; }
    }
    return e;
}

std::vector<BitVec> all_codewords(const BinaryLinearCode& c) {
    std::vector<BitVec> out;
    for (uint64_t m = 0; m < (1ull << c.k()); ++m) {
        BitVec msg(c.k());
        for (unsigned i = 0; i < c.k(); ++i) msg.set(i, (m >> i) & 1);
        out.push_back(c.encode(msg));
    }
    return out;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = "/tmp/" + name;
    std::ofstream f(path);
    f << body;
    return path;
}

} // namespace

TEST_CASE("length-7 single-error code: parameters and exhaustive decoding") {
    auto c = BinaryLinearCode::hamming(3);
    CHECK(c.n() == 7);
    CHECK(c.k() == 4);
    CHECK(c.d0() == 3);
    CHECK(c.t_max() == 1);
    CHECK(c.min_distance_bruteforce() == 3);

    auto words = all_codewords(c);
    REQUIRE(words.size() == 16);
    std::set<std::string> uniq;
    for (const auto& w : words) {
        CHECK(c.is_codeword(w));
        uniq.insert(w.to_string());
    }
    CHECK(uniq.size() == 16);

    // every codeword survives, every single bit flip is repaired
    for (const auto& w : words) {
        CHECK(c.bounded_distance_decode(w, 1) == w);
        for (unsigned p = 0; p < 7; ++p) {
            BitVec y = w;
            y.flip(p);
            CHECK(c.bounded_distance_decode(y, 1) == w);
        }
    }
}

TEST_CASE("syndrome of a unit vector is its 1-based position") {
    for (unsigned r : {3u, 4u, 5u}) {
        auto c = BinaryLinearCode::hamming(r);
        for (unsigned p = 0; p < c.n(); ++p) {
            BitVec e(c.n());
            e.set(p, true);
            CHECK(c.syndrome(e) == p + 1);
        }
    }
}

TEST_CASE("length-15 code corrects one error on every codeword") {
    auto c = BinaryLinearCode::hamming(4);
    CHECK(c.n() == 15);
    CHECK(c.k() == 11);
    CHECK(c.min_distance_bruteforce() == 3);
    auto words = all_codewords(c);
    for (const auto& w : words)
        for (unsigned p = 0; p < 15; ++p) {
            BitVec y = w;
            y.flip(p);
            CHECK(c.bounded_distance_decode(y, 1) == w);
        }
}

TEST_CASE("length-31 code, sampled messages") {
    auto c = BinaryLinearCode::hamming(5);
    CHECK(c.n() == 31);
    CHECK(c.k() == 26);
    SplitMix64 rng(555);
    for (int rep = 0; rep < 200; ++rep) {
        BitVec w = c.encode(random_word(26, rng));
        REQUIRE(c.is_codeword(w));
        BitVec y = w;
        y.flip((size_t)rng.below(31));
        CHECK(c.bounded_distance_decode(y, 1) == w);
    }
}

TEST_CASE("huge positional code skips stored tables yet round-trips") {
    auto c = BinaryLinearCode::hamming(16);
    CHECK(c.n() == 65535);
    CHECK(c.k() == 65519);
    CHECK_FALSE(c.generator_stored());
    CHECK(c.coset_leaders().empty());
    SplitMix64 rng(909);
    BitVec msg(c.k());
    for (int j = 0; j < 300; ++j) msg.set((size_t)rng.below(c.k()), true);
    BitVec w = c.encode(msg);
    REQUIRE(c.is_codeword(w));
    for (int rep = 0; rep < 25; ++rep) {
        size_t p = (size_t)rng.below(c.n());
        BitVec e(c.n());
        e.set(p, true);
        CHECK(c.syndrome(e) == p + 1);
        BitVec y = w;
        y.flip(p);
        CHECK(c.bounded_distance_decode(y, 1) == w);
    }
}

TEST_CASE("triple-error code of length 23") {
    auto c = BinaryLinearCode::golay23();
    CHECK(c.n() == 23);
    CHECK(c.k() == 12);
    CHECK(c.d0() == 7);
    CHECK(c.t_max() == 3);
    CHECK(c.min_distance_bruteforce() == 7);
    // perfect packing: every syndrome is reached by a weight <= 3 pattern
    CHECK(c.coset_leaders().size() == 2048);

    SplitMix64 rng(0xA1C0DE);
    int failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        BitVec w = c.encode(random_word(12, rng));
        size_t weight = trial % 4; // covers 0..3 uniformly
        BitVec y = w ^ random_error(23, weight, rng);
        if (c.bounded_distance_decode(y, 3) != w) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("weight-4 noise lands on a different codeword, still within radius") {
    auto c = BinaryLinearCode::golay23();
    SplitMix64 rng(61);
    for (int trial = 0; trial < 300; ++trial) {
        BitVec w = c.encode(random_word(12, rng));
        BitVec y = w ^ random_error(23, 4, rng);
        BitVec d = c.bounded_distance_decode(y, 3);
        CHECK(c.is_codeword(d));
        CHECK(hamming_distance(d, y) <= 3);
        CHECK(d != w);
    }
}

TEST_CASE("double-error code of length 31") {
    auto c = BinaryLinearCode::bch_31_21();
    CHECK(c.n() == 31);
    CHECK(c.k() == 21);
    CHECK(c.d0() == 5);
    CHECK(c.t_max() == 2);
    CHECK(c.min_distance_bruteforce() == 5);
    SplitMix64 rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        BitVec w = c.encode(random_word(21, rng));
        BitVec y = w ^ random_error(31, trial % 3, rng);
        CHECK(c.bounded_distance_decode(y, 2) == w);
    }
}

TEST_CASE("decoding is idempotent and bounded") {
    SplitMix64 rng(1234);
    auto check_code = [&](const BinaryLinearCode& c, unsigned t) {
        for (int rep = 0; rep < 400; ++rep) {
            BitVec y = random_word(c.n(), rng);
            BitVec d = c.bounded_distance_decode(y, t);
            // either untouched or a codeword within t
            if (d != y) {
                CHECK(c.is_codeword(d));
                CHECK(hamming_distance(d, y) <= t);
            }
            CHECK(c.bounded_distance_decode(d, t) == d);
        }
    };
    check_code(BinaryLinearCode::hamming(3), 1);
    check_code(BinaryLinearCode::golay23(), 3);
    check_code(BinaryLinearCode::golay23(), 2); // radius below t_max also legal
    check_code(BinaryLinearCode::bch_31_21(), 2);
}

TEST_CASE("radius above the guaranteed maximum is rejected") {
    auto c = BinaryLinearCode::hamming(3);
    BitVec y(7);
    CHECK_THROWS_AS((void)c.bounded_distance_decode(y, 2), std::invalid_argument);
    auto s = BinaryLinearCode::single_parity_check(8);
    CHECK_THROWS_AS((void)s.bounded_distance_decode(BitVec(8), 1), std::invalid_argument);
}

TEST_CASE("parity check code: parameters and zero-radius decode") {
    auto c = BinaryLinearCode::single_parity_check(8);
    CHECK(c.n() == 8);
    CHECK(c.k() == 7);
    CHECK(c.d0() == 2);
    CHECK(c.t_max() == 0);
    SplitMix64 rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        BitVec y = random_word(8, rng);
        CHECK(c.is_codeword(y) == (y.popcount() % 2 == 0));
        CHECK(c.bounded_distance_decode(y, 0) == y);
    }
}

TEST_CASE("repetition code decodes by majority") {
    auto c = BinaryLinearCode::repetition(5);
    CHECK(c.n() == 5);
    CHECK(c.k() == 1);
    CHECK(c.d0() == 5);
    CHECK(c.t_max() == 2);
    BitVec zero(5), ones(5);
    for (unsigned i = 0; i < 5; ++i) ones.set(i, true);
    BitVec one_msg(1);
    one_msg.set(0, true);
    CHECK(c.encode(BitVec(1)) == zero);
    CHECK(c.encode(one_msg) == ones);
    for (uint32_t mask = 0; mask < 32; ++mask) {
        BitVec y(5);
        for (unsigned i = 0; i < 5; ++i) y.set(i, (mask >> i) & 1);
        BitVec d = c.bounded_distance_decode(y, 2);
        CHECK(d == (y.popcount() <= 2 ? zero : ones));
    }
}

TEST_CASE("even-length repetition leaves balanced words alone") {
    auto c = BinaryLinearCode::repetition(4);
    CHECK(c.d0() == 4);
    CHECK(c.t_max() == 1);
    BitVec y = BitVec::from_indices(4, {0, 2});
    CHECK(c.bounded_distance_decode(y, 1) == y); // distance 2 to both codewords
    BitVec z = BitVec::from_indices(4, {3});
    CHECK_FALSE(c.bounded_distance_decode(z, 1).any());
}

TEST_CASE("generator rows encode unit messages") {
    for (const auto& c : {BinaryLinearCode::hamming(3), BinaryLinearCode::golay23(),
                          BinaryLinearCode::bch_31_21()}) {
        REQUIRE(c.generator_stored());
        for (unsigned i = 0; i < c.k(); ++i) {
            BitVec unit(c.k());
            unit.set(i, true);
            CHECK(c.encode(unit) == c.generator().row(i));
        }
    }
}

TEST_CASE("check matrix annihilates exactly the codewords") {
    auto c = BinaryLinearCode::bch_31_21();
    SplitMix64 rng(88);
    for (int rep = 0; rep < 500; ++rep) {
        BitVec y = random_word(31, rng);
        bool manual = !c.parity_check().mul(y).any();
        CHECK(c.is_codeword(y) == manual);
    }
}

TEST_CASE("loading a check matrix from text") {
    // [5,2] code: rows of H chosen so rank is 3
    std::string path = write_temp("gc_test_code.txt",
                                  "5 2\n"
                                  "11100\n"
                                  "00110\n"
                                  "10011\n");
    auto c = BinaryLinearCode::from_file(path);
    CHECK(c.n() == 5);
    CHECK(c.k() == 2);
    CHECK(c.min_distance_bruteforce() == c.d0());
    auto words = all_codewords(c);
    for (const auto& w : words) CHECK(c.is_codeword(w));
    std::remove(path.c_str());
}

TEST_CASE("full-space file code has distance 1 and no decoding radius") {
    std::string path = write_temp("gc_full_space.txt", "3 3\n");
    auto c = BinaryLinearCode::from_file(path);
    CHECK(c.n() == 3);
    CHECK(c.k() == 3);
    CHECK(c.d0() == 1);
    CHECK(c.t_max() == 0);
    BitVec y = BitVec::from_indices(3, {1});
    CHECK(c.is_codeword(y));
    CHECK(c.bounded_distance_decode(y, 0) == y);
    std::remove(path.c_str());
}

TEST_CASE("malformed code files are rejected") {
    auto expect_throw = [](const std::string& name, const std::string& body) {
        std::string path = write_temp(name, body);
        CHECK_THROWS_AS((void)BinaryLinearCode::from_file(path), std::invalid_argument);
        std::remove(path.c_str());
    };
    CHECK_THROWS_AS((void)BinaryLinearCode::from_file("/nonexistent/x"), std::invalid_argument);
    expect_throw("gc_bad1.txt", "");
    expect_throw("gc_bad2.txt", "x y\n");
    expect_throw("gc_bad3.txt", "5 2\n11100\n00110\n");           // missing row
    expect_throw("gc_bad4.txt", "5 2\n11100\n00110\n10a11\n");    // bad char
    expect_throw("gc_bad5.txt", "5 2\n11100\n11100\n00011\n");    // rank deficient
    expect_throw("gc_bad6.txt", "5 2\n111\n00110\n10011\n");      // short row
    expect_throw("gc_bad7.txt", "90 24\n");                       // k too large
}

TEST_CASE("out-of-range constructions are rejected") {
    CHECK_THROWS_AS((void)BinaryLinearCode::hamming(1), std::invalid_argument);
    CHECK_THROWS_AS((void)BinaryLinearCode::hamming(21), std::invalid_argument);
    CHECK_THROWS_AS((void)BinaryLinearCode::single_parity_check(1), std::invalid_argument);
    CHECK_THROWS_AS((void)BinaryLinearCode::single_parity_check(65), std::invalid_argument);
    CHECK_THROWS_AS((void)BinaryLinearCode::repetition(1), std::invalid_argument);
}
