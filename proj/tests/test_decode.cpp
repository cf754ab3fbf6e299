#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "graphcodes/decode.hpp"
#include "graphcodes/rng.hpp"

using namespace graphcodes;

namespace {

BitVec random_error(size_t n, size_t weight, SplitMix64& rng) {
    BitVec e(n);
    for (size_t placed = 0; placed < weight;) {
        size_t p = (size_t)rng.below(n);
        if (!e.get(p)) { e.set(p, true); ++placed; }
    }
    return e;
}

// reference sweep: same snapshot semantics, vertices visited in reverse
BitVec local_round_reversed(const GraphCode& c, const BitVec& u, uint32_t part, unsigned t) {
    BitVec out = u, lw(c.topology().degree());
    for (uint32_t v = c.topology().vertices_per_part(); v-- > 0;) {
        c.extract_local(u, part, v, lw);
        BitVec dec = c.local().bounded_distance_decode(lw, t);
        if (dec != lw) c.deposit_local(dec, part, v, out);
    }
    return out;
}

// the instance below is pinned: it reaches a non-codeword full-round fixed
// point, exercising the fixed_point stop
GraphCode looping_instance() {
    std::vector<uint32_t> id(14), p1 = {9, 13, 12, 2, 1, 8, 7, 10, 3, 5, 4, 0, 11, 6};
    std::iota(id.begin(), id.end(), 0u);
    return GraphCode(Hypergraph::from_maps(7, {id, p1}), BinaryLinearCode::hamming(3));
}

} // namespace

TEST_CASE("a part sweep leaves codewords alone") {
    GraphCode c(Hypergraph::sample(2, 4, 23, 5), BinaryLinearCode::golay23());
    for (uint64_t s = 0; s < 10; ++s) {
        BitVec w = c.random_codeword(s);
        CHECK(local_round(c, w, 0, 3) == w);
        CHECK(local_round(c, w, 1, 3) == w);
    }
}

TEST_CASE("a part sweep repairs errors isolated at its vertices") {
    GraphCode c(Hypergraph::sample(2, 6, 23, 8), BinaryLinearCode::golay23());
    SplitMix64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        BitVec w = c.random_codeword(rep);
        // at most 3 flips, all inside vertex v of part 0
        uint32_t v = (uint32_t)rng.below(6);
        BitVec y = w;
        const uint32_t* inc = c.topology().incident_ptr(0, v);
        for (int j = 0; j < 3; ++j) y.flip(inc[rng.below(23)]);
        CHECK(local_round(c, y, 0, 3) == w);
    }
}

TEST_CASE("sweep result is independent of vertex visiting order") {
    GraphCode c(Hypergraph::sample(2, 8, 7, 11), BinaryLinearCode::hamming(3));
    SplitMix64 rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        BitVec y(c.length());
        for (uint32_t i = 0; i < c.length(); ++i) y.set(i, rng.coin());
        for (uint32_t part = 0; part < 2; ++part)
            CHECK(local_round(c, y, part, 1) == local_round_reversed(c, y, part, 1));
    }
}

TEST_CASE("sweeps are idempotent") {
    GraphCode c(Hypergraph::sample(2, 5, 31, 2), BinaryLinearCode::bch_31_21());
    SplitMix64 rng(15);
    for (int rep = 0; rep < 15; ++rep) {
        BitVec y(c.length());
        for (uint32_t i = 0; i < c.length(); ++i) y.set(i, rng.coin());
        BitVec once = local_round(c, y, 0, 2);
        CHECK(local_round(c, once, 0, 2) == once);
    }
}

TEST_CASE("alternating decoder accepts codewords immediately") {
    GraphCode c(Hypergraph::sample(2, 10, 7, 4), BinaryLinearCode::hamming(3));
    BitVec w = c.random_codeword(9);
    auto res = algorithm_I(c, w);
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.stop == StopReason::codeword);
    CHECK(res.output == w);
}

TEST_CASE("alternating decoder fixes scattered errors and reports the path") {
    GraphCode c(Hypergraph::sample(2, 50, 23, 123), BinaryLinearCode::golay23());
    BitVec zero(c.length());
    SplitMix64 rng(9);
    BitVec y = random_error(c.length(), 12, rng);
    DecodeOptions opt;
    opt.t = 3;
    opt.transmitted = &zero;
    auto res = algorithm_I(c, y, opt);
    CHECK(res.converged);
    CHECK(res.stop == StopReason::codeword);
    CHECK(res.output == zero);
    REQUIRE(!res.trace.empty());
    // weights along the trace never grow on this contracting instance
    uint64_t prev = 12;
    for (const auto& e : res.trace) {
        CHECK(e.error_weight <= prev);
        prev = e.error_weight;
        CHECK(e.list_size == 1);
    }
    CHECK(res.trace.back().error_weight == 0);
    CHECK(res.trace.front().iteration == 1);
}

TEST_CASE("pinned non-codeword fixed point is detected") {
    GraphCode c = looping_instance();
    BitVec y = BitVec::from_indices(14, {0, 3, 7, 8});
    auto res = algorithm_I(c, y, {1, 0, nullptr});
    CHECK_FALSE(res.converged);
    CHECK(res.stop == StopReason::fixed_point);
    CHECK(res.iterations == 4);
    CHECK(res.output == BitVec::from_indices(14, {0, 1, 4, 7, 8, 9}));
}

TEST_CASE("iteration cap halts a non-converging run") {
    GraphCode c = looping_instance();
    BitVec y = BitVec::from_indices(14, {0, 3, 7, 8});
    DecodeOptions opt;
    opt.t = 1;
    opt.max_iters = 1;
    auto res = algorithm_I(c, y, opt);
    CHECK_FALSE(res.converged);
    CHECK(res.stop == StopReason::iteration_cap);
    CHECK(res.iterations == 1);
}

TEST_CASE("decoder is a pure function of its inputs") {
    GraphCode c1(Hypergraph::sample(2, 12, 7, 31), BinaryLinearCode::hamming(3));
    GraphCode c2(Hypergraph::sample(2, 12, 7, 31), BinaryLinearCode::hamming(3));
    SplitMix64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        BitVec y = random_error(c1.length(), 6, rng);
        auto a = algorithm_I(c1, y, {1, 0, nullptr});
        auto b = algorithm_I(c2, y, {1, 0, nullptr});
        CHECK(a.output == b.output);
        CHECK(a.iterations == b.iterations);
        CHECK(a.stop == b.stop);
    }
}

TEST_CASE("default iteration budget grows slowly with the graph") {
    CHECK(default_iteration_cap(2) == 12);
    CHECK(default_iteration_cap(1024) == 48);
    CHECK(default_iteration_cap(1) == default_iteration_cap(2));
}

TEST_CASE("good/bad split on hand-built instance") {
    // all three parts attach identically: vertex 0 owns edges 0..6, vertex 1 owns 7..13
    std::vector<uint32_t> id(14);
    std::iota(id.begin(), id.end(), 0u);
    GraphCode c(Hypergraph::from_maps(7, {id, id, id}), BinaryLinearCode::hamming(3));

    SUBCASE("no errors: everyone is good") {
        BitVec none(14);
        for (uint32_t p = 0; p < 3; ++p) {
            auto gb = good_bad_sets(c, none, p, 1);
            CHECK(gb.good == std::vector<uint32_t>{0, 1});
            CHECK(gb.bad.empty());
            CHECK(gb.errors_at_good == 0);
        }
    }
    SUBCASE("one error per vertex stays good at radius 1") {
        BitVec e = BitVec::from_indices(14, {0, 8});
        auto gb = good_bad_sets(c, e, 0, 1);
        CHECK(gb.good == std::vector<uint32_t>{0, 1});
        CHECK(gb.errors_at_good == 2);
        CHECK(gb.bad.empty());
    }
    SUBCASE("two errors at one vertex make it bad") {
        BitVec e = BitVec::from_indices(14, {0, 1});
        auto gb = good_bad_sets(c, e, 0, 1);
        CHECK(gb.good == std::vector<uint32_t>{1});
        CHECK(gb.bad == std::vector<uint32_t>{0}); // 2 >= d0 - t
        CHECK(gb.errors_at_good == 0);
    }
    SUBCASE("saturated error set marks every vertex bad") {
        BitVec e(14);
        for (uint32_t i = 0; i < 14; ++i) e.set(i, true);
        auto gb = good_bad_sets(c, e, 0, 1);
        CHECK(gb.good.empty());
        CHECK(gb.bad.size() == 2);
    }
}

TEST_CASE("middle-count vertices are neither good nor bad") {
    std::vector<uint32_t> id(23);
    std::iota(id.begin(), id.end(), 0u);
    GraphCode c(Hypergraph::from_maps(23, {id, id}), BinaryLinearCode::golay23());
    BitVec e = BitVec::from_indices(23, {0, 1, 2}); // with t=2: 2 < 3 < d0-t = 5
    auto gb = good_bad_sets(c, e, 0, 2);
    CHECK(gb.good.empty());
    CHECK(gb.bad.empty());
}

TEST_CASE("progress certificate predicts per-sweep error reduction") {
    GraphCode c(Hypergraph::sample(2, 40, 23, 71), BinaryLinearCode::golay23());
    const double eps = 1.0 / c.length();
    SplitMix64 rng(19);
    BitVec err = random_error(c.length(), 10, rng);
    int guard = 0;
    while (err.any()) {
        REQUIRE(guard++ < 50);
        auto rc = reduction_check(c, err, 3, eps);
        REQUIRE(rc.holds);
        REQUIRE(rc.witness >= 0);
        uint64_t before = err.popcount();
        // transmitted is zero, so the word equals its error set
        err = local_round(c, err, (uint32_t)rc.witness, 3);
        CHECK(err.popcount() + (uint64_t)std::ceil(eps * c.length()) <= before);
    }
    CHECK(reduction_check(c, err, 3, 0.0).holds); // empty set: trivially holds
}

TEST_CASE("branching decoder recovers a single error on three parts") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        GraphCode c(Hypergraph::sample(3, 20, 7, seed), BinaryLinearCode::hamming(3));
        BitVec zero(c.length());
        BitVec y(c.length());
        y.set((size_t)(seed * 7 % c.length()), true);
        ListDecodeOptions opt;
        opt.t = 1;
        opt.rounds = 2;
        opt.transmitted = &zero;
        CandidateList lists;
        auto res = algorithm_II(c, y, opt, &lists);
        CHECK(res.converged);
        CHECK(res.stop == StopReason::codeword);
        CHECK(res.output == zero);
        REQUIRE(lists.pre_dedup.size() == 3);
        CHECK(lists.pre_dedup[0] == 1);
        for (size_t j = 1; j < lists.pre_dedup.size(); ++j) {
            CHECK(lists.pre_dedup[j] == 3 * lists.rounds[j - 1].size());
            CHECK(lists.pre_dedup[j] <= (uint64_t)std::pow(3.0, (double)j) + 0.5);
            CHECK(lists.rounds[j].size() <= lists.pre_dedup[j]);
        }
    }
}

TEST_CASE("branching decoder handles multi-error patterns on four parts") {
    GraphCode c(Hypergraph::sample(4, 25, 23, 6), BinaryLinearCode::golay23());
    BitVec zero(c.length());
    SplitMix64 rng(2);
    BitVec y = random_error(c.length(), 8, rng);
    ListDecodeOptions opt;
    opt.t = 3;
    opt.rounds = 2;
    opt.transmitted = &zero;
    CandidateList lists;
    auto res = algorithm_II(c, y, opt, &lists);
    CHECK(res.converged);
    CHECK(res.output == zero);
    for (size_t j = 1; j < lists.pre_dedup.size(); ++j)
        CHECK(lists.pre_dedup[j] <= (uint64_t)std::pow(4.0, (double)j) + 0.5);
    REQUIRE(!res.trace.empty());
    for (const auto& e : res.trace) {
        CHECK(e.iteration >= 1);
        CHECK(e.iteration <= 2);
        CHECK(e.part < 4);
    }
}

TEST_CASE("branching decoder needs at least three parts") {
    GraphCode c(Hypergraph::sample(2, 4, 7, 0), BinaryLinearCode::hamming(3));
    CHECK_THROWS_AS((void)algorithm_II(c, BitVec(c.length()), {}), std::invalid_argument);
}

TEST_CASE("candidate selection prefers codewords, then distance, then order") {
    GraphCode c(Hypergraph::sample(2, 1, 3, 77), BinaryLinearCode::repetition(3));
    BitVec zero(3), ones(3);
    for (int i = 0; i < 3; ++i) ones.set(i, true);
    BitVec y = BitVec::from_indices(3, {0});

    CHECK(select_closest(c, {y}, y) == y);                // singleton: itself
    CHECK(select_closest(c, {y, zero}, y) == zero);       // codeword beats distance 0
    CHECK(select_closest(c, {ones, zero}, y) == zero);    // nearer codeword wins
    BitVec a = BitVec::from_indices(3, {1});
    BitVec b = BitVec::from_indices(3, {2});
    // two non-codewords, both at distance 2 from y: 001 sorts before 010
    CHECK(select_closest(c, {a, b}, y) == b);
    CHECK_THROWS_AS((void)select_closest(c, {}, y), std::invalid_argument);
}

TEST_CASE("selection tie between complement codewords goes to the smaller") {
    GraphCode c(Hypergraph::sample(2, 2, 7, 5), BinaryLinearCode::hamming(3));
    BitVec zero(c.length()), ones(c.length());
    for (uint32_t i = 0; i < c.length(); ++i) ones.set(i, true);
    REQUIRE(c.is_codeword(ones));
    SplitMix64 rng(4);
    BitVec y = random_error(c.length(), 7, rng); // equidistant from both
    CHECK(select_closest(c, {ones, zero}, y) == zero);
}
