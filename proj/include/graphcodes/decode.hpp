#pragma once

#include <cstdint>
#include <vector>

#include "graphcodes/graph_code.hpp"

namespace graphcodes {

struct TraceEntry {
    uint32_t iteration = 0;  // 1-based
    uint32_t part = 0;       // 0-based
    uint64_t error_weight = 0; // distance to transmitted after this step
    uint64_t list_size = 1;
};

enum class StopReason { codeword, fixed_point, two_cycle, iteration_cap };

struct DecodeResult {
    BitVec output;
    bool converged = false;  // is_codeword(output)
    uint32_t iterations = 0; // per-part rounds executed
    StopReason stop = StopReason::iteration_cap;
    std::vector<TraceEntry> trace; // filled only when a transmitted word is supplied
};

// ceil(4*log2(m)) + 8: enough rounds for the contracting regime to bottom
// out, small enough that looping instances terminate fast.
uint32_t default_iteration_cap(uint32_t m);

// One parallel sweep of part `part`: every vertex applies bounded-distance
// decoding with radius t to its local view of a snapshot of u. Vertices of
// one part touch disjoint positions, so the sweep order is irrelevant.
BitVec local_round(const GraphCode& c, const BitVec& u, uint32_t part, unsigned t);

struct DecodeOptions {
    unsigned t = 1;
    uint32_t max_iters = 0;               // 0: default cap
    const BitVec* transmitted = nullptr;  // enables trace
};

// Alternating left/right rounds on a bipartite graph code until the word is
// a codeword, a full round changes nothing, the round sequence enters a
// 2-cycle, or the cap is hit.
DecodeResult algorithm_I(const GraphCode& c, const BitVec& y, const DecodeOptions& opt = {});

struct CandidateList {
    std::vector<std::vector<BitVec>> rounds; // deduplicated list after each round
    std::vector<uint64_t> pre_dedup;         // candidates generated in the round
};

struct ListDecodeOptions {
    unsigned t = 1;
    uint32_t rounds = 2;                  // branching depth s
    uint32_t cleanup_max_iters = 0;
    const BitVec* transmitted = nullptr;
};

// Branching list decoder for l >= 3 parts: each round replaces every
// candidate by its l single-part decodes, dedups, and after `rounds` rounds
// cleans every candidate with algorithm_I on the restriction to parts 0,1.
// Output is the closest cleaned candidate (codewords preferred).
DecodeResult algorithm_II(const GraphCode& c, const BitVec& y,
                          const ListDecodeOptions& opt = {},
                          CandidateList* lists = nullptr);

// Codeword candidates win over non-codewords; then minimal distance to y;
// remaining ties go to the lexicographically smallest word.
BitVec select_closest(const GraphCode& c, const std::vector<BitVec>& candidates,
                      const BitVec& y);

// Vertices of one part split by how many tainted edges they carry:
// good = at most t, bad = at least d0 - t.
struct GoodBadSets {
    std::vector<uint32_t> good, bad;
    uint64_t errors_at_good = 0; // tainted edges hanging off good vertices
};
GoodBadSets good_bad_sets(const GraphCode& c, const BitVec& error_set,
                          uint32_t part, unsigned t);

// First part (if any) where errors_at_good >= t*|bad| + eps*N: decoding that
// part is then guaranteed to shrink the error set by at least eps*N.
struct ReductionCheck {
    bool holds = false;
    int witness = -1;
    uint64_t errors_at_good = 0;
    uint64_t bad_count = 0;
};
ReductionCheck reduction_check(const GraphCode& c, const BitVec& error_set,
                               unsigned t, double eps);

} // namespace graphcodes
