#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "graphcodes/bitvec.hpp"

namespace graphcodes {

// Binary [n, k, d0] code used as the constraint at every vertex.
//
// Decoding is bounded-distance: a syndrome-indexed table of minimum-weight
// coset representatives up to t_max = floor((d0-1)/2), built breadth-first
// by error weight. Looking up with a radius t <= t_max either lands on a
// codeword within t of the input or returns the input untouched.
//
// Hamming codes with r >= 16 skip the stored generator and table; encoding
// and single-error decoding are done positionally (the syndrome of a one-bit
// error is the 1-based position of that bit).
class BinaryLinearCode {
public:
    static BinaryLinearCode hamming(unsigned r);
    static BinaryLinearCode golay23();
    static BinaryLinearCode bch_31_21();
    static BinaryLinearCode single_parity_check(unsigned n);
    static BinaryLinearCode repetition(unsigned n);
    // Text format: "n k" on the first line, then n-k rows of n '0'/'1' chars.
    // Requires rank n-k, k <= 22 (distance is brute-forced) and n-k <= 64
    // (syndromes are packed into one word).
    static BinaryLinearCode from_file(const std::string& path);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned d0() const { return d0_; }
    unsigned t_max() const { return t_max_; }

    // m (k bits) -> m G (n bits).
    BitVec encode(const BitVec& msg) const;

    // Parity bits packed low-to-high by check row; zero iff word is in the code.
    uint64_t syndrome(const BitVec& word) const;
    bool is_codeword(const BitVec& word) const { return syndrome(word) == 0; }

    // Nearest codeword within radius t if one exists, otherwise the input.
    // t must be <= t_max.
    BitVec bounded_distance_decode(const BitVec& word, unsigned t) const;

    // Exhaustive minimum over all 2^k - 1 nonzero codewords; k <= 22.
    unsigned min_distance_bruteforce() const;

    const BitMatrix& generator() const;
    const BitMatrix& parity_check() const { return h_; }
    bool generator_stored() const { return g_.rows() > 0; }
    const std::unordered_map<uint64_t, BitVec>& coset_leaders() const { return leaders_; }

private:
    BinaryLinearCode() = default;
    void finish(unsigned declared_d0, bool build_table);
    void build_leader_table();
    void validate_distance() const;

    unsigned n_ = 0, k_ = 0, d0_ = 0, t_max_ = 0;
    bool positional_ = false; // huge Hamming: no G, no table
    BitMatrix g_;             // k x n (may be empty when positional_)
    BitMatrix h_;             // (n-k) x n
    std::vector<uint64_t> col_syndrome_;            // syndrome of each unit vector
    std::unordered_map<uint64_t, BitVec> leaders_;  // syndrome -> min weight pattern
};

} // namespace graphcodes
