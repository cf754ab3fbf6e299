#pragma once

#include <cstdint>
#include <vector>

#include "graphcodes/bitvec.hpp"
#include "graphcodes/hypergraph.hpp"
#include "graphcodes/linear_code.hpp"

namespace graphcodes {

// Code of length N = n*m on the edges of an l-partite n-regular hypergraph:
// a word belongs iff its restriction to every vertex (read in slot order)
// lies in the local [n, k, d0] code.
//
// Dimension is at least m*(l*k - (l-1)*n); exact dimension comes from the
// rank of the stacked lifted parity rows and is only offered for N <= 16384.
class GraphCode {
public:
    GraphCode(Hypergraph topology, BinaryLinearCode local);

    const Hypergraph& topology() const { return topo_; }
    const BinaryLinearCode& local() const { return local_; }
    uint32_t length() const { return topo_.edges(); }

    double rate_lower_bound() const;
    // m*(l*k - (l-1)*n); negative when the bound is vacuous.
    int64_t dimension_lower_bound() const;

    // Local view of x at (part, v), slot order. out must have n bits.
    void extract_local(const BitVec& x, uint32_t part, uint32_t v, BitVec& out) const;
    // Scatter a local word back to the edge positions of (part, v).
    void deposit_local(const BitVec& lw, uint32_t part, uint32_t v, BitVec& x) const;

    bool is_codeword(const BitVec& x) const;

    // Every vertex's check rows lifted to length N and stacked: l*m*(n-k) rows.
    BitMatrix parity_matrix() const;
    uint64_t dimension() const;
    std::vector<BitVec> codeword_basis() const;

    // All 2^dim codewords; dimension must be <= 22.
    std::vector<BitVec> enumerate_codewords() const;
    uint64_t min_distance_small() const;

    // Uniformly random codeword: random GF(2) combination of the basis.
    BitVec random_codeword(uint64_t seed) const;

private:
    Hypergraph topo_;
    BinaryLinearCode local_;
};

} // namespace graphcodes
