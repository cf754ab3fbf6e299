#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "graphcodes/bitvec.hpp"

namespace graphcodes {

// l-partite n-regular hypergraph on l*m vertices and N = n*m edges.
//
// Every edge meets each part in exactly one vertex. Part p assigns edge e the
// position map(p, e) = n*vertex + slot; positions within a part are a
// permutation of 0..N-1, so each vertex carries exactly n edges, one per
// slot. Part 0 of a sampled graph is the identity (edge e = position e);
// the other l-1 maps are independent uniform permutations.
class Hypergraph {
public:
    static Hypergraph sample(uint32_t l, uint32_t m, uint32_t n, uint64_t seed);
    // Explicit construction (tests, loaded files). maps[p] must each be a
    // permutation of 0..n*m-1; maps.size() = l >= 2.
    static Hypergraph from_maps(uint32_t n, std::vector<std::vector<uint32_t>> maps,
                                uint64_t seed = 0);

    uint32_t parts() const { return l_; }
    uint32_t vertices_per_part() const { return m_; }
    uint32_t degree() const { return n_; }           // edges per vertex
    uint32_t edges() const { return N_; }            // n*m
    uint64_t seed() const { return seed_; }

    uint32_t position(uint32_t part, uint32_t e) const { return maps_[part][e]; }
    uint32_t vertex_of(uint32_t part, uint32_t e) const { return maps_[part][e] / n_; }
    uint32_t slot_of(uint32_t part, uint32_t e) const { return maps_[part][e] % n_; }
    uint32_t edge_at(uint32_t part, uint32_t v, uint32_t slot) const {
        return inv_[part][(uint64_t)v * n_ + slot];
    }

    // The n edges at vertex v of the given part, in slot order.
    const uint32_t* incident_ptr(uint32_t part, uint32_t v) const {
        return inv_[part].data() + (uint64_t)v * n_;
    }
    std::vector<uint32_t> incident_edges(uint32_t part, uint32_t v) const;

    // Bipartite graph on the same edge set keeping the attachment maps of
    // parts i and j (which become parts 0 and 1 of the result).
    Hypergraph bipartite_restriction(uint32_t i, uint32_t j) const;

    // Text dump: "l m n seed" then one line per part 1..l-1 with N positions.
    // Only graphs whose part 0 is the identity are dumpable.
    void dump(std::ostream& out) const;
    static Hypergraph load(std::istream& in);

    const std::vector<std::vector<uint32_t>>& maps() const { return maps_; }

private:
    void build_inverse();

    uint32_t l_ = 0, m_ = 0, n_ = 0, N_ = 0;
    uint64_t seed_ = 0;
    std::vector<std::vector<uint32_t>> maps_; // l x N, edge -> position
    std::vector<std::vector<uint32_t>> inv_;  // l x N, position -> edge
};

// Degrees into a vertex subset S of one side of a bipartite graph, and the
// vertices on the other side seeing more than r edges of S.
struct SDegreeStats {
    std::vector<uint32_t> degree;      // indexed by vertex of the opposite part
    std::vector<uint32_t> above;       // vertices with degree >= r+1
};
SDegreeStats s_degree_stats(const Hypergraph& g, uint32_t part_of_S,
                            const std::vector<uint32_t>& S, uint32_t r);

} // namespace graphcodes
