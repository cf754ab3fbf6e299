#include "graphcodes/hypergraph.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graphcodes/rng.hpp"

namespace graphcodes {

Hypergraph Hypergraph::sample(uint32_t l, uint32_t m, uint32_t n, uint64_t seed) {
    if (l < 2) throw std::invalid_argument("sample: need at least 2 parts");
    if (m == 0 || n == 0) throw std::invalid_argument("sample: m and n must be positive");
    uint64_t N = (uint64_t)m * n;
    if (N > (1ull << 31)) throw std::invalid_argument("sample: n*m too large");

    Hypergraph g;
    g.l_ = l; g.m_ = m; g.n_ = n; g.N_ = (uint32_t)N; g.seed_ = seed;
    g.maps_.resize(l);
    g.maps_[0].resize(N);
    std::iota(g.maps_[0].begin(), g.maps_[0].end(), 0u);
    SplitMix64 rng(seed);
    for (uint32_t p = 1; p < l; ++p) {
        g.maps_[p] = g.maps_[0];
        shuffle(g.maps_[p], rng); // one stream, parts in order: seed pins all maps
    }
    g.build_inverse();
    return g;
}

Hypergraph Hypergraph::from_maps(uint32_t n, std::vector<std::vector<uint32_t>> maps,
                                 uint64_t seed) {
    if (maps.size() < 2) throw std::invalid_argument("from_maps: need at least 2 parts");
    size_t N = maps[0].size();
    if (n == 0 || N == 0 || N % n != 0)
        throw std::invalid_argument("from_maps: map length must be a positive multiple of n");
    std::vector<bool> seen(N);
    for (const auto& mp : maps) {
        if (mp.size() != N) throw std::invalid_argument("from_maps: inconsistent map lengths");
        std::fill(seen.begin(), seen.end(), false);
        for (uint32_t pos : mp) {
            if (pos >= N || seen[pos]) throw std::invalid_argument("from_maps: not a permutation");
            seen[pos] = true;
        }
    }
    Hypergraph g;
    g.l_ = (uint32_t)maps.size();
    g.n_ = n;
    g.N_ = (uint32_t)N;
    g.m_ = g.N_ / n;
    g.seed_ = seed;
    g.maps_ = std::move(maps);
    g.build_inverse();
    return g;
}

void Hypergraph::build_inverse() {
    inv_.assign(l_, std::vector<uint32_t>(N_));
    for (uint32_t p = 0; p < l_; ++p)
        for (uint32_t e = 0; e < N_; ++e)
            inv_[p][maps_[p][e]] = e;
}

std::vector<uint32_t> Hypergraph::incident_edges(uint32_t part, uint32_t v) const {
    if (part >= l_) throw std::invalid_argument("incident_edges: part out of range");
    if (v >= m_) throw std::invalid_argument("incident_edges: vertex out of range");
    const uint32_t* p = incident_ptr(part, v);
    return std::vector<uint32_t>(p, p + n_);
}

Hypergraph Hypergraph::bipartite_restriction(uint32_t i, uint32_t j) const {
    if (i >= l_ || j >= l_ || i == j)
        throw std::invalid_argument("bipartite_restriction: bad part pair");
    Hypergraph g;
    g.l_ = 2; g.m_ = m_; g.n_ = n_; g.N_ = N_; g.seed_ = seed_;
    g.maps_ = {maps_[i], maps_[j]};
    g.build_inverse();
    return g;
}

void Hypergraph::dump(std::ostream& out) const {
    for (uint32_t e = 0; e < N_; ++e)
        if (maps_[0][e] != e)
            throw std::logic_error("dump: part 0 is not the identity");
    out << l_ << ' ' << m_ << ' ' << n_ << ' ' << seed_ << '\n';
    for (uint32_t p = 1; p < l_; ++p) {
        for (uint32_t e = 0; e < N_; ++e)
            out << maps_[p][e] << (e + 1 == N_ ? '\n' : ' ');
    }
}

Hypergraph Hypergraph::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("load: empty input");
    std::istringstream head(line);
    uint32_t l = 0, m = 0, n = 0;
    uint64_t seed = 0;
    if (!(head >> l >> m >> n >> seed) || l < 2 || m == 0 || n == 0)
        throw std::invalid_argument("load: bad header, want 'l m n seed'");
    uint64_t N = (uint64_t)m * n;
    std::vector<std::vector<uint32_t>> maps(l);
    maps[0].resize(N);
    std::iota(maps[0].begin(), maps[0].end(), 0u);
    for (uint32_t p = 1; p < l; ++p) {
        if (!std::getline(in, line))
            throw std::invalid_argument("load: expected " + std::to_string(l - 1) + " map lines");
        std::istringstream row(line);
        maps[p].resize(N);
        for (uint64_t e = 0; e < N; ++e)
            if (!(row >> maps[p][e]))
                throw std::invalid_argument("load: map line too short");
    }
    Hypergraph g = from_maps(n, std::move(maps), seed);
    if (g.vertices_per_part() != m) throw std::invalid_argument("load: header m mismatch");
    return g;
}

SDegreeStats s_degree_stats(const Hypergraph& g, uint32_t part_of_S,
                            const std::vector<uint32_t>& S, uint32_t r) {
    if (g.parts() != 2)
        throw std::invalid_argument("s_degree_stats: defined for bipartite graphs only");
    if (part_of_S >= 2) throw std::invalid_argument("s_degree_stats: part out of range");
    if (r >= g.degree()) throw std::invalid_argument("s_degree_stats: r out of range [0, n)");
    uint32_t other = 1 - part_of_S;

    SDegreeStats st;
    st.degree.assign(g.vertices_per_part(), 0);
    for (uint32_t v : S) {
        if (v >= g.vertices_per_part()) throw std::invalid_argument("s_degree_stats: vertex out of range");
        const uint32_t* edges = g.incident_ptr(part_of_S, v);
        for (uint32_t s = 0; s < g.degree(); ++s)
            ++st.degree[g.vertex_of(other, edges[s])];
    }
    for (uint32_t v = 0; v < g.vertices_per_part(); ++v)
        if (st.degree[v] >= r + 1) st.above.push_back(v);
    return st;
}

} // namespace graphcodes
