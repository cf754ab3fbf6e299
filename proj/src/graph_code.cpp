#include "graphcodes/graph_code.hpp"

#include <stdexcept>

#include "graphcodes/rng.hpp"

namespace graphcodes {

GraphCode::GraphCode(Hypergraph topology, BinaryLinearCode local)
    : topo_(std::move(topology)), local_(std::move(local)) {
    if (local_.n() != topo_.degree())
        throw std::invalid_argument("graph code: local code length != vertex degree");
}

double GraphCode::rate_lower_bound() const {
    double l = topo_.parts();
    return l * local_.k() / local_.n() - (l - 1);
}

int64_t GraphCode::dimension_lower_bound() const {
    int64_t l = topo_.parts(), k = local_.k(), n = local_.n(), m = topo_.vertices_per_part();
    return m * (l * k - (l - 1) * n);
}

void GraphCode::extract_local(const BitVec& x, uint32_t part, uint32_t v, BitVec& out) const {
    const uint32_t* e = topo_.incident_ptr(part, v);
    uint32_t n = topo_.degree();
    out.clear();
    for (uint32_t s = 0; s < n; ++s)
        if (x.get(e[s])) out.set(s, true);
}

void GraphCode::deposit_local(const BitVec& lw, uint32_t part, uint32_t v, BitVec& x) const {
    const uint32_t* e = topo_.incident_ptr(part, v);
    uint32_t n = topo_.degree();
    for (uint32_t s = 0; s < n; ++s)
        x.set(e[s], lw.get(s));
}

bool GraphCode::is_codeword(const BitVec& x) const {
    if (x.size() != length()) throw std::invalid_argument("is_codeword: wrong length");
    BitVec lw(local_.n());
    for (uint32_t p = 0; p < topo_.parts(); ++p)
        for (uint32_t v = 0; v < topo_.vertices_per_part(); ++v) {
            extract_local(x, p, v, lw);
            if (local_.syndrome(lw) != 0) return false;
        }
    return true;
}

BitMatrix GraphCode::parity_matrix() const {
    const BitMatrix& h = local_.parity_check();
    uint32_t n = topo_.degree();
    BitMatrix out(0, length());
    for (uint32_t p = 0; p < topo_.parts(); ++p)
        for (uint32_t v = 0; v < topo_.vertices_per_part(); ++v) {
            const uint32_t* e = topo_.incident_ptr(p, v);
            for (size_t r = 0; r < h.rows(); ++r) {
                BitVec row(length());
                for (uint32_t s = 0; s < n; ++s)
                    if (h.get(r, s)) row.set(e[s], true);
                out.add_row(std::move(row));
            }
        }
    return out;
}

uint64_t GraphCode::dimension() const {
    if (length() > 16384)
        throw std::invalid_argument("dimension: exact rank limited to N <= 16384");
    return length() - parity_matrix().rank();
}

std::vector<BitVec> GraphCode::codeword_basis() const {
    if (length() > 16384)
        throw std::invalid_argument("codeword_basis: limited to N <= 16384");
    return parity_matrix().nullspace();
}

std::vector<BitVec> GraphCode::enumerate_codewords() const {
    auto basis = codeword_basis();
    if (basis.size() > 22)
        throw std::invalid_argument("enumerate_codewords: dimension > 22");
    std::vector<BitVec> all;
    all.reserve((size_t)1 << basis.size());
    BitVec word(length());
    all.push_back(word);
    // Gray walk over messages; word i differs from word i-1 in one basis vector
    for (uint64_t i = 1; i < (1ull << basis.size()); ++i) {
        word ^= basis[(size_t)std::countr_zero(i)];
        all.push_back(word);
    }
    return all;
}

uint64_t GraphCode::min_distance_small() const {
    auto basis = codeword_basis();
    if (basis.size() > 22)
        throw std::invalid_argument("min_distance_small: dimension > 22");
    if (basis.empty()) return length() + 1; // trivial code, no nonzero word
    BitVec word(length());
    size_t best = length() + 1;
    for (uint64_t i = 1; i < (1ull << basis.size()); ++i) {
        word ^= basis[(size_t)std::countr_zero(i)];
        size_t w = word.popcount();
        if (w < best) best = w;
    }
    return best;
}

BitVec GraphCode::random_codeword(uint64_t seed) const {
    auto basis = codeword_basis();
    SplitMix64 rng(seed);
    BitVec word(length());
    for (const auto& b : basis)
        if (rng.coin()) word ^= b;
    return word;
}

} // namespace graphcodes
