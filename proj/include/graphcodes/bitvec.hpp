#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace graphcodes {

// Fixed-length vector over GF(2), packed 64 bits per word.
// Invariant: bits at positions >= size() are zero, so whole-word operations
// (xor, popcount, compare) never need a final mask.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_indices(size_t n, std::initializer_list<uint32_t> idx) {
        BitVec v(n);
        for (uint32_t i : idx) v.set(i, true);
        return v;
    }

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool b) {
        uint64_t m = 1ull << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(size_t i) { w_[i >> 6] ^= 1ull << (i & 63); }
    void clear() { for (auto& w : w_) w = 0; }

    BitVec& operator^=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : w_) c += (size_t)std::popcount(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }
    // <x,y> over GF(2); the inner product every parity check reduces to.
    bool dot(const BitVec& o) const {
        uint64_t acc = 0;
        for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Order by first differing position, a 0 there sorting first. Used as the
    // deterministic tie-break when several candidates sit at equal distance.
    bool lex_less(const BitVec& o) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t d = w_[i] ^ o.w_[i];
            if (d) {
                uint64_t low = d & (0 - d);
                return !(w_[i] & low);
            }
        }
        return false;
    }

    uint64_t hash() const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ (uint64_t)n_;
        for (uint64_t w : w_) {
            h ^= w;
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 33;
        }
        return h;
    }
    struct Hasher {
        size_t operator()(const BitVec& v) const { return (size_t)v.hash(); }
    };

    uint64_t low64() const { return w_.empty() ? 0 : w_[0]; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
        return s;
    }

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

inline size_t hamming_distance(const BitVec& a, const BitVec& b) {
    size_t c = 0;
    const auto& x = a.words();
    const auto& y = b.words();
    for (size_t i = 0; i < x.size(); ++i) c += (size_t)std::popcount(x[i] ^ y[i]);
    return c;
}

// Row-major matrix over GF(2). All elimination is word-parallel xor; no
// floating point is involved anywhere in rank or nullspace computations.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    void set_cols(size_t c) { cols_ = c; }

    BitVec& row(size_t r) { return rows_[r]; }
    const BitVec& row(size_t r) const { return rows_[r]; }
    void add_row(BitVec v) {
        if (cols_ == 0) cols_ = v.size();
        rows_.push_back(std::move(v));
    }

    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }

    // Full reduced row echelon form, in place. Returns pivot columns.
    std::vector<size_t> reduce();

    size_t rank() const;

    // Basis of {x : M x = 0}. Each basis vector is systematic in one free
    // column, so the set is independent by construction.
    std::vector<BitVec> nullspace() const;

    // y = M x, y has rows() bits.
    BitVec mul(const BitVec& x) const;

private:
    size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

} // namespace graphcodes
