#include "graphcodes/linear_code.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "graphcodes/rng.hpp"

namespace graphcodes {
namespace {

BitVec random_word(size_t len, SplitMix64& rng) {
    BitVec v(len);
    auto& w = v.words();
    for (auto& x : w) x = rng.next();
    if (len & 63) w.back() &= (1ull << (len & 63)) - 1;
    return v;
}

// GF(32) with primitive polynomial x^5 + x^2 + 1.
struct GF32 {
    uint8_t exp[62];
    uint8_t log[32];
    GF32() {
        unsigned x = 1;
        for (int i = 0; i < 31; ++i) {
            exp[i] = (uint8_t)x;
            log[x] = (uint8_t)i;
            x <<= 1;
            if (x & 32) x ^= 0b100101;
        }
        for (int i = 31; i < 62; ++i) exp[i] = exp[i - 31];
    }
    uint8_t mul(uint8_t a, uint8_t b) const {
        if (!a || !b) return 0;
        return exp[log[a] + log[b]];
    }
};

// Minimal polynomial of alpha^s: product of (z - alpha^c) over the conjugacy
// class {s, 2s, 4s, ...} mod 31. Coefficients must land in GF(2).
uint64_t gf32_min_poly(unsigned s, const GF32& f) {
    std::vector<uint8_t> poly{1};
    unsigned c = s;
    do {
        uint8_t root = f.exp[c % 31];
        std::vector<uint8_t> next(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] ^= poly[i];
            next[i] ^= f.mul(poly[i], root);
        }
        poly = std::move(next);
        c = (2 * c) % 31;
    } while (c != s);
    uint64_t bits = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1) throw std::logic_error("minimal polynomial not binary");
        bits |= (uint64_t)poly[i] << i;
    }
    return bits;
}

uint64_t poly_mul2(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

uint64_t poly_mod2(uint64_t a, uint64_t b) {
    int db = 63 - std::countl_zero(b);
    while (a && 63 - std::countl_zero(a) >= db)
        a ^= b << (63 - std::countl_zero(a) - db);
    return a;
}

BitMatrix cyclic_generator(uint64_t g, unsigned n, unsigned k) {
    // rows are shifts of the generator polynomial; x^n + 1 must be divisible
    if (poly_mod2((1ull << n) | 1ull, g) != 0)
        throw std::logic_error("generator polynomial does not divide x^n+1");
    BitMatrix m(k, n);
    for (unsigned r = 0; r < k; ++r)
        for (unsigned j = 0; g >> j; ++j)
            if ((g >> j) & 1) m.set(r, r + j, true);
    return m;
}

} // namespace

BinaryLinearCode BinaryLinearCode::hamming(unsigned r) {
    if (r < 2 || r > 20) throw std::invalid_argument("hamming: r out of range [2,20]");
    BinaryLinearCode c;
    c.n_ = (1u << r) - 1;
    c.k_ = c.n_ - r;
    c.h_ = BitMatrix(r, c.n_);
    for (unsigned col = 0; col < c.n_; ++col)
        for (unsigned j = 0; j < r; ++j)
            if ((col + 1) >> j & 1) c.h_.set(j, col, true);
    if (r <= 12) {
        auto basis = c.h_.nullspace();
        for (auto& b : basis) c.g_.add_row(std::move(b));
    }
    c.positional_ = r >= 16;
    c.finish(3, r <= 15);
    return c;
}

BinaryLinearCode BinaryLinearCode::golay23() {
    BinaryLinearCode c;
    c.n_ = 23;
    c.k_ = 12;
    c.g_ = cyclic_generator(0xAE3, 23, 12);
    auto basis = c.g_.nullspace();
    c.h_ = BitMatrix(0, 23);
    for (auto& b : basis) c.h_.add_row(std::move(b));
    c.finish(7, true);
    return c;
}

BinaryLinearCode BinaryLinearCode::bch_31_21() {
    GF32 f;
    uint64_t g = poly_mul2(gf32_min_poly(1, f), gf32_min_poly(3, f));
    BinaryLinearCode c;
    c.n_ = 31;
    c.k_ = 21;
    c.g_ = cyclic_generator(g, 31, 21);
    auto basis = c.g_.nullspace();
    c.h_ = BitMatrix(0, 31);
    for (auto& b : basis) c.h_.add_row(std::move(b));
    c.finish(5, true);
    return c;
}

BinaryLinearCode BinaryLinearCode::single_parity_check(unsigned n) {
    if (n < 2 || n > 64) throw std::invalid_argument("spc: n out of range [2,64]");
    BinaryLinearCode c;
    c.n_ = n;
    c.k_ = n - 1;
    c.h_ = BitMatrix(1, n);
    for (unsigned j = 0; j < n; ++j) c.h_.set(0, j, true);
    auto basis = c.h_.nullspace();
    for (auto& b : basis) c.g_.add_row(std::move(b));
    c.finish(2, true);
    return c;
}

BinaryLinearCode BinaryLinearCode::repetition(unsigned n) {
    if (n < 2 || n > 64) throw std::invalid_argument("repetition: n out of range [2,64]");
    BinaryLinearCode c;
    c.n_ = n;
    c.k_ = 1;
    c.g_ = BitMatrix(1, n);
    for (unsigned j = 0; j < n; ++j) c.g_.set(0, j, true);
    c.h_ = BitMatrix(n - 1, n);
    for (unsigned r = 0; r + 1 < n; ++r) {
        c.h_.set(r, r, true);
        c.h_.set(r, r + 1, true);
    }
    c.finish(n, false); // decode by majority, never by table
    return c;
}

BinaryLinearCode BinaryLinearCode::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("from_file: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("from_file: empty file");
    std::istringstream head(line);
    long n = 0, k = 0;
    if (!(head >> n >> k) || n <= 0 || k < 0 || k > n)
        throw std::invalid_argument("from_file: bad header, want 'n k'");
    if (k > 22) throw std::invalid_argument("from_file: k > 22 unsupported (distance must be enumerable)");
    if (n - k > 64) throw std::invalid_argument("from_file: n-k > 64 unsupported (packed syndromes)");

    BinaryLinearCode c;
    c.n_ = (unsigned)n;
    c.k_ = (unsigned)k;
    c.h_ = BitMatrix((size_t)(n - k), (size_t)n);
    for (long r = 0; r < n - k; ++r) {
        if (!std::getline(in, line))
            throw std::invalid_argument("from_file: expected " + std::to_string(n - k) + " check rows");
        if ((long)line.size() < n)
            throw std::invalid_argument("from_file: row shorter than n");
        for (long j = 0; j < n; ++j) {
            char ch = line[(size_t)j];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("from_file: rows must be over {0,1}");
            if (ch == '1') c.h_.set((size_t)r, (size_t)j, true);
        }
    }
    if ((long)c.h_.rank() != n - k)
        throw std::invalid_argument("from_file: check matrix rank != n-k");
    auto basis = c.h_.nullspace();
    for (auto& b : basis) c.g_.add_row(std::move(b));
    c.finish(0, true);
    return c;
}

void BinaryLinearCode::finish(unsigned declared_d0, bool build_table) {
    if (!positional_ && g_.rows() != k_)
        throw std::logic_error("generator rank mismatch");
    col_syndrome_.assign(n_, 0);
    if (!positional_) {
        for (unsigned col = 0; col < n_; ++col) {
            uint64_t s = 0;
            for (size_t r = 0; r < h_.rows(); ++r)
                if (h_.get(r, col)) s |= 1ull << r;
            col_syndrome_[col] = s;
        }
    }

    if (k_ <= 22 && !positional_) {
        d0_ = min_distance_bruteforce();
        if (declared_d0 && d0_ != declared_d0)
            throw std::logic_error("construction produced wrong minimum distance");
    } else {
        if (!declared_d0) throw std::invalid_argument("k > 22 requires a design distance");
        d0_ = declared_d0;
        validate_distance();
    }
    t_max_ = (d0_ - 1) / 2;
    if (build_table) build_leader_table();
}

// Random-codeword spot check of the design distance when exhaustive
// enumeration is out of reach.
void BinaryLinearCode::validate_distance() const {
    SplitMix64 rng(0xC0DEu);
    for (int trial = 0; trial < 500; ++trial) {
        BitVec msg = random_word(k_, rng);
        if (!msg.any()) continue;
        BitVec cw = encode(msg);
        if (cw.popcount() < d0_)
            throw std::logic_error("design distance contradicted by sampled codeword");
    }
}

void BinaryLinearCode::build_leader_table() {
    // weight-ordered insertion; first pattern reaching a syndrome is minimal
    double binom = 1, entries = 1;
    for (unsigned w = 1; w <= t_max_; ++w) {
        binom = binom * (n_ - w + 1) / w;
        entries += binom;
    }
    if (entries > double(1u << 22))
        throw std::runtime_error("coset leader table too large for this code");

    leaders_.emplace(0, BitVec(n_));
    std::vector<unsigned> idx;
    for (unsigned w = 1; w <= t_max_; ++w) {
        idx.resize(w);
        for (unsigned i = 0; i < w; ++i) idx[i] = i;
        while (true) {
            uint64_t s = 0;
            for (unsigned i : idx) s ^= col_syndrome_[i];
            if (!leaders_.count(s)) {
                BitVec pat(n_);
                for (unsigned i : idx) pat.set(i, true);
                leaders_.emplace(s, std::move(pat));
            }
            // next combination
            int j = (int)w - 1;
            while (j >= 0 && idx[(size_t)j] == n_ - w + (unsigned)j) --j;
            if (j < 0) break;
            ++idx[(size_t)j];
            for (unsigned i = (unsigned)j + 1; i < w; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
}

BitVec BinaryLinearCode::encode(const BitVec& msg) const {
    if (msg.size() != k_) throw std::invalid_argument("encode: message length != k");
    if (!positional_ && g_.rows() == k_) {
        BitVec out(n_);
        for (unsigned i = 0; i < k_; ++i)
            if (msg.get(i)) out ^= g_.row(i);
        return out;
    }
    // data in non power-of-two positions, parity at positions 2^j - 1
    BitVec out(n_);
    unsigned mi = 0;
    for (unsigned s = 0; s < n_; ++s) {
        if (((s + 1) & s) == 0) continue; // s+1 is a power of two
        if (msg.get(mi++)) out.set(s, true);
    }
    uint64_t syn = 0;
    for (unsigned s = 0; s < n_; ++s)
        if (out.get(s)) syn ^= s + 1;
    for (unsigned j = 0; syn >> j; ++j)
        if (syn >> j & 1) out.set((1u << j) - 1, true);
    return out;
}

uint64_t BinaryLinearCode::syndrome(const BitVec& word) const {
    if (word.size() != n_) throw std::invalid_argument("syndrome: word length != n");
    if (positional_) {
        uint64_t s = 0;
        const auto& w = word.words();
        for (size_t wi = 0; wi < w.size(); ++wi) {
            uint64_t bits = w[wi];
            while (bits) {
                s ^= (wi << 6) + (unsigned)std::countr_zero(bits) + 1;
                bits &= bits - 1;
            }
        }
        return s;
    }
    uint64_t s = 0;
    for (size_t r = 0; r < h_.rows(); ++r)
        if (h_.row(r).dot(word)) s |= 1ull << r;
    return s;
}

BitVec BinaryLinearCode::bounded_distance_decode(const BitVec& word, unsigned t) const {
    if (t > t_max_) throw std::invalid_argument("decode radius exceeds t_max");
    if (word.size() != n_) throw std::invalid_argument("decode: word length != n");
    if (d0_ == n_ && k_ == 1) { // repetition: majority inside radius t
        size_t w = word.popcount();
        if (w <= t) return BitVec(n_);
        if (n_ - w <= t) {
            BitVec ones(n_);
            for (unsigned j = 0; j < n_; ++j) ones.set(j, true);
            return ones;
        }
        return word;
    }
    uint64_t s = syndrome(word);
    if (s == 0) return word;
    if (positional_) {
        if (t >= 1 && s <= n_) {
            BitVec out = word;
            out.flip((size_t)s - 1);
            return out;
        }
        return word;
    }
    auto it = leaders_.find(s);
    if (it == leaders_.end() || it->second.popcount() > t) return word;
    return word ^ it->second;
}

unsigned BinaryLinearCode::min_distance_bruteforce() const {
    if (k_ > 22) throw std::invalid_argument("min_distance_bruteforce: k > 22");
    if (!generator_stored()) throw std::logic_error("min_distance_bruteforce: no generator");
    BitVec word(n_);
    size_t best = n_ + 1;
    // Gray walk: word after step i is the codeword of message i^(i>>1)
    for (uint64_t i = 1; i < (1ull << k_); ++i) {
        word ^= g_.row((size_t)std::countr_zero(i));
        size_t w = word.popcount();
        if (w < best) best = w;
    }
    return (unsigned)best;
}

const BitMatrix& BinaryLinearCode::generator() const {
    if (!generator_stored()) throw std::logic_error("generator not materialized for this code");
    return g_;
}

} // namespace graphcodes
