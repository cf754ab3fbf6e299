#include "graphcodes/bitvec.hpp"

namespace graphcodes {

std::vector<size_t> BitMatrix::reduce() {
    std::vector<size_t> pivots;
    size_t h = 0;
    for (size_t c = 0; c < cols_ && h < rows_.size(); ++c) {
        size_t p = h;
        while (p < rows_.size() && !rows_[p].get(c)) ++p;
        if (p == rows_.size()) continue;
        std::swap(rows_[h], rows_[p]);
        for (size_t r = 0; r < rows_.size(); ++r)
            if (r != h && rows_[r].get(c)) rows_[r] ^= rows_[h];
        pivots.push_back(c);
        ++h;
    }
    return pivots;
}

size_t BitMatrix::rank() const {
    BitMatrix copy = *this;
    return copy.reduce().size();
}

std::vector<BitVec> BitMatrix::nullspace() const {
    BitMatrix red = *this;
    std::vector<size_t> pivots = red.reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<BitVec> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        BitVec x(cols_);
        x.set(f, true);
        // pivot row r constrains x[pivots[r]] = sum of x over its free columns
        for (size_t r = 0; r < pivots.size(); ++r)
            if (red.rows_[r].get(f)) x.set(pivots[r], true);
        basis.push_back(std::move(x));
    }
    return basis;
}

BitVec BitMatrix::mul(const BitVec& x) const {
    BitVec y(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r)
        if (rows_[r].dot(x)) y.set(r, true);
    return y;
}

} // namespace graphcodes
