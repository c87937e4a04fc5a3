#include "csurf/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csurf {

void Gf2Matrix::set_row(std::size_t r, const BitRow& bits) {
    if (bits.size() != words_) throw std::invalid_argument("row word count mismatch");
    std::copy(bits.begin(), bits.end(), row_ptr(r));
}

void Gf2Matrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row_ptr(dst);
    const std::uint64_t* s = row_ptr(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_ptr(a), row_ptr(a) + words_, row_ptr(b));
}

std::vector<std::size_t> Gf2Matrix::rref(std::size_t parallel_min_rows) {
#ifdef _OPENMP
    if (rows_ >= parallel_min_rows && rows_ > 0) return rref_blocked_parallel();
#else
    (void)parallel_min_rows;
#endif
    return rref_serial();
}

#ifdef _OPENMP
std::vector<std::size_t> Gf2Matrix::rref_blocked_parallel() {
    // Block elimination, one 64-column word per round. A single thread picks
    // the round's pivots on the window word alone and mutually reduces the
    // pivot rows; one parallel sweep then applies every pivot to every other
    // row, reading each row's window bits once. RREF is unique, so the result
    // is bit-identical to the serial path.
    std::vector<std::size_t> pivots;
    std::size_t next = 0; // first unpivoted row; shared, mutated in singles
#pragma omp parallel default(shared)
    for (std::size_t w = 0; w < words_; ++w) {
        struct {
            std::size_t block_begin;
            std::size_t block_count;
            std::uint64_t masks[64];
            bool last;
        } round;
#pragma omp single copyprivate(round)
        {
            round.block_begin = next;
            round.block_count = 0;
            const std::size_t ncols = std::min<std::size_t>(64, cols_ - w * 64);
            std::vector<std::uint64_t> win(rows_ - next);
            for (std::size_t i = next; i < rows_; ++i) win[i - next] = row_ptr(i)[w];
            std::size_t cur = next;
            for (std::size_t b = 0; b < ncols; ++b) {
                const std::uint64_t mask = std::uint64_t(1) << b;
                std::size_t r = cur;
                while (r < rows_ && !(win[r - next] & mask)) ++r;
                if (r == rows_) continue;
                std::swap(win[r - next], win[cur - next]);
                swap_rows(r, cur);
                for (std::size_t i = cur + 1; i < rows_; ++i)
                    if (win[i - next] & mask) win[i - next] ^= win[cur - next];
                pivots.push_back(w * 64 + b);
                round.masks[round.block_count++] = mask;
                ++cur;
            }
            // Mutually reduce the round's pivot rows so each has zero at the
            // other pivot columns; per-row decisions then commute.
            for (std::size_t p = 0; p < round.block_count; ++p) {
                const std::uint64_t* prow = row_ptr(round.block_begin + p);
                for (std::size_t q = 0; q < round.block_count; ++q) {
                    if (q == p) continue;
                    std::uint64_t* qrow = row_ptr(round.block_begin + q);
                    if (qrow[w] & round.masks[p])
                        for (std::size_t k = 0; k < words_; ++k) qrow[k] ^= prow[k];
                }
            }
            next = cur;
            round.last = next == rows_;
        }
        if (round.block_count > 0) {
            const std::size_t block_end = round.block_begin + round.block_count;
#pragma omp for schedule(static)
            for (long long i = 0; i < (long long)rows_; ++i) {
                if ((std::size_t)i >= round.block_begin && (std::size_t)i < block_end) continue;
                std::uint64_t* ri = bits_.data() + (std::size_t)i * words_;
                const std::uint64_t window = ri[w];
                for (std::size_t p = 0; p < round.block_count; ++p) {
                    if (window & round.masks[p]) {
                        const std::uint64_t* prow = row_ptr(round.block_begin + p);
                        for (std::size_t k = 0; k < words_; ++k) ri[k] ^= prow[k];
                    }
                }
            }
        }
        if (round.last) break;
    }
    return pivots;
}
#endif

std::vector<std::size_t> Gf2Matrix::rref_serial() {
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols_ && pivot_row < rows_; ++c) {
        std::size_t r = pivot_row;
        while (r < rows_ && !get(r, c)) ++r;
        if (r == rows_) continue;
        swap_rows(r, pivot_row);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i != pivot_row && get(i, c)) xor_rows(i, pivot_row);
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    return pivots;
}

std::size_t Gf2Matrix::rank(std::size_t parallel_min_rows) const {
    Gf2Matrix copy = *this;
    return copy.rref(parallel_min_rows).size();
}

std::size_t Gf2Matrix::rank_serial() const {
    Gf2Matrix copy = *this;
    return copy.rref_serial().size();
}

std::vector<BitRow> Gf2Matrix::nullspace() const {
    Gf2Matrix copy = *this;
    std::vector<std::size_t> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<BitRow> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitRow v(words_, 0);
        row_set(v, free_col, true);
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            if (copy.get(p, free_col)) row_set(v, pivots[p], true);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

BitRow Gf2Matrix::multiply(const BitRow& x) const {
    if (x.size() != words_) throw std::invalid_argument("vector word count mismatch");
    BitRow out(words_for_bits(rows_), 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const std::uint64_t* row = row_ptr(r);
        for (std::size_t w = 0; w < words_; ++w) acc ^= row[w] & x[w];
        if (std::popcount(acc) & 1) row_set(out, r, true);
    }
    return out;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

std::string Gf2Matrix::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

BitRow Gf2Reducer::reduce(BitRow v) const {
    if (v.size() != words_) throw std::invalid_argument("vector word count mismatch");
    for (const auto& [pivot, row] : rows_) {
        if (row_get(v, pivot)) row_xor(v, row);
    }
    return v;
}

bool Gf2Reducer::absorb(BitRow v) {
    v = reduce(std::move(v));
    std::size_t pivot = cols_;
    for (std::size_t i = 0; i < cols_; ++i) {
        if (row_get(v, i)) {
            pivot = i;
            break;
        }
    }
    if (pivot == cols_) return false;
    // Keep stored rows mutually reduced so reduce() stays canonical.
    for (auto& [p, row] : rows_) {
        if (row_get(row, pivot)) row_xor(row, v);
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                [](const auto& pr, std::size_t c) { return pr.first < c; });
    rows_.insert(pos, {pivot, std::move(v)});
    return true;
}

} // namespace csurf
