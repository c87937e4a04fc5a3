#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace csurf {

using BitRow = std::vector<std::uint64_t>;

inline std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

inline bool row_get(const BitRow& r, std::size_t i) {
    return (r[i >> 6] >> (i & 63)) & 1u;
}
inline void row_set(BitRow& r, std::size_t i, bool v) {
    if (v)
        r[i >> 6] |= std::uint64_t(1) << (i & 63);
    else
        r[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
}
inline void row_xor(BitRow& dst, const BitRow& src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}
inline bool row_zero(const BitRow& r) {
    for (auto w : r)
        if (w) return false;
    return true;
}

/// Dense bit-packed matrix over GF(2). Row major, 64 bits per word.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(words_for_bits(cols)), bits_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        auto& w = bits_[r * words_ + (c >> 6)];
        if (v)
            w |= std::uint64_t(1) << (c & 63);
        else
            w &= ~(std::uint64_t(1) << (c & 63));
    }

    std::uint64_t* row_ptr(std::size_t r) { return bits_.data() + r * words_; }
    const std::uint64_t* row_ptr(std::size_t r) const { return bits_.data() + r * words_; }

    BitRow row(std::size_t r) const {
        return BitRow(row_ptr(r), row_ptr(r) + words_);
    }
    void set_row(std::size_t r, const BitRow& bits);

    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    /// In-place reduced row echelon form. Returns the pivot column of each
    /// pivot row, in order. Row elimination runs under OpenMP once the matrix
    /// has at least `parallel_min_rows` rows; pass 0 to force the parallel
    /// path, SIZE_MAX to force serial.
    std::vector<std::size_t> rref(std::size_t parallel_min_rows = kDefaultParallelMinRows);

    /// Serial reference implementation, kept independent for testing.
    std::vector<std::size_t> rref_serial();

    std::size_t rank(std::size_t parallel_min_rows = kDefaultParallelMinRows) const;
    std::size_t rank_serial() const;

    /// Basis of { x : M x = 0 }, one BitRow of length cols() per basis vector.
    std::vector<BitRow> nullspace() const;

    /// y = M x over GF(2); x has cols() bits, result rows() bits.
    BitRow multiply(const BitRow& x) const;

    Gf2Matrix transposed() const;

    std::string to_string() const;

    bool operator==(const Gf2Matrix& other) const = default;

    static constexpr std::size_t kDefaultParallelMinRows = 512;

private:
#ifdef _OPENMP
    std::vector<std::size_t> rref_blocked_parallel();
#endif

    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Incremental row space in reduced echelon form. reduce() yields the unique
/// canonical representative of a vector modulo the absorbed row space, which
/// makes quotient-space computations deterministic.
class Gf2Reducer {
public:
    explicit Gf2Reducer(std::size_t cols) : cols_(cols), words_(words_for_bits(cols)) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    BitRow reduce(BitRow v) const;

    /// Reduces v; absorbs the residue if nonzero. Returns true when v was
    /// independent of the current row space.
    bool absorb(BitRow v);

    const std::vector<std::pair<std::size_t, BitRow>>& rows() const { return rows_; }

private:
    std::size_t cols_;
    std::size_t words_;
    // (pivot column, row) sorted by pivot column; rows mutually reduced.
    std::vector<std::pair<std::size_t, BitRow>> rows_;
};

} // namespace csurf
