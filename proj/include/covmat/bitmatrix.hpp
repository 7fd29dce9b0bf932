#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace covmat {

/// Thrown when matrix operands have incompatible shapes. The message names
/// both shapes.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense boolean matrix, bit-packed row-major: one bit per cell, each row
/// padded to a 64-bit word boundary. Padding bits beyond cols() are always
/// zero, so whole-word kernels never need per-bit masking.
///
/// Instances are treated as immutable once built: every operation below
/// returns a fresh matrix, and concurrent reads are safe without locking.
class BoolMatrix {
  public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BoolMatrix() = default;
    BoolMatrix(std::size_t rows, std::size_t cols, bool value = false);

    static BoolMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return wpr_; }

    bool get(std::size_t r, std::size_t c) const noexcept {
        return (words_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1U;
    }

    void set(std::size_t r, std::size_t c, bool value = true) noexcept {
        Word& w = words_[r * wpr_ + c / kWordBits];
        const Word bit = Word{1} << (c % kWordBits);
        if (value) {
            w |= bit;
        } else {
            w &= ~bit;
        }
    }

    std::span<const Word> row(std::size_t r) const noexcept {
        return {words_.data() + r * wpr_, wpr_};
    }
    std::span<Word> row(std::size_t r) noexcept {
        return {words_.data() + r * wpr_, wpr_};
    }

    bool all_zeros() const noexcept;
    bool all_ones() const noexcept;
    std::size_t count() const noexcept;

    /// Word value that masks off the padding bits of a row's last word.
    Word last_word_mask() const noexcept;

    bool operator==(const BoolMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<Word> words_;
};

/// result[i][j] = OR_k (a[i][k] AND b[k][j]) — the boolean matrix product.
/// Rejects mismatched inner dimensions, including the vacuous zero case.
BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b);

/// result[i][j] = AND_k (a[i][k] <= b[k][j]). The integer form
/// min_k(b[k][j] - a[i][k] + 1) can evaluate to 2; values >= 1 are emitted
/// as 1 so results stay boolean.
BoolMatrix odot_product(const BoolMatrix& a, const BoolMatrix& b);

/// Products of a matrix against its own transpose, computed row-against-row
/// without materialising the transpose.
BoolMatrix bool_gram(const BoolMatrix& m);  // m * m^T under bool_product
BoolMatrix odot_gram(const BoolMatrix& m);  // m * m^T under odot_product

BoolMatrix elementwise_or(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix elementwise_and(const BoolMatrix& a, const BoolMatrix& b);

BoolMatrix transpose(const BoolMatrix& a);

/// Text dump: one row per line, '0'/'1' characters, no separators.
std::string dump_text(const BoolMatrix& m);

/// True when the two packed rows share a set bit.
bool rows_intersect(std::span<const BoolMatrix::Word> a,
                    std::span<const BoolMatrix::Word> b) noexcept;

/// True when every set bit of a is also set in b.
bool row_implies(std::span<const BoolMatrix::Word> a,
                 std::span<const BoolMatrix::Word> b) noexcept;

/// Worker threads used by row-partitioned kernels (default 1). Each thread
/// owns a disjoint row range, so results are bit-identical to sequential
/// evaluation regardless of the setting.
void set_kernel_threads(unsigned n) noexcept;
unsigned kernel_threads() noexcept;

namespace detail {
/// Runs body(lo, hi) over a partition of [0, n_rows) on kernel_threads()
/// threads.
void parallel_rows(std::size_t n_rows,
                   const std::function<void(std::size_t, std::size_t)>& body);
}  // namespace detail

}  // namespace covmat
