#pragma once

#include <span>
#include <vector>

#include "covmat/characteristic.hpp"

namespace covmat {

/// Indicator of a subset X of the universe, packed like one matrix row.
class SubsetVector {
  public:
    using Word = BoolMatrix::Word;

    SubsetVector() = default;
    explicit SubsetVector(std::size_t size)
        : n_(size), words_((size + BoolMatrix::kWordBits - 1) / BoolMatrix::kWordBits, 0) {}

    static SubsetVector from_indices(std::size_t size, std::span<const std::size_t> indices);
    static SubsetVector full(std::size_t size);

    std::size_t size() const noexcept { return n_; }
    std::size_t count() const noexcept;

    bool test(std::size_t i) const noexcept {
        return (words_[i / BoolMatrix::kWordBits] >> (i % BoolMatrix::kWordBits)) & 1U;
    }
    void set(std::size_t i, bool value = true) noexcept {
        Word& w = words_[i / BoolMatrix::kWordBits];
        const Word bit = Word{1} << (i % BoolMatrix::kWordBits);
        if (value) {
            w |= bit;
        } else {
            w &= ~bit;
        }
    }

    SubsetVector complement() const;
    std::vector<std::size_t> indices() const;

    std::span<const Word> words() const noexcept { return words_; }

    bool operator==(const SubsetVector&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<Word> words_;
};

enum class ApproxKind { Second, Sixth };

/// A lower/upper approximation result, both sides subsets of the universe.
struct ApproxPair {
    ApproxKind kind;
    SubsetVector lower;
    SubsetVector upper;

    bool operator==(const ApproxPair&) const = default;
};

/// m applied to x under the boolean product: bit i set iff row i of m meets x.
SubsetVector bool_apply(const BoolMatrix& m, const SubsetVector& x);

/// m applied to x under the odot product: bit i set iff row i of m lies in x.
SubsetVector odot_apply(const BoolMatrix& m, const SubsetVector& x);

/// Second approximations from a type-1 characteristic matrix:
/// upper = g * x (boolean product), lower = g * x (odot product).
ApproxPair second_approx(const CharMatrix& g, const SubsetVector& x);

/// Sixth approximations from a type-2 characteristic matrix, same products.
ApproxPair sixth_approx(const CharMatrix& p, const SubsetVector& x);

/// Definitional route, no matrices: upper = union of blocks meeting X,
/// lower = complement of the upper approximation of the complement. Blocks
/// pool across the system's coverings.
ApproxPair second_oracle(const CoveringSystem& s, const SubsetVector& x);

/// Definitional route via the neighborhood operator: upper = objects whose
/// neighborhood meets X, lower = objects whose neighborhood lies in X.
ApproxPair sixth_oracle(const CoveringSystem& s, const SubsetVector& x);

}  // namespace covmat
