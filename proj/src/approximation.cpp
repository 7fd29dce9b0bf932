#include "covmat/approximation.hpp"

#include <bit>
#include <stdexcept>

namespace covmat {

namespace {

void check_apply_shapes(const char* op, const BoolMatrix& m, const SubsetVector& x) {
    if (m.cols() != x.size()) {
        throw ShapeError(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but subset has size " +
                         std::to_string(x.size()));
    }
}

void check_char_shapes(const char* op, const CharMatrix& c, const SubsetVector& x) {
    if (c.m.rows() != x.size() || c.m.cols() != x.size()) {
        throw ShapeError(std::string(op) + ": characteristic matrix is " +
                         std::to_string(c.m.rows()) + "x" + std::to_string(c.m.cols()) +
                         " but subset has size " + std::to_string(x.size()));
    }
}

void check_subset_size(const char* op, const CoveringSystem& s, const SubsetVector& x) {
    if (s.universe.size() != x.size()) {
        throw ShapeError(std::string(op) + ": universe has " +
                         std::to_string(s.universe.size()) + " objects but subset has size " +
                         std::to_string(x.size()));
    }
}

}  // namespace

SubsetVector SubsetVector::from_indices(std::size_t size,
                                        std::span<const std::size_t> indices) {
    SubsetVector out(size);
    for (const std::size_t i : indices) {
        if (i >= size) {
            throw std::out_of_range("SubsetVector: index " + std::to_string(i) +
                                    " out of range (size " + std::to_string(size) + ")");
        }
        out.set(i);
    }
    return out;
}

SubsetVector SubsetVector::full(std::size_t size) {
    SubsetVector out(size);
    for (auto& w : out.words_) {
        w = ~Word{0};
    }
    if (!out.words_.empty()) {
        const std::size_t rem = size % BoolMatrix::kWordBits;
        if (rem != 0) {
            out.words_.back() = (Word{1} << rem) - 1;
        }
    }
    return out;
}

std::size_t SubsetVector::count() const noexcept {
    std::size_t total = 0;
    for (const Word w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

SubsetVector SubsetVector::complement() const {
    SubsetVector out(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = ~words_[w];
    }
    if (!out.words_.empty()) {
        const std::size_t rem = n_ % BoolMatrix::kWordBits;
        if (rem != 0) {
            out.words_.back() &= (Word{1} << rem) - 1;
        }
    }
    return out;
}

std::vector<std::size_t> SubsetVector::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t i = 0; i < n_; ++i) {
        if (test(i)) {
            out.push_back(i);
        }
    }
    return out;
}

SubsetVector bool_apply(const BoolMatrix& m, const SubsetVector& x) {
    check_apply_shapes("bool_apply", m, x);
    SubsetVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (rows_intersect(m.row(i), x.words())) {
            out.set(i);
        }
    }
    return out;
}

SubsetVector odot_apply(const BoolMatrix& m, const SubsetVector& x) {
    check_apply_shapes("odot_apply", m, x);
    SubsetVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (row_implies(m.row(i), x.words())) {
            out.set(i);
        }
    }
    return out;
}

ApproxPair second_approx(const CharMatrix& g, const SubsetVector& x) {
    if (g.kind != CharKind::Type1) {
        throw std::invalid_argument("second_approx: needs a type-1 characteristic matrix");
    }
    check_char_shapes("second_approx", g, x);
    return {ApproxKind::Second, odot_apply(g.m, x), bool_apply(g.m, x)};
}

ApproxPair sixth_approx(const CharMatrix& p, const SubsetVector& x) {
    if (p.kind != CharKind::Type2) {
        throw std::invalid_argument("sixth_approx: needs a type-2 characteristic matrix");
    }
    check_char_shapes("sixth_approx", p, x);
    return {ApproxKind::Sixth, odot_apply(p.m, x), bool_apply(p.m, x)};
}

namespace {

// Union of all pooled blocks that meet x.
SubsetVector blocks_meeting(const CoveringSystem& s, const SubsetVector& x) {
    SubsetVector out(s.universe.size());
    for (const Covering& c : s.coverings) {
        for (const auto& block : c.blocks) {
            bool meets = false;
            for (const std::size_t idx : block) {
                if (x.test(idx)) {
                    meets = true;
                    break;
                }
            }
            if (!meets) {
                continue;
            }
            for (const std::size_t idx : block) {
                out.set(idx);
            }
        }
    }
    return out;
}

}  // namespace

ApproxPair second_oracle(const CoveringSystem& s, const SubsetVector& x) {
    check_subset_size("second_oracle", s, x);
    SubsetVector upper = blocks_meeting(s, x);
    SubsetVector lower = blocks_meeting(s, x.complement()).complement();
    return {ApproxKind::Second, std::move(lower), std::move(upper)};
}

ApproxPair sixth_oracle(const CoveringSystem& s, const SubsetVector& x) {
    check_subset_size("sixth_oracle", s, x);
    const std::size_t n = s.universe.size();
    SubsetVector upper(n);
    SubsetVector lower(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nbr = neighborhood(s, i);
        bool meets = false;
        bool contained = true;
        for (const std::size_t j : nbr) {
            if (x.test(j)) {
                meets = true;
            } else {
                contained = false;
            }
        }
        if (meets) {
            upper.set(i);
        }
        if (contained) {
            lower.set(i);
        }
    }
    return {ApproxKind::Sixth, std::move(lower), std::move(upper)};
}

}  // namespace covmat
