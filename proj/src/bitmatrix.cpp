#include "covmat/bitmatrix.hpp"

#include <atomic>
#include <bit>
#include <thread>

namespace covmat {

namespace {

std::string shape_of(const BoolMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_inner(const char* op, const BoolMatrix& a, const BoolMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError(std::string(op) + ": inner dimensions differ: " + shape_of(a) +
                         " by " + shape_of(b));
    }
    if (a.cols() == 0) {
        throw ShapeError(std::string(op) + ": inner dimension is zero: " + shape_of(a) +
                         " by " + shape_of(b));
    }
}

void check_same_shape(const char* op, const BoolMatrix& a, const BoolMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shapes differ: " + shape_of(a) + " vs " +
                         shape_of(b));
    }
}

std::atomic<unsigned> g_kernel_threads{1};

}  // namespace

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols, bool value)
    : rows_(rows),
      cols_(cols),
      wpr_((cols + kWordBits - 1) / kWordBits),
      words_(rows_ * wpr_, value ? ~Word{0} : Word{0}) {
    if (value && wpr_ > 0) {
        const Word mask = last_word_mask();
        for (std::size_t r = 0; r < rows_; ++r) {
            words_[r * wpr_ + wpr_ - 1] = mask;
        }
    }
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
    BoolMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i);
    }
    return m;
}

BoolMatrix::Word BoolMatrix::last_word_mask() const noexcept {
    const std::size_t rem = cols_ % kWordBits;
    return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

bool BoolMatrix::all_zeros() const noexcept {
    for (const Word w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

bool BoolMatrix::all_ones() const noexcept {
    if (rows_ == 0 || cols_ == 0) {
        return false;
    }
    const Word mask = last_word_mask();
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t w = 0; w + 1 < wpr_; ++w) {
            if (words_[r * wpr_ + w] != ~Word{0}) {
                return false;
            }
        }
        if (words_[r * wpr_ + wpr_ - 1] != mask) {
            return false;
        }
    }
    return true;
}

std::size_t BoolMatrix::count() const noexcept {
    std::size_t total = 0;
    for (const Word w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

void set_kernel_threads(unsigned n) noexcept {
    g_kernel_threads.store(n == 0 ? 1 : n, std::memory_order_relaxed);
}

unsigned kernel_threads() noexcept {
    return g_kernel_threads.load(std::memory_order_relaxed);
}

namespace detail {

void parallel_rows(std::size_t n_rows,
                   const std::function<void(std::size_t, std::size_t)>& body) {
    const unsigned threads = kernel_threads();
    if (threads <= 1 || n_rows < 2 * threads) {
        body(0, n_rows);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n_rows + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * chunk;
        const std::size_t hi = std::min(n_rows, lo + chunk);
        if (lo >= hi) {
            break;
        }
        workers.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& w : workers) {
        w.join();
    }
}

}  // namespace detail

bool rows_intersect(std::span<const BoolMatrix::Word> a,
                    std::span<const BoolMatrix::Word> b) noexcept {
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (a[w] & b[w]) {
            return true;
        }
    }
    return false;
}

bool row_implies(std::span<const BoolMatrix::Word> a,
                 std::span<const BoolMatrix::Word> b) noexcept {
    // Padding bits are zero on the left operand, so no masking is needed.
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (a[w] & ~b[w]) {
            return false;
        }
    }
    return true;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    check_inner("bool_product", a, b);
    const BoolMatrix bt = transpose(b);
    BoolMatrix result(a.rows(), b.cols());
    detail::parallel_rows(a.rows(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ai = a.row(i);
            for (std::size_t j = 0; j < bt.rows(); ++j) {
                if (rows_intersect(ai, bt.row(j))) {
                    result.set(i, j);
                }
            }
        }
    });
    return result;
}

BoolMatrix odot_product(const BoolMatrix& a, const BoolMatrix& b) {
    check_inner("odot_product", a, b);
    const BoolMatrix bt = transpose(b);
    BoolMatrix result(a.rows(), b.cols());
    detail::parallel_rows(a.rows(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ai = a.row(i);
            for (std::size_t j = 0; j < bt.rows(); ++j) {
                if (row_implies(ai, bt.row(j))) {
                    result.set(i, j);
                }
            }
        }
    });
    return result;
}

BoolMatrix bool_gram(const BoolMatrix& m) {
    if (m.cols() == 0) {
        throw ShapeError("bool_gram: inner dimension is zero: " + shape_of(m));
    }
    BoolMatrix result(m.rows(), m.rows());
    detail::parallel_rows(m.rows(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto mi = m.row(i);
            for (std::size_t j = 0; j < m.rows(); ++j) {
                if (rows_intersect(mi, m.row(j))) {
                    result.set(i, j);
                }
            }
        }
    });
    return result;
}

BoolMatrix odot_gram(const BoolMatrix& m) {
    if (m.cols() == 0) {
        throw ShapeError("odot_gram: inner dimension is zero: " + shape_of(m));
    }
    BoolMatrix result(m.rows(), m.rows());
    detail::parallel_rows(m.rows(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto mi = m.row(i);
            for (std::size_t j = 0; j < m.rows(); ++j) {
                if (row_implies(mi, m.row(j))) {
                    result.set(i, j);
                }
            }
        }
    });
    return result;
}

BoolMatrix elementwise_or(const BoolMatrix& a, const BoolMatrix& b) {
    check_same_shape("elementwise_or", a, b);
    BoolMatrix result(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto ra = a.row(r);
        const auto rb = b.row(r);
        auto out = result.row(r);
        for (std::size_t w = 0; w < ra.size(); ++w) {
            out[w] = ra[w] | rb[w];
        }
    }
    return result;
}

BoolMatrix elementwise_and(const BoolMatrix& a, const BoolMatrix& b) {
    check_same_shape("elementwise_and", a, b);
    BoolMatrix result(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto ra = a.row(r);
        const auto rb = b.row(r);
        auto out = result.row(r);
        for (std::size_t w = 0; w < ra.size(); ++w) {
            out[w] = ra[w] & rb[w];
        }
    }
    return result;
}

BoolMatrix transpose(const BoolMatrix& a) {
    BoolMatrix result(a.cols(), a.rows());
    detail::parallel_rows(a.cols(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            for (std::size_t i = 0; i < a.rows(); ++i) {
                if (a.get(i, j)) {
                    result.set(j, i);
                }
            }
        }
    });
    return result;
}

std::string dump_text(const BoolMatrix& m) {
    std::string out;
    out.reserve(m.rows() * (m.cols() + 1));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out.push_back(m.get(r, c) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace covmat
