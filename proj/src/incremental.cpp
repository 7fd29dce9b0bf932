#include "covmat/incremental.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace covmat {

namespace {

void require_kind(const char* op, const CharMatrix& c, CharKind kind) {
    if (c.kind != kind) {
        throw std::invalid_argument(std::string(op) + ": wrong characteristic matrix kind");
    }
}

void require_covering(const char* op, const Covering& c, std::size_t n) {
    const auto violations = validate_covering(c, n);
    if (!violations.empty()) {
        throw std::invalid_argument(std::string(op) + ": universe mismatch for covering \"" +
                                    c.name + "\": " + to_string(violations.front()));
    }
}

std::string extended_source(const CharMatrix& base, const Covering& added) {
    return base.source.empty() ? added.name : base.source + "+" + added.name;
}

// Row loop with per-chunk audit partials, summed in chunk order so the
// totals are deterministic under row partitioning.
template <typename RowFn>
BoolMatrix rowwise_update(std::size_t n, UpdateAudit* audit, RowFn&& fn) {
    BoolMatrix result(n, n);
    const unsigned threads = kernel_threads();
    const std::size_t chunk =
        threads <= 1 ? n : std::max<std::size_t>(1, (n + threads - 1) / threads);
    const std::size_t n_chunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<UpdateAudit> partial(n_chunks);
    detail::parallel_rows(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            fn(i, result, partial[i / chunk]);
        }
    });
    if (audit) {
        for (const UpdateAudit& a : partial) {
            *audit += a;
        }
    }
    return result;
}

using Word = BoolMatrix::Word;

std::size_t word_popcount(Word w) {
    return static_cast<std::size_t>(std::popcount(w));
}

}  // namespace

CharMatrix gamma_add(const CharMatrix& type1, const Covering& added, UpdateAudit* audit) {
    require_kind("gamma_add", type1, CharKind::Type1);
    const std::size_t n = type1.size();
    require_covering("gamma_add", added, n);
    const std::size_t cells = n * n;
    if (type1.m.all_ones()) {
        if (audit) {
            *audit += {cells, 0};
        }
        return {CharKind::Type1, type1.m, extended_source(type1, added)};
    }
    const BoolMatrix added_gram = bool_gram(covering_matrix(added, n));
    if (audit) {
        *audit += {0, cells};
    }
    return {CharKind::Type1, elementwise_or(type1.m, added_gram),
            extended_source(type1, added)};
}

CharMatrix pi_add(const CharMatrix& type2, const Covering& added, UpdateAudit* audit) {
    require_kind("pi_add", type2, CharKind::Type2);
    const std::size_t n = type2.size();
    require_covering("pi_add", added, n);
    const std::size_t cells = n * n;
    if (type2.m.all_zeros()) {
        if (audit) {
            *audit += {cells, 0};
        }
        return {CharKind::Type2, type2.m, extended_source(type2, added)};
    }
    const BoolMatrix added_gram = odot_gram(covering_matrix(added, n));
    if (audit) {
        *audit += {0, cells};
    }
    return {CharKind::Type2, elementwise_and(type2.m, added_gram),
            extended_source(type2, added)};
}

CharMatrix gamma_add_cellwise(const CharMatrix& type1, const Covering& added,
                              UpdateAudit* audit) {
    require_kind("gamma_add_cellwise", type1, CharKind::Type1);
    const std::size_t n = type1.size();
    require_covering("gamma_add_cellwise", added, n);
    const BoolMatrix mc = covering_matrix(added, n);
    const Word last_mask = type1.m.last_word_mask();
    const std::size_t wpr = type1.m.words_per_row();
    BoolMatrix result = rowwise_update(n, audit, [&](std::size_t i, BoolMatrix& out,
                                                     UpdateAudit& a) {
        const auto prior = type1.m.row(i);
        auto dest = out.row(i);
        const auto mi = mc.row(i);
        for (std::size_t w = 0; w < wpr; ++w) {
            const Word decided = prior[w];  // set cells stay set
            Word pending = ~decided;
            if (w + 1 == wpr) {
                pending &= last_mask;
            }
            dest[w] = decided;
            a.cells_copied += word_popcount(decided);
            a.cells_recomputed += word_popcount(pending);
            while (pending != 0) {
                const int bit = std::countr_zero(pending);
                pending &= pending - 1;
                const std::size_t j = w * BoolMatrix::kWordBits + bit;
                if (rows_intersect(mi, mc.row(j))) {
                    dest[w] |= Word{1} << bit;
                }
            }
        }
    });
    return {CharKind::Type1, std::move(result), extended_source(type1, added)};
}

CharMatrix pi_add_cellwise(const CharMatrix& type2, const Covering& added,
                           UpdateAudit* audit) {
    require_kind("pi_add_cellwise", type2, CharKind::Type2);
    const std::size_t n = type2.size();
    require_covering("pi_add_cellwise", added, n);
    const BoolMatrix mc = covering_matrix(added, n);
    const std::size_t wpr = type2.m.words_per_row();
    BoolMatrix result = rowwise_update(n, audit, [&](std::size_t i, BoolMatrix& out,
                                                     UpdateAudit& a) {
        const auto prior = type2.m.row(i);
        auto dest = out.row(i);
        const auto mi = mc.row(i);
        std::size_t seen = 0;
        for (std::size_t w = 0; w < wpr; ++w) {
            Word pending = prior[w];  // only set cells can survive
            const std::size_t cells_in_word = std::min(n - seen, BoolMatrix::kWordBits);
            seen += cells_in_word;
            const std::size_t set_count = word_popcount(pending);
            a.cells_recomputed += set_count;
            a.cells_copied += cells_in_word - set_count;  // zeros stay zero
            while (pending != 0) {
                const int bit = std::countr_zero(pending);
                pending &= pending - 1;
                const std::size_t j = w * BoolMatrix::kWordBits + bit;
                if (row_implies(mi, mc.row(j))) {
                    dest[w] |= Word{1} << bit;
                }
            }
        }
    });
    return {CharKind::Type2, std::move(result), extended_source(type2, added)};
}

namespace {

void check_removal(const char* op, const CharMatrix& prior, const CoveringSystem& survivors,
                   const Covering& removed) {
    if (survivors.coverings.empty()) {
        throw std::invalid_argument(std::string(op) + ": no surviving coverings");
    }
    if (survivors.universe.size() != prior.size()) {
        throw std::invalid_argument(std::string(op) + ": universe mismatch: matrix is " +
                                    std::to_string(prior.size()) + "x" +
                                    std::to_string(prior.size()) + " but universe has " +
                                    std::to_string(survivors.universe.size()) + " objects");
    }
    require_covering(op, removed, prior.size());
}

}  // namespace

RemovalCellAction removal_cell_action(CharKind kind, bool prior, bool removed_cell) {
    if (kind == CharKind::Type1) {
        if (!prior) {
            return RemovalCellAction::SetZero;
        }
        return removed_cell ? RemovalCellAction::Recompute : RemovalCellAction::SetOne;
    }
    if (prior) {
        return RemovalCellAction::SetOne;
    }
    return removed_cell ? RemovalCellAction::SetZero : RemovalCellAction::Recompute;
}

CharMatrix gamma_remove(const CharMatrix& type1, const CoveringSystem& survivors,
                        const Covering& removed, UpdateAudit* audit) {
    require_kind("gamma_remove", type1, CharKind::Type1);
    check_removal("gamma_remove", type1, survivors, removed);
    const std::size_t n = type1.size();
    const BoolMatrix mr = covering_matrix(removed, n);
    const BoolMatrix ms = system_matrix(survivors);
    const std::size_t wpr = type1.m.words_per_row();
    BoolMatrix result = rowwise_update(n, audit, [&](std::size_t i, BoolMatrix& out,
                                                     UpdateAudit& a) {
        const auto prior = type1.m.row(i);
        auto dest = out.row(i);
        const auto mri = mr.row(i);
        const auto msi = ms.row(i);
        std::size_t seen = 0;
        for (std::size_t w = 0; w < wpr; ++w) {
            Word pending = prior[w];  // zero cells stay zero
            const std::size_t cells_in_word = std::min(n - seen, BoolMatrix::kWordBits);
            seen += cells_in_word;
            a.cells_copied += cells_in_word - word_popcount(pending);
            while (pending != 0) {
                const int bit = std::countr_zero(pending);
                pending &= pending - 1;
                const std::size_t j = w * BoolMatrix::kWordBits + bit;
                if (!rows_intersect(mri, mr.row(j))) {
                    // The removed covering did not supply this cell.
                    dest[w] |= Word{1} << bit;
                    ++a.cells_copied;
                } else {
                    ++a.cells_recomputed;
                    if (rows_intersect(msi, ms.row(j))) {
                        dest[w] |= Word{1} << bit;
                    }
                }
            }
        }
    });
    return {CharKind::Type1, std::move(result), family_source_name(survivors.coverings)};
}

CharMatrix pi_remove(const CharMatrix& type2, const CoveringSystem& survivors,
                     const Covering& removed, UpdateAudit* audit) {
    require_kind("pi_remove", type2, CharKind::Type2);
    check_removal("pi_remove", type2, survivors, removed);
    const std::size_t n = type2.size();
    const BoolMatrix mr = covering_matrix(removed, n);
    const BoolMatrix ms = system_matrix(survivors);
    const Word last_mask = type2.m.last_word_mask();
    const std::size_t wpr = type2.m.words_per_row();
    BoolMatrix result = rowwise_update(n, audit, [&](std::size_t i, BoolMatrix& out,
                                                     UpdateAudit& a) {
        const auto prior = type2.m.row(i);
        auto dest = out.row(i);
        const auto mri = mr.row(i);
        const auto msi = ms.row(i);
        for (std::size_t w = 0; w < wpr; ++w) {
            // Set cells survive: dropping columns cannot break containment.
            dest[w] = prior[w];
            a.cells_copied += word_popcount(prior[w]);
            Word pending = ~prior[w];
            if (w + 1 == wpr) {
                pending &= last_mask;
            }
            while (pending != 0) {
                const int bit = std::countr_zero(pending);
                pending &= pending - 1;
                const std::size_t j = w * BoolMatrix::kWordBits + bit;
                if (row_implies(mri, mr.row(j))) {
                    ++a.cells_copied;  // a surviving column broke it: stays 0
                } else {
                    ++a.cells_recomputed;
                    if (row_implies(msi, ms.row(j))) {
                        dest[w] |= Word{1} << bit;
                    }
                }
            }
        }
    });
    return {CharKind::Type2, std::move(result), family_source_name(survivors.coverings)};
}

ApproxPair pipeline_nis(const CoveringSystem& extended, const SubsetVector& x) {
    return second_approx(gamma(extended), x);
}

ApproxPair pipeline_is(const CharMatrix& type1_base, const Covering& added,
                       const SubsetVector& x) {
    return second_approx(gamma_add_cellwise(type1_base, added), x);
}

ApproxPair pipeline_is(const CoveringSystem& base, const Covering& added,
                       const SubsetVector& x) {
    return pipeline_is(gamma(base), added, x);
}

ApproxPair pipeline_nix(const CoveringSystem& extended, const SubsetVector& x) {
    return sixth_approx(pi(extended), x);
}

ApproxPair pipeline_ix(const CharMatrix& type2_base, const Covering& added,
                       const SubsetVector& x) {
    return sixth_approx(pi_add_cellwise(type2_base, added), x);
}

ApproxPair pipeline_ix(const CoveringSystem& base, const Covering& added,
                       const SubsetVector& x) {
    return pipeline_ix(pi(base), added, x);
}

EditOutcome apply_edits(const CoveringSystem& base, std::span<const SystemEdit> edits,
                        CharKind kind) {
    EditOutcome out{base,
                    kind == CharKind::Type1 ? gamma(base) : pi(base),
                    {}};
    // Additions first, then removals.
    for (const SystemEdit& e : edits) {
        if (e.action != SystemEdit::Action::Add) {
            continue;
        }
        if (out.system.find(e.covering.name) != nullptr) {
            throw std::invalid_argument("apply_edits: covering \"" + e.covering.name +
                                        "\" already present");
        }
        UpdateAudit step;
        out.characteristic =
            kind == CharKind::Type1
                ? gamma_add_cellwise(out.characteristic, e.covering, &step)
                : pi_add_cellwise(out.characteristic, e.covering, &step);
        out.system.coverings.push_back(e.covering);
        out.audit += step;
    }
    for (const SystemEdit& e : edits) {
        if (e.action != SystemEdit::Action::Remove) {
            continue;
        }
        const auto it = std::find_if(
            out.system.coverings.begin(), out.system.coverings.end(),
            [&](const Covering& c) { return c.name == e.remove_name; });
        if (it == out.system.coverings.end()) {
            throw std::invalid_argument("apply_edits: no covering named \"" + e.remove_name +
                                        "\"");
        }
        Covering removed = *it;
        CoveringSystem survivors{out.system.universe, {}};
        survivors.coverings.reserve(out.system.coverings.size() - 1);
        for (const Covering& c : out.system.coverings) {
            if (&c != &*it) {
                survivors.coverings.push_back(c);
            }
        }
        UpdateAudit step;
        out.characteristic = kind == CharKind::Type1
                                 ? gamma_remove(out.characteristic, survivors, removed, &step)
                                 : pi_remove(out.characteristic, survivors, removed, &step);
        out.system = std::move(survivors);
        out.audit += step;
    }
    return out;
}

}  // namespace covmat
