#include "covmat/reduct.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace covmat {

namespace {

using Mask = std::uint32_t;

ProductPair products_of(const BoolMatrix& characteristic, const BoolMatrix& decision) {
    return {bool_product(characteristic, decision), odot_product(characteristic, decision)};
}

BoolMatrix subset_char(const DecisionSystem& s, CharKind kind, Mask mask) {
    std::vector<std::size_t> selected;
    for (std::size_t k = 0; k < s.conditional.size(); ++k) {
        if (mask & (Mask{1} << k)) {
            selected.push_back(k);
        }
    }
    const BoolMatrix m =
        family_matrix_selected(s.conditional, selected, s.universe.size());
    return kind == CharKind::Type1 ? bool_gram(m) : odot_gram(m);
}

std::vector<std::string> mask_names(const std::vector<std::string>& names, Mask mask) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (mask & (Mask{1} << k)) {
            out.push_back(names[k]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Masks of all nonempty subsets, ordered by cardinality then by the
/// lexicographic order of their sorted name lists.
std::vector<Mask> enumeration_order(const std::vector<std::string>& names) {
    const std::size_t m = names.size();
    std::vector<Mask> masks;
    masks.reserve((std::size_t{1} << m) - 1);
    for (Mask mask = 1; mask < (Mask{1} << m); ++mask) {
        masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end(), [&](Mask a, Mask b) {
        const int ca = std::popcount(a);
        const int cb = std::popcount(b);
        if (ca != cb) {
            return ca < cb;
        }
        return mask_names(names, a) < mask_names(names, b);
    });
    return masks;
}

void check_bound(std::size_t conditional_count, std::size_t max_conditional) {
    // Subset masks are 32-bit, so 31 coverings is a hard ceiling whatever
    // the configured bound says.
    const std::size_t effective = std::min<std::size_t>(max_conditional, 31);
    if (conditional_count > effective) {
        throw ReductBoundError("reduct enumeration refused: " +
                               std::to_string(conditional_count) +
                               " conditional coverings exceed the bound of " +
                               std::to_string(effective));
    }
    if (conditional_count == 0) {
        throw std::invalid_argument("reduct: no conditional coverings");
    }
}

/// Minimal matching subsets: those with no proper nonempty matching subset.
std::vector<std::vector<std::string>> minimal_reducts(
    const std::vector<std::string>& names,
    const std::unordered_map<Mask, SubsetEval>& cache) {
    std::vector<Mask> matching;
    for (const auto& [mask, eval] : cache) {
        if (eval.matches_reference) {
            matching.push_back(mask);
        }
    }
    std::vector<std::vector<std::string>> out;
    for (const Mask mask : matching) {
        bool minimal = true;
        for (const Mask other : matching) {
            if (other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            out.push_back(mask_names(names, mask));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
    return out;
}

std::vector<std::size_t> indices_of(Mask mask, std::size_t m) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < m; ++k) {
        if (mask & (Mask{1} << k)) {
            out.push_back(k);
        }
    }
    return out;
}

ProductPair decision_products(const DecisionSystem& s, CharKind kind,
                              std::span<const std::size_t> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("decision_products: subset is empty");
    }
    for (const std::size_t k : subset) {
        if (k >= s.conditional.size()) {
            throw std::out_of_range("decision_products: covering index " +
                                    std::to_string(k) + " out of range");
        }
    }
    const BoolMatrix m = family_matrix_selected(s.conditional, subset, s.universe.size());
    const BoolMatrix characteristic = kind == CharKind::Type1 ? bool_gram(m) : odot_gram(m);
    const BoolMatrix decision = family_matrix(s.decision, s.universe.size());
    return products_of(characteristic, decision);
}

}  // namespace

ProductPair decision_products_t1(const DecisionSystem& s,
                                 std::span<const std::size_t> subset) {
    return decision_products(s, CharKind::Type1, subset);
}

ProductPair decision_products_t2(const DecisionSystem& s,
                                 std::span<const std::size_t> subset) {
    return decision_products(s, CharKind::Type2, subset);
}

ReductReport find_reducts(const DecisionSystem& s, CharKind kind,
                          std::size_t max_conditional) {
    check_bound(s.conditional.size(), max_conditional);
    if (s.decision.empty()) {
        throw std::invalid_argument("find_reducts: no decision coverings");
    }
    ReductReport report;
    report.kind = kind;
    for (const Covering& c : s.conditional) {
        report.conditional_names.push_back(c.name);
    }
    const BoolMatrix decision = family_matrix(s.decision, s.universe.size());
    const Mask full = static_cast<Mask>((std::uint64_t{1} << s.conditional.size()) - 1);

    for (const Mask mask : enumeration_order(report.conditional_names)) {
        SubsetEval eval;
        eval.characteristic = subset_char(s, kind, mask);
        eval.products = products_of(eval.characteristic, decision);
        report.cache.emplace(mask, std::move(eval));
    }
    report.reference = report.cache.at(full).products;
    for (auto& [mask, eval] : report.cache) {
        eval.matches_reference = eval.products == report.reference;
    }
    report.subsets_tested = report.cache.size();
    report.subsets_evaluated = report.cache.size();
    report.reducts = minimal_reducts(report.conditional_names, report.cache);
    return report;
}

ReductReport recheck_after_add(const DecisionSystem& s, const ReductReport& prior,
                               const Covering& added, std::size_t max_conditional) {
    const std::size_t m_old = prior.conditional_names.size();
    if (s.conditional.size() != m_old) {
        throw std::invalid_argument("recheck_after_add: prior report does not match system");
    }
    for (std::size_t k = 0; k < m_old; ++k) {
        if (s.conditional[k].name != prior.conditional_names[k]) {
            throw std::invalid_argument(
                "recheck_after_add: prior report does not match system");
        }
    }
    const auto violations = validate_covering(added, s.universe.size());
    if (!violations.empty()) {
        throw std::invalid_argument("recheck_after_add: universe mismatch for covering \"" +
                                    added.name + "\": " + to_string(violations.front()));
    }
    check_bound(m_old + 1, max_conditional);

    DecisionSystem extended = s;
    extended.conditional.push_back(added);

    ReductReport report;
    report.kind = prior.kind;
    report.conditional_names = prior.conditional_names;
    report.conditional_names.push_back(added.name);

    const BoolMatrix decision = family_matrix(s.decision, s.universe.size());
    const BoolMatrix added_char =
        prior.kind == CharKind::Type1
            ? bool_gram(covering_matrix(added, s.universe.size()))
            : odot_gram(covering_matrix(added, s.universe.size()));
    const Mask new_bit = Mask{1} << m_old;

    // Subsets without the new covering keep their cached products; subsets
    // with it are the old characteristic joined with the new covering's own.
    std::size_t evaluated = 0;
    for (const auto& [mask, eval] : prior.cache) {
        report.cache.emplace(mask, eval);
    }
    {
        SubsetEval solo;
        solo.characteristic = added_char;
        solo.products = products_of(solo.characteristic, decision);
        report.cache.emplace(new_bit, std::move(solo));
        ++evaluated;
    }
    for (const auto& [mask, eval] : prior.cache) {
        SubsetEval joined;
        joined.characteristic =
            prior.kind == CharKind::Type1
                ? elementwise_or(eval.characteristic, added_char)
                : elementwise_and(eval.characteristic, added_char);
        joined.products = products_of(joined.characteristic, decision);
        report.cache.emplace(mask | new_bit, std::move(joined));
        ++evaluated;
    }

    const Mask full = static_cast<Mask>((std::uint64_t{1} << (m_old + 1)) - 1);
    report.reference = report.cache.at(full).products;
    for (auto& [mask, eval] : report.cache) {
        eval.matches_reference = eval.products == report.reference;
    }
    report.subsets_tested = report.cache.size();
    report.subsets_evaluated = evaluated;
    report.reducts = minimal_reducts(report.conditional_names, report.cache);
    return report;
}

}  // namespace covmat
