#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "covmat/incremental.hpp"

namespace covmat {

/// The two products of a characteristic matrix against the concatenated
/// decision matrix.
struct ProductPair {
    BoolMatrix dot;
    BoolMatrix odot;

    bool operator==(const ProductPair&) const = default;
};

/// Thrown when the conditional family is larger than the enumeration bound.
class ReductBoundError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One evaluated subset of the conditional family, cached so a later
/// covering addition can reuse it.
struct SubsetEval {
    BoolMatrix characteristic;  // gamma/pi of the subset
    ProductPair products;
    bool matches_reference = false;
};

struct ReductReport {
    CharKind kind;
    /// Each reduct as lexicographically sorted covering names; reducts
    /// ordered by cardinality, then by name list.
    std::vector<std::vector<std::string>> reducts;
    ProductPair reference;  // products of the full conditional family
    std::size_t subsets_tested = 0;     // all nonempty subsets considered
    std::size_t subsets_evaluated = 0;  // products actually computed

    // Cache for incremental rechecks. Masks index conditional_names.
    std::vector<std::string> conditional_names;
    std::unordered_map<std::uint32_t, SubsetEval> cache;
};

/// (gamma(P) * M_D, gamma(P) odot M_D) for a subset P of the conditional
/// coverings, given by indices. P must be nonempty.
ProductPair decision_products_t1(const DecisionSystem& s,
                                 std::span<const std::size_t> subset);

/// Type-2 analogue via pi(P).
ProductPair decision_products_t2(const DecisionSystem& s,
                                 std::span<const std::size_t> subset);

/// Enumerates every nonempty subset of the conditional family in increasing
/// cardinality. A subset is a reduct when its two products equal the full
/// family's and no proper nonempty subset's products do.
/// Refuses families larger than max_conditional.
ReductReport find_reducts(const DecisionSystem& s, CharKind kind,
                          std::size_t max_conditional = 20);

/// Reduct report for the system extended by one covering, reusing the prior
/// report's cached subset products; only subsets involving the new covering
/// are evaluated, and the new reference comes from the incrementally updated
/// characteristic matrix.
ReductReport recheck_after_add(const DecisionSystem& s, const ReductReport& prior,
                               const Covering& added, std::size_t max_conditional = 20);

}  // namespace covmat
