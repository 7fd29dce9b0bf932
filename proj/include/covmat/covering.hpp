#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "covmat/bitmatrix.hpp"

namespace covmat {

/// Ordered list of distinct object names. Objects are addressed by 0-based
/// index everywhere inside the library; labels matter only at the boundary.
struct Universe {
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return labels.size(); }
    std::optional<std::size_t> index_of(std::string_view label) const;
};

/// A named family of blocks, each block an index set over the universe.
/// A valid covering has no empty block and its blocks union to the whole
/// universe; blocks may overlap. Block order is significant: matrix columns
/// follow it.
struct Covering {
    std::string name;
    std::vector<std::vector<std::size_t>> blocks;
};

struct CoveringSystem {
    Universe universe;
    std::vector<Covering> coverings;

    std::size_t object_count() const noexcept { return universe.size(); }
    const Covering* find(std::string_view name) const;
};

/// Coverings split into a conditional family and a decision family over one
/// universe. The decision family is stored exactly like the conditional one
/// and is concatenated into a single decision matrix where needed.
struct DecisionSystem {
    Universe universe;
    std::vector<Covering> conditional;
    std::vector<Covering> decision;
};

struct Violation {
    std::string covering;              // empty for system-level rules
    std::optional<std::size_t> block;  // block index within the covering
    std::string rule;
    std::string detail;
};

std::string to_string(const Violation& v);

std::vector<Violation> validate_covering(const Covering& c, std::size_t universe_size);
std::vector<Violation> validate(const CoveringSystem& s);
std::vector<Violation> validate(const DecisionSystem& s);

/// n x |blocks| membership matrix; column j is the indicator of block j.
BoolMatrix covering_matrix(const Covering& c, std::size_t universe_size);

/// Horizontal concatenation of the member coverings' matrices, in order.
BoolMatrix family_matrix(std::span<const Covering> family, std::size_t universe_size);

/// family_matrix restricted to the selected coverings, in selection order.
BoolMatrix family_matrix_selected(std::span<const Covering> family,
                                  std::span<const std::size_t> selected,
                                  std::size_t universe_size);

BoolMatrix system_matrix(const CoveringSystem& s);

/// Same universe, selected coverings in the given order.
/// Throws std::out_of_range on a bad index, std::invalid_argument when the
/// selection is empty.
CoveringSystem subsystem(const CoveringSystem& s, std::span<const std::size_t> keep);

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parsed document: a covering system plus the optional decision family.
struct SystemDocument {
    CoveringSystem system;
    std::vector<Covering> decision;

    bool has_decision() const noexcept { return !decision.empty(); }
    DecisionSystem decision_system() const;
};

/// Parses the JSON document
///   { "universe": [labels...],
///     "coverings": [ { "name": str, "blocks": [[indices...]...] }, ... ],
///     "decision":  [ same shape... ] }   // optional
/// Block entries are 0-based positions into "universe"; a string entry is
/// looked up as a label. Errors carry the offending field path.
SystemDocument parse_system(const std::string& text);

/// Parses a standalone covering document { "name": str, "blocks": [...] }
/// against an existing universe.
Covering parse_covering(const std::string& text, const Universe& universe);

std::string serialize(const CoveringSystem& s);
std::string serialize(const DecisionSystem& s);
std::string serialize(const SystemDocument& doc);
std::string serialize(const Covering& c);

}  // namespace covmat
