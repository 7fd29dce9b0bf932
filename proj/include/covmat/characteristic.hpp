#pragma once

#include <span>
#include <string>
#include <vector>

#include "covmat/covering.hpp"

namespace covmat {

enum class CharKind { Type1, Type2 };

/// n x n characteristic matrix of a covering family over n objects.
///
///   Type1 (gamma): cell (i,j) = 1 iff x_i and x_j share at least one block
///   of the family — the co-membership relation. Built as M * M^T under the
///   boolean product; symmetric, diagonal all 1.
///
///   Type2 (pi): cell (i,j) = 1 iff x_j lies in every block containing x_i,
///   i.e. x_j is in the neighborhood N(x_i). Built as M * M^T under the
///   odot product; diagonal all 1, not symmetric in general.
struct CharMatrix {
    CharKind kind;
    BoolMatrix m;
    std::string source;  // names of the coverings it was built from

    std::size_t size() const noexcept { return m.rows(); }
};

CharMatrix gamma(const CoveringSystem& s);
CharMatrix pi(const CoveringSystem& s);

CharMatrix gamma_family(std::span<const Covering> family, std::size_t universe_size);
CharMatrix pi_family(std::span<const Covering> family, std::size_t universe_size);

CharMatrix gamma_of(const Covering& c, std::size_t universe_size);
CharMatrix pi_of(const Covering& c, std::size_t universe_size);

/// N(x): intersection of every block, from any covering of the system, that
/// contains x. Blocks pool across the whole system, matching the
/// concatenated-matrix semantics of gamma/pi. Ascending object indices.
std::vector<std::size_t> neighborhood(const CoveringSystem& s, std::size_t object);

std::string family_source_name(std::span<const Covering> family);

}  // namespace covmat
