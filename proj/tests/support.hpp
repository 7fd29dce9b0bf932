#pragma once

// Shared hand-built systems and small helpers for the test suites.

#include <initializer_list>
#include <string>
#include <vector>

#include "covmat/approximation.hpp"
#include "covmat/covering.hpp"

namespace support {

// Five objects, three overlapping coverings; the workhorse example.
inline covmat::CoveringSystem example_system() {
    covmat::CoveringSystem s;
    s.universe.labels = {"x1", "x2", "x3", "x4", "x5"};
    s.coverings = {
        {"C1", {{0, 1, 2, 3}, {4}}},
        {"C2", {{0, 1}, {2, 3, 4}}},
        {"C3", {{0, 1, 4}, {2, 3}}},
    };
    return s;
}

// The partition covering added to (or removed from) the example system.
inline covmat::Covering example_c4() {
    return {"C4", {{0, 1}, {2, 3}, {4}}};
}

inline covmat::CoveringSystem example_system_plus() {
    covmat::CoveringSystem s = example_system();
    s.coverings.push_back(example_c4());
    return s;
}

// The example system with a two-class decision covering.
inline covmat::DecisionSystem example_decision() {
    const covmat::CoveringSystem s = example_system();
    return {s.universe, s.coverings, {{"D", {{0, 1}, {2, 3, 4}}}}};
}

// Builds a matrix from '0'/'1' row strings, e.g. {"110", "011"}.
inline covmat::BoolMatrix from_rows(std::initializer_list<std::string> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    covmat::BoolMatrix m(r, c);
    std::size_t i = 0;
    for (const std::string& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == '1') {
                m.set(i, j);
            }
        }
        ++i;
    }
    return m;
}

// The 5x5 matrix with 1-blocks {x1,x2}, {x3,x4}, {x5} on the diagonal.
inline covmat::BoolMatrix block_matrix_5() {
    return from_rows({"11000", "11000", "00110", "00110", "00001"});
}

inline covmat::SubsetVector subset_of(std::size_t n,
                                      std::initializer_list<std::size_t> indices) {
    covmat::SubsetVector x(n);
    for (const std::size_t i : indices) {
        x.set(i);
    }
    return x;
}

}  // namespace support
