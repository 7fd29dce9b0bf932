#include "covmat/characteristic.hpp"

#include <stdexcept>

namespace covmat {

std::string family_source_name(std::span<const Covering> family) {
    std::string out;
    for (const Covering& c : family) {
        if (!out.empty()) {
            out += "+";
        }
        out += c.name;
    }
    return out;
}

CharMatrix gamma_family(std::span<const Covering> family, std::size_t universe_size) {
    return {CharKind::Type1, bool_gram(family_matrix(family, universe_size)),
            family_source_name(family)};
}

CharMatrix pi_family(std::span<const Covering> family, std::size_t universe_size) {
    return {CharKind::Type2, odot_gram(family_matrix(family, universe_size)),
            family_source_name(family)};
}

CharMatrix gamma(const CoveringSystem& s) {
    return gamma_family(s.coverings, s.universe.size());
}

CharMatrix pi(const CoveringSystem& s) {
    return pi_family(s.coverings, s.universe.size());
}

CharMatrix gamma_of(const Covering& c, std::size_t universe_size) {
    return {CharKind::Type1, bool_gram(covering_matrix(c, universe_size)), c.name};
}

CharMatrix pi_of(const Covering& c, std::size_t universe_size) {
    return {CharKind::Type2, odot_gram(covering_matrix(c, universe_size)), c.name};
}

std::vector<std::size_t> neighborhood(const CoveringSystem& s, std::size_t object) {
    const std::size_t n = s.universe.size();
    if (object >= n) {
        throw std::out_of_range("neighborhood: object index " + std::to_string(object) +
                                " out of range (universe has " + std::to_string(n) +
                                " objects)");
    }
    // Start from the full universe and intersect every block containing the
    // object.
    std::vector<char> in(n, 1);
    for (const Covering& c : s.coverings) {
        for (const auto& block : c.blocks) {
            bool contains = false;
            for (const std::size_t idx : block) {
                if (idx == object) {
                    contains = true;
                    break;
                }
            }
            if (!contains) {
                continue;
            }
            std::vector<char> member(n, 0);
            for (const std::size_t idx : block) {
                member[idx] = 1;
            }
            for (std::size_t i = 0; i < n; ++i) {
                in[i] = static_cast<char>(in[i] & member[i]);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (in[i]) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace covmat
