#include "covmat/covering.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

namespace covmat {

using nlohmann::json;

std::optional<std::size_t> Universe::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

const Covering* CoveringSystem::find(std::string_view name) const {
    for (const Covering& c : coverings) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::string to_string(const Violation& v) {
    std::string out;
    if (!v.covering.empty()) {
        out += "covering " + v.covering;
        if (v.block) {
            out += " block " + std::to_string(*v.block);
        }
        out += ": ";
    }
    out += v.rule;
    if (!v.detail.empty()) {
        out += " (" + v.detail + ")";
    }
    return out;
}

std::vector<Violation> validate_covering(const Covering& c, std::size_t universe_size) {
    std::vector<Violation> out;
    std::vector<char> covered(universe_size, 0);
    if (c.blocks.empty()) {
        out.push_back({c.name, std::nullopt, "no blocks", ""});
    }
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        const auto& block = c.blocks[b];
        if (block.empty()) {
            out.push_back({c.name, b, "empty block", ""});
            continue;
        }
        std::vector<char> seen(universe_size, 0);
        for (const std::size_t idx : block) {
            if (idx >= universe_size) {
                out.push_back({c.name, b, "index out of range",
                               std::to_string(idx) + " >= " + std::to_string(universe_size)});
                continue;
            }
            if (seen[idx]) {
                out.push_back({c.name, b, "duplicate index in block", std::to_string(idx)});
            }
            seen[idx] = 1;
            covered[idx] = 1;
        }
    }
    for (std::size_t i = 0; i < universe_size; ++i) {
        if (!covered[i]) {
            out.push_back({c.name, std::nullopt, "union != universe",
                           "object " + std::to_string(i) + " uncovered"});
            break;
        }
    }
    return out;
}

std::vector<Violation> validate(const CoveringSystem& s) {
    std::vector<Violation> out;
    if (s.universe.size() == 0) {
        out.push_back({"", std::nullopt, "empty universe", ""});
        return out;
    }
    {
        std::unordered_set<std::string_view> seen;
        for (const auto& label : s.universe.labels) {
            if (!seen.insert(label).second) {
                out.push_back({"", std::nullopt, "duplicate object label", label});
            }
        }
    }
    if (s.coverings.empty()) {
        out.push_back({"", std::nullopt, "no coverings", ""});
    }
    std::unordered_set<std::string_view> names;
    for (const Covering& c : s.coverings) {
        if (!names.insert(c.name).second) {
            out.push_back({c.name, std::nullopt, "duplicate covering name", ""});
        }
        auto cv = validate_covering(c, s.universe.size());
        out.insert(out.end(), cv.begin(), cv.end());
    }
    return out;
}

std::vector<Violation> validate(const DecisionSystem& s) {
    CoveringSystem flat{s.universe, {}};
    flat.coverings.reserve(s.conditional.size() + s.decision.size());
    flat.coverings.insert(flat.coverings.end(), s.conditional.begin(), s.conditional.end());
    flat.coverings.insert(flat.coverings.end(), s.decision.begin(), s.decision.end());
    auto out = validate(flat);
    if (s.conditional.empty()) {
        out.push_back({"", std::nullopt, "no conditional coverings", ""});
    }
    if (s.decision.empty()) {
        out.push_back({"", std::nullopt, "no decision coverings", ""});
    }
    return out;
}

BoolMatrix covering_matrix(const Covering& c, std::size_t universe_size) {
    BoolMatrix m(universe_size, c.blocks.size());
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        for (const std::size_t idx : c.blocks[b]) {
            m.set(idx, b);
        }
    }
    return m;
}

BoolMatrix family_matrix(std::span<const Covering> family, std::size_t universe_size) {
    std::size_t total_cols = 0;
    for (const Covering& c : family) {
        total_cols += c.blocks.size();
    }
    BoolMatrix m(universe_size, total_cols);
    std::size_t col = 0;
    for (const Covering& c : family) {
        for (std::size_t b = 0; b < c.blocks.size(); ++b, ++col) {
            for (const std::size_t idx : c.blocks[b]) {
                m.set(idx, col);
            }
        }
    }
    return m;
}

BoolMatrix family_matrix_selected(std::span<const Covering> family,
                                  std::span<const std::size_t> selected,
                                  std::size_t universe_size) {
    std::size_t total_cols = 0;
    for (const std::size_t k : selected) {
        total_cols += family[k].blocks.size();
    }
    BoolMatrix m(universe_size, total_cols);
    std::size_t col = 0;
    for (const std::size_t k : selected) {
        const Covering& c = family[k];
        for (std::size_t b = 0; b < c.blocks.size(); ++b, ++col) {
            for (const std::size_t idx : c.blocks[b]) {
                m.set(idx, col);
            }
        }
    }
    return m;
}

BoolMatrix system_matrix(const CoveringSystem& s) {
    return family_matrix(s.coverings, s.universe.size());
}

CoveringSystem subsystem(const CoveringSystem& s, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("subsystem: selection is empty");
    }
    CoveringSystem out{s.universe, {}};
    out.coverings.reserve(keep.size());
    for (const std::size_t k : keep) {
        if (k >= s.coverings.size()) {
            throw std::out_of_range("subsystem: covering index " + std::to_string(k) +
                                    " out of range (have " +
                                    std::to_string(s.coverings.size()) + ")");
        }
        out.coverings.push_back(s.coverings[k]);
    }
    return out;
}

DecisionSystem SystemDocument::decision_system() const {
    if (!has_decision()) {
        throw ParseError("document has no \"decision\" coverings");
    }
    return DecisionSystem{system.universe, system.coverings, decision};
}

namespace {

std::vector<std::size_t> parse_block(const json& arr, const Universe& universe,
                                     const std::string& where) {
    if (!arr.is_array()) {
        throw ParseError(where + ": block must be an array");
    }
    std::vector<std::size_t> block;
    block.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const json& entry = arr[k];
        const std::string at = where + "[" + std::to_string(k) + "]";
        if (entry.is_number_unsigned()) {
            const auto idx = entry.get<std::size_t>();
            if (idx >= universe.size()) {
                throw ParseError(at + ": object index " + std::to_string(idx) +
                                 " out of range (universe has " +
                                 std::to_string(universe.size()) + " objects)");
            }
            block.push_back(idx);
        } else if (entry.is_string()) {
            const auto label = entry.get<std::string>();
            const auto idx = universe.index_of(label);
            if (!idx) {
                throw ParseError(at + ": unknown object label \"" + label + "\"");
            }
            block.push_back(*idx);
        } else {
            throw ParseError(at + ": block entry must be an index or an object label");
        }
    }
    return block;
}

Covering parse_covering_json(const json& obj, const Universe& universe,
                             const std::string& where) {
    if (!obj.is_object()) {
        throw ParseError(where + ": covering must be an object");
    }
    if (!obj.contains("name") || !obj["name"].is_string()) {
        throw ParseError(where + ": missing or non-string \"name\"");
    }
    if (!obj.contains("blocks") || !obj["blocks"].is_array()) {
        throw ParseError(where + ": missing or non-array \"blocks\"");
    }
    Covering c;
    c.name = obj["name"].get<std::string>();
    const json& blocks = obj["blocks"];
    c.blocks.reserve(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        c.blocks.push_back(
            parse_block(blocks[b], universe, where + ".blocks[" + std::to_string(b) + "]"));
    }
    return c;
}

std::vector<Covering> parse_covering_list(const json& arr, const Universe& universe,
                                          const std::string& field) {
    if (!arr.is_array()) {
        throw ParseError("\"" + field + "\" must be an array");
    }
    std::vector<Covering> out;
    out.reserve(arr.size());
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = field + "[" + std::to_string(i) + "]";
        Covering c = parse_covering_json(arr[i], universe, where);
        if (!names.insert(c.name).second) {
            throw ParseError(where + ": duplicate covering name \"" + c.name + "\"");
        }
        out.push_back(std::move(c));
    }
    return out;
}

json block_to_json(const std::vector<std::size_t>& block) {
    json arr = json::array();
    for (const std::size_t idx : block) {
        arr.push_back(idx);
    }
    return arr;
}

json covering_to_json(const Covering& c) {
    json obj;
    obj["name"] = c.name;
    json blocks = json::array();
    for (const auto& b : c.blocks) {
        blocks.push_back(block_to_json(b));
    }
    obj["blocks"] = std::move(blocks);
    return obj;
}

json family_to_json(const std::vector<Covering>& family) {
    json arr = json::array();
    for (const Covering& c : family) {
        arr.push_back(covering_to_json(c));
    }
    return arr;
}

}  // namespace

SystemDocument parse_system(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("document root must be an object");
    }
    if (!doc.contains("universe")) {
        throw ParseError("missing \"universe\"");
    }
    if (!doc["universe"].is_array()) {
        throw ParseError("\"universe\" must be an array of labels");
    }
    SystemDocument out;
    Universe& universe = out.system.universe;
    universe.labels.reserve(doc["universe"].size());
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < doc["universe"].size(); ++i) {
        const json& entry = doc["universe"][i];
        if (!entry.is_string()) {
            throw ParseError("universe[" + std::to_string(i) + "]: label must be a string");
        }
        auto label = entry.get<std::string>();
        if (!seen.insert(label).second) {
            throw ParseError("universe[" + std::to_string(i) + "]: duplicate label \"" +
                             label + "\"");
        }
        universe.labels.push_back(std::move(label));
    }
    if (universe.size() == 0) {
        throw ParseError("\"universe\" is empty");
    }
    if (!doc.contains("coverings")) {
        throw ParseError("missing \"coverings\"");
    }
    out.system.coverings = parse_covering_list(doc["coverings"], universe, "coverings");
    if (doc.contains("decision")) {
        out.decision = parse_covering_list(doc["decision"], universe, "decision");
    }
    return out;
}

Covering parse_covering(const std::string& text, const Universe& universe) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    return parse_covering_json(doc, universe, "covering");
}

std::string serialize(const SystemDocument& doc) {
    json out;
    out["universe"] = doc.system.universe.labels;
    out["coverings"] = family_to_json(doc.system.coverings);
    if (doc.has_decision()) {
        out["decision"] = family_to_json(doc.decision);
    }
    return out.dump(2) + "\n";
}

std::string serialize(const CoveringSystem& s) {
    return serialize(SystemDocument{s, {}});
}

std::string serialize(const DecisionSystem& s) {
    return serialize(SystemDocument{CoveringSystem{s.universe, s.conditional}, s.decision});
}

std::string serialize(const Covering& c) {
    return covering_to_json(c).dump(2) + "\n";
}

}  // namespace covmat
