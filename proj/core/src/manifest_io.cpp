#include "lsys/manifest_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lsys/image_io.hpp"

namespace lsys {

using nlohmann::json;

namespace {

json grammar_json(const Grammar& grammar, const AngleRange& range) {
    json productions = json::array();
    for (const auto& p : grammar.productions()) {
        productions.push_back({{"lhs", std::string(1, p.predecessor)}, {"rhs", to_string(p.successor)}, {"p", p.probability}});
    }
    return {{"axiom", to_string(grammar.axiom())},
            {"productions", productions},
            {"angle_range", {range.lo, range.hi}},
            {"f", grammar.segment_length()},
            {"delta", grammar.delta()}};
}

AngleRange angle_range_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("angle_range must be [lo, hi]");
    return {j[0].get<double>(), j[1].get<double>()};
}

GrammarFile grammar_from(const json& j) {
    if (!j.is_object()) throw FormatError("grammar must be a JSON object");
    GrammarFile out;
    out.angle_range = j.contains("angle_range") ? angle_range_from(j["angle_range"]) : AngleRange{};
    const double f = j.value("f", 100.0);
    const double delta = j.value("delta", (out.angle_range.lo + out.angle_range.hi) / 2.0);
    const std::string axiom = j.value("axiom", std::string("F"));
    if (!j.contains("productions") || !j["productions"].is_array()) {
        throw FormatError("grammar needs a \"productions\" array");
    }
    std::vector<Production> productions;
    for (const auto& p : j["productions"]) {
        const auto lhs = p.at("lhs").get<std::string>();
        if (lhs.size() != 1) throw FormatError("production lhs must be a single symbol, got '" + lhs + "'");
        productions.push_back({lhs[0], parse(p.at("rhs").get<std::string>(), Scheme::Char), p.at("p").get<double>()});
    }
    out.grammar = Grammar(parse(axiom, Scheme::Char), std::move(productions), delta, f);
    return out;
}

json config_json(const GenerationConfig& c) {
    return {{"grammar", grammar_json(c.grammar, c.angle_range)},
            {"target_unique", c.target_unique},
            {"derivation_range", {c.derivation_range.lo, c.derivation_range.hi}},
            {"angle_range", {c.angle_range.lo, c.angle_range.hi}},
            {"f", c.segment_length},
            {"image_size", c.image_size},
            {"margin", c.margin},
            {"split", {c.split.train, c.split.validation, c.split.test}},
            {"master_seed", c.master_seed},
            {"validation_angle", c.validation_angle},
            {"attempt_factor", c.attempt_factor}};
}

GenerationConfig config_from(const json& j, const GenerationConfig& base) {
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    GenerationConfig c = base;
    if (j.contains("grammar")) {
        auto g = grammar_from(j["grammar"]);
        c.grammar = std::move(g.grammar);
        c.segment_length = c.grammar.segment_length();
        if (j["grammar"].contains("angle_range")) c.angle_range = g.angle_range;
    }
    if (j.contains("target_unique")) c.target_unique = j["target_unique"].get<std::size_t>();
    if (j.contains("derivation_range")) {
        const auto& r = j["derivation_range"];
        if (!r.is_array() || r.size() != 2) throw FormatError("derivation_range must be [lo, hi]");
        c.derivation_range = {r[0].get<int>(), r[1].get<int>()};
    }
    if (j.contains("angle_range")) c.angle_range = angle_range_from(j["angle_range"]);
    if (j.contains("f")) c.segment_length = j["f"].get<double>();
    if (j.contains("image_size")) c.image_size = j["image_size"].get<int>();
    if (j.contains("margin")) c.margin = j["margin"].get<double>();
    if (j.contains("split")) {
        const auto& s = j["split"];
        if (!s.is_array() || s.size() != 3) throw FormatError("split must be [train, validation, test]");
        c.split = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
    }
    if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("validation_angle")) c.validation_angle = j["validation_angle"].get<double>();
    if (j.contains("attempt_factor")) c.attempt_factor = j["attempt_factor"].get<std::size_t>();
    return c;
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Fn>
auto with_path(const std::filesystem::path& path, Fn fn) {
    try {
        return fn();
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace

GrammarFile parse_grammar_json(std::string_view text) {
    try {
        return grammar_from(parse_json(text, "grammar"));
    } catch (const json::exception& e) {
        throw FormatError(std::string("grammar: ") + e.what());
    } catch (const SyntaxError& e) {
        throw FormatError(std::string("grammar: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("grammar: ") + e.what());
    }
}

GrammarFile load_grammar_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    return with_path(path, [&] { return parse_grammar_json(text); });
}

std::string grammar_to_json(const Grammar& grammar, const AngleRange& angle_range) {
    return grammar_json(grammar, angle_range).dump(2);
}

GenerationConfig parse_config_json(std::string_view text, const GenerationConfig& base) {
    try {
        return config_from(parse_json(text, "config"), base);
    } catch (const json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    } catch (const SyntaxError& e) {
        throw FormatError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
}

GenerationConfig load_config_file(const std::filesystem::path& path, const GenerationConfig& base) {
    const std::string text = read_file(path);
    return with_path(path, [&] { return parse_config_json(text, base); });
}

std::string config_to_json(const GenerationConfig& config) {
    return config_json(config).dump(2);
}

void write_manifest(std::ostream& out, const DatasetManifest& manifest) {
    const json header = {{"version", manifest.version},
                         {"config", config_json(manifest.config)},
                         {"max_seq_len", {{"char", manifest.max_seq_len_char}, {"fused", manifest.max_seq_len_fused}}},
                         {"count", manifest.entries.size()},
                         {"target_reached", manifest.target_reached},
                         {"attempts", manifest.attempts}};
    out << header.dump() << '\n';
    for (const auto& e : manifest.entries) {
        const json line = {{"id", e.id},
                           {"word", e.word},
                           {"split", std::string(split_name(e.split))},
                           {"len_char", e.len_char},
                           {"len_fused", e.len_fused}};
        out << line.dump() << '\n';
    }
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    write_manifest(out, manifest);
    if (!out) throw IoError(path, "write failed");
}

DatasetManifest read_manifest(std::istream& in) {
    DatasetManifest m;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            if (!have_header) {
                m.version = j.at("version").get<int>();
                if (m.version != DatasetManifest::kVersion) {
                    throw FormatError("unsupported manifest version " + std::to_string(m.version));
                }
                m.config = config_from(j.at("config"), GenerationConfig{});
                m.max_seq_len_char = j.at("max_seq_len").at("char").get<std::size_t>();
                m.max_seq_len_fused = j.at("max_seq_len").at("fused").get<std::size_t>();
                m.target_reached = j.value("target_reached", true);
                m.attempts = j.value("attempts", std::size_t{0});
                have_header = true;
                continue;
            }
            ManifestEntry e;
            e.id = j.at("id").get<std::size_t>();
            e.word = j.at("word").get<std::string>();
            e.split = parse_split(j.at("split").get<std::string>());
            const Word w = parse(e.word, Scheme::Char);
            e.len_char = j.value("len_char", convert(w, Scheme::Char).size() + 1);
            if (j.contains("len_fused")) {
                e.len_fused = j["len_fused"].get<std::size_t>();
            } else {
                e.len_fused = convert(w, Scheme::Fused).size() + 1;
            }
            m.entries.push_back(std::move(e));
        } catch (const FormatError& e) {
            throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw FormatError("manifest is empty (missing header record)");
    return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    return with_path(path, [&] { return read_manifest(in); });
}

}  // namespace lsys
