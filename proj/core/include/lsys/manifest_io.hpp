#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lsys/dataset.hpp"

namespace lsys {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grammar config file:
///   {"axiom": "F", "productions": [{"lhs": "F", "rhs": "F[+F]F", "p": 0.5}, ...],
///    "angle_range": [15, 60], "f": 100, "delta": 25}
/// "delta" is optional and defaults to the middle of angle_range.
struct GrammarFile {
    Grammar grammar = Grammar::default_grammar();
    AngleRange angle_range;
};

GrammarFile parse_grammar_json(std::string_view text);
GrammarFile load_grammar_file(const std::filesystem::path& path);
std::string grammar_to_json(const Grammar& grammar, const AngleRange& angle_range);

/// Generation config file. Every key is optional; missing keys keep the
/// value from `base`. Keys: grammar (object, grammar file schema),
/// target_unique, derivation_range [lo, hi], angle_range [lo, hi], f,
/// image_size, margin, split [train, validation, test], master_seed,
/// validation_angle, attempt_factor.
GenerationConfig parse_config_json(std::string_view text, const GenerationConfig& base = {});
GenerationConfig load_config_file(const std::filesystem::path& path, const GenerationConfig& base = {});
std::string config_to_json(const GenerationConfig& config);

/// Manifest as JSON Lines: a header record
///   {"version", "config", "max_seq_len": {"char", "fused"}, "count", "target_reached", "attempts"}
/// then one {"id", "word", "split", "len_char", "len_fused"} per entry.
/// Output is byte-stable for a given manifest.
void write_manifest(std::ostream& out, const DatasetManifest& manifest);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(std::istream& in);
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace lsys
