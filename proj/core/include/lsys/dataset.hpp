#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsys/canonical.hpp"
#include "lsys/grammar.hpp"
#include "lsys/raster.hpp"

namespace lsys {

struct IntRange {
    int lo = 1;
    int hi = 7;

    bool operator==(const IntRange&) const = default;
};

struct AngleRange {
    double lo = 15.0;
    double hi = 60.0;

    bool operator==(const AngleRange&) const = default;
};

struct SplitFractions {
    double train = 0.9;
    double validation = 0.05;
    double test = 0.05;

    bool operator==(const SplitFractions&) const = default;
};

enum class Split : std::uint8_t { Train, Validation, Test };

std::string_view split_name(Split split) noexcept;
/// Accepts "train", "validation" (or "val") and "test".
Split parse_split(std::string_view name);

/// Everything that determines a generated dataset. The defaults are the
/// desk-scale setting; paper_scale() switches to the full-size corpus.
struct GenerationConfig {
    Grammar grammar = Grammar::default_grammar();
    std::size_t target_unique = 2000;
    IntRange derivation_range{1, 7};
    AngleRange angle_range{15.0, 60.0};
    double segment_length = 100.0;
    int image_size = 128;
    double margin = kDefaultMargin;
    SplitFractions split;
    std::uint64_t master_seed = 0;
    double validation_angle = kValidationAngle;
    /// Generation stops after attempt_factor * target_unique derivations.
    std::size_t attempt_factor = 50;

    static GenerationConfig paper_scale();

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

struct ManifestEntry {
    std::size_t id = 0;
    std::string word;
    Split split = Split::Train;
    /// Decoder sequence lengths: body tokens plus EOS.
    std::size_t len_char = 0;
    std::size_t len_fused = 0;

    bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
    static constexpr int kVersion = 1;

    int version = kVersion;
    GenerationConfig config;
    std::vector<ManifestEntry> entries;
    std::size_t max_seq_len_char = 0;
    std::size_t max_seq_len_fused = 0;
    /// False when the attempt budget ran out before target_unique words.
    bool target_reached = true;
    std::size_t attempts = 0;

    std::size_t max_seq_len(Scheme scheme) const noexcept {
        return scheme == Scheme::Fused ? max_seq_len_fused : max_seq_len_char;
    }
    std::size_t count(Split split) const noexcept;
    const ManifestEntry* find(std::size_t id) const noexcept;
};

/// Samples, canonicalizes, filters and deduplicates words until
/// target_unique are collected or the attempt budget is spent.
///
/// Per attempt, from a SplitMix64 stream seeded with master_seed: one draw
/// for the derivation count (uniform over derivation_range) and one draw
/// for the derivation seed. Words that fail check() at validation_angle, or
/// whose rotations are not each followed by F, are discarded. Splits are
/// assigned by a Fisher-Yates shuffle on the substream (master_seed, 1):
/// the first round(0.9 N) shuffled ids go to train, the next round(0.05 N)
/// to validation, the rest to test.
DatasetManifest generate(const GenerationConfig& config);

/// Split sizes for n entries under the given fractions.
struct SplitSizes {
    std::size_t train = 0;
    std::size_t validation = 0;
    std::size_t test = 0;
};
SplitSizes split_sizes(std::size_t n, const SplitFractions& fractions) noexcept;

/// Branching angle for entry `id` in epoch `epoch_seed`, uniform in the
/// configured angle range.
double epoch_angle(const GenerationConfig& config, std::uint64_t epoch_seed, std::size_t id) noexcept;

enum class ImageFormat { Pgm, Png };

struct RenderRequest {
    std::filesystem::path output_dir;
    ImageFormat format = ImageFormat::Pgm;
    /// Restrict to one split; all entries when empty.
    std::optional<Split> split;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct RenderSummary {
    std::size_t images = 0;
    /// Angle used per rendered entry, in manifest order.
    std::vector<double> angles;
};

/// Renders every entry at its epoch angle to "<id>.pgm" (or .png).
RenderSummary render_epoch(const DatasetManifest& manifest, std::uint64_t epoch_seed, const RenderRequest& request);

/// Renders every entry at one fixed angle.
RenderSummary materialize(const DatasetManifest& manifest, double delta_degrees, const RenderRequest& request);

/// Image of a single entry as render_epoch would produce it.
BinaryImage render_entry(const DatasetManifest& manifest, const ManifestEntry& entry, double delta_degrees);

}  // namespace lsys
