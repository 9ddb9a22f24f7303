#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsys/canonical.hpp"
#include "lsys/dataset.hpp"
#include "lsys/raster.hpp"
#include "lsys/word.hpp"

namespace lsys {

/// One model output for a dataset entry.
struct PredictionRecord {
    std::size_t id = 0;
    /// Greedy decode, ending at EOS or cut at the decode limit. A leading
    /// BOS is tolerated.
    std::vector<int> pred_tokens;
    /// Teacher-forced natural-log probability of each ground-truth token,
    /// body tokens then EOS (BOS excluded).
    std::optional<std::vector<double>> logprobs;
    bool terminated = true;
};

class EvaluationError : public std::runtime_error {
public:
    enum class Kind { MissingLogProbs, InvalidRecord };

    EvaluationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Mean negative log-probability per ground-truth token, in nats. Throws
/// EvaluationError(MissingLogProbs) if any record lacks log-probabilities.
double cross_entropy(std::span<const PredictionRecord> records);

/// exp(ce_nats).
double perplexity(double ce_nats);

/// ce_nats / ln 2.
double bits_per_token(double ce_nats);

/// Total negative log-probability in bits divided by the number of
/// characters in the ground-truth words (char form, no BOS/EOS).
/// `truths[i]` is the ground truth of `records[i]`.
double bits_per_char(std::span<const PredictionRecord> records, std::span<const Word> truths);

enum class Category { Correct, FalseSyntax, NonTerminating, Residue };

std::string_view category_name(Category category) noexcept;

struct CategoryResult {
    Category category = Category::Correct;
    /// Rule violations when the prediction parsed but broke a word rule.
    std::vector<RuleViolation> violations;
    /// Parse failure message when the tokens do not form a word.
    std::string syntax_error;
};

/// Places a prediction in exactly one category, checked in this order:
/// NonTerminating (not terminated, or longer than max_len tokens including
/// EOS), FalseSyntax (no valid word, empty word, or any rule violation at
/// validation_angle), Correct (token-identical to truth), Residue.
/// The prediction is decoded in the truth's scheme.
CategoryResult categorize(const PredictionRecord& prediction, const Word& truth, std::size_t max_len,
                          double validation_angle = kValidationAngle, double length = 100.0);

/// Token count of a prediction up to and including its first EOS, not
/// counting a leading BOS.
std::size_t decoded_length(std::span<const int> pred_tokens) noexcept;

struct ErrorRates {
    std::size_t rotation_groups = 0;
    std::size_t invalid_rotation_groups = 0;
    std::size_t bracket_pairs = 0;
    std::size_t uneven_brackets = 0;
    std::size_t empty_branches = 0;
    std::size_t rotation_only_branches = 0;

    /// Mixed-sign rotation runs over all rotation runs.
    double invalid_rotation_rate() const noexcept;
    /// |#[ - #]| over indicated bracket pairs (max(#[, #]) per word).
    double invalid_bracket_rate() const noexcept;
    /// Literal "[]" over indicated bracket pairs.
    double empty_branch_rate() const noexcept;
    /// As above, also counting branches holding only rotations, e.g. "[+]".
    double empty_or_rotation_only_rate() const noexcept;

    ErrorRates& operator+=(const ErrorRates& other) noexcept;
};

/// Counts for one character-form word; the text need not be well formed.
ErrorRates error_counts(std::string_view text) noexcept;

/// Summed counts over many words.
ErrorRates error_rates(std::span<const std::string> texts) noexcept;

/// Tokens at bracket depth exactly `level`. Brackets count as part of the
/// branch they enclose, so level 0 is the trunk and level 1 lists every
/// first-order branch including its brackets.
std::vector<Token> level_projection(const Word& word, int level);

/// Fraction of pairs whose level projections match exactly; 1 for no pairs.
double hierarchy_accuracy(std::span<const Word> predictions, std::span<const Word> truths, int level);

struct DiffResult {
    RgbImage image;
    std::size_t common = 0;
    std::size_t truth_only = 0;
    std::size_t prediction_only = 0;
    /// True when the prediction could not be read and only the truth is drawn.
    bool fallback = false;
};

/// Draws truth and prediction under one shared fit. Segments found in both
/// (endpoints within 1e-3 * size after the fit) are black, truth-only
/// segments red, prediction-only segments blue.
DiffResult diff_render(const Word& prediction, const Word& truth, double delta_degrees, double length, int size,
                       double margin = kDefaultMargin);

/// As above from prediction text; an unreadable prediction falls back to a
/// truth-only rendering with `fallback` set.
DiffResult diff_render(std::string_view prediction_text, const Word& truth, double delta_degrees, double length,
                       int size, double margin = kDefaultMargin);

struct CategoryCounts {
    std::size_t correct = 0;
    std::size_t false_syntax = 0;
    std::size_t non_terminating = 0;
    std::size_t residue = 0;

    std::size_t total() const noexcept { return correct + false_syntax + non_terminating + residue; }
    double fraction(Category category) const noexcept;
    void add(Category category) noexcept;
};

struct EvaluationOptions {
    Scheme scheme = Scheme::Fused;
    /// Only score records whose entry belongs to this split.
    std::optional<Split> split;
    /// 0 selects 2 x the manifest's longest sequence in `scheme`.
    std::size_t max_len = 0;
    double validation_angle = kValidationAngle;
    /// Highest hierarchy level reported; negative selects the deepest truth.
    int max_level = -1;
};

struct RejectedRecord {
    std::size_t id = 0;
    std::string reason;
};

struct EvaluationReport {
    Scheme scheme = Scheme::Fused;
    std::size_t max_len = 0;
    std::size_t scored = 0;
    std::size_t skipped = 0;
    std::vector<RejectedRecord> rejected;

    std::optional<double> ce_nats;
    std::optional<double> ppl;
    std::optional<double> bits_per_token;
    std::optional<double> bpc;

    CategoryCounts categories;
    ErrorRates errors;
    std::vector<double> hierarchy;
    std::size_t hierarchy_excluded = 0;

    std::string to_json() const;
    /// Human-readable summary laid out like the category and error tables.
    std::string to_table() const;
};

/// Scores predictions against the manifest. Records with unknown or
/// duplicate ids, positive log-probabilities, or a log-probability count
/// that differs from the truth's token count (EOS included) are rejected
/// and listed, not scored. Cross-entropy metrics are reported only when
/// every scored record carries log-probabilities.
EvaluationReport evaluate(const DatasetManifest& manifest, std::span<const PredictionRecord> predictions,
                          const EvaluationOptions& options);

}  // namespace lsys
