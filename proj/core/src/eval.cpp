#include "lsys/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_set>

#include <json.hpp>

namespace lsys {

double cross_entropy(std::span<const PredictionRecord> records) {
    // Extended precision keeps the mean of identical values exact.
    long double total = 0.0L;
    std::size_t tokens = 0;
    for (const auto& r : records) {
        if (!r.logprobs) {
            throw EvaluationError(EvaluationError::Kind::MissingLogProbs,
                                  "record " + std::to_string(r.id) + " has no log-probabilities");
        }
        for (double lp : *r.logprobs) total -= lp;
        tokens += r.logprobs->size();
    }
    if (tokens == 0) {
        throw EvaluationError(EvaluationError::Kind::MissingLogProbs, "no scored tokens");
    }
    return static_cast<double>(total / static_cast<long double>(tokens));
}

double perplexity(double ce_nats) {
    if (ce_nats < 0.0) throw std::invalid_argument("perplexity: cross-entropy must be >= 0");
    return std::exp(ce_nats);
}

double bits_per_token(double ce_nats) {
    return ce_nats / std::numbers::ln2;
}

double bits_per_char(std::span<const PredictionRecord> records, std::span<const Word> truths) {
    if (records.size() != truths.size()) throw std::invalid_argument("bits_per_char: one truth per record required");
    double nats = 0.0;
    std::size_t chars = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].logprobs) {
            throw EvaluationError(EvaluationError::Kind::MissingLogProbs,
                                  "record " + std::to_string(records[i].id) + " has no log-probabilities");
        }
        for (double lp : *records[i].logprobs) nats -= lp;
        chars += to_string(truths[i]).size();
    }
    if (chars == 0) throw std::invalid_argument("bits_per_char: ground truth has no characters");
    return nats / std::numbers::ln2 / static_cast<double>(chars);
}

std::string_view category_name(Category category) noexcept {
    switch (category) {
        case Category::Correct: return "correct";
        case Category::FalseSyntax: return "false_syntax";
        case Category::NonTerminating: return "non_terminating";
        case Category::Residue: return "residue";
    }
    return "residue";
}

std::size_t decoded_length(std::span<const int> pred_tokens) noexcept {
    std::size_t i = (!pred_tokens.empty() && pred_tokens.front() == kBosId) ? 1 : 0;
    std::size_t n = 0;
    for (; i < pred_tokens.size(); ++i) {
        ++n;
        if (pred_tokens[i] == kEosId) break;
    }
    return n;
}

CategoryResult categorize(const PredictionRecord& prediction, const Word& truth, std::size_t max_len,
                          double validation_angle, double length) {
    CategoryResult result;
    if (!prediction.terminated || decoded_length(prediction.pred_tokens) > max_len) {
        result.category = Category::NonTerminating;
        return result;
    }
    Word word;
    try {
        word = detokenize(prediction.pred_tokens, truth.scheme());
    } catch (const SyntaxError& e) {
        result.category = Category::FalseSyntax;
        result.syntax_error = e.what();
        return result;
    }
    if (word.empty()) {
        result.category = Category::FalseSyntax;
        result.syntax_error = "empty word";
        return result;
    }
    result.violations = check(word, validation_angle, length);
    if (!result.violations.empty()) {
        result.category = Category::FalseSyntax;
        return result;
    }
    result.category = word == truth ? Category::Correct : Category::Residue;
    return result;
}

namespace {

double ratio(std::size_t num, std::size_t den) noexcept {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool is_rotation_char(char c) noexcept { return c == '+' || c == '-'; }

}  // namespace

double ErrorRates::invalid_rotation_rate() const noexcept { return ratio(invalid_rotation_groups, rotation_groups); }
double ErrorRates::invalid_bracket_rate() const noexcept { return ratio(uneven_brackets, bracket_pairs); }
double ErrorRates::empty_branch_rate() const noexcept { return ratio(empty_branches, bracket_pairs); }
double ErrorRates::empty_or_rotation_only_rate() const noexcept {
    return ratio(empty_branches + rotation_only_branches, bracket_pairs);
}

ErrorRates& ErrorRates::operator+=(const ErrorRates& o) noexcept {
    rotation_groups += o.rotation_groups;
    invalid_rotation_groups += o.invalid_rotation_groups;
    bracket_pairs += o.bracket_pairs;
    uneven_brackets += o.uneven_brackets;
    empty_branches += o.empty_branches;
    rotation_only_branches += o.rotation_only_branches;
    return *this;
}

ErrorRates error_counts(std::string_view text) noexcept {
    ErrorRates r;
    std::size_t opens = 0;
    std::size_t closes = 0;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (is_rotation_char(c)) {
            bool plus = false, minus = false;
            std::size_t j = i;
            for (; j < text.size() && is_rotation_char(text[j]); ++j) (text[j] == '+' ? plus : minus) = true;
            ++r.rotation_groups;
            if (plus && minus) ++r.invalid_rotation_groups;
            i = j;
            continue;
        }
        if (c == '[') {
            ++opens;
            if (i + 1 < text.size() && text[i + 1] == ']') {
                ++r.empty_branches;
            } else {
                std::size_t j = i + 1;
                while (j < text.size() && is_rotation_char(text[j])) ++j;
                if (j > i + 1 && j < text.size() && text[j] == ']') ++r.rotation_only_branches;
            }
        } else if (c == ']') {
            ++closes;
        }
        ++i;
    }
    r.bracket_pairs = std::max(opens, closes);
    r.uneven_brackets = opens > closes ? opens - closes : closes - opens;
    return r;
}

ErrorRates error_rates(std::span<const std::string> texts) noexcept {
    ErrorRates total;
    for (const auto& t : texts) total += error_counts(t);
    return total;
}

std::vector<Token> level_projection(const Word& word, int level) {
    std::vector<Token> out;
    int depth = 0;
    for (Token t : word.tokens()) {
        if (t == Token::Open) {
            ++depth;
            if (depth == level) out.push_back(t);
        } else if (t == Token::Close) {
            if (depth == level) out.push_back(t);
            --depth;
        } else if (depth == level) {
            out.push_back(t);
        }
    }
    return out;
}

double hierarchy_accuracy(std::span<const Word> predictions, std::span<const Word> truths, int level) {
    if (predictions.size() != truths.size()) {
        throw std::invalid_argument("hierarchy_accuracy: one truth per prediction required");
    }
    if (predictions.empty()) return 1.0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (level_projection(predictions[i], level) == level_projection(truths[i], level)) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(predictions.size());
}

namespace {

void draw(RgbImage& image, const Segment& s, Rgb color) {
    const Pixel a = to_pixel(s.a, image.height());
    const Pixel b = to_pixel(s.b, image.height());
    for_each_line_pixel(a, b, [&](int col, int row) {
        if (image.contains(col, row)) image.set(col, row, color);
    });
}

}  // namespace

DiffResult diff_render(const Word& prediction, const Word& truth, double delta_degrees, double length, int size,
                       double margin) {
    const SegmentList truth_raw = interpret(truth, delta_degrees, length);
    const SegmentList pred_raw = interpret(prediction, delta_degrees, length);

    SegmentList all = truth_raw;
    all.insert(all.end(), pred_raw.begin(), pred_raw.end());

    DiffResult result;
    result.image = RgbImage(size, size);
    if (all.empty()) return result;

    const FitTransform fit = compute_fit(bounding_box(all), size, size, margin);
    const SegmentList fitted = fit.apply(all);
    const std::size_t nt = truth_raw.size();

    // Greedy one-to-one matching across the two sets.
    std::vector<bool> matched(fitted.size(), false);
    std::vector<std::size_t> common;
    for (const auto& [i, j] : coincident_segments(fitted, 1e-3 * size)) {
        if (i < nt && j >= nt && !matched[i] && !matched[j]) {
            matched[i] = matched[j] = true;
            common.push_back(i);
        }
    }

    for (std::size_t k = 0; k < fitted.size(); ++k) {
        if (matched[k]) continue;
        if (k < nt) {
            draw(result.image, fitted[k], kRed);
            ++result.truth_only;
        } else {
            draw(result.image, fitted[k], kBlue);
            ++result.prediction_only;
        }
    }
    for (std::size_t k : common) draw(result.image, fitted[k], kBlack);
    result.common = common.size();
    return result;
}

DiffResult diff_render(std::string_view prediction_text, const Word& truth, double delta_degrees, double length,
                       int size, double margin) {
    try {
        return diff_render(parse(prediction_text, truth.scheme()), truth, delta_degrees, length, size, margin);
    } catch (const SyntaxError&) {
        DiffResult result = diff_render(Word::from_tokens({}, truth.scheme()), truth, delta_degrees, length, size,
                                        margin);
        result.fallback = true;
        return result;
    }
}

double CategoryCounts::fraction(Category category) const noexcept {
    const std::size_t n = total();
    if (n == 0) return 0.0;
    std::size_t k = 0;
    switch (category) {
        case Category::Correct: k = correct; break;
        case Category::FalseSyntax: k = false_syntax; break;
        case Category::NonTerminating: k = non_terminating; break;
        case Category::Residue: k = residue; break;
    }
    return static_cast<double>(k) / static_cast<double>(n);
}

void CategoryCounts::add(Category category) noexcept {
    switch (category) {
        case Category::Correct: ++correct; break;
        case Category::FalseSyntax: ++false_syntax; break;
        case Category::NonTerminating: ++non_terminating; break;
        case Category::Residue: ++residue; break;
    }
}

EvaluationReport evaluate(const DatasetManifest& manifest, std::span<const PredictionRecord> predictions,
                          const EvaluationOptions& options) {
    EvaluationReport report;
    report.scheme = options.scheme;
    std::size_t longest = manifest.max_seq_len(options.scheme);
    if (longest == 0) {
        for (const auto& e : manifest.entries) {
            longest = std::max(longest, options.scheme == Scheme::Fused ? e.len_fused : e.len_char);
        }
    }
    report.max_len = options.max_len ? options.max_len : 2 * longest;
    const double length = manifest.config.segment_length;

    std::vector<PredictionRecord> records;
    std::vector<Word> truths;
    std::unordered_set<std::size_t> seen;
    for (const auto& p : predictions) {
        const ManifestEntry* entry = manifest.find(p.id);
        if (!entry) {
            report.rejected.push_back({p.id, "unknown id"});
            continue;
        }
        if (!seen.insert(p.id).second) {
            report.rejected.push_back({p.id, "duplicate id"});
            continue;
        }
        if (options.split && entry->split != *options.split) {
            ++report.skipped;
            continue;
        }
        Word truth;
        try {
            truth = convert(parse(entry->word, Scheme::Char), options.scheme);
        } catch (const SyntaxError& e) {
            report.rejected.push_back({p.id, std::string("ground truth not representable: ") + e.what()});
            continue;
        }
        if (p.logprobs) {
            const std::size_t expected = truth.size() + 1;
            if (p.logprobs->size() != expected) {
                report.rejected.push_back({p.id, "expected " + std::to_string(expected) + " log-probabilities, got " +
                                                     std::to_string(p.logprobs->size())});
                continue;
            }
            const bool bad = std::any_of(p.logprobs->begin(), p.logprobs->end(),
                                         [](double lp) { return !std::isfinite(lp) || lp > 0.0; });
            if (bad) {
                report.rejected.push_back({p.id, "log-probabilities must be finite and <= 0"});
                continue;
            }
        }
        records.push_back(p);
        truths.push_back(std::move(truth));
    }
    report.scored = records.size();

    const bool all_logprobs =
        !records.empty() && std::all_of(records.begin(), records.end(), [](const auto& r) { return r.logprobs.has_value(); });
    if (all_logprobs) {
        report.ce_nats = cross_entropy(records);
        report.ppl = perplexity(*report.ce_nats);
        report.bits_per_token = bits_per_token(*report.ce_nats);
        report.bpc = bits_per_char(records, truths);
    }

    std::vector<std::string> texts;
    std::vector<Word> hier_pred, hier_truth;
    int deepest = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto result = categorize(records[i], truths[i], report.max_len, options.validation_angle, length);
        report.categories.add(result.category);
        texts.push_back(ids_to_text(records[i].pred_tokens, options.scheme));
        deepest = std::max(deepest, max_depth(truths[i]));
        if (result.category == Category::NonTerminating) {
            ++report.hierarchy_excluded;
            continue;
        }
        try {
            Word w = detokenize(records[i].pred_tokens, options.scheme);
            hier_pred.push_back(std::move(w));
            hier_truth.push_back(truths[i]);
        } catch (const SyntaxError&) {
            ++report.hierarchy_excluded;
        }
    }
    report.errors = error_rates(texts);

    const int top = options.max_level >= 0 ? options.max_level : deepest;
    for (int level = 0; level <= top; ++level) {
        report.hierarchy.push_back(hierarchy_accuracy(hier_pred, hier_truth, level));
    }
    return report;
}

std::string EvaluationReport::to_json() const {
    using nlohmann::json;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json rejects = json::array();
    for (const auto& r : rejected) rejects.push_back({{"id", r.id}, {"reason", r.reason}});
    const json j = {
        {"scheme", std::string(scheme_name(scheme))},
        {"max_len", max_len},
        {"scored", scored},
        {"skipped", skipped},
        {"rejected", rejects},
        {"ce_nats", opt(ce_nats)},
        {"ppl", opt(ppl)},
        {"bits_per_token", opt(bits_per_token)},
        {"bpc", opt(bpc)},
        {"categories",
         {{"correct", categories.fraction(Category::Correct)},
          {"false_syntax", categories.fraction(Category::FalseSyntax)},
          {"non_terminating", categories.fraction(Category::NonTerminating)},
          {"residue", categories.fraction(Category::Residue)}}},
        {"category_counts",
         {{"correct", categories.correct},
          {"false_syntax", categories.false_syntax},
          {"non_terminating", categories.non_terminating},
          {"residue", categories.residue}}},
        {"error_rates",
         {{"invalid_rotation_rate", errors.invalid_rotation_rate()},
          {"invalid_bracket_rate", errors.invalid_bracket_rate()},
          {"empty_branch_rate", errors.empty_branch_rate()},
          {"empty_or_rotation_only_branch_rate", errors.empty_or_rotation_only_rate()},
          {"rotation_groups", errors.rotation_groups},
          {"invalid_rotation_groups", errors.invalid_rotation_groups},
          {"bracket_pairs", errors.bracket_pairs},
          {"uneven_brackets", errors.uneven_brackets},
          {"empty_branches", errors.empty_branches},
          {"rotation_only_branches", errors.rotation_only_branches}}},
        {"hierarchy_accuracy", hierarchy},
        {"hierarchy_excluded", hierarchy_excluded},
    };
    return j.dump(2);
}

std::string EvaluationReport::to_table() const {
    std::string out;
    char buf[256];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    auto pct = [](double v) { return 100.0 * v; };

    line("scheme: %s   scored: %zu   skipped: %zu   rejected: %zu   max_len: %zu\n",
         std::string(scheme_name(scheme)).c_str(), scored, skipped, rejected.size(), max_len);
    if (ce_nats) {
        line("CE %.4f nats/token   PPL %.4f   bits/token %.4f   BPC %.4f\n", *ce_nats, *ppl, *bits_per_token, *bpc);
    } else {
        out += "CE/PPL/BPC: n/a (log-probabilities missing)\n";
    }
    out += "\n";
    line("%-10s | %8s | %8s | %8s | %8s\n", "", "Correct", "FalseSyn", "NonTerm", "Residue");
    line("%-10s | %7.2f%% | %7.2f%% | %7.2f%% | %7.2f%%\n", "fraction", pct(categories.fraction(Category::Correct)),
         pct(categories.fraction(Category::FalseSyntax)), pct(categories.fraction(Category::NonTerminating)),
         pct(categories.fraction(Category::Residue)));
    line("%-10s | %8zu | %8zu | %8zu | %8zu\n", "count", categories.correct, categories.false_syntax,
         categories.non_terminating, categories.residue);
    out += "\n";
    line("%-10s | %8s | %8s | %14s\n", "", "+- / -+", "[[]", "empty branches");
    line("%-10s | %7.2f%% | %7.2f%% | %13.2f%%\n", "errors", pct(errors.invalid_rotation_rate()),
         pct(errors.invalid_bracket_rate()), pct(errors.empty_branch_rate()));
    out += "\nhierarchy accuracy:";
    for (std::size_t k = 0; k < hierarchy.size(); ++k) {
        line(" L%zu=%.2f%%", k, pct(hierarchy[k]));
    }
    line("   (excluded %zu)\n", hierarchy_excluded);
    return out;
}

}  // namespace lsys
