#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsys/lsys.hpp"

namespace lsys::cli {
namespace {

using nlohmann::json;

/// Usage problem detected after parsing (conflicting or missing flags).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputLine {
    std::size_t line = 0;
    std::string text;
};

std::vector<InputLine> read_words(const std::string& path, std::istream& fallback) {
    std::ifstream file;
    std::istream* in = &fallback;
    if (!path.empty() && path != "-") {
        file.open(path, std::ios::binary);
        if (!file) throw IoError(path, "cannot open for reading");
        in = &file;
    }
    std::vector<InputLine> words;
    std::string line;
    std::size_t n = 0;
    while (std::getline(*in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        words.push_back({n, line});
    }
    return words;
}

/// Destination for text output: the file given by --out, else `fallback`.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback), path_(path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError(path, "cannot open for writing");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }
    void close() {
        stream_->flush();
        if (!*stream_) throw IoError(path_.empty() ? "<stdout>" : path_, "write failed");
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
    std::string path_;
};

json location_json(const ViolationLocation& loc) {
    switch (loc.kind) {
        case ViolationLocation::Kind::SegmentPair: return {{"segments", {loc.first, loc.second}}};
        case ViolationLocation::Kind::Character: return {{"char", loc.first}};
        case ViolationLocation::Kind::Token: return {{"token", loc.first}};
    }
    return nullptr;
}

Scheme scheme_from(const std::string& name) {
    try {
        return parse_scheme(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string config_path;
    std::string grammar_path;
    std::optional<std::size_t> target;
    std::optional<std::uint64_t> seed;
    std::optional<int> min_steps, max_steps;
    std::optional<double> angle_min, angle_max;
    std::optional<double> f;
    std::optional<int> size;
    std::optional<double> margin;
    bool paper_scale = false;
    std::string out;
    std::string materialize_dir;
    std::optional<double> materialize_angle;
    bool png = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
    GenerationConfig config;
    if (!a.config_path.empty()) config = load_config_file(a.config_path, config);
    if (!a.grammar_path.empty()) {
        auto g = load_grammar_file(a.grammar_path);
        config.grammar = g.grammar;
        config.segment_length = g.grammar.segment_length();
        config.angle_range = g.angle_range;
    }
    if (a.paper_scale) {
        const auto paper = GenerationConfig::paper_scale();
        config.target_unique = paper.target_unique;
        config.image_size = paper.image_size;
    }
    if (a.target) config.target_unique = *a.target;
    if (a.seed) config.master_seed = *a.seed;
    if (a.min_steps) config.derivation_range.lo = *a.min_steps;
    if (a.max_steps) config.derivation_range.hi = *a.max_steps;
    if (a.angle_min) config.angle_range.lo = *a.angle_min;
    if (a.angle_max) config.angle_range.hi = *a.angle_max;
    if (a.f) config.segment_length = *a.f;
    if (a.size) config.image_size = *a.size;
    if (a.margin) config.margin = *a.margin;

    const DatasetManifest manifest = generate(config);
    if (!manifest.target_reached) {
        err << "warning: attempt budget exhausted after " << manifest.attempts << " derivations; collected "
            << manifest.entries.size() << " of " << config.target_unique << " unique words\n";
    }
    Output sink(a.out, out);
    write_manifest(sink.stream(), manifest);
    sink.close();

    if (!a.materialize_dir.empty()) {
        const double angle = a.materialize_angle.value_or((config.angle_range.lo + config.angle_range.hi) / 2.0);
        RenderRequest req;
        req.output_dir = a.materialize_dir;
        req.format = a.png ? ImageFormat::Png : ImageFormat::Pgm;
        const auto summary = materialize(manifest, angle, req);
        err << "materialized " << summary.images << " images at " << angle << " degrees into " << a.materialize_dir
            << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------------ render

struct RenderArgs {
    std::string word;
    std::string in;
    std::string manifest;
    std::optional<double> delta;
    std::optional<std::uint64_t> epoch_seed;
    double f = 100.0;
    int size = 128;
    double margin = kDefaultMargin;
    std::string out;
    bool png = false;
    std::string split;
};

int cmd_render(const RenderArgs& a, std::istream& in, std::ostream& err) {
    if (a.out.empty()) throw UsageError("render needs --out (a file for --word, a directory otherwise)");
    if (!a.word.empty() && !a.manifest.empty()) throw UsageError("--word and --manifest are mutually exclusive");
    const char* ext = a.png ? ".png" : ".pgm";

    if (!a.manifest.empty()) {
        const DatasetManifest manifest = load_manifest(a.manifest);
        RenderRequest req;
        req.output_dir = a.out;
        req.format = a.png ? ImageFormat::Png : ImageFormat::Pgm;
        if (!a.split.empty()) req.split = parse_split(a.split);
        RenderSummary summary;
        if (a.delta) {
            summary = materialize(manifest, *a.delta, req);
        } else {
            summary = render_epoch(manifest, a.epoch_seed.value_or(0), req);
        }
        err << "rendered " << summary.images << " images into " << a.out << "\n";
        return kExitOk;
    }

    const RenderOptions options{a.delta.value_or(25.0), a.f, a.size, a.margin};
    if (!a.word.empty()) {
        write_image(a.out, render_word(parse(a.word, Scheme::Char), options));
        return kExitOk;
    }
    std::filesystem::create_directories(a.out);
    std::size_t index = 0;
    for (const auto& w : read_words(a.in, in)) {
        const auto path = std::filesystem::path(a.out) / (std::to_string(index++) + ext);
        write_image(path, render_word(parse(w.text, Scheme::Char), options));
    }
    err << "rendered " << index << " images into " << a.out << "\n";
    return kExitOk;
}

// ------------------------------------------------------------ canonicalize

struct WordsArgs {
    std::string in;
    std::string out;
    std::string scheme = "char";
    bool json = false;
    double angle = kValidationAngle;
    double f = 100.0;
    bool partial = false;
};

int cmd_canonicalize(const WordsArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    const Scheme scheme = scheme_from(a.scheme);
    const auto words = read_words(a.in, in);
    Output sink(a.out, out);
    int status = kExitOk;
    for (const auto& w : words) {
        try {
            const Word input = parse(w.text, scheme);
            const Word canonical = rewrite_canonical(input);
            const std::string text = to_string(canonical);
            if (a.json) {
                sink.stream() << json{{"line", w.line}, {"input", w.text}, {"canonical", text},
                                      {"changed", !(canonical == input)}}
                                     .dump()
                              << '\n';
            } else {
                sink.stream() << text << '\n';
            }
        } catch (const SyntaxError& e) {
            status = kExitValidation;
            if (a.json) {
                sink.stream() << json{{"line", w.line}, {"input", w.text}, {"error", e.what()}}.dump() << '\n';
            }
            err << "line " << w.line << ": " << e.what() << "\n";
        }
    }
    sink.close();
    return status;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const WordsArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    const Scheme scheme = scheme_from(a.scheme);
    const auto words = read_words(a.in, in);
    Output sink(a.out, out);
    CheckOptions options;
    options.flag_partial_overlaps = a.partial;
    std::size_t bad_words = 0;
    for (const auto& w : words) {
        std::vector<RuleViolation> violations;
        try {
            violations = check(parse(w.text, scheme), a.angle, a.f, options);
        } catch (const SyntaxError& e) {
            ++bad_words;
            if (a.json) {
                sink.stream() << json{{"line", w.line}, {"word", w.text}, {"error", e.what()}}.dump() << '\n';
            } else {
                sink.stream() << w.text << ": syntax error: " << e.what() << '\n';
            }
            continue;
        }
        if (!violations.empty()) ++bad_words;
        if (a.json) {
            for (const auto& v : violations) {
                sink.stream() << json{{"line", w.line},
                                      {"word", w.text},
                                      {"rule", v.rule},
                                      {"location", location_json(v.location)},
                                      {"description", v.description}}
                                     .dump()
                              << '\n';
            }
        } else if (violations.empty()) {
            sink.stream() << w.text << ": ok\n";
        } else {
            for (const auto& v : violations) {
                sink.stream() << w.text << ": rule " << v.rule << ": " << v.description << '\n';
            }
        }
    }
    sink.close();
    if (bad_words) err << bad_words << " of " << words.size() << " words violate the word rules\n";
    return bad_words ? kExitValidation : kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string manifest;
    std::string predictions;
    std::string scheme = "fused";
    std::string split;
    std::size_t max_len = 0;
    double angle = kValidationAngle;
    std::string out;
    bool json = false;
    bool strict = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
    const DatasetManifest manifest = load_manifest(a.manifest);
    const PredictionFile file = load_predictions(a.predictions);
    EvaluationOptions options;
    options.scheme = scheme_from(a.scheme);
    if (!a.split.empty()) options.split = parse_split(a.split);
    options.max_len = a.max_len;
    options.validation_angle = a.angle;

    const EvaluationReport report = evaluate(manifest, file.records, options);
    for (const auto& r : file.rejects) err << a.predictions << ":" << r.line << ": rejected: " << r.reason << "\n";
    for (const auto& r : report.rejected) err << "record " << r.id << ": rejected: " << r.reason << "\n";

    if (!a.out.empty()) {
        Output sink(a.out, out);
        sink.stream() << report.to_json() << '\n';
        sink.close();
    }
    if (a.json) out << report.to_json() << '\n';
    else out << report.to_table();

    const std::size_t rejects = file.rejects.size() + report.rejected.size();
    return (a.strict && rejects) ? kExitValidation : kExitOk;
}

// -------------------------------------------------------------------- diff

struct DiffArgs {
    std::string truth;
    std::string prediction;
    std::string scheme = "char";
    double delta = 25.0;
    double f = 100.0;
    int size = 512;
    double margin = kDefaultMargin;
    std::string out;
};

int cmd_diff(const DiffArgs& a, std::ostream& out, std::ostream& err) {
    const Scheme scheme = scheme_from(a.scheme);
    Word truth;
    try {
        truth = parse(a.truth, scheme);
    } catch (const SyntaxError& e) {
        throw UsageError(std::string("--truth: ") + e.what());
    }
    const DiffResult diff = diff_render(a.prediction, truth, a.delta, a.f, a.size, a.margin);
    write_image(a.out, diff.image);
    if (diff.fallback) err << "warning: prediction could not be interpreted; rendered ground truth only\n";
    out << "common " << diff.common << "  truth_only " << diff.truth_only << "  prediction_only "
        << diff.prediction_only << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ derive

struct DeriveArgs {
    std::string grammar;
    int steps = 1;
    std::uint64_t seed = 0;
    bool canonical = false;
};

int cmd_derive(const DeriveArgs& a, std::ostream& out) {
    const Grammar grammar = a.grammar.empty() ? Grammar::default_grammar() : load_grammar_file(a.grammar).grammar;
    Word word = derive(grammar, a.steps, a.seed);
    if (a.canonical) word = rewrite_canonical(word);
    out << to_string(word) << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"L-system word toolkit: generate, canonicalize, render and evaluate tree topology words"};
    app.name(args.empty() ? "lsys" : std::filesystem::path(args.front()).filename().string());
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a dataset manifest (JSON Lines)");
    generate_cmd->add_option("--config", gen.config_path, "Generation config JSON")->check(CLI::ExistingFile);
    generate_cmd->add_option("--grammar", gen.grammar_path, "Grammar JSON")->check(CLI::ExistingFile);
    generate_cmd->add_option("--target", gen.target, "Number of unique words");
    generate_cmd->add_option("--seed", gen.seed, "Master seed")->envname("LSYS_SEED");
    generate_cmd->add_option("--min-steps", gen.min_steps, "Smallest derivation count");
    generate_cmd->add_option("--max-steps", gen.max_steps, "Largest derivation count");
    generate_cmd->add_option("--angle-min", gen.angle_min, "Lower bound of the epoch angle range (degrees)");
    generate_cmd->add_option("--angle-max", gen.angle_max, "Upper bound of the epoch angle range (degrees)");
    generate_cmd->add_option("--f", gen.f, "Segment length");
    generate_cmd->add_option("--size", gen.size, "Image size in pixels");
    generate_cmd->add_option("--margin", gen.margin, "Canvas margin in pixels");
    generate_cmd->add_flag("--paper-scale", gen.paper_scale, "48267 words at 512 px");
    generate_cmd->add_option("--out", gen.out, "Manifest path (stdout if omitted)");
    generate_cmd->add_option("--materialize", gen.materialize_dir, "Also render every entry at one fixed angle");
    generate_cmd->add_option("--materialize-angle", gen.materialize_angle, "Angle for --materialize");
    generate_cmd->add_flag("--png", gen.png, "Write PNG instead of PGM");

    RenderArgs ren;
    auto* render_cmd = app.add_subcommand("render", "Render words or a manifest to images");
    render_cmd->add_option("--word", ren.word, "Single word");
    render_cmd->add_option("--in", ren.in, "Word file, one per line (stdin if omitted)");
    render_cmd->add_option("--manifest", ren.manifest, "Manifest to render")->check(CLI::ExistingFile);
    render_cmd->add_option("--delta", ren.delta, "Branching angle in degrees (manifests: fixed angle)");
    render_cmd->add_option("--epoch-seed", ren.epoch_seed, "Epoch seed for per-entry angles")->envname("LSYS_SEED");
    render_cmd->add_option("--f", ren.f, "Segment length");
    render_cmd->add_option("--size", ren.size, "Image size in pixels");
    render_cmd->add_option("--margin", ren.margin, "Canvas margin in pixels");
    render_cmd->add_option("--split", ren.split, "Only this split (train, validation, test)");
    render_cmd->add_option("--out", ren.out, "Output file (--word) or directory");
    render_cmd->add_flag("--png", ren.png, "Write PNG instead of PGM");

    WordsArgs canon;
    auto* canonicalize_cmd = app.add_subcommand("canonicalize", "Rewrite words into canonical form");
    canonicalize_cmd->add_option("--in", canon.in, "Word file (stdin if omitted)");
    canonicalize_cmd->add_option("--out", canon.out, "Output file (stdout if omitted)");
    canonicalize_cmd->add_option("--scheme", canon.scheme, "char or fused");
    canonicalize_cmd->add_flag("--json", canon.json, "JSON Lines output");

    WordsArgs val;
    auto* validate_cmd = app.add_subcommand("validate", "Report rule violations; exit 1 if any");
    validate_cmd->add_option("--in", val.in, "Word file (stdin if omitted)");
    validate_cmd->add_option("--out", val.out, "Report file (stdout if omitted)");
    validate_cmd->add_option("--scheme", val.scheme, "char or fused");
    validate_cmd->add_option("--angle", val.angle, "Validation angle in degrees");
    validate_cmd->add_option("--f", val.f, "Segment length");
    validate_cmd->add_flag("--partial-overlaps", val.partial, "Also flag partially overlapping segments");
    validate_cmd->add_flag("--json", val.json, "JSON Lines output");

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a predictions file against a manifest");
    evaluate_cmd->add_option("--manifest", ev.manifest, "Manifest")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--predictions", ev.predictions, "Predictions JSON Lines")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--scheme", ev.scheme, "Tokenization of pred_tokens: char or fused");
    evaluate_cmd->add_option("--split", ev.split, "Only score this split");
    evaluate_cmd->add_option("--max-len", ev.max_len, "Decode limit (default 2 x longest sequence)");
    evaluate_cmd->add_option("--angle", ev.angle, "Validation angle in degrees");
    evaluate_cmd->add_option("--out", ev.out, "Write the JSON report here");
    evaluate_cmd->add_flag("--json", ev.json, "Print JSON instead of the table");
    evaluate_cmd->add_flag("--strict", ev.strict, "Exit 1 when any record is rejected");

    DiffArgs df;
    auto* diff_cmd = app.add_subcommand("diff", "Render truth vs prediction (black both, red truth, blue prediction)");
    diff_cmd->add_option("--truth", df.truth, "Ground-truth word")->required();
    diff_cmd->add_option("--pred", df.prediction, "Predicted word")->required();
    diff_cmd->add_option("--scheme", df.scheme, "char or fused");
    diff_cmd->add_option("--delta", df.delta, "Branching angle in degrees");
    diff_cmd->add_option("--f", df.f, "Segment length");
    diff_cmd->add_option("--size", df.size, "Image size in pixels");
    diff_cmd->add_option("--margin", df.margin, "Canvas margin in pixels");
    diff_cmd->add_option("--out", df.out, "Output image (.ppm or .png)")->required();

    DeriveArgs dv;
    auto* derive_cmd = app.add_subcommand("derive", "Derive one word from a grammar");
    derive_cmd->add_option("--grammar", dv.grammar, "Grammar JSON (built-in default if omitted)")
        ->check(CLI::ExistingFile);
    derive_cmd->add_option("--steps", dv.steps, "Number of rewriting passes")->required()->check(CLI::PositiveNumber);
    derive_cmd->add_option("--seed", dv.seed, "Derivation seed")->envname("LSYS_SEED");
    derive_cmd->add_flag("--canonical", dv.canonical, "Rewrite the result into canonical form");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("lsys");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate_cmd->parsed()) return cmd_generate(gen, out, err);
        if (render_cmd->parsed()) return cmd_render(ren, in, err);
        if (canonicalize_cmd->parsed()) return cmd_canonicalize(canon, in, out, err);
        if (validate_cmd->parsed()) return cmd_validate(val, in, out, err);
        if (evaluate_cmd->parsed()) return cmd_evaluate(ev, out, err);
        if (diff_cmd->parsed()) return cmd_diff(df, out, err);
        if (derive_cmd->parsed()) return cmd_derive(dv, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SyntaxError& e) {
        err << "error: invalid word: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace lsys::cli
