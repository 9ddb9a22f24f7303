#include "lsys/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "lsys/image_io.hpp"
#include "lsys/random.hpp"

namespace lsys {

std::string_view split_name(Split split) noexcept {
    switch (split) {
        case Split::Train: return "train";
        case Split::Validation: return "validation";
        case Split::Test: return "test";
    }
    return "train";
}

Split parse_split(std::string_view name) {
    if (name == "train") return Split::Train;
    if (name == "validation" || name == "val") return Split::Validation;
    if (name == "test") return Split::Test;
    throw std::invalid_argument("unknown split '" + std::string(name) + "' (expected train, validation or test)");
}

GenerationConfig GenerationConfig::paper_scale() {
    GenerationConfig config;
    config.target_unique = 48267;
    config.image_size = 512;
    return config;
}

void GenerationConfig::validate() const {
    if (target_unique == 0) throw std::invalid_argument("target_unique must be positive");
    if (derivation_range.lo < 1 || derivation_range.hi < derivation_range.lo) {
        throw std::invalid_argument("derivation_range must satisfy 1 <= lo <= hi");
    }
    if (!(angle_range.lo > 0.0) || !(angle_range.hi < 90.0) || angle_range.hi < angle_range.lo) {
        throw std::invalid_argument("angle_range must lie within (0, 90) degrees with lo <= hi");
    }
    if (!(segment_length > 0.0)) throw std::invalid_argument("segment length f must be positive");
    if (image_size <= 0 || !(margin >= 0.0) || image_size - 2.0 * margin <= 0.0) {
        throw std::invalid_argument("image_size must leave a positive interior after margins");
    }
    const double fractions[] = {split.train, split.validation, split.test};
    for (double f : fractions) {
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("split fractions must be in [0, 1]");
    }
    if (std::abs(split.train + split.validation + split.test - 1.0) > 1e-9) {
        throw std::invalid_argument("split fractions must sum to 1");
    }
    if (attempt_factor == 0) throw std::invalid_argument("attempt_factor must be positive");
}

std::size_t DatasetManifest::count(Split split) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const ManifestEntry& e) { return e.split == split; }));
}

const ManifestEntry* DatasetManifest::find(std::size_t id) const noexcept {
    if (id < entries.size() && entries[id].id == id) return &entries[id];
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const ManifestEntry& e) { return e.id == id; });
    return it == entries.end() ? nullptr : &*it;
}

SplitSizes split_sizes(std::size_t n, const SplitFractions& fractions) noexcept {
    SplitSizes sizes;
    sizes.train = std::min(n, static_cast<std::size_t>(std::floor(static_cast<double>(n) * fractions.train + 0.5)));
    sizes.validation = std::min(
        n - sizes.train, static_cast<std::size_t>(std::floor(static_cast<double>(n) * fractions.validation + 0.5)));
    sizes.test = n - sizes.train - sizes.validation;
    return sizes;
}

DatasetManifest generate(const GenerationConfig& config) {
    config.validate();

    DatasetManifest manifest;
    manifest.config = config;

    SplitMix64 rng(config.master_seed);
    std::unordered_set<std::string> accepted;
    std::unordered_set<std::string> rejected;
    std::vector<Word> words;
    const std::size_t budget = config.attempt_factor * config.target_unique;

    while (words.size() < config.target_unique && manifest.attempts < budget) {
        ++manifest.attempts;
        const auto steps = static_cast<int>(rng.uniform_int(config.derivation_range.lo, config.derivation_range.hi));
        const std::uint64_t seed = rng.next();

        Word word = rewrite_canonical(derive(config.grammar, steps, seed));
        std::string text = to_string(word);
        if (accepted.contains(text) || rejected.contains(text)) continue;

        bool keep = !word.empty();
        if (keep) {
            try {
                (void)convert(word, Scheme::Fused);
            } catch (const SyntaxError&) {
                keep = false;
            }
        }
        keep = keep && check(word, config.validation_angle, config.segment_length).empty();
        if (!keep) {
            rejected.insert(std::move(text));
            continue;
        }
        accepted.insert(std::move(text));
        words.push_back(std::move(word));
    }
    manifest.target_reached = words.size() >= config.target_unique;

    const std::size_t n = words.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 shuffle_rng(substream_seed(config.master_seed, 1));
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
        std::swap(order[i - 1], order[j]);
    }
    const SplitSizes sizes = split_sizes(n, config.split);
    std::vector<Split> assignment(n, Split::Test);
    for (std::size_t k = 0; k < n; ++k) {
        if (k < sizes.train) assignment[order[k]] = Split::Train;
        else if (k < sizes.train + sizes.validation) assignment[order[k]] = Split::Validation;
    }

    manifest.entries.reserve(n);
    for (std::size_t id = 0; id < n; ++id) {
        ManifestEntry e;
        e.id = id;
        e.word = to_string(words[id]);
        e.split = assignment[id];
        e.len_char = convert(words[id], Scheme::Char).size() + 1;
        e.len_fused = convert(words[id], Scheme::Fused).size() + 1;
        manifest.max_seq_len_char = std::max(manifest.max_seq_len_char, e.len_char);
        manifest.max_seq_len_fused = std::max(manifest.max_seq_len_fused, e.len_fused);
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

double epoch_angle(const GenerationConfig& config, std::uint64_t epoch_seed, std::size_t id) noexcept {
    SplitMix64 rng(substream_seed(epoch_seed, id));
    return rng.uniform(config.angle_range.lo, config.angle_range.hi);
}

BinaryImage render_entry(const DatasetManifest& manifest, const ManifestEntry& entry, double delta_degrees) {
    const auto& c = manifest.config;
    return render_word(parse(entry.word, Scheme::Char),
                       RenderOptions{delta_degrees, c.segment_length, c.image_size, c.margin});
}

namespace {

template <class AngleFn>
RenderSummary render_all(const DatasetManifest& manifest, const RenderRequest& request, AngleFn angle_of) {
    std::error_code ec;
    std::filesystem::create_directories(request.output_dir, ec);
    if (ec) throw IoError(request.output_dir, "cannot create directory: " + ec.message());

    std::vector<const ManifestEntry*> selected;
    for (const auto& e : manifest.entries) {
        if (!request.split || e.split == *request.split) selected.push_back(&e);
    }

    RenderSummary summary;
    summary.angles.resize(selected.size());
    for (std::size_t k = 0; k < selected.size(); ++k) summary.angles[k] = angle_of(*selected[k]);

    const char* ext = request.format == ImageFormat::Png ? ".png" : ".pgm";
    unsigned workers = request.threads ? request.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, selected.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < selected.size(); k = next++) {
            try {
                const auto image = render_entry(manifest, *selected[k], summary.angles[k]);
                write_image(request.output_dir / (std::to_string(selected[k]->id) + ext), image);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = selected.size();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);
    summary.images = selected.size();
    return summary;
}

}  // namespace

RenderSummary render_epoch(const DatasetManifest& manifest, std::uint64_t epoch_seed, const RenderRequest& request) {
    return render_all(manifest, request,
                      [&](const ManifestEntry& e) { return epoch_angle(manifest.config, epoch_seed, e.id); });
}

RenderSummary materialize(const DatasetManifest& manifest, double delta_degrees, const RenderRequest& request) {
    return render_all(manifest, request, [&](const ManifestEntry&) { return delta_degrees; });
}

}  // namespace lsys
