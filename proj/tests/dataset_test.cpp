#include <set>

#include <gtest/gtest.h>

#include "lsys/canonical.hpp"
#include "lsys/dataset.hpp"
#include "lsys/image_io.hpp"
#include "test_support.hpp"

using namespace lsys;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

GenerationConfig small(std::size_t target, std::uint64_t seed) {
    GenerationConfig c;
    c.target_unique = target;
    c.master_seed = seed;
    c.image_size = 64;
    return c;
}

}  // namespace

TEST(SplitSizes, Arithmetic) {
    const auto s = split_sizes(2000, {});
    EXPECT_EQ(s.train, 1800u);
    EXPECT_EQ(s.validation, 100u);
    EXPECT_EQ(s.test, 100u);
    const auto t = split_sizes(7, {});
    EXPECT_EQ(t.train, 6u);
    EXPECT_EQ(t.validation, 0u);
    EXPECT_EQ(t.test, 1u);
    const auto u = split_sizes(48267, {});
    EXPECT_EQ(u.train + u.validation + u.test, 48267u);
    EXPECT_NEAR(static_cast<double>(u.validation), 48267 * 0.05, 1.0);
    EXPECT_NEAR(static_cast<double>(u.test), 48267 * 0.05, 1.0);
}

TEST(SplitNames, ParseAndPrint) {
    EXPECT_EQ(parse_split("train"), Split::Train);
    EXPECT_EQ(parse_split("validation"), Split::Validation);
    EXPECT_EQ(parse_split("val"), Split::Validation);
    EXPECT_EQ(parse_split("test"), Split::Test);
    EXPECT_EQ(split_name(Split::Validation), "validation");
    EXPECT_THROW(parse_split("dev"), std::invalid_argument);
}

TEST(GenerationConfig, Defaults) {
    const GenerationConfig c;
    EXPECT_EQ(c.target_unique, 2000u);
    EXPECT_EQ(c.derivation_range, (IntRange{1, 7}));
    EXPECT_EQ(c.angle_range, (AngleRange{15.0, 60.0}));
    EXPECT_DOUBLE_EQ(c.segment_length, 100.0);
    EXPECT_EQ(c.image_size, 128);
    EXPECT_EQ(c.attempt_factor, 50u);
    const auto paper = GenerationConfig::paper_scale();
    EXPECT_EQ(paper.target_unique, 48267u);
    EXPECT_EQ(paper.image_size, 512);
}

TEST(GenerationConfig, Validation) {
    auto bad = [](auto mutate) {
        GenerationConfig c;
        mutate(c);
        return c;
    };
    EXPECT_THROW(bad([](auto& c) { c.split = {0.9, 0.05, 0.1}; }).validate(), std::invalid_argument);
    EXPECT_THROW(bad([](auto& c) { c.derivation_range = {0, 3}; }).validate(), std::invalid_argument);
    EXPECT_THROW(bad([](auto& c) { c.derivation_range = {4, 3}; }).validate(), std::invalid_argument);
    EXPECT_THROW(bad([](auto& c) { c.angle_range = {10, 95}; }).validate(), std::invalid_argument);
    EXPECT_THROW(bad([](auto& c) { c.target_unique = 0; }).validate(), std::invalid_argument);
    EXPECT_THROW(bad([](auto& c) { c.image_size = 10; }).validate(), std::invalid_argument);
    EXPECT_NO_THROW(GenerationConfig{}.validate());
}

TEST(Generate, DeterministicForSeed) {
    const auto a = generate(small(10, 3));
    const auto b = generate(small(10, 3));
    ASSERT_EQ(a.entries.size(), 10u);
    EXPECT_EQ(a.entries, b.entries);
    EXPECT_EQ(a.attempts, b.attempts);
    const auto c = generate(small(10, 4));
    EXPECT_NE(a.entries, c.entries);
}

TEST(Generate, EntriesAreUniqueCanonicalAndSplit) {
    const auto m = generate(small(300, 11));
    ASSERT_TRUE(m.target_reached);
    ASSERT_EQ(m.entries.size(), 300u);
    std::set<std::string> seen;
    std::size_t max_char = 0, max_fused = 0;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const auto& e = m.entries[i];
        EXPECT_EQ(e.id, i);
        EXPECT_TRUE(seen.insert(e.word).second) << e.word;
        const Word w = parse(e.word, Scheme::Char);
        EXPECT_TRUE(check(w, m.config.validation_angle, m.config.segment_length).empty()) << e.word;
        EXPECT_EQ(rewrite_canonical(w), w);
        EXPECT_EQ(e.len_char, tokenize(w, Scheme::Char).size() + 1);
        EXPECT_EQ(e.len_fused, tokenize(w, Scheme::Fused).size() + 1);
        max_char = std::max(max_char, e.len_char);
        max_fused = std::max(max_fused, e.len_fused);
    }
    EXPECT_EQ(m.max_seq_len(Scheme::Char), max_char);
    EXPECT_EQ(m.max_seq_len(Scheme::Fused), max_fused);
    EXPECT_EQ(m.count(Split::Train), 270u);
    EXPECT_EQ(m.count(Split::Validation), 15u);
    EXPECT_EQ(m.count(Split::Test), 15u);
}

TEST(Generate, ReportsShortfall) {
    GenerationConfig c = small(5, 1);
    c.grammar = Grammar(parse("F", Scheme::Char), {{'F', parse("F", Scheme::Char), 1.0}}, 25.0, 100.0);
    const auto m = generate(c);
    EXPECT_FALSE(m.target_reached);
    ASSERT_EQ(m.entries.size(), 1u);
    EXPECT_EQ(m.entries[0].word, "F");
    EXPECT_EQ(m.attempts, 250u);
}

TEST(Generate, RespectsDerivationRange) {
    GenerationConfig c = small(20, 5);
    c.derivation_range = {1, 1};
    const auto m = generate(c);
    EXPECT_FALSE(m.target_reached);
    std::set<std::string> words;
    for (const auto& e : m.entries) words.insert(e.word);
    // One pass of the default grammar, canonicalized and filtered.
    EXPECT_EQ(words, (std::set<std::string>{"F", "FF", "F[+F]F", "F[-F]F", "F[+F][-F]F"}));
}

TEST(Manifest, FindById) {
    const auto m = generate(small(10, 2));
    ASSERT_NE(m.find(7), nullptr);
    EXPECT_EQ(m.find(7)->id, 7u);
    EXPECT_EQ(m.find(10), nullptr);
}

TEST(EpochAngle, InRangeDeterministicAndSeedDependent) {
    const GenerationConfig c;
    int differing = 0;
    for (std::size_t id = 0; id < 200; ++id) {
        const double a = epoch_angle(c, 1, id);
        EXPECT_GE(a, 15.0);
        EXPECT_LT(a, 60.0);
        EXPECT_EQ(a, epoch_angle(c, 1, id));
        differing += a != epoch_angle(c, 2, id);
    }
    EXPECT_GT(differing, 0);
}

TEST(RenderEpoch, BitIdenticalAcrossRuns) {
    TempDir dir;
    const auto m = generate(small(40, 9));
    RenderRequest r1{dir / "a", ImageFormat::Pgm, std::nullopt, 4};
    RenderRequest r2{dir / "b", ImageFormat::Pgm, std::nullopt, 1};
    const auto s1 = render_epoch(m, 77, r1);
    const auto s2 = render_epoch(m, 77, r2);
    EXPECT_EQ(s1.images, 40u);
    EXPECT_EQ(s1.angles, s2.angles);
    for (const auto& e : m.entries) {
        const std::string name = std::to_string(e.id) + ".pgm";
        const std::string bytes = slurp(dir / "a" / name);
        ASSERT_FALSE(bytes.empty()) << name;
        ASSERT_EQ(bytes, slurp(dir / "b" / name)) << name;
        ASSERT_EQ(read_pgm(dir / "a" / name), render_entry(m, e, epoch_angle(m.config, 77, e.id)));
    }
}

TEST(RenderEpoch, SplitFilterAndSingleForwardEntry) {
    TempDir dir;
    auto m = generate(small(40, 9));
    auto it = std::find_if(m.entries.begin(), m.entries.end(), [](const auto& e) { return e.word == "F"; });
    if (it == m.entries.end()) {
        it = m.entries.begin();
        it->word = "F";
    }
    RenderRequest req{dir.path(), ImageFormat::Pgm, it->split, 0};
    const auto s = render_epoch(m, 5, req);
    EXPECT_EQ(s.images, m.count(it->split));
    const auto img = read_pgm(dir / (std::to_string(it->id) + ".pgm"));
    EXPECT_EQ(img.foreground_count(), 53u);
    for (int row = 6; row <= 58; ++row) EXPECT_TRUE(img.at(32, row));
}

TEST(Materialize, FixedAngle) {
    TempDir dir;
    const auto m = generate(small(12, 9));
    const auto s = materialize(m, 30.0, {dir.path(), ImageFormat::Pgm, std::nullopt, 0});
    ASSERT_EQ(s.images, 12u);
    for (double a : s.angles) EXPECT_EQ(a, 30.0);
    for (const auto& e : m.entries) {
        EXPECT_EQ(read_pgm(dir / (std::to_string(e.id) + ".pgm")), render_entry(m, e, 30.0));
    }
}
