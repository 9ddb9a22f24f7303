#include <random>

#include <gtest/gtest.h>

#include "lsys/raster.hpp"
#include "lsys/turtle.hpp"
#include "oracles.hpp"

using namespace lsys;

namespace {

std::size_t column_count(const BinaryImage& img, int col) {
    std::size_t n = 0;
    for (int row = 0; row < img.height(); ++row) n += img.at(col, row);
    return n;
}

struct Extent {
    int min_col = 1 << 30, max_col = -1, min_row = 1 << 30, max_row = -1;
};

Extent extent(const BinaryImage& img) {
    Extent e;
    for (int row = 0; row < img.height(); ++row) {
        for (int col = 0; col < img.width(); ++col) {
            if (!img.at(col, row)) continue;
            e.min_col = std::min(e.min_col, col);
            e.max_col = std::max(e.max_col, col);
            e.min_row = std::min(e.min_row, row);
            e.max_row = std::max(e.max_row, row);
        }
    }
    return e;
}

}  // namespace

TEST(Rasterize, VerticalSegmentPixelCount) {
    const SegmentList segs{{{256, 6}, {256, 506}}};
    const auto img = rasterize(segs, 512, 512);
    EXPECT_EQ(column_count(img, 256), 501u);
    EXPECT_EQ(img.foreground_count(), 501u);
}

TEST(Rasterize, EmptyListIsBlank) {
    const auto img = rasterize(SegmentList{}, 32, 16);
    EXPECT_EQ(img.width(), 32);
    EXPECT_EQ(img.height(), 16);
    EXPECT_EQ(img.foreground_count(), 0u);
}

TEST(Rasterize, YAxisPointsUp) {
    const SegmentList segs{{{2, 1}, {2, 1}}};
    const auto img = rasterize(segs, 8, 8);
    EXPECT_TRUE(img.at(2, 7));
    EXPECT_EQ(to_pixel({2.4, 1.0}, 8), (Pixel{2, 7}));
}

TEST(Rasterize, OutOfCanvasThrows) {
    const SegmentList segs{{{0, 0}, {40, 40}}};
    try {
        rasterize(segs, 32, 32);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), GeometryError::Kind::OutOfCanvas);
    }
}

TEST(Rasterize, ReversedSegmentDrawsSamePixels) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 2000; ++i) {
        // Row = height - y, so y = 0 is off canvas.
        const Point a{static_cast<double>(rng() % 100), static_cast<double>(1 + rng() % 100)};
        const Point b{static_cast<double>(rng() % 100), static_cast<double>(1 + rng() % 100)};
        const SegmentList fwd{{a, b}}, rev{{b, a}};
        ASSERT_EQ(rasterize(fwd, 101, 101), rasterize(rev, 101, 101));
    }
}

TEST(Rasterize, MatchesIndependentBresenham) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 2000; ++i) {
        const Point a{static_cast<double>(rng() % 64), static_cast<double>(1 + rng() % 64)};
        const Point b{static_cast<double>(rng() % 64), static_cast<double>(1 + rng() % 64)};
        const SegmentList segs{{a, b}};
        const auto img = rasterize(segs, 64, 66);
        // Compare in image coordinates: Bresenham tie-breaking is not symmetric under the y flip.
        const auto ref = oracle::bresenham({a.x, 66 - a.y}, {b.x, 66 - b.y});
        ASSERT_EQ(img.foreground_count(), ref.size());
        for (const auto& [col, row] : ref) ASSERT_TRUE(img.at(static_cast<int>(col), static_cast<int>(row)));
    }
}

TEST(Rasterize, Deterministic) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 100; ++i) {
        const Word w = parse(oracle::random_word(rng, 5 + static_cast<int>(rng() % 60), Scheme::Char), Scheme::Char);
        const RenderOptions opts{40.0, 100.0, 128, 6.0};
        ASSERT_EQ(render_word(w, opts), render_word(w, opts));
    }
}

TEST(RenderWord, SingleForwardIsCenteredVerticalStroke) {
    for (double delta : {15.0, 33.0, 60.0}) {
        const auto img = render_word(parse("F", Scheme::Char), {delta, 100.0, 128, 6.0});
        EXPECT_EQ(img.foreground_count(), 117u);
        EXPECT_EQ(column_count(img, 64), 117u);
        EXPECT_TRUE(img.at(64, 6));
        EXPECT_TRUE(img.at(64, 122));
    }
}

TEST(RenderWord, NoForwardGivesBlankImage) {
    const auto img = render_word(parse("[]", Scheme::Char), {});
    EXPECT_EQ(img.foreground_count(), 0u);
    EXPECT_EQ(img.width(), 128);
}

// The fit pins the constrained axis to both margins; the other axis is
// centred and may stay clear of its margins (a lone "F" is one column).
TEST(RenderWord, TouchesBothMarginsOfTheConstrainedAxis) {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 300; ++i) {
        const Word w = parse(oracle::random_word(rng, 1 + static_cast<int>(rng() % 60), Scheme::Fused), Scheme::Fused);
        if (forward_count(w) == 0) continue;
        const int size = 128;
        const auto img = render_word(w, {20.0 + static_cast<double>(rng() % 40), 100.0, size, 6.0});
        const Extent e = extent(img);
        const bool vertical = e.min_row == 6 && e.max_row == size - 6;
        const bool horizontal = e.min_col == 6 && e.max_col == size - 6;
        ASSERT_TRUE(vertical || horizontal) << to_string(w);
        ASSERT_GE(e.min_col, 6);
        ASSERT_GE(e.min_row, 6);
        ASSERT_LE(e.max_col, size - 6);
        ASSERT_LE(e.max_row, size - 6);
    }
}

TEST(RgbImage, CountsColours) {
    RgbImage img(4, 3);
    img.set(0, 0, kRed);
    img.set(1, 0, kRed);
    img.set(2, 2, kBlue);
    EXPECT_EQ(img.count(kRed), 2u);
    EXPECT_EQ(img.count(kBlue), 1u);
    EXPECT_EQ(img.count(kWhite), 9u);
}
