#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lsys/turtle.hpp"
#include "oracles.hpp"

using namespace lsys;

namespace {

double length_of(const Segment& s) { return std::hypot(s.b.x - s.a.x, s.b.y - s.a.y); }

void expect_point(Point p, double x, double y, double tol = 1e-9) {
    EXPECT_NEAR(p.x, x, tol);
    EXPECT_NEAR(p.y, y, tol);
}

}  // namespace

TEST(Interpret, SingleForward) {
    const auto segs = interpret(parse("F", Scheme::Char), 25.0, 100.0);
    ASSERT_EQ(segs.size(), 1u);
    expect_point(segs[0].a, 0, 0);
    expect_point(segs[0].b, 0, 100);
}

TEST(Interpret, BranchTipByHand) {
    const auto segs = interpret(parse("F[+F][-F]F", Scheme::Char), 45.0, 100.0);
    ASSERT_EQ(segs.size(), 4u);
    const double r = 100.0 * std::sin(std::numbers::pi / 4);
    expect_point(segs[1].a, 0, 100);
    expect_point(segs[1].b, r, 100 + r);
    expect_point(segs[2].b, -r, 100 + r);
    expect_point(segs[3].a, 0, 100);
    expect_point(segs[3].b, 0, 200);
}

TEST(Interpret, PlusAndMinusAreMirrorImages) {
    for (double delta : {15.0, 25.714285, 45.0, 60.0, 89.0}) {
        const auto plus = interpret(parse("+F", Scheme::Char), delta, 100.0);
        const auto minus = interpret(parse("-F", Scheme::Char), delta, 100.0);
        ASSERT_EQ(plus.size(), 1u);
        EXPECT_GT(plus[0].b.x, 0.0);
        expect_point(minus[0].b, -plus[0].b.x, plus[0].b.y);
    }
}

TEST(Interpret, FusedWordsWalkTheSamePath) {
    const Word chars = parse("F[+F[-F]F]-FF", Scheme::Char);
    EXPECT_EQ(interpret(chars, 30.0, 10.0), interpret(convert(chars, Scheme::Fused), 30.0, 10.0));
}

TEST(Interpret, RepeatedForwardIsCollinear) {
    for (int k = 1; k <= 12; ++k) {
        const auto segs = interpret(parse(std::string(static_cast<std::size_t>(k), 'F'), Scheme::Char), 25.0, 7.5);
        ASSERT_EQ(segs.size(), static_cast<std::size_t>(k));
        double total = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            EXPECT_DOUBLE_EQ(segs[i].a.x, 0.0);
            if (i > 0) EXPECT_EQ(segs[i].a, segs[i - 1].b);
            total += length_of(segs[i]);
        }
        EXPECT_NEAR(total, 7.5 * k, 1e-9);
    }
}

TEST(Interpret, RandomWordsAgainstIndependentWalk) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        const std::string text = oracle::random_word(rng, 1 + static_cast<int>(rng() % 60), Scheme::Char);
        const double delta = 15.0 + static_cast<double>(rng() % 4500) / 100.0;
        const auto segs = interpret(parse(text, Scheme::Char), delta, 100.0);
        const auto ref = oracle::walk(text, delta, 100.0);
        ASSERT_EQ(segs.size(), ref.size()) << text;
        for (std::size_t k = 0; k < segs.size(); ++k) {
            ASSERT_NEAR(segs[k].b.x, ref[k].b.x, 1e-7) << text;
            ASSERT_NEAR(segs[k].b.y, ref[k].b.y, 1e-7) << text;
            ASSERT_NEAR(length_of(segs[k]), 100.0, 1e-9);
        }
    }
}

TEST(Interpret, MirrorSymmetryOnRandomWords) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 500; ++i) {
        const Word w = parse(oracle::random_word(rng, 1 + static_cast<int>(rng() % 60), Scheme::Char), Scheme::Char);
        const auto a = interpret(w, 25.714285, 100.0);
        const auto b = interpret(mirrored(w), 25.714285, 100.0);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            ASSERT_NEAR(a[k].a.x, -b[k].a.x, 1e-9);
            ASSERT_NEAR(a[k].b.x, -b[k].b.x, 1e-9);
            ASSERT_NEAR(a[k].a.y, b[k].a.y, 1e-9);
            ASSERT_NEAR(a[k].b.y, b[k].b.y, 1e-9);
        }
    }
}

TEST(Interpret, HeadingIsAMultipleOfDelta) {
    TurtleState s;
    s.turns = -3;
    EXPECT_DOUBLE_EQ(s.heading_degrees(20.0), -60.0);
}

TEST(BoundingBox, EmptyListThrows) {
    EXPECT_THROW(bounding_box(SegmentList{}), GeometryError);
}

TEST(Fit, VerticalSegmentOnPaperCanvas) {
    const SegmentList segs{{{0, 0}, {0, 100}}};
    const auto fitted = fit_to_canvas(segs, 512, 512, 6.0);
    ASSERT_EQ(fitted.size(), 1u);
    expect_point(fitted[0].a, 256, 6);
    expect_point(fitted[0].b, 256, 506);
}

TEST(Fit, AlreadyFittedIsIdentity) {
    const SegmentList segs{{{0, 0}, {0, 100}}, {{0, 100}, {40, 130}}};
    const auto once = fit_to_canvas(segs, 300, 300, 10.0);
    const auto twice = fit_to_canvas(once, 300, 300, 10.0);
    for (std::size_t i = 0; i < once.size(); ++i) {
        expect_point(twice[i].a, once[i].a.x, once[i].a.y);
        expect_point(twice[i].b, once[i].b.x, once[i].b.y);
    }
}

TEST(Fit, CentersTheSlackAxis) {
    const SegmentList wide{{{0, 0}, {100, 0}}, {{0, 0}, {0, 20}}};
    const auto fitted = fit_to_canvas(wide, 200, 200, 0.0);
    const auto box = bounding_box(fitted);
    EXPECT_NEAR(box.min.x, 0.0, 1e-9);
    EXPECT_NEAR(box.max.x, 200.0, 1e-9);
    EXPECT_NEAR(box.min.y, 80.0, 1e-9);
    EXPECT_NEAR(box.max.y, 120.0, 1e-9);
}

TEST(Fit, DegenerateBoundingBoxThrows) {
    const SegmentList point{{{3, 3}, {3, 3}}};
    try {
        fit_to_canvas(point, 64, 64);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), GeometryError::Kind::DegenerateBoundingBox);
    }
}

TEST(Fit, MaxDimensionEqualsInteriorOnRandomWords) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 500; ++i) {
        const Word w = parse(oracle::random_word(rng, 1 + static_cast<int>(rng() % 60), Scheme::Fused), Scheme::Fused);
        const auto segs = interpret(w, 15.0 + static_cast<double>(rng() % 45), 100.0);
        if (segs.empty()) continue;
        const int size = 64 + static_cast<int>(rng() % 512);
        const auto box = bounding_box(fit_to_canvas(segs, size, size, 6.0));
        const double interior = size - 12.0;
        ASSERT_NEAR(std::max(box.width(), box.height()), interior, 1e-9);
        ASSERT_GE(box.min.x, 6.0 - 1e-9);
        ASSERT_GE(box.min.y, 6.0 - 1e-9);
        ASSERT_LE(box.max.x, size - 6.0 + 1e-9);
        ASSERT_LE(box.max.y, size - 6.0 + 1e-9);
        const auto raw = bounding_box(segs);
        ASSERT_NEAR(box.width() * raw.height(), box.height() * raw.width(), 1e-9 * interior * (raw.width() + raw.height()));
    }
}
