#include "lsys/turtle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lsys {

SegmentList interpret(const Word& word, double delta_degrees, double length) {
    if (!(length > 0.0)) throw std::invalid_argument("interpret: segment length must be > 0");
    const double delta = delta_degrees * std::numbers::pi / 180.0;
    const bool fused = word.scheme() == Scheme::Fused;

    SegmentList segments;
    segments.reserve(forward_count(word));
    std::vector<TurtleState> stack;
    TurtleState turtle;

    auto forward = [&] {
        // Heading measured clockwise from +y, so direction = (sin, cos).
        const double angle = turtle.turns * delta;
        const Point next{turtle.position.x + length * std::sin(angle), turtle.position.y + length * std::cos(angle)};
        segments.push_back({turtle.position, next});
        turtle.position = next;
    };

    for (Token t : word.tokens()) {
        switch (t) {
            case Token::F: forward(); break;
            case Token::Plus:
                ++turtle.turns;
                if (fused) forward();
                break;
            case Token::Minus:
                --turtle.turns;
                if (fused) forward();
                break;
            case Token::Open: stack.push_back(turtle); break;
            case Token::Close:
                turtle = stack.back();
                stack.pop_back();
                break;
            case Token::Bos:
            case Token::Eos: break;
        }
    }
    return segments;
}

BoundingBox bounding_box(std::span<const Segment> segments) {
    if (segments.empty()) {
        throw GeometryError(GeometryError::Kind::DegenerateBoundingBox, "bounding box of an empty segment list");
    }
    BoundingBox box{segments.front().a, segments.front().a};
    for (const auto& s : segments) {
        for (const Point& p : {s.a, s.b}) {
            box.min.x = std::min(box.min.x, p.x);
            box.min.y = std::min(box.min.y, p.y);
            box.max.x = std::max(box.max.x, p.x);
            box.max.y = std::max(box.max.y, p.y);
        }
    }
    return box;
}

SegmentList FitTransform::apply(std::span<const Segment> segments) const {
    SegmentList out;
    out.reserve(segments.size());
    for (const auto& s : segments) out.push_back(apply(s));
    return out;
}

FitTransform compute_fit(const BoundingBox& box, int width, int height, double margin) {
    const double inner_w = width - 2.0 * margin;
    const double inner_h = height - 2.0 * margin;
    if (!(inner_w > 0.0 && inner_h > 0.0)) {
        throw std::invalid_argument("compute_fit: margin leaves no interior on a " + std::to_string(width) + "x" +
                                    std::to_string(height) + " canvas");
    }
    const double bw = box.width();
    const double bh = box.height();
    if (!(bw > 0.0) && !(bh > 0.0)) {
        throw GeometryError(GeometryError::Kind::DegenerateBoundingBox, "all segment endpoints coincide");
    }
    double scale;
    if (!(bw > 0.0)) scale = inner_h / bh;
    else if (!(bh > 0.0)) scale = inner_w / bw;
    else scale = std::min(inner_w / bw, inner_h / bh);

    FitTransform fit;
    fit.scale = scale;
    fit.offset_x = margin + (inner_w - bw * scale) / 2.0 - box.min.x * scale;
    fit.offset_y = margin + (inner_h - bh * scale) / 2.0 - box.min.y * scale;
    return fit;
}

SegmentList fit_to_canvas(std::span<const Segment> segments, int width, int height, double margin) {
    return compute_fit(bounding_box(segments), width, height, margin).apply(segments);
}

}  // namespace lsys
