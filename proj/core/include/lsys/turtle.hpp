#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lsys/word.hpp"

namespace lsys {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

struct Segment {
    Point a;
    Point b;

    bool operator==(const Segment&) const = default;
};

using SegmentList = std::vector<Segment>;

/// Turtle pose. The heading is kept as an integer count of clockwise turns
/// so it is always an exact multiple of delta.
struct TurtleState {
    Point position;
    int turns = 0;

    double heading_degrees(double delta_degrees) const noexcept { return turns * delta_degrees; }
};

/// Walks the word as turtle commands. The turtle starts at the origin facing
/// +y; F draws a segment of `length`, + turns clockwise by `delta_degrees`,
/// - counter-clockwise, [ pushes and ] pops the state.
SegmentList interpret(const Word& word, double delta_degrees, double length);

struct BoundingBox {
    Point min;
    Point max;

    double width() const noexcept { return max.x - min.x; }
    double height() const noexcept { return max.y - min.y; }
};

/// Throws GeometryError for an empty list.
BoundingBox bounding_box(std::span<const Segment> segments);

class GeometryError : public std::runtime_error {
public:
    enum class Kind { DegenerateBoundingBox, OutOfCanvas };

    GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Isotropic scale followed by translation.
struct FitTransform {
    double scale = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    Point apply(Point p) const noexcept { return {p.x * scale + offset_x, p.y * scale + offset_y}; }
    Segment apply(const Segment& s) const noexcept { return {apply(s.a), apply(s.b)}; }
    SegmentList apply(std::span<const Segment> segments) const;
};

inline constexpr double kDefaultMargin = 6.0;

/// Transform that inscribes `box` in the interior rectangle
/// [margin, width - margin] x [margin, height - margin], preserving aspect
/// ratio and centering along the axis with slack.
FitTransform compute_fit(const BoundingBox& box, int width, int height, double margin = kDefaultMargin);

/// compute_fit over the bounding box of `segments`, applied to them.
SegmentList fit_to_canvas(std::span<const Segment> segments, int width, int height,
                          double margin = kDefaultMargin);

}  // namespace lsys
