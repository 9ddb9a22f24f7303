#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <utility>
#include <vector>

#include "lsys/turtle.hpp"

namespace lsys {

/// Binary foreground mask, row-major, row 0 at the top.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height)
        : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool at(int col, int row) const noexcept { return pixels_[index(col, row)] != 0; }
    void set(int col, int row, bool on = true) noexcept { pixels_[index(col, row)] = on ? 1 : 0; }
    bool contains(int col, int row) const noexcept { return col >= 0 && row >= 0 && col < width_ && row < height_; }

    std::size_t foreground_count() const noexcept;
    std::span<const std::uint8_t> data() const noexcept { return pixels_; }

    bool operator==(const BinaryImage&) const = default;

private:
    std::size_t index(int col, int row) const noexcept {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

struct Rgb {
    std::uint8_t r = 255;
    std::uint8_t g = 255;
    std::uint8_t b = 255;

    bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};

class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = kWhite)
        : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    Rgb at(int col, int row) const noexcept { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
    void set(int col, int row, Rgb c) noexcept { pixels_[static_cast<std::size_t>(row) * width_ + col] = c; }
    bool contains(int col, int row) const noexcept { return col >= 0 && row >= 0 && col < width_ && row < height_; }

    std::size_t count(Rgb c) const noexcept;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

struct Pixel {
    int col = 0;
    int row = 0;

    bool operator==(const Pixel&) const = default;
    auto operator<=>(const Pixel&) const = default;
};

/// Canvas point to pixel: columns follow x, rows are flipped so canvas +y
/// points up in the image. Rounding happens here and nowhere earlier.
Pixel to_pixel(Point p, int height) noexcept;

/// Integer Bresenham walk from `from` to `to`, calling visit(col, row) for
/// every pixel including both endpoints. Endpoints are put in a canonical
/// order first so a segment and its reverse produce identical pixels.
template <class Visit>
void for_each_line_pixel(Pixel from, Pixel to, Visit&& visit) {
    if (to < from) std::swap(from, to);
    int x0 = from.col, y0 = from.row;
    const int x1 = to.col, y1 = to.row;
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        visit(x0, y0);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

/// Draws 1-pixel lines for every segment. Throws GeometryError(OutOfCanvas)
/// if an endpoint falls outside the image.
BinaryImage rasterize(std::span<const Segment> segments, int width, int height);

struct RenderOptions {
    double delta_degrees = 25.0;
    double length = 100.0;
    int size = 128;
    double margin = kDefaultMargin;
};

/// interpret + fit_to_canvas + rasterize on a square canvas. A word without
/// any F yields a blank image.
BinaryImage render_word(const Word& word, const RenderOptions& options);

}  // namespace lsys
