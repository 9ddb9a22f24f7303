#include "lsys/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lsys {

std::size_t BinaryImage::foreground_count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

std::size_t RgbImage::count(Rgb c) const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), c));
}

Pixel to_pixel(Point p, int height) noexcept {
    return {static_cast<int>(std::lround(p.x)), height - static_cast<int>(std::lround(p.y))};
}

BinaryImage rasterize(std::span<const Segment> segments, int width, int height) {
    BinaryImage image(width, height);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Pixel a = to_pixel(segments[i].a, height);
        const Pixel b = to_pixel(segments[i].b, height);
        if (!image.contains(a.col, a.row) || !image.contains(b.col, b.row)) {
            throw GeometryError(GeometryError::Kind::OutOfCanvas,
                                "segment " + std::to_string(i) + " leaves the " + std::to_string(width) + "x" +
                                    std::to_string(height) + " canvas");
        }
        for_each_line_pixel(a, b, [&](int col, int row) { image.set(col, row); });
    }
    return image;
}

BinaryImage render_word(const Word& word, const RenderOptions& options) {
    const SegmentList raw = interpret(word, options.delta_degrees, options.length);
    if (raw.empty()) return BinaryImage(options.size, options.size);
    const SegmentList fitted = fit_to_canvas(raw, options.size, options.size, options.margin);
    return rasterize(fitted, options.size, options.size);
}

}  // namespace lsys
