#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "lsys/raster.hpp"

namespace lsys {

/// File-system failure; the message always names the path.
class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Binary PGM (P5), 8-bit: foreground 0, background 255.
std::string encode_pgm(const BinaryImage& image);
void write_pgm(const std::filesystem::path& path, const BinaryImage& image);
/// Reads a P5 file; pixels darker than 128 become foreground.
BinaryImage read_pgm(const std::filesystem::path& path);

/// Binary PPM (P6).
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

/// PNG export is available when the library was built with libpng.
bool png_supported() noexcept;
void write_png(const std::filesystem::path& path, const BinaryImage& image);
void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Dispatches on the extension: .png, otherwise .pgm / .ppm.
void write_image(const std::filesystem::path& path, const BinaryImage& image);
void write_image(const std::filesystem::path& path, const RgbImage& image);

}  // namespace lsys
