#include "lsys/image_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#ifdef LSYS_HAVE_PNG
#include <png.h>
#endif

namespace lsys {
namespace {

constexpr std::uint8_t kForegroundGray = 0;
constexpr std::uint8_t kBackgroundGray = 255;

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(path, "write failed");
}

std::vector<std::uint8_t> gray_pixels(const BinaryImage& image) {
    std::vector<std::uint8_t> gray(image.data().size());
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = image.data()[i] ? kForegroundGray : kBackgroundGray;
    return gray;
}

bool has_extension(const std::filesystem::path& path, std::string_view ext) {
    auto e = path.extension().string();
    for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e == ext;
}

#ifdef LSYS_HAVE_PNG
void encode_png(const std::filesystem::path& path, int width, int height, int color_type, int channels,
                const std::uint8_t* pixels) {
    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!file) throw IoError(path, "cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path, "libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path, "libpng write failed");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    for (int row = 0; row < height; ++row) {
        png_write_row(png, const_cast<png_bytep>(pixels + stride * row));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}
#endif

}  // namespace

std::string encode_pgm(const BinaryImage& image) {
    std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    const auto gray = gray_pixels(image);
    out.append(reinterpret_cast<const char*>(gray.data()), gray.size());
    return out;
}

void write_pgm(const std::filesystem::path& path, const BinaryImage& image) {
    write_bytes(path, encode_pgm(image));
}

BinaryImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::string magic;
    int width = 0, height = 0, maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (magic != "P5" || width <= 0 || height <= 0 || maxval != 255) throw IoError(path, "not an 8-bit P5 PGM file");
    in.get();
    std::vector<char> raw(static_cast<std::size_t>(width) * height);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw IoError(path, "truncated pixel data");
    BinaryImage image(width, height);
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const auto v = static_cast<unsigned char>(raw[static_cast<std::size_t>(row) * width + col]);
            if (v < 128) image.set(col, row);
        }
    }
    return image;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
    std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(image.width()) * image.height() * 3);
    for (int row = 0; row < image.height(); ++row) {
        for (int col = 0; col < image.width(); ++col) {
            const Rgb c = image.at(col, row);
            out += static_cast<char>(c.r);
            out += static_cast<char>(c.g);
            out += static_cast<char>(c.b);
        }
    }
    write_bytes(path, out);
}

bool png_supported() noexcept {
#ifdef LSYS_HAVE_PNG
    return true;
#else
    return false;
#endif
}

void write_png(const std::filesystem::path& path, const BinaryImage& image) {
#ifdef LSYS_HAVE_PNG
    const auto gray = gray_pixels(image);
    encode_png(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, 1, gray.data());
#else
    (void)image;
    throw IoError(path, "PNG export unavailable (built without libpng)");
#endif
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
#ifdef LSYS_HAVE_PNG
    std::vector<std::uint8_t> rgb;
    rgb.reserve(static_cast<std::size_t>(image.width()) * image.height() * 3);
    for (int row = 0; row < image.height(); ++row) {
        for (int col = 0; col < image.width(); ++col) {
            const Rgb c = image.at(col, row);
            rgb.insert(rgb.end(), {c.r, c.g, c.b});
        }
    }
    encode_png(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 3, rgb.data());
#else
    (void)image;
    throw IoError(path, "PNG export unavailable (built without libpng)");
#endif
}

void write_image(const std::filesystem::path& path, const BinaryImage& image) {
    if (has_extension(path, ".png")) write_png(path, image);
    else write_pgm(path, image);
}

void write_image(const std::filesystem::path& path, const RgbImage& image) {
    if (has_extension(path, ".png")) write_png(path, image);
    else write_ppm(path, image);
}

}  // namespace lsys
