#include "orientrds/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>

namespace orientrds {

namespace {

static_assert(std::numeric_limits<float>::is_iec559, "binary32 floats required");

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff),
                                static_cast<char>((v >> 24) & 0xff)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::vector<unsigned char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for '" + path + "'");
    return data;
}

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};

Image decode_png(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open '" + path + "' for reading");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialisation failed");
    }
    std::vector<png_bytep> rows;
    std::vector<unsigned char> buffer;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("malformed PNG '" + path + "'");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE) {
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    }
    png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // host order on little-endian machines
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    const int out_depth = png_get_bit_depth(png, info);
    buffer.resize(rowbytes * static_cast<std::size_t>(h));
    rows.resize(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) rows[y] = buffer.data() + rowbytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        const unsigned char* row = rows[y];
        for (int x = 0; x < w; ++x) {
            if (out_depth == 16) {
                std::uint16_t v = 0;
                std::memcpy(&v, row + 2 * x, 2);
                img(x, y) = v / 65535.0;
            } else {
                img(x, y) = row[x] / 255.0;
            }
        }
    }
    return img;
}

Image decode_pgm(const std::vector<unsigned char>& data, const std::string& path) {
    std::size_t pos = 2;
    auto skip = [&] {
        while (pos < data.size()) {
            if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(data[pos])) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto number = [&] {
        skip();
        long v = 0;
        bool any = false;
        while (pos < data.size() && std::isdigit(data[pos])) {
            v = v * 10 + (data[pos] - '0');
            if (v > 1 << 20) throw IoError("PGM header value out of range in '" + path + "'");
            ++pos;
            any = true;
        }
        if (!any) throw IoError("malformed PGM header in '" + path + "'");
        return v;
    };
    const bool binary = data[1] == '5';
    const long w = number();
    const long h = number();
    const long maxval = number();
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
        throw IoError("unsupported PGM header in '" + path + "'");
    }
    Image img(static_cast<int>(w), static_cast<int>(h));
    if (binary) {
        ++pos;  // single whitespace byte after maxval
        const std::size_t bytes = maxval > 255 ? 2 : 1;
        if (data.size() < pos + img.size() * bytes) throw IoError("truncated PGM '" + path + "'");
        for (std::size_t i = 0; i < img.size(); ++i) {
            const unsigned v = bytes == 2 ? (data[pos + 2 * i] << 8) | data[pos + 2 * i + 1]
                                          : data[pos + i];
            img[i] = static_cast<double>(v) / maxval;
        }
    } else {
        for (std::size_t i = 0; i < img.size(); ++i) {
            const long v = number();
            if (v > maxval) throw IoError("PGM sample exceeds maxval in '" + path + "'");
            img[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

}  // namespace

void write_volume(const std::string& path, const Volume& v) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(kVolumeMagic, 16);
    put_u32(out, static_cast<std::uint32_t>(v.width()));
    put_u32(out, static_cast<std::uint32_t>(v.height()));
    put_u32(out, static_cast<std::uint32_t>(v.orientations()));
    put_u32(out, kVolumeDtypeF32);
    std::vector<char> raw(v.size() * 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v[i]));
        for (int b = 0; b < 4; ++b) raw[4 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

Volume read_volume(const std::string& path) {
    const auto data = slurp(path);
    if (data.size() < 32 || std::memcmp(data.data(), kVolumeMagic, 16) != 0) {
        throw IoError("'" + path + "' is not a volume file");
    }
    const std::uint32_t w = get_u32(data.data() + 16);
    const std::uint32_t h = get_u32(data.data() + 20);
    const std::uint32_t k = get_u32(data.data() + 24);
    const std::uint32_t dtype = get_u32(data.data() + 28);
    if (dtype != kVolumeDtypeF32) throw IoError("unsupported volume dtype in '" + path + "'");
    if (w == 0 || h == 0 || k == 0 || w > (1u << 20) || h > (1u << 20) || k > (1u << 16)) {
        throw IoError("invalid volume header in '" + path + "'");
    }
    const std::size_t n = static_cast<std::size_t>(w) * h * k;
    if (data.size() != 32 + 4 * n) throw IoError("volume payload size mismatch in '" + path + "'");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = std::bit_cast<float>(get_u32(data.data() + 32 + 4 * i));
    }
    Volume v(static_cast<int>(w), static_cast<int>(h), static_cast<int>(k), std::move(values));
    if (!v.all_finite()) throw IoError("volume '" + path + "' contains non-finite values");
    return v;
}

Image read_image(const std::string& path) {
    const auto data = slurp(path);
    static constexpr unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (data.size() >= 8 && std::memcmp(data.data(), png_sig, 8) == 0) return decode_png(path);
    if (data.size() >= 2 && data[0] == 'P' && (data[1] == '2' || data[1] == '5')) {
        return decode_pgm(data, path);
    }
    throw IoError("'" + path + "' is neither PNG nor PGM");
}

std::vector<std::uint8_t> quantize8(const Image& f) {
    std::vector<std::uint8_t> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        // Default rounding mode is to-nearest-even.
        const double v = std::nearbyint(std::clamp(f[i], 0.0, 1.0) * 255.0);
        out[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

void write_png(const std::string& path, const Image& f) {
    if (f.empty()) throw ParameterError("cannot write an empty image");
    const auto pixels = quantize8(f);
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open '" + path + "' for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("write failed for '" + path + "'");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(f.width()), static_cast<png_uint_32>(f.height()),
                 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < f.height(); ++y) {
        png_write_row(png, const_cast<png_bytep>(pixels.data() + static_cast<std::size_t>(y) * f.width()));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

Mask read_mask(const std::string& path) {
    const Image img = read_image(path);
    Mask m(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) m.cells[i] = img[i] >= 0.5 ? 1 : 0;
    return m;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n' << std::setprecision(10);
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw ParameterError("CSV row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace orientrds
