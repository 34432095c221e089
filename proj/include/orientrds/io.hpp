#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// Volume file layout, all integers little-endian:
///   bytes  0..15  ASCII "ORIENTRDS-VOLUME"
///   bytes 16..31  u32 width, u32 height, u32 orientations, u32 dtype (1 = f32)
///   then width*height*orientations IEEE-754 binary32 values, x fastest,
///   then y, then orientation.
inline constexpr char kVolumeMagic[17] = "ORIENTRDS-VOLUME";
inline constexpr std::uint32_t kVolumeDtypeF32 = 1;

void write_volume(const std::string& path, const Volume& v);
Volume read_volume(const std::string& path);

/// Greyscale image in [0, 1]. PNG (8 or 16 bit, colour converted to grey,
/// alpha dropped) and binary or ASCII PGM are recognised by content.
Image read_image(const std::string& path);

/// 8-bit greyscale PNG; values clamped to [0, 1], scaled by 255 and rounded
/// half-to-even.
void write_png(const std::string& path, const Image& f);

/// Converts [0, 1] intensities to the 8-bit codes write_png stores.
std::vector<std::uint8_t> quantize8(const Image& f);

/// Mask from an image file: cells >= 0.5 are set.
Mask read_mask(const std::string& path);

/// CSV with a mandatory header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace orientrds
