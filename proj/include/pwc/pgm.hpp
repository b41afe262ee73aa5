#pragma once

#include "pwc/display.hpp"
#include "pwc/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace pwc {

// Linear map of [0, max] onto [0, 65535], rounded to nearest.
inline std::vector<std::uint16_t> quantize_16bit(const DisplayImage &image) {
  std::vector<std::uint16_t> q(image.pixels.size(), 0);
  double vmax = 0.0;
  for (double v : image.pixels) {
    require(std::isfinite(v), "cannot export non-finite pixel values",
            ErrorCategory::Numeric);
    vmax = std::max(vmax, v);
  }
  if (vmax <= 0.0) {
    return q;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double scaled = std::max(0.0, image.pixels[i]) / vmax * 65535.0;
    q[i] = static_cast<std::uint16_t>(
        std::min(65535.0, std::floor(scaled + 0.5)));
  }
  return q;
}

// Binary 16-bit PGM (P5, maxval 65535, big-endian samples), one row per depth.
inline std::vector<std::uint8_t> encode_pgm(const DisplayImage &image) {
  const auto q = quantize_16bit(image);
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n65535\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.reserve(header.size() + 2 * q.size());
  for (const std::uint16_t v : q) {
    bytes.push_back(static_cast<std::uint8_t>(v >> 8U));
    bytes.push_back(static_cast<std::uint8_t>(v & 0xFFU));
  }
  return bytes;
}

inline void export_pgm(const DisplayImage &image,
                       const std::filesystem::path &path) {
  require(image.pixels.size() == image.width * image.height,
          "display image size mismatch");
  const auto bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCategory::Io, "cannot open '" + path.string() +
                                       "' for writing: " +
                                       std::strerror(errno));
  }
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCategory::Io, "failed writing '" + path.string() + "'");
  }
}

} // namespace pwc
