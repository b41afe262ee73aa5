#pragma once

#include "pwc/dataset.hpp"
#include "pwc/error.hpp"

#include <json.hpp>

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

/*
BPWF1 dataset format: a JSON header at <path>.json and raw little-endian
float32 samples at <path>.bin in [transmit][element][time] order.
*/

namespace pwc {

inline constexpr const char *kDatasetMagic = "BPWF1";

struct DatasetPaths {
  std::filesystem::path header;
  std::filesystem::path samples;

  explicit DatasetPaths(const std::filesystem::path &base)
      : header(base.string() + ".json"), samples(base.string() + ".bin") {}
};

namespace detail {

inline std::uint32_t to_little_endian(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xFFU) << 24U) | ((v & 0xFF00U) << 8U) |
           ((v >> 8U) & 0xFF00U) | (v >> 24U);
  }
}

inline bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t &out) {
  return !__builtin_mul_overflow(a, b, &out);
}

} // namespace detail

inline nlohmann::json dataset_header_json(const RFDataset &rf) {
  nlohmann::json j;
  j["magic"] = kDatasetMagic;
  j["sample_rate"] = rf.sample_rate;
  j["t0"] = rf.t0;
  j["speed_of_sound"] = rf.speed_of_sound;
  j["M"] = rf.num_transmits;
  j["N"] = rf.num_elements;
  j["T"] = rf.num_samples;
  j["angles"] = rf.sequence.angles;
  j["element_positions"] = rf.probe.element_positions;
  j["element_pitch"] = rf.probe.element_pitch;
  j["center_frequency"] = rf.probe.center_frequency;
  j["endianness"] = "LE";
  return j;
}

// Samples are narrowed to float32 on disk.
inline void write_dataset(const RFDataset &rf,
                          const std::filesystem::path &base) {
  rf.validate();
  const DatasetPaths paths(base);
  {
    std::ofstream out(paths.header, std::ios::trunc);
    if (!out) {
      throw Error(ErrorCategory::Io, "cannot open '" + paths.header.string() +
                                         "' for writing: " +
                                         std::strerror(errno));
    }
    out << dataset_header_json(rf).dump(2) << '\n';
    if (!out) {
      throw Error(ErrorCategory::Io,
                  "failed writing '" + paths.header.string() + "'");
    }
  }
  std::vector<std::uint32_t> words(rf.samples.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto f = static_cast<float>(rf.samples[i]);
    words[i] = detail::to_little_endian(std::bit_cast<std::uint32_t>(f));
  }
  std::ofstream out(paths.samples, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCategory::Io, "cannot open '" + paths.samples.string() +
                                       "' for writing: " +
                                       std::strerror(errno));
  }
  out.write(reinterpret_cast<const char *>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
  if (!out) {
    throw Error(ErrorCategory::Io,
                "failed writing '" + paths.samples.string() + "'");
  }
}

inline RFDataset read_dataset(const std::filesystem::path &base) {
  const DatasetPaths paths(base);
  nlohmann::json j;
  {
    std::ifstream in(paths.header);
    if (!in) {
      throw Error(ErrorCategory::Io, "cannot open dataset header '" +
                                         paths.header.string() +
                                         "': " + std::strerror(errno));
    }
    try {
      in >> j;
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCategory::Format, "malformed dataset header '" +
                                             paths.header.string() +
                                             "': " + e.what());
    }
  }

  const std::string magic = j.value("magic", std::string{});
  if (magic != kDatasetMagic) {
    throw Error(ErrorCategory::Format,
                "magic mismatch in '" + paths.header.string() +
                    "': expected '" + kDatasetMagic + "', found '" + magic +
                    "'");
  }
  if (j.value("endianness", std::string{"LE"}) != "LE") {
    throw Error(ErrorCategory::Format, "unsupported endianness in '" +
                                           paths.header.string() + "'");
  }

  RFDataset rf;
  std::uint64_t M = 0;
  std::uint64_t N = 0;
  std::uint64_t T = 0;
  try {
    M = j.at("M").get<std::uint64_t>();
    N = j.at("N").get<std::uint64_t>();
    T = j.at("T").get<std::uint64_t>();
    rf.sample_rate = j.at("sample_rate").get<double>();
    rf.t0 = j.at("t0").get<double>();
    rf.speed_of_sound = j.value("speed_of_sound", kDefaultSpeedOfSound);
    rf.sequence.angles = j.at("angles").get<std::vector<double>>();
    rf.probe.element_positions =
        j.at("element_positions").get<std::vector<double>>();
    const auto &pos = rf.probe.element_positions;
    rf.probe.element_pitch = j.value(
        "element_pitch", pos.size() >= 2 ? pos[1] - pos[0] : 0.0);
    rf.probe.center_frequency = j.value("center_frequency", 0.0);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::Format, "invalid dataset header '" +
                                           paths.header.string() +
                                           "': " + e.what());
  }
  if (rf.sequence.angles.size() != M || rf.probe.element_positions.size() != N) {
    std::ostringstream msg;
    msg << "dimension mismatch in '" << paths.header.string() << "': M=" << M
        << " with " << rf.sequence.angles.size() << " angles, N=" << N
        << " with " << rf.probe.element_positions.size() << " elements";
    throw Error(ErrorCategory::Format, msg.str());
  }

  // Size guard before any allocation.
  std::uint64_t count = 0;
  std::uint64_t bytes = 0;
  if (!detail::checked_mul(M, N, count) || !detail::checked_mul(count, T, count) ||
      !detail::checked_mul(count, sizeof(float), bytes) ||
      count > std::vector<double>().max_size() ||
      bytes > static_cast<std::uint64_t>(std::numeric_limits<std::ptrdiff_t>::max())) {
    std::ostringstream msg;
    msg << "dimension overflow in '" << paths.header.string() << "': M*N*T = "
        << M << "*" << N << "*" << T << " exceeds addressable memory";
    throw Error(ErrorCategory::Format, msg.str());
  }

  std::error_code ec;
  const auto actual = std::filesystem::file_size(paths.samples, ec);
  if (ec) {
    throw Error(ErrorCategory::Io, "cannot stat dataset samples '" +
                                       paths.samples.string() +
                                       "': " + ec.message());
  }
  if (actual != bytes) {
    std::ostringstream msg;
    msg << "dimension mismatch in '" << paths.samples.string()
        << "': expected " << bytes << " bytes (M*N*T*4), found " << actual
        << " bytes";
    throw Error(ErrorCategory::Format, msg.str());
  }

  std::vector<std::uint32_t> words(count);
  {
    std::ifstream in(paths.samples, std::ios::binary);
    if (!in) {
      throw Error(ErrorCategory::Io, "cannot open dataset samples '" +
                                         paths.samples.string() +
                                         "': " + std::strerror(errno));
    }
    in.read(reinterpret_cast<char *>(words.data()),
            static_cast<std::streamsize>(bytes));
    if (!in) {
      throw Error(ErrorCategory::Io,
                  "failed reading '" + paths.samples.string() + "'");
    }
  }

  rf.num_transmits = M;
  rf.num_elements = N;
  rf.num_samples = T;
  rf.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float f =
        std::bit_cast<float>(detail::to_little_endian(words[i]));
    if (!std::isfinite(f)) {
      const auto t = i % T;
      const auto n = (i / T) % N;
      const auto m = i / (T * N);
      std::ostringstream msg;
      msg << "non-finite sample in '" << paths.samples.string() << "' at [m="
          << m << "][n=" << n << "][t=" << t << "]";
      throw Error(ErrorCategory::Numeric, msg.str());
    }
    rf.samples[i] = static_cast<double>(f);
  }
  rf.validate();
  return rf;
}

} // namespace pwc
