#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlsfilt/bourgain.hpp"
#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt {

// Binary spectral dump, all integers and doubles little-endian:
//   offset  0  char[4]  magic "NLSF"
//           4  u32      format version (1)
//           8  u32      dim
//          12  u32      points per axis N
//          16  u32      normalization tag (1: u(x) = sum_k c_k exp(i<k,x>) on [0,2pi)^d)
//          20  u32      reserved (0)
//          24  u64      coefficient count N^dim
//          32  f64[2*count]  interleaved re, im in canonical mode order
inline constexpr std::uint32_t kDumpVersion = 1;
inline constexpr std::uint32_t kNormalizationFourierSeries = 1;

std::vector<unsigned char> encode_field_binary(const SpectralField& f);
// Throws ConfigError on a malformed buffer.
SpectralField decode_field_binary(const std::vector<unsigned char>& bytes);

// {"format":"nlsfilt-spectral","version":1,"dim":d,"n":N,
//  "normalization":"fourier-series-2pi","coeffs":[[re,im],...]}
nlohmann::json field_to_json(const SpectralField& f);
SpectralField field_from_json(const nlohmann::json& doc);

// Writes JSON when the path ends in ".json", the binary dump otherwise.
void save_field(const std::string& path, const SpectralField& f);
// Detects the format from the leading bytes.
SpectralField load_field(const std::string& path);

// {"format":"nlsfilt-sequence","version":1,"tau":t,"dim":d,"n":N,
//  "taper":"none"|"hann","fields":[[[re,im],...], ...]}
SequenceSample sequence_from_json(const nlohmann::json& doc);
nlohmann::json sequence_to_json(const SequenceSample& seq);

}  // namespace nlsfilt
