#include "nlsfilt/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/plan_io.hpp"

namespace nlsfilt {

using nlohmann::json;

namespace {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

std::uint64_t get_le(const std::vector<unsigned char>& in, std::size_t offset, std::size_t width) {
  if (offset + width > in.size()) throw ConfigError("spectral dump truncated");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(in[offset + i]) << (8 * i);
  return v;
}

std::vector<Complex> coeffs_from_json(const json& arr, std::size_t expected, const std::string& what) {
  if (!arr.is_array() || arr.size() != expected) {
    throw ConfigError(what + ": expected " + std::to_string(expected) + " [re, im] pairs");
  }
  std::vector<Complex> c;
  c.reserve(expected);
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ConfigError(what + ": coefficients must be [re, im] number pairs");
    }
    c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return c;
}

json coeffs_to_json(std::span<const Complex> c) {
  json arr = json::array();
  for (const auto& v : c) arr.push_back({v.real(), v.imag()});
  return arr;
}

}  // namespace

std::vector<unsigned char> encode_field_binary(const SpectralField& f) {
  std::vector<unsigned char> out;
  out.reserve(32 + 16 * f.coeffs().size());
  for (char ch : {'N', 'L', 'S', 'F'}) out.push_back(static_cast<unsigned char>(ch));
  put_le<std::uint32_t>(out, kDumpVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
  put_le<std::uint32_t>(out, kNormalizationFourierSeries);
  put_le<std::uint32_t>(out, 0);
  put_le<std::uint64_t>(out, f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    put_le<double>(out, c.real());
    put_le<double>(out, c.imag());
  }
  return out;
}

SpectralField decode_field_binary(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 32 || std::memcmp(bytes.data(), "NLSF", 4) != 0) throw ConfigError("not a spectral dump");
  if (get_le(bytes, 4, 4) != kDumpVersion) throw ConfigError("unsupported spectral dump version");
  if (get_le(bytes, 16, 4) != kNormalizationFourierSeries) throw ConfigError("unknown normalization tag");
  const TorusGrid grid(static_cast<int>(get_le(bytes, 8, 4)), static_cast<int>(get_le(bytes, 12, 4)));
  const std::uint64_t count = get_le(bytes, 24, 8);
  if (count != grid.size() || bytes.size() != 32 + 16 * count) throw ConfigError("spectral dump size mismatch");
  std::vector<Complex> c(grid.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t off = 32 + 16 * i;
    c[i] = {std::bit_cast<double>(get_le(bytes, off, 8)), std::bit_cast<double>(get_le(bytes, off + 8, 8))};
  }
  return SpectralField(grid, std::move(c));
}

json field_to_json(const SpectralField& f) {
  return {{"format", "nlsfilt-spectral"},
          {"version", kDumpVersion},
          {"dim", f.grid().dim()},
          {"n", f.grid().n()},
          {"normalization", "fourier-series-2pi"},
          {"coeffs", coeffs_to_json(f.coeffs())}};
}

SpectralField field_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "nlsfilt-spectral") throw ConfigError("not a spectral field document");
    if (doc.at("normalization").get<std::string>() != "fourier-series-2pi") throw ConfigError("unknown normalization");
    const TorusGrid grid(doc.at("dim").get<int>(), doc.at("n").get<int>());
    return SpectralField(grid, coeffs_from_json(doc.at("coeffs"), grid.size(), "coeffs"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("spectral field document: ") + e.what());
  }
}

void save_field(const std::string& path, const SpectralField& f) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    write_text_file(path, field_to_json(f).dump() + "\n");
    return;
  }
  const auto bytes = encode_field_binary(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SpectralField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "NLSF", 4) == 0) return decode_field_binary(bytes);
  try {
    return field_from_json(json::parse(bytes.begin(), bytes.end()));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is neither a spectral dump nor JSON: " + e.what());
  }
}

SequenceSample sequence_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "nlsfilt-sequence") throw ConfigError("not a sequence document");
    SequenceSample seq;
    seq.tau = doc.at("tau").get<double>();
    const TorusGrid grid(doc.at("dim").get<int>(), doc.at("n").get<int>());
    if (doc.contains("taper")) {
      const auto t = doc["taper"].get<std::string>();
      if (t == "hann") {
        seq.taper = Taper::hann;
      } else if (t != "none") {
        throw ConfigError("unknown taper '" + t + "'");
      }
    }
    const json& fields = doc.at("fields");
    if (!fields.is_array()) throw ConfigError("fields must be an array");
    for (std::size_t n = 0; n < fields.size(); ++n) {
      seq.fields.emplace_back(grid, coeffs_from_json(fields[n], grid.size(), "fields[" + std::to_string(n) + "]"));
    }
    seq.validate();
    return seq;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sequence document: ") + e.what());
  }
}

json sequence_to_json(const SequenceSample& seq) {
  seq.validate();
  json fields = json::array();
  for (const auto& f : seq.fields) fields.push_back(coeffs_to_json(f.coeffs()));
  const auto& grid = seq.fields.front().grid();
  return {{"format", "nlsfilt-sequence"},
          {"version", 1},
          {"tau", seq.tau},
          {"dim", grid.dim()},
          {"n", grid.n()},
          {"taper", seq.taper == Taper::hann ? "hann" : "none"},
          {"fields", fields}};
}

}  // namespace nlsfilt
