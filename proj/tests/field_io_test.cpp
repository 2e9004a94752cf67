#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/field_io.hpp"
#include "test_support.hpp"

using namespace nlsfilt;

TEST_CASE("binary dump round-trips bit-exactly") {
  for (int d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SpectralField f = testing::random_field(TorusGrid(d, 8), seed, 1.0);
      CHECK(decode_field_binary(encode_field_binary(f)) == f);
    }
  }
}

TEST_CASE("JSON field round-trips bit-exactly") {
  const SpectralField f = testing::random_field(TorusGrid(2, 4), 11, 1e-3);
  const nlohmann::json doc = field_to_json(f);
  CHECK(doc["format"] == "nlsfilt-spectral");
  CHECK(doc["normalization"] == "fourier-series-2pi");
  CHECK(field_from_json(nlohmann::json::parse(doc.dump())) == f);
}

TEST_CASE("binary header layout") {
  SpectralField f(TorusGrid(2, 4));
  f.coeffs()[1] = Complex(1.5, -2.0);
  const auto bytes = encode_field_binary(f);
  REQUIRE(bytes.size() == 32 + 16 * 16);
  const unsigned char header[32] = {'N', 'L', 'S', 'F', 1, 0, 0, 0, 2, 0, 0, 0, 4, 0, 0, 0,
                                    1, 0, 0, 0, 0, 0, 0, 0, 16, 0, 0, 0, 0, 0, 0, 0};
  CHECK(std::memcmp(bytes.data(), header, 32) == 0);
  double re = 0.0, im = 0.0;
  std::memcpy(&re, bytes.data() + 32 + 16, 8);
  std::memcpy(&im, bytes.data() + 32 + 24, 8);
  CHECK(re == 1.5);
  CHECK(im == -2.0);
}

TEST_CASE("malformed dumps are rejected") {
  const auto good = encode_field_binary(SpectralField(TorusGrid(1, 8)));
  auto truncated = good;
  truncated.pop_back();
  CHECK_THROWS_AS(decode_field_binary(truncated), ConfigError);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(decode_field_binary(bad_magic), ConfigError);
  auto bad_version = good;
  bad_version[4] = 9;
  CHECK_THROWS_AS(decode_field_binary(bad_version), ConfigError);
  CHECK_THROWS_AS(decode_field_binary({}), ConfigError);
}

TEST_CASE("malformed JSON fields are rejected") {
  nlohmann::json doc = field_to_json(SpectralField(TorusGrid(1, 4)));
  auto wrong_count = doc;
  wrong_count["coeffs"].erase(0);
  CHECK_THROWS_AS(field_from_json(wrong_count), ConfigError);
  auto wrong_format = doc;
  wrong_format["format"] = "other";
  CHECK_THROWS_AS(field_from_json(wrong_format), ConfigError);
}

TEST_CASE("save and load pick the format by extension and magic") {
  const auto dir = std::filesystem::temp_directory_path() / "nlsfilt_field_io_test";
  std::filesystem::create_directories(dir);
  const SpectralField f = testing::random_field(TorusGrid(1, 16), 5, 1.0);
  const std::string bin = (dir / "u.bin").string();
  const std::string js = (dir / "u.json").string();
  save_field(bin, f);
  save_field(js, f);
  CHECK(load_field(bin) == f);
  CHECK(load_field(js) == f);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sequence JSON round-trips") {
  SequenceSample seq;
  seq.tau = 0.125;
  seq.taper = Taper::hann;
  for (std::uint64_t i = 0; i < 3; ++i) seq.fields.push_back(testing::random_field(TorusGrid(1, 8), i, 1.0));
  const SequenceSample back = sequence_from_json(nlohmann::json::parse(sequence_to_json(seq).dump()));
  CHECK(back.tau == seq.tau);
  CHECK(back.taper == seq.taper);
  REQUIRE(back.fields.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.fields[i] == seq.fields[i]);
}
