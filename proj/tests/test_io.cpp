#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>

#include "wmgtomo/io.hpp"
#include "wmgtomo/random.hpp"

using namespace wmgtomo;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wmgtomo_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void expect_bitwise_equal(const Array2D& a, const Array2D& b) {
  ASSERT_EQ(a.rows, b.rows);
  ASSERT_EQ(a.cols, b.cols);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.values[i]), std::bit_cast<std::uint64_t>(b.values[i])) << i;
}

}  // namespace

TEST(ArrayFormat, HeaderLayout) {
  const Array2D a{2, 3, {1, 2, 3, 4, 5, 6}};
  const auto bytes = encode_array(a);
  ASSERT_EQ(bytes.size(), 16u + 48u);
  EXPECT_EQ(bytes.substr(0, 4), "WMGT");
  const unsigned char header[16] = {'W', 'M', 'G', 'T', 1, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0};
  for (int i = 0; i < 16; ++i) EXPECT_EQ(static_cast<unsigned char>(bytes[i]), header[i]) << i;
  // 1.0 is 0x3ff0000000000000, little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[22]), 0xf0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[23]), 0x3f);
}

TEST(ArrayFormat, RoundTripPreservesEveryBit) {
  const double inf = std::numeric_limits<double>::infinity();
  Array2D a{3, 4, {0.0, -0.0, inf, -inf, std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(), 1.0 / 3.0,
                   -1e-300, 42.0, 0.1, -7.5}};
  expect_bitwise_equal(decode_array(encode_array(a)), a);

  const Array2D big{160, 160, seeded_uniform(160 * 160, 9)};
  const auto path = scratch("big.wmgt").string();
  write_array(path, big);
  expect_bitwise_equal(read_array(path), big);
}

TEST(ArrayFormat, EmptyArray) {
  const Array2D a{0, 5, {}};
  const auto back = decode_array(encode_array(a));
  EXPECT_EQ(back.rows, 0u);
  EXPECT_EQ(back.cols, 5u);
  EXPECT_TRUE(back.values.empty());
}

TEST(ArrayFormat, MalformedInputThrows) {
  const auto good = encode_array({1, 2, {1.0, 2.0}});
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_array(bad_magic), FormatError);
  EXPECT_THROW(decode_array(good.substr(0, good.size() - 1)), FormatError);
  EXPECT_THROW(decode_array(good + "x"), FormatError);
  EXPECT_THROW(decode_array(good.substr(0, 10)), FormatError);
  std::string bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(decode_array(bad_version), FormatError);
  EXPECT_THROW(encode_array({2, 2, {1.0}}), FormatError);
  EXPECT_THROW(read_array(scratch("missing.wmgt").string() + ".nope"), FormatError);
}

TEST(Pgm, HeaderAndScaling) {
  const auto pgm = encode_pgm({2, 2, {-1.0, 0.0, 1.0, 3.0}});
  const std::string header = "P5\n2 2\n255\n";
  ASSERT_EQ(pgm.size(), header.size() + 4);
  EXPECT_EQ(pgm.substr(0, header.size()), header);
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size()]), 0);
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size() + 1]), 64);  // 63.75 rounds up
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size() + 2]), 128);  // 127.5 rounds away from zero
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size() + 3]), 255);
}

TEST(Pgm, ConstantImageIsBlackAndWidthComesFirst) {
  const auto pgm = encode_pgm({1, 3, {5.0, 5.0, 5.0}});
  EXPECT_EQ(pgm.substr(0, 9), "P5\n3 1\n25");
  for (std::size_t i = pgm.size() - 3; i < pgm.size(); ++i) EXPECT_EQ(pgm[i], 0);
}

TEST(ConvergenceCsv, RoundTripWithBlankErrorColumns) {
  ConvergenceRecord rec;
  rec.entries.push_back({0, 1.0, std::nullopt, std::nullopt, 0.0});
  rec.entries.push_back({1, 0.1 + 0.2, 0.3, 0.7, 1.25e-3});
  rec.entries.push_back({2, 1e-300, std::nullopt, 0.5, 2.0});
  const auto text = encode_convergence_csv(rec);
  EXPECT_EQ(text.substr(0, text.find('\n')), "iter,rel_res,rel_err_l2,rel_err_linf,seconds");
  EXPECT_NE(text.find("\n0,1,,,0\n"), std::string::npos);
  const auto back = decode_convergence_csv(text);
  ASSERT_EQ(back.entries.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.entries[k].iteration, rec.entries[k].iteration);
    EXPECT_EQ(back.entries[k].rel_res, rec.entries[k].rel_res);
    EXPECT_EQ(back.entries[k].rel_l2, rec.entries[k].rel_l2);
    EXPECT_EQ(back.entries[k].rel_linf, rec.entries[k].rel_linf);
    EXPECT_EQ(back.entries[k].seconds, rec.entries[k].seconds);
  }
}

TEST(ConvergenceCsv, SecondsColumnCanBeBlank) {
  ConvergenceRecord rec;
  rec.entries.push_back({0, 1.0, 1.0, 1.0, 0.123});
  EXPECT_EQ(encode_convergence_csv(rec, false), "iter,rel_res,rel_err_l2,rel_err_linf,seconds\n0,1,1,1,\n");
  EXPECT_EQ(decode_convergence_csv(encode_convergence_csv(rec, false)).entries[0].seconds, 0.0);
}

TEST(ConvergenceCsv, MalformedInputThrows) {
  EXPECT_THROW(decode_convergence_csv(""), FormatError);
  EXPECT_THROW(decode_convergence_csv("iter,res\n"), FormatError);
  const std::string header = "iter,rel_res,rel_err_l2,rel_err_linf,seconds\n";
  EXPECT_THROW(decode_convergence_csv(header + "0,1,,\n"), FormatError);
  EXPECT_THROW(decode_convergence_csv(header + "0,abc,,,\n"), FormatError);
}

TEST(Manifest, EncodeDecodePreservesOrderAndValues) {
  Manifest m;
  m.set("command", "bench");
  m.set("alpha", 0.01);
  m.set("seed", static_cast<long long>(1));
  m.set("iters", std::size_t{400});
  m.set("label", "a=b");  // '=' is allowed in values
  m.set("command", "solve");
  const auto text = m.encode();
  EXPECT_EQ(text, "command=solve\nalpha=0.01\nseed=1\niters=400\nlabel=a=b\n");
  const auto back = Manifest::decode("# comment\n\n" + text);
  EXPECT_EQ(back.entries(), m.entries());
  EXPECT_EQ(back.require("label"), "a=b");
  EXPECT_FALSE(back.get("missing").has_value());
  EXPECT_THROW(back.require("missing"), FormatError);

  const auto path = scratch("run.manifest").string();
  write_manifest(path, m);
  EXPECT_EQ(read_manifest(path).entries(), m.entries());
}

TEST(Manifest, RejectsBadKeysAndLines) {
  Manifest m;
  EXPECT_THROW(m.set("", "x"), std::invalid_argument);
  EXPECT_THROW(m.set("a=b", "x"), std::invalid_argument);
  EXPECT_THROW(m.set("k", "two\nlines"), std::invalid_argument);
  EXPECT_THROW(Manifest::decode("novalue\n"), FormatError);
  EXPECT_THROW(Manifest::decode("=x\n"), FormatError);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.01, 123456789.123456789}) {
    EXPECT_EQ(std::stod(format_double(v)), v) << format_double(v);
  }
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.0), "0");
}
