#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "smrt/core.hpp"

namespace smrt {
namespace {

TEST(Axis, NodeArithmetic) {
  const Axis a(0.0, 0.5, 5);
  EXPECT_EQ(a.node(2), 1.0);
  EXPECT_EQ(a.node(0), 0.0);
  EXPECT_EQ(Axis(1.0, 0.25, 9).node(8), 3.0);
}

TEST(Axis, OutOfRangeNodeThrows) {
  const Axis a(0.0, 0.5, 5);
  EXPECT_THROW(a.node(5), RangeError);
}

TEST(Axis, RejectsBadStepAndCount) {
  EXPECT_THROW(Axis(0.0, 0.0, 3), DomainError);
  EXPECT_THROW(Axis(0.0, -1.0, 3), DomainError);
  EXPECT_THROW(Axis(0.0, 1.0, 0), DomainError);
  EXPECT_THROW(Axis(0.0, std::nan(""), 3), DomainError);
}

TEST(Axis, NodesStrictlyIncreasingWithExactSpan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> start(-10.0, 10.0);
  std::uniform_real_distribution<double> step(1e-3, 2.0);
  std::uniform_int_distribution<std::size_t> count(1, 400);
  for (int trial = 0; trial < 200; ++trial) {
    const Axis a(start(rng), step(rng), count(rng));
    for (std::size_t k = 1; k < a.count(); ++k) ASSERT_LT(a[k - 1], a[k]);
    const double span = a.last() - a[0];
    const double expect = static_cast<double>(a.count() - 1) * a.step();
    EXPECT_LE(std::abs(span - expect),
              std::nextafter(std::abs(a.last()) + std::abs(a[0]), INFINITY) *
                  std::numeric_limits<double>::epsilon());
  }
}

TEST(Axis, FindNode) {
  const Axis a(0.0, 0.1, 21);
  EXPECT_EQ(a.find_node(1.0), std::optional<std::size_t>(10));
  EXPECT_EQ(a.find_node(0.3), std::optional<std::size_t>(3));
  EXPECT_FALSE(a.find_node(0.35));
  EXPECT_FALSE(a.find_node(-0.1));
  EXPECT_FALSE(a.find_node(2.1));
}

TEST(Field, ZeroInitialised) {
  const SphericalMeanField f(Axis(0, 1, 3), Axis(0, 1, 4), Axis(0, 1, 5));
  EXPECT_EQ(f.at(0, 0, 0), 0.0);
  EXPECT_EQ(f.at(2, 3, 4), 0.0);
}

TEST(Field, ReadBack) {
  SphericalMeanField f(Axis(0, 1, 3), Axis(0, 1, 4), Axis(0, 1, 5));
  f.set(1, 2, 3, 0.625);
  EXPECT_EQ(f.at(1, 2, 3), 0.625);
}

TEST(Field, OutOfRangeThrows) {
  const SphericalMeanField f(Axis(0, 1, 2), Axis(0, 1, 2), Axis(0, 1, 1));
  EXPECT_THROW(f.at(0, 0, 1), RangeError);
  EXPECT_THROW(f.at(2, 0, 0), RangeError);
}

TEST(Field, WriteReadRoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> val(-1e6, 1e6);
  for (int trial = 0; trial < 50; ++trial) {
    SphericalMeanField f(Axis(0, 1, dim(rng)), Axis(0, 1, dim(rng)),
                         Axis(0, 1, dim(rng)));
    const auto [nx, ny, nu] = f.shape();
    std::vector<double> written(f.size());
    for (std::size_t k = 0; k < nx; ++k)
      for (std::size_t l = 0; l < ny; ++l)
        for (std::size_t m = 0; m < nu; ++m) {
          const double v = val(rng);
          f.set(k, l, m, v);
          written[f.index(k, l, m)] = v;
        }
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_EQ(f.values()[i], written[i]);
  }
}

TEST(Field, StorageIsRadialFastest) {
  SphericalMeanField f(Axis(0, 1, 2), Axis(0, 1, 3), Axis(0, 1, 4));
  EXPECT_EQ(f.index(0, 0, 1), 1u);
  EXPECT_EQ(f.index(0, 1, 0), 4u);
  EXPECT_EQ(f.index(1, 0, 0), 12u);
}

TEST(Field, NegativeRadialStartRejected) {
  EXPECT_THROW(SphericalMeanField(Axis(0, 1, 2), Axis(0, 1, 2), Axis(-0.1, 0.1, 3)),
               ContractError);
}

TEST(Field, VolumeMustSitAbovePlane) {
  EXPECT_THROW(VolumeField(Axis(0, 1, 2), Axis(0, 1, 2), Axis(0.0, 1, 2)),
               ContractError);
  EXPECT_NO_THROW(VolumeField(Axis(0, 1, 2), Axis(0, 1, 2), Axis(0.5, 1, 2)));
}

TEST(Field, WindowCopiesSubBlock) {
  SphericalMeanField f(Axis(-1, 0.5, 5), Axis(0, 1, 4), Axis(0, 0.25, 6));
  for (std::size_t i = 0; i < f.size(); ++i) f.values()[i] = static_cast<double>(i);
  const auto w = f.window(1, 3, 1, 2, 0, 4);
  EXPECT_EQ(w.x_axis(), Axis(-0.5, 0.5, 3));
  EXPECT_EQ(w.u_axis().count(), 4u);
  EXPECT_EQ(w(2, 1, 3), f(3, 2, 3));
}

TEST(FieldCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  SphericalMeanField f(Axis(-0.3, 0.1, 4), Axis(0.7, 0.3, 3), Axis(0.0, 0.05, 5));
  for (double& v : f.values()) v = val(rng) * std::exp(20.0 * val(rng));

  std::stringstream ss;
  write_field_csv(ss, f, {"x", "y", "u"});
  const FieldFile back = read_field_csv(ss);
  EXPECT_EQ(back.names[2], "u");
  EXPECT_EQ(back.field.axes(), f.axes());
  for (std::size_t i = 0; i < f.size(); ++i)
    ASSERT_EQ(back.field.values()[i], f.values()[i]);
}

TEST(FieldCsv, HeaderFormat) {
  SphericalMeanField f(Axis(0, 0.5, 2), Axis(0, 0.5, 1), Axis(0, 0.1, 1));
  f.set(1, 0, 0, 1.0 / 3.0);
  std::stringstream ss;
  write_field_csv(ss, f, {"x", "y", "u"});
  EXPECT_EQ(ss.str(),
            "# axes: x(0,0.5,2) y(0,0.5,1) u(0,0.10000000000000001,1)\n"
            "0,0,0,0\n"
            "1,0,0,0.33333333333333331\n");
}

TEST(FieldCsv, ReportsMissingAndMalformedRows) {
  std::stringstream ss("# axes: x(0,1,2) y(0,1,1) u(0,1,1)\n0,0,0,1\nbogus\n");
  try {
    read_field_csv(ss, "f.csv");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.issues().size(), 2u);
    EXPECT_NE(e.issues()[0].find("f.csv:3"), std::string::npos);
    EXPECT_NE(e.issues()[1].find("1 samples missing"), std::string::npos);
  }
}

TEST(FieldCsv, RejectsMissingHeader) {
  std::stringstream ss("0,0,0,1\n");
  EXPECT_THROW(read_field_csv(ss), ValidationError);
}

TEST(ParseAxis, AcceptsAndRejects) {
  EXPECT_EQ(parse_axis("0,0.5,5"), Axis(0.0, 0.5, 5));
  EXPECT_THROW(parse_axis("0,0.5"), ValidationError);
  EXPECT_THROW(parse_axis("0,-1,5"), ValidationError);
  EXPECT_THROW(parse_axis("0,1,0"), ValidationError);
}

}  // namespace
}  // namespace smrt
