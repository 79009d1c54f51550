#include <gtest/gtest.h>

#include "fhk/complex_io.hpp"
#include "fhk/errors.hpp"

using fhk::cplx;

TEST(ComplexIo, Forms) {
  EXPECT_EQ(fhk::parse_complex("0.5"), cplx(0.5, 0));
  EXPECT_EQ(fhk::parse_complex("2i"), cplx(0, 2));
  EXPECT_EQ(fhk::parse_complex("0.5+0i"), cplx(0.5, 0));
  EXPECT_EQ(fhk::parse_complex("0.3-0.4i"), cplx(0.3, -0.4));
  EXPECT_EQ(fhk::parse_complex("-i"), cplx(0, -1));
  EXPECT_EQ(fhk::parse_complex("i"), cplx(0, 1));
  EXPECT_EQ(fhk::parse_complex("1e-3+2.5e+1i"), cplx(1e-3, 25));
  EXPECT_EQ(fhk::parse_complex("-1e5"), cplx(-1e5, 0));
}

TEST(ComplexIo, Rejects) {
  for (const char* bad : {"", "abc", "1+", "1+2", "1+2j", "1..2", "i2"})
    EXPECT_THROW(fhk::parse_complex(bad), fhk::ParameterError) << bad;
}

TEST(ComplexIo, ListAndRoundTrip) {
  const auto v = fhk::parse_complex_list("0.6+0i,0-0.8i");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], cplx(0, -0.8));
  const cplx z(0.1 / 3.0, -2.0 / 7.0);
  EXPECT_EQ(fhk::parse_complex(fhk::format_complex(z)), z);
}
