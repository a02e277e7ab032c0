#include <sstream>

#include <gtest/gtest.h>

#include "biunitary/hadamard.hpp"
#include "biunitary/matrix_io.hpp"
#include "biunitary/search.hpp"

namespace biunitary {
namespace {

std::string cart_text(const ComplexMatrix& m) {
  std::ostringstream os;
  write_cart(os, m);
  return os.str();
}

MatrixFile parse(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

TEST(MatrixIo, CartRoundTripIsByteIdentical) {
  for (const auto& u : {fourier(7), bjorck7(), petrescu(std::polar(1.0, 0.9))}) {
    const auto text = cart_text(u);
    const auto back = parse(text);
    EXPECT_EQ(back.format, MatrixFormat::Cart);
    EXPECT_EQ(back.matrix, u);
    EXPECT_EQ(cart_text(back.matrix), text);
  }
}

TEST(MatrixIo, PhaseRoundTrip) {
  const auto theta = matrix_to_phases(bjorck7());
  std::ostringstream os;
  write_phase(os, theta);
  const auto back = parse(os.str());
  EXPECT_EQ(back.format, MatrixFormat::Phase);
  EXPECT_EQ(back.phases, theta);
  EXPECT_LT((back.matrix - bjorck7()).norm(), 1e-14);
  std::ostringstream again;
  write_phase(again, back.phases);
  EXPECT_EQ(again.str(), os.str());
}

TEST(MatrixIo, FourierSevenFirstEntry) {
  const auto text = cart_text(fourier(7));
  EXPECT_NE(text.find("CART 7\n0.3779644730092272,0 "), std::string::npos);
}

TEST(MatrixIo, CommentsAndBlankLines) {
  const auto m = parse("# a comment\n\nCART 2\n  # more\n1,0 0,1\n\n0,-1 1,0\n");
  EXPECT_EQ(m.matrix(0, 1), Complex(0, 1));
  EXPECT_EQ(m.matrix(1, 0), Complex(0, -1));
}

TEST(MatrixIo, MalformedInputs) {
  EXPECT_THROW(parse(""), Error);
  EXPECT_THROW(parse("CART 0\n"), Error);
  EXPECT_THROW(parse("MATRIX 2\n1,0 0,0\n0,0 1,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1,0 0,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1,0 0,0\n0,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1,0 0,0\n0,0 1,0\n1,0 1,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1 0,0\n0,0 1,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1,0,0 0,0\n0,0 1,0\n"), Error);
  EXPECT_THROW(parse("CART 2\n1,x 0,0\n0,0 1,0\n"), Error);
  EXPECT_THROW(parse("PHASE 2\n0 nan\n0 0\n"), Error);
  EXPECT_THROW(parse("CART 2 3\n1,0 0,0\n0,0 1,0\n"), Error);
}

TEST(MatrixIo, ErrorsCarryLineNumbers) {
  try {
    parse("CART 2\n1,0 0,0\n0,0 1,q\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(MatrixIo, FormatNames) {
  EXPECT_EQ(parse_format("cart"), MatrixFormat::Cart);
  EXPECT_EQ(parse_format("PHASE"), MatrixFormat::Phase);
  EXPECT_THROW(parse_format("polar"), Error);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
}

}  // namespace
}  // namespace biunitary
