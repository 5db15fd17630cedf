#include <gtest/gtest.h>

#include <sstream>

#include "mixgap/error.hpp"
#include "mixgap/fixtures.hpp"
#include "mixgap/io.hpp"

namespace mixgap {
namespace {

TEST(MatrixIo, CsvRoundTrip) {
  const auto p = fixtures::random_ergodic(5, 4);
  std::stringstream buf;
  io::write_matrix_csv(buf, p.matrix());
  const auto back = io::read_matrix_csv(buf);
  EXPECT_LE((back.matrix() - p.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MatrixIo, JsonRoundTrip) {
  const auto p = fixtures::random_ergodic(4, 8);
  std::stringstream buf;
  io::write_matrix_json(buf, p.matrix());
  EXPECT_LE((io::read_matrix_json(buf).matrix() - p.matrix()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(MatrixIo, CsvSkipsCommentsAndRenormalizes) {
  std::istringstream in("# lazy walk\n0.5, 0.5\n\n0.333333333, 0.666666667\n");
  const auto p = io::read_matrix_csv(in);
  EXPECT_NEAR(p.matrix().row(1).sum(), 1.0, 1e-15);
}

TEST(MatrixIo, ParseFailures) {
  std::istringstream bad_number("0.5,abc\n0.5,0.5\n");
  EXPECT_THROW(io::read_matrix_csv(bad_number), Error);
  std::istringstream ragged("0.5,0.5\n1\n");
  EXPECT_THROW(io::read_matrix_csv(ragged), Error);
  std::istringstream wrong_n(R"({"n": 3, "rows": [[1]]})");
  try {
    io::read_matrix_json(wrong_n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
}

TEST(MatrixIo, BundledChainLoads) {
  const auto p = io::load_matrix(std::string(MIXGAP_DATA_DIR) + "/ex31.json");
  EXPECT_EQ(p.matrix(), fixtures::cycle3().matrix());
  try {
    io::load_matrix("/nonexistent/matrix.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(TrajectoryIo, TextRoundTrip) {
  const Trajectory tr({0, 1, 2, 2, 1, 0}, 4);
  std::stringstream buf;
  io::write_trajectory_text(buf, tr);
  EXPECT_EQ(buf.str(), "0\n1\n2\n2\n1\n0\n");
  const auto back = io::read_trajectory(buf, 4);
  EXPECT_TRUE(std::equal(back.states().begin(), back.states().end(), tr.states().begin()));
  EXPECT_EQ(back.state_count(), 4u);
}

TEST(TrajectoryIo, BinaryRoundTripAndLayout) {
  const Trajectory tr({0, 1, 258}, 300);
  std::stringstream buf;
  io::write_trajectory_binary(buf, tr);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 8u + 12u);
  EXPECT_EQ(bytes.substr(0, 8), "MXGTRJ01");
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 2u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[17]), 1u);
  const auto back = io::read_trajectory(buf);
  EXPECT_EQ(back.state_count(), 259u);
  EXPECT_EQ(back[2], 258u);
}

TEST(TrajectoryIo, EmptyAndMalformed) {
  std::istringstream empty("");
  EXPECT_EQ(io::read_trajectory(empty).size(), 0u);
  std::istringstream bad("0\n-1\n");
  EXPECT_THROW(io::read_trajectory(bad), Error);
  std::istringstream truncated(std::string("MXGTRJ01") + "abc");
  EXPECT_THROW(io::read_trajectory(truncated), Error);
  std::istringstream out_of_range("0\n5\n");
  EXPECT_THROW(io::read_trajectory(out_of_range, 3), Error);
}

}  // namespace
}  // namespace mixgap
