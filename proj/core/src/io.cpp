#include "mixgap/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixgap/error.hpp"

namespace mixgap::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::size_t line) {
  token = trim(token);
  // from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::Parse, "invalid number '" + std::string(token) + "' on line " + std::to_string(line));
  }
  return value;
}

StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = rows.size();
  if (n == 0) throw Error(ErrorCode::Parse, "matrix has no rows");
  const auto size = Eigen::Index(n);
  Matrix m(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                        " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  return StochasticMatrix::normalized(std::move(m), kLoadRowSumTol);
}

void write_number(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), ptr - buf.data());
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

StochasticMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      row.push_back(parse_double(body.substr(start, comma - start), lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

StochasticMatrix read_matrix_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows")) throw Error(ErrorCode::Parse, "matrix JSON needs a 'rows' array");
  std::vector<std::vector<double>> rows;
  try {
    rows = doc.at("rows").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("'rows' must be an array of numeric arrays: ") + e.what());
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != rows.size()) {
      throw Error(ErrorCode::Parse, "'n' does not match the number of rows");
    }
  }
  return from_rows(rows);
}

StochasticMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return path.extension() == ".json" ? read_matrix_json(in) : read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      write_number(out, m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_json(std::ostream& out, const Matrix& m) {
  nlohmann::json doc;
  doc["n"] = m.rows();
  auto& rows = doc["rows"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  out << doc.dump() << '\n';
}

Trajectory read_trajectory(std::istream& in, std::optional<std::size_t> state_count) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<State> states;
  if (data.size() >= kTrajectoryMagic.size() && std::string_view(data).substr(0, 8) == kTrajectoryMagic) {
    const auto payload = data.size() - kTrajectoryMagic.size();
    if (payload % 4 != 0) throw Error(ErrorCode::Parse, "binary trajectory payload is not a multiple of 4 bytes");
    states.reserve(payload / 4);
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data()) + kTrajectoryMagic.size();
    for (std::size_t i = 0; i < payload; i += 4) {
      states.push_back(State(bytes[i]) | State(bytes[i + 1]) << 8 | State(bytes[i + 2]) << 16 |
                       State(bytes[i + 3]) << 24);
    }
  } else {
    std::istringstream lines(data);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      const auto body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      State value = 0;
      const auto* end = body.data() + body.size();
      const auto [ptr, ec] = std::from_chars(body.data(), end, value);
      if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::Parse, "invalid state '" + std::string(body) + "' on line " + std::to_string(lineno));
      }
      states.push_back(value);
    }
  }
  std::size_t n = 0;
  if (state_count) {
    n = *state_count;
  } else {
    for (const auto s : states) n = std::max<std::size_t>(n, std::size_t(s) + 1);
    n = std::max<std::size_t>(n, 1);
  }
  return Trajectory(std::move(states), n);
}

Trajectory load_trajectory(const std::filesystem::path& path, std::optional<std::size_t> state_count) {
  auto in = open_input(path);
  return read_trajectory(in, state_count);
}

void write_trajectory_text(std::ostream& out, const Trajectory& tr) {
  std::string buf;
  buf.reserve(tr.size() * 3);
  std::array<char, 16> num{};
  for (const auto s : tr.states()) {
    const auto [ptr, ec] = std::to_chars(num.data(), num.data() + num.size(), s);
    buf.append(num.data(), ptr);
    buf.push_back('\n');
  }
  out << buf;
}

void write_trajectory_binary(std::ostream& out, const Trajectory& tr) {
  out.write(kTrajectoryMagic.data(), std::streamsize(kTrajectoryMagic.size()));
  std::vector<char> buf;
  buf.reserve(tr.size() * 4);
  for (const auto s : tr.states()) {
    for (int shift = 0; shift < 32; shift += 8) buf.push_back(static_cast<char>((s >> shift) & 0xFFU));
  }
  out.write(buf.data(), std::streamsize(buf.size()));
}

}  // namespace mixgap::io
