#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mixgap/chain.hpp"

namespace mixgap::io {

/// Row sums read from text may carry printing round-off; rows within this
/// distance of one are renormalized on load.
inline constexpr double kLoadRowSumTol = 1e-8;

/// 8-byte magic prefix of the binary trajectory format.
inline constexpr std::string_view kTrajectoryMagic = "MXGTRJ01";

/// Dense CSV, one row per line, comma separated.
StochasticMatrix read_matrix_csv(std::istream& in);
/// {"n": N, "rows": [[...], ...]}.
StochasticMatrix read_matrix_json(std::istream& in);
/// Picks the format by extension (.json, otherwise CSV).
StochasticMatrix load_matrix(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_json(std::ostream& out, const Matrix& m);

/// Reads a trajectory in either format; the binary format is recognised by
/// its magic. With no `state_count`, n is taken as max(state) + 1.
Trajectory read_trajectory(std::istream& in, std::optional<std::size_t> state_count = std::nullopt);
Trajectory load_trajectory(const std::filesystem::path& path,
                           std::optional<std::size_t> state_count = std::nullopt);

/// One decimal state index per line.
void write_trajectory_text(std::ostream& out, const Trajectory& tr);
/// Magic followed by little-endian uint32 state indices.
void write_trajectory_binary(std::ostream& out, const Trajectory& tr);

}  // namespace mixgap::io
