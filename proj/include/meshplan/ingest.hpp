#pragma once

#include "meshplan/roster.hpp"
#include "meshplan/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace meshplan {

/// Roster CSV, header `id,lat,lon,elev_m`. lat/lon/elev may be empty.
/// Throws IngestError with a row number on duplicate ids, malformed
/// rows, or an empty file.
NodeRoster load_roster(const std::filesystem::path& path);

/// Matrix CSV with id headers, independent of any roster.
struct LabeledMatrix {
    std::vector<std::string> ids;
    Matrix values;
};

/// Matrix CSV: first row `id,<id_1>,...,<id_n>`, then one row per id.
/// Cells are decimal dB (finite, >= 0) or the no-path token `NA`.
LabeledMatrix load_matrix_csv(const std::filesystem::path& path);

/// Matrix CSV reordered into roster order. Header/row ids must match the
/// roster ids exactly as a set; file order is free.
RawPathLoss load_raw_pathloss(const std::filesystem::path& path, const NodeRoster& roster);

/// Canonical symmetric matrix: each pair takes the maximum of its two
/// directions (no_path absorbs), the diagonal is forced to zero.
PathLossMatrix symmetrize(const RawPathLoss& raw);

/// Matrix CSV writer matching load_matrix_csv. no_path() is written as
/// `NA`; finite values use full round-trip precision.
void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& ids,
                      const Matrix& values);

/// Roster CSV writer matching load_roster.
void write_roster_csv(const std::filesystem::path& path, const NodeRoster& roster);

}  // namespace meshplan
