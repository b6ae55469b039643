#include "meshplan/ingest.hpp"

#include "meshplan/csv.hpp"
#include "meshplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

namespace meshplan {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no, const std::string& what)
{
    throw IngestError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::optional<double> parse_optional_field(const std::string& field,
                                           const std::filesystem::path& path, std::size_t line_no,
                                           const char* name)
{
    if (field.empty()) return std::nullopt;
    auto value = csv::parse_number(field);
    if (!value) fail(path, line_no, std::string("non-numeric ") + name + " \"" + field + "\"");
    return value;
}

double parse_loss_cell(const std::string& field, const std::filesystem::path& path,
                       std::size_t line_no)
{
    if (field == "NA") return no_path();
    auto value = csv::parse_number(field);
    if (!value || !std::isfinite(*value))
        fail(path, line_no, "non-numeric cell \"" + field + "\"");
    if (*value < 0.0) fail(path, line_no, "negative path loss \"" + field + "\"");
    return *value;
}

}  // namespace

NodeRoster load_roster(const std::filesystem::path& path)
{
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw IngestError(path.string() + ": empty file");

    const auto header = csv::split_fields(lines[0]);
    const std::vector<std::string> expected = {"id", "lat", "lon", "elev_m"};
    if (header != expected)
        fail(path, 1, "expected header \"id,lat,lon,elev_m\", got \"" + lines[0] + "\"");

    std::vector<NodeRecord> records;
    std::unordered_map<std::string, std::size_t> seen;  // id -> first line
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const auto fields = csv::split_fields(lines[i]);
        if (fields.size() != 4)
            fail(path, line_no,
                 "malformed row: expected 4 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) fail(path, line_no, "empty node id");
        auto [it, inserted] = seen.emplace(fields[0], line_no);
        if (!inserted)
            fail(path, line_no,
                 "duplicate id \"" + fields[0] + "\" (first seen on line " +
                     std::to_string(it->second) + ")");

        NodeRecord rec;
        rec.id = fields[0];
        rec.latitude = parse_optional_field(fields[1], path, line_no, "lat");
        rec.longitude = parse_optional_field(fields[2], path, line_no, "lon");
        rec.elevation_m = parse_optional_field(fields[3], path, line_no, "elev_m");
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw IngestError(path.string() + ": no data rows");
    return NodeRoster(std::move(records));
}

LabeledMatrix load_matrix_csv(const std::filesystem::path& path)
{
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw IngestError(path.string() + ": empty file");

    const auto header = csv::split_fields(lines[0]);
    if (header.size() < 2 || header[0] != "id")
        fail(path, 1, "expected header \"id,<id_1>,...,<id_n>\"");

    const std::size_t n = header.size() - 1;
    std::vector<std::string> ids(header.begin() + 1, header.end());
    std::unordered_map<std::string, std::size_t> column_of;
    for (std::size_t c = 0; c < n; ++c) {
        if (ids[c].empty()) fail(path, 1, "empty id in header column " + std::to_string(c + 2));
        if (!column_of.emplace(ids[c], c).second)
            fail(path, 1, "duplicate id \"" + ids[c] + "\" in header");
    }

    Matrix values(n, n);
    std::vector<bool> row_filled(n, false);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const auto fields = csv::split_fields(lines[i]);
        if (fields.size() != n + 1)
            fail(path, line_no,
                 "ragged row: expected " + std::to_string(n + 1) + " fields, got " +
                     std::to_string(fields.size()));
        auto row_it = column_of.find(fields[0]);
        if (row_it == column_of.end())
            fail(path, line_no, "row id \"" + fields[0] + "\" not present in header");
        const std::size_t r = row_it->second;
        if (row_filled[r]) fail(path, line_no, "duplicate row id \"" + fields[0] + "\"");
        row_filled[r] = true;
        for (std::size_t c = 0; c < n; ++c)
            values(static_cast<Index>(r), static_cast<Index>(c)) =
                parse_loss_cell(fields[c + 1], path, line_no);
    }
    for (std::size_t r = 0; r < n; ++r)
        if (!row_filled[r]) throw IngestError(path.string() + ": missing row for id \"" + ids[r] + "\"");

    return {std::move(ids), std::move(values)};
}

RawPathLoss load_raw_pathloss(const std::filesystem::path& path, const NodeRoster& roster)
{
    LabeledMatrix file = load_matrix_csv(path);
    const Index n = roster.size();
    if (static_cast<Index>(file.ids.size()) != n)
        throw IngestError(path.string() + ": matrix has " + std::to_string(file.ids.size()) +
                          " ids but roster has " + std::to_string(n));

    // File order is free; map every file index onto the roster index.
    std::vector<Index> to_roster(file.ids.size());
    for (std::size_t c = 0; c < file.ids.size(); ++c) {
        auto idx = roster.index_of(file.ids[c]);
        if (!idx)
            throw IngestError(path.string() + ": id \"" + file.ids[c] + "\" not present in roster");
        to_roster[c] = *idx;
    }

    Matrix values(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            values(to_roster[static_cast<std::size_t>(r)], to_roster[static_cast<std::size_t>(c)]) =
                file.values(r, c);
    return {std::move(values)};
}

PathLossMatrix symmetrize(const RawPathLoss& raw)
{
    if (raw.values.rows() != raw.values.cols())
        throw std::invalid_argument("symmetrize: matrix must be square");
    const Index n = raw.values.rows();
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        out(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double worst = std::max(raw.values(i, j), raw.values(j, i));
            out(i, j) = worst;
            out(j, i) = worst;
        }
    }
    return {std::move(out)};
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& ids,
                      const Matrix& values)
{
    if (static_cast<Index>(ids.size()) != values.rows() || values.rows() != values.cols())
        throw std::invalid_argument("write_matrix_csv: ids/matrix shape mismatch");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestError("cannot write file: " + path.string());
    out << "id";
    for (const auto& id : ids) out << ',' << id;
    out << '\n';
    for (Index i = 0; i < values.rows(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Index j = 0; j < values.cols(); ++j) {
            const double v = values(i, j);
            out << ',' << (is_no_path(v) ? std::string("NA") : csv::format_number(v));
        }
        out << '\n';
    }
    if (!out) throw IngestError("write failed: " + path.string());
}

void write_roster_csv(const std::filesystem::path& path, const NodeRoster& roster)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestError("cannot write file: " + path.string());
    out << "id,lat,lon,elev_m\n";
    for (const auto& rec : roster.nodes()) {
        out << rec.id << ',';
        if (rec.latitude) out << csv::format_number(*rec.latitude);
        out << ',';
        if (rec.longitude) out << csv::format_number(*rec.longitude);
        out << ',';
        if (rec.elevation_m) out << csv::format_number(*rec.elevation_m);
        out << '\n';
    }
    if (!out) throw IngestError("write failed: " + path.string());
}

}  // namespace meshplan
