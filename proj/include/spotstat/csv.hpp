#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spotstat/time_series.hpp"
#include "spotstat/weather.hpp"

namespace spotstat::io {

/// Parses "YYYY-MM-DDTHH:MM:SS" (optional trailing "Z" or "+00:00", a space
/// instead of "T" is accepted) into epoch seconds.
std::int64_t parse_iso8601_utc(std::string_view text);
std::string format_iso8601_utc(std::int64_t epoch_seconds);

struct IngestOptions {
    bool allow_gaps = false;            // keep the longest contiguous run instead of failing
    std::size_t max_interpolated_gap = 3;  // consecutive missing samples repaired by interpolation
};

struct IngestLog {
    std::size_t interpolated_samples = 0;
    std::size_t interpolated_gaps = 0;
    bool truncated_to_longest_run = false;
    std::size_t rows_read = 0;
    std::string note;
};

/// Price CSV: header row, columns `timestamp,price` (ISO-8601 UTC,
/// decimal EUR/MWh), rows time-ordered. Gaps of up to
/// max_interpolated_gap missing samples are filled linearly; larger gaps
/// raise ValidationError naming the gap unless allow_gaps keeps the longest
/// contiguous run.
TimeSeries ingest_prices(const std::filesystem::path& path, const IngestOptions& opts = {},
                         IngestLog* log = nullptr);

/// Weather CSV: columns `timestamp,f_param,cwt`; f_param must be
/// non-negative, cwt one of the eleven type labels. Gap handling as for
/// prices (f interpolated, cwt carried forward).
weather::WeatherSeries ingest_weather(const std::filesystem::path& path,
                                      const IngestOptions& opts = {}, IngestLog* log = nullptr);

/// Residual-load CSV: columns `timestamp,residual_load_mw`.
TimeSeries ingest_residual_load(const std::filesystem::path& path, const IngestOptions& opts = {},
                                IngestLog* log = nullptr);

/// Atomic CSV writer (temp file + rename). Each row is written as-is;
/// numeric cells should already be formatted.
void write_csv(const std::filesystem::path& path, std::string_view header,
               const std::vector<std::string>& rows);

/// Shortest round-trip decimal formatting for reproducible output files.
std::string format_double(double v);

/// FNV-1a 64-bit content hash, for report provenance.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

}  // namespace spotstat::io
