#include "spotstat/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "spotstat/errors.hpp"

namespace spotstat::io {

namespace {

// civil-date conversion (Howard Hinnant's algorithms, public domain)
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const auto doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string& cell, std::size_t line_no, const char* column) {
    double value = 0.0;
    const auto* begin = cell.data();
    const auto* end = cell.data() + cell.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ValidationError("line " + std::to_string(line_no) + ": unparseable " + column +
                              " value '" + cell + "'");
    }
    return value;
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

RawTable read_table(const std::filesystem::path& path, const std::vector<std::string>& columns) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path.string());

    RawTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (table.header.empty()) {
            table.header = cells;
            if (cells.size() < columns.size()) {
                throw ValidationError(path.string() + ": header must contain columns " +
                                      [&] {
                                          std::string s;
                                          for (const auto& c : columns) s += c + " ";
                                          return s;
                                      }());
            }
            for (std::size_t i = 0; i < columns.size(); ++i) {
                if (cells[i] != columns[i]) {
                    throw ValidationError(path.string() + ": expected column '" + columns[i] +
                                          "' at position " + std::to_string(i + 1) + ", found '" +
                                          cells[i] + "'");
                }
            }
            continue;
        }
        if (cells.size() < columns.size()) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns.size()) + " columns");
        }
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) throw ValidationError(path.string() + ": empty file");
    if (table.rows.empty()) throw ValidationError(path.string() + ": no data rows");
    return table;
}

/// Output slot: a source row, or a linear blend of two source rows for an
/// interpolated gap sample.
struct Slot {
    std::ptrdiff_t row = -1;
    std::size_t left = 0;
    std::size_t right = 0;
    double weight = 0.0;  // fraction of the right row
};

struct SamplePlan {
    std::int64_t start = 0;
    std::int64_t step_seconds = 0;
    std::vector<Slot> slots;
};

SamplePlan build_plan(const std::vector<std::int64_t>& ts,
                      const std::vector<std::size_t>& line_numbers, const IngestOptions& opts,
                      IngestLog* log) {
    if (ts.size() < 2) {
        throw ValidationError("need at least 2 data rows to establish the sampling resolution");
    }
    std::map<std::int64_t, std::size_t> spacing_counts;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const std::int64_t d = ts[i] - ts[i - 1];
        if (d <= 0) {
            throw ValidationError("line " + std::to_string(line_numbers[i]) +
                                  ": non-monotone timestamp " + format_iso8601_utc(ts[i]));
        }
        ++spacing_counts[d];
    }
    std::int64_t base = 0;
    std::size_t best = 0;
    for (const auto& [d, count] : spacing_counts) {
        if (count > best) {
            best = count;
            base = d;
        }
    }

    // classify spacings: exact, interpolatable gap, or run break
    struct Gap {
        std::size_t after_row;
        std::size_t missing;
    };
    std::vector<std::size_t> run_breaks;  // row index i where a large gap precedes row i
    std::vector<Gap> gaps;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const std::int64_t d = ts[i] - ts[i - 1];
        if (d % base != 0) {
            throw ValidationError("line " + std::to_string(line_numbers[i]) +
                                  ": mixed resolutions, spacing of " + std::to_string(d) +
                                  " s is not a multiple of the base " + std::to_string(base) + " s");
        }
        const auto missing = static_cast<std::size_t>(d / base) - 1;
        if (missing == 0) continue;
        if (missing <= opts.max_interpolated_gap) {
            gaps.push_back({i - 1, missing});
        } else if (opts.allow_gaps) {
            run_breaks.push_back(i);
        } else {
            throw ValidationError("gap of " + std::to_string(missing) + " missing samples between " +
                                  format_iso8601_utc(ts[i - 1]) + " and " + format_iso8601_utc(ts[i]) +
                                  " (line " + std::to_string(line_numbers[i]) +
                                  "); rerun with --allow-gaps to keep the longest contiguous run");
        }
    }

    // contiguous runs of rows (split at large gaps when allowed)
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last] row index
    std::size_t run_start = 0;
    for (std::size_t b : run_breaks) {
        runs.emplace_back(run_start, b - 1);
        run_start = b;
    }
    runs.emplace_back(run_start, ts.size() - 1);

    // choose the longest run by covered time
    std::size_t pick = 0;
    std::int64_t best_span = -1;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const std::int64_t span = ts[runs[r].second] - ts[runs[r].first];
        if (span > best_span) {
            best_span = span;
            pick = r;
        }
    }
    const auto [first_row, last_row] = runs[pick];

    SamplePlan plan;
    plan.start = ts[first_row];
    plan.step_seconds = base;
    for (std::size_t i = first_row; i <= last_row; ++i) {
        if (i > first_row) {
            const auto missing = static_cast<std::size_t>((ts[i] - ts[i - 1]) / base) - 1;
            if (missing > 0) {
                for (std::size_t k = 1; k <= missing; ++k) {
                    Slot s;
                    s.left = i - 1;
                    s.right = i;
                    s.weight = static_cast<double>(k) / static_cast<double>(missing + 1);
                    plan.slots.push_back(s);
                }
                if (log) {
                    ++log->interpolated_gaps;
                    log->interpolated_samples += missing;
                }
            }
        }
        Slot s;
        s.row = static_cast<std::ptrdiff_t>(i);
        plan.slots.push_back(s);
    }
    if (log) {
        log->rows_read = ts.size();
        log->truncated_to_longest_run = runs.size() > 1;
        if (runs.size() > 1) {
            log->note = "kept longest contiguous run of " + std::to_string(plan.slots.size()) +
                        " samples starting " + format_iso8601_utc(plan.start);
        }
    }
    return plan;
}

}  // namespace

std::int64_t parse_iso8601_utc(std::string_view text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, consumed = 0;
    char sep = 0;
    const std::string buf(text);
    const int got =
        std::sscanf(buf.c_str(), "%d-%d-%d%c%d:%d:%d%n", &y, &mo, &d, &sep, &h, &mi, &s, &consumed);
    if (got < 7 || (sep != 'T' && sep != ' ')) {
        throw ValidationError("unparseable ISO-8601 timestamp '" + buf + "'");
    }
    const std::string tail = buf.substr(static_cast<std::size_t>(consumed));
    if (!tail.empty() && tail != "Z" && tail != "+00:00") {
        throw ValidationError("timestamp '" + buf + "' is not UTC (expected 'Z' or '+00:00')");
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 ||
        s > 60) {
        throw ValidationError("timestamp field out of range in '" + buf + "'");
    }
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

TimeSeries ingest_prices(const std::filesystem::path& path, const IngestOptions& opts,
                         IngestLog* log) {
    const RawTable table = read_table(path, {"timestamp", "price"});
    std::vector<std::int64_t> ts(table.rows.size());
    std::vector<double> price(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        try {
            ts[i] = parse_iso8601_utc(table.rows[i][0]);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(table.line_numbers[i]) + ": " + e.what());
        }
        price[i] = parse_number(table.rows[i][1], table.line_numbers[i], "price");
    }
    const SamplePlan plan = build_plan(ts, table.line_numbers, opts, log);

    TimeSeries out;
    out.start = plan.start;
    out.resolution_minutes = static_cast<double>(plan.step_seconds) / 60.0;
    out.label = path.stem().string();
    out.values.reserve(plan.slots.size());
    for (const Slot& s : plan.slots) {
        if (s.row >= 0) {
            out.values.push_back(price[static_cast<std::size_t>(s.row)]);
        } else {
            out.values.push_back(price[s.left] * (1.0 - s.weight) + price[s.right] * s.weight);
        }
    }
    return out;
}

weather::WeatherSeries ingest_weather(const std::filesystem::path& path, const IngestOptions& opts,
                                      IngestLog* log) {
    const RawTable table = read_table(path, {"timestamp", "f_param", "cwt"});
    std::vector<std::int64_t> ts(table.rows.size());
    std::vector<double> f(table.rows.size());
    std::vector<weather::CwtType> cwt(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::size_t line_no = table.line_numbers[i];
        try {
            ts[i] = parse_iso8601_utc(table.rows[i][0]);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
        f[i] = parse_number(table.rows[i][1], line_no, "f_param");
        if (f[i] < 0.0) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": f_param must be non-negative");
        }
        const auto type = weather::cwt_from_name(table.rows[i][2]);
        if (!type) {
            throw ValidationError("line " + std::to_string(line_no) + ": unknown weather type '" +
                                  table.rows[i][2] + "'");
        }
        cwt[i] = *type;
    }
    const SamplePlan plan = build_plan(ts, table.line_numbers, opts, log);

    weather::WeatherSeries out;
    out.start = plan.start;
    out.resolution_minutes = static_cast<double>(plan.step_seconds) / 60.0;
    out.label = path.stem().string();
    out.f_param.reserve(plan.slots.size());
    out.cwt.reserve(plan.slots.size());
    for (const Slot& s : plan.slots) {
        if (s.row >= 0) {
            out.f_param.push_back(f[static_cast<std::size_t>(s.row)]);
            out.cwt.push_back(cwt[static_cast<std::size_t>(s.row)]);
        } else {
            out.f_param.push_back(f[s.left] * (1.0 - s.weight) + f[s.right] * s.weight);
            out.cwt.push_back(cwt[s.left]);  // labels carry forward across small gaps
        }
    }
    return out;
}

TimeSeries ingest_residual_load(const std::filesystem::path& path, const IngestOptions& opts,
                                IngestLog* log) {
    const RawTable table = read_table(path, {"timestamp", "residual_load_mw"});
    std::vector<std::int64_t> ts(table.rows.size());
    std::vector<double> load(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        try {
            ts[i] = parse_iso8601_utc(table.rows[i][0]);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(table.line_numbers[i]) + ": " + e.what());
        }
        load[i] = parse_number(table.rows[i][1], table.line_numbers[i], "residual_load_mw");
    }
    const SamplePlan plan = build_plan(ts, table.line_numbers, opts, log);

    TimeSeries out;
    out.start = plan.start;
    out.resolution_minutes = static_cast<double>(plan.step_seconds) / 60.0;
    out.label = path.stem().string();
    out.values.reserve(plan.slots.size());
    for (const Slot& s : plan.slots) {
        if (s.row >= 0) {
            out.values.push_back(load[static_cast<std::size_t>(s.row)]);
        } else {
            out.values.push_back(load[s.left] * (1.0 - s.weight) + load[s.right] * s.weight);
        }
    }
    return out;
}

void write_csv(const std::filesystem::path& path, std::string_view header,
               const std::vector<std::string>& rows) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << header << '\n';
        for (const auto& row : rows) out << row << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        char probe[32];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(probe, "%lf", &back);
        if (back == v) return probe;
    }
    return buf;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file for checksum: " + path.string());
    std::uint64_t hash = 1469598103934665603ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
    }
    return hash;
}

}  // namespace spotstat::io
