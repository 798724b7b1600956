#pragma once

#include <filesystem>

#include <json.hpp>

#include "spotstat/emd.hpp"
#include "spotstat/fitting.hpp"
#include "spotstat/mfdfa.hpp"
#include "spotstat/superstat.hpp"
#include "spotstat/time_series.hpp"
#include "spotstat/weather.hpp"

namespace spotstat::io {

/// Reports keep insertion order so that emitted JSON is canonical and
/// byte-stable across runs.
using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const MomentSummary& m);
ordered_json to_json(const Histogram& h);
ordered_json to_json(const distfit::DistributionFit& fit);
ordered_json to_json(const distfit::ModelSelection& selection);
ordered_json to_json(const emd::EmdDecomposition& dec);
ordered_json to_json(const mfdfa::MfdfaResult& result);
ordered_json to_json(const superstat::SuperstatResult& result);
ordered_json to_json(const weather::ConditionalStats& stats);
ordered_json to_json(const weather::CwtSegments& segments);
ordered_json to_json(const weather::MeritOrderFit& fit);

/// Atomic write (temp file + rename), 2-space indent, trailing newline.
void write_report(const std::filesystem::path& path, const ordered_json& report);
ordered_json read_report(const std::filesystem::path& path);

}  // namespace spotstat::io
