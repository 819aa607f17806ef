#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsn/metrics.hpp"
#include "wsn/result.hpp"

// Renderers for the run artifacts.  All output is a pure function of the
// result structs: no timestamps, hostnames or other environment leaks, so a
// rerun of the same config + seed produces byte-identical files.  (Wall-clock
// provenance goes into the separate manifest written by the CLI.)

namespace wsn {

nlohmann::ordered_json result_to_json(const ScenarioResult& r);

std::string render_result_json(const ScenarioResult& r);
std::string render_lifetimes_csv(const TechniqueResult& r);
std::string render_histogram_csv(const std::vector<HistogramBucket>& buckets);
std::string render_compare_csv(const ModelComparison& c);
std::string render_events_log(const ScenarioResult& r);

// Creates parent directories as needed; throws SimError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wsn
