#pragma once

#include <iosfwd>

#include <json.hpp>

#include "lgc/cluster_report.hpp"
#include "lgc/experiment.hpp"
#include "lgc/graph.hpp"

namespace lgc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kClusterSchema = "lgc.cluster_report/1";
inline constexpr const char* kPartitionSchema = "lgc.partition/1";
inline constexpr const char* kOverlapSchema = "lgc.overlap/1";
inline constexpr const char* kBenchSchema = "lgc.bench_summary/1";

/// Vertices are written by label. `seconds` appears in the telemetry only when
/// wall_clock is set.
Json cluster_report_json(const Graph& g, const ClusterReport& report, bool wall_clock = false);
Json partition_json(const Graph& g, const PartitionResult& result);
Json overlap_json(const Graph& g, const OverlapResult& result, double threshold);
Json bench_summary_json(const Graph& g, const BenchReport& report);

/// Two-space indented dump followed by a newline.
void write_json(std::ostream& out, const Json& doc);

}  // namespace lgc
