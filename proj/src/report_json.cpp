#include "lgc/report_json.hpp"

#include <cmath>
#include <ostream>

#include "lgc/quality.hpp"

namespace lgc {

namespace {

// NaN and infinities are not JSON; write null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json labels_of(const Graph& g, const std::vector<Vertex>& vs) {
    Json arr = Json::array();
    for (Vertex v : vs) arr.push_back(g.label(v));
    return arr;
}

}  // namespace

Json cluster_report_json(const Graph& g, const ClusterReport& report, bool wall_clock) {
    Json doc;
    doc["schema"] = kClusterSchema;
    doc["seed"] = g.label(report.seed);
    doc["size"] = report.members.size();
    doc["conductance"] = number(report.conductance);
    doc["iterations"] = report.iterations;
    doc["converged"] = report.converged;
    doc["degenerate"] = report.degenerate;
    Json members = Json::array();
    for (const auto& m : report.members) {
        members.push_back(Json{{"vertex", g.label(m.vertex)}, {"belongingness", number(m.belongingness)}});
    }
    doc["members"] = std::move(members);

    Json telemetry = Json::array();
    for (const auto& rec : report.iteration_log) {
        Json row{{"iteration", rec.iteration},
                 {"l1_change", number(rec.l1_change)},
                 {"support_size", rec.support_size},
                 {"support_volume", rec.support_volume},
                 {"input_volume", rec.input_volume},
                 {"work", rec.work},
                 {"seed_mass", number(rec.seed_mass)}};
        if (wall_clock) row["seconds"] = rec.seconds;
        telemetry.push_back(std::move(row));
    }
    doc["telemetry"] = std::move(telemetry);

    if (!report.phase_log.empty()) {
        Json phases = Json::array();
        for (const auto& ph : report.phase_log) {
            Json hist = Json::array();
            for (const auto& [v, count] : ph.visits) hist.push_back(Json{{"vertex", g.label(v)}, {"visits", count}});
            phases.push_back(Json{{"f", ph.f}, {"steps", ph.steps}, {"accepted", ph.accepted}, {"visits", hist}});
        }
        doc["phases"] = std::move(phases);
    }
    return doc;
}

Json partition_json(const Graph& g, const PartitionResult& result) {
    Json doc;
    doc["schema"] = kPartitionSchema;
    doc["vertices"] = g.vertex_count();
    doc["block_count"] = result.partition.block_count;
    doc["modularity"] = modularity(g, result.partition);
    auto blocks = result.partition.blocks();
    Json arr = Json::array();
    for (std::size_t b = 0; b < result.blocks.size(); ++b) {
        const auto& info = result.blocks[b];
        arr.push_back(Json{{"id", b},
                           {"seed", g.label(info.seed)},
                           {"size", info.size},
                           {"cluster_conductance", number(info.cluster_conductance)},
                           {"degenerate", info.degenerate},
                           {"members", labels_of(g, blocks[b])}});
    }
    doc["blocks"] = std::move(arr);
    return doc;
}

Json overlap_json(const Graph& g, const OverlapResult& result, double threshold) {
    Json doc;
    doc["schema"] = kOverlapSchema;
    doc["centers"] = labels_of(g, result.embedding.centers);
    doc["k"] = result.membership.memberships.cols();
    doc["fuzzifier"] = result.membership.fuzzifier;
    doc["threshold"] = threshold;
    doc["iterations"] = result.membership.iterations;
    doc["converged"] = result.membership.converged;
    doc["objective"] = result.membership.objective();
    Json clusters = Json::array();
    for (std::size_t j = 0; j < result.clusters.size(); ++j) {
        Json members = Json::array();
        for (Vertex v : result.clusters[j]) {
            members.push_back(Json{{"vertex", g.label(v)}, {"membership", result.membership.memberships(v, j)}});
        }
        clusters.push_back(Json{{"id", j}, {"size", result.clusters[j].size()}, {"members", members}});
    }
    doc["clusters"] = std::move(clusters);
    return doc;
}

Json bench_summary_json(const Graph& g, const BenchReport& report) {
    Json doc;
    doc["schema"] = kBenchSchema;
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    Json runs = Json::array();
    for (const auto& run : report.runs) {
        const auto& r = run.report;
        std::uint64_t work = 0;
        for (const auto& rec : r.iteration_log) work += rec.work;
        runs.push_back(Json{{"alpha", run.alpha},
                            {"seed", g.label(r.seed)},
                            {"size", r.members.size()},
                            {"conductance", number(r.conductance)},
                            {"modularity", run.cluster_modularity},
                            {"iterations", r.iterations},
                            {"converged", r.converged},
                            {"degenerate", r.degenerate},
                            {"total_work", work}});
    }
    doc["runs"] = std::move(runs);
    if (!report.partition_modularity.empty()) {
        Json parts = Json::array();
        for (const auto& [alpha, q] : report.partition_modularity) {
            parts.push_back(Json{{"alpha", alpha}, {"modularity", q}});
        }
        doc["partitions"] = std::move(parts);
    }
    return doc;
}

void write_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace lgc
