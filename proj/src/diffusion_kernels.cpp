#include <algorithm>

#include "lgc/diffusion.hpp"

namespace lgc::kernels {

namespace {

void require_walkable(const Graph& g, const SparseMass& mass) {
    for (Vertex w : mass.support()) {
        if (g.degree(w) == 0) throw GraphError("diffusion reached isolated vertex " + g.label(w));
    }
}

}  // namespace

SparseMass diffuse_push(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws, std::uint64_t* work) {
    require_walkable(g, mass);
    auto& acc = ws.dense;
    auto& mark = ws.mark;
    auto& touched = ws.touched;
    touched.clear();
    auto add = [&](Vertex x, double value) {
        if (!mark[x]) {
            mark[x] = 1;
            touched.push_back(x);
            acc[x] = 0.0;
        }
        acc[x] += value;
    };

    std::uint64_t ops = 0;
    auto support = mass.support();
    auto values = mass.values();
    for (std::size_t i = 0; i < support.size(); ++i) {
        Vertex w = support[i];
        double m = values[i];
        auto d = g.degree(w);
        add(w, m * 0.5);
        double share = m / (2.0 * d);
        for (Vertex u : g.neighbors(w)) add(u, share);
        ops += 1 + d;
    }

    std::sort(touched.begin(), touched.end());
    std::vector<Vertex> out_v(touched.begin(), touched.end());
    std::vector<double> out_m;
    out_m.reserve(out_v.size());
    for (Vertex x : touched) {
        out_m.push_back(acc[x]);
        acc[x] = 0.0;
        mark[x] = 0;
    }
    touched.clear();
    if (work) *work += ops;
    return SparseMass::from_sorted(mass.seed(), std::move(out_v), std::move(out_m));
}

SparseMass diffuse_pull_omp(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws,
                            std::uint64_t* work) {
    require_walkable(g, mass);
    auto& old = ws.dense;
    auto& mark = ws.mark;
    auto& candidates = ws.touched;
    candidates.clear();

    auto support = mass.support();
    auto values = mass.values();
    for (std::size_t i = 0; i < support.size(); ++i) {
        Vertex w = support[i];
        old[w] = values[i];
        if (!mark[w]) {
            mark[w] = 1;
            candidates.push_back(w);
        }
        for (Vertex u : g.neighbors(w)) {
            if (!mark[u]) {
                mark[u] = 1;
                candidates.push_back(u);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());

    const auto count = static_cast<std::ptrdiff_t>(candidates.size());
    std::vector<double> out_m(candidates.size(), 0.0);
    std::uint64_t ops = 0;

#pragma omp parallel for schedule(dynamic, 256) reduction(+ : ops)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        Vertex u = candidates[static_cast<std::size_t>(i)];
        double sum = 0.0;
        bool self_done = false;
        // Terms are taken in ascending source order with the self term at u's
        // position, matching the accumulation order of diffuse_push.
        for (Vertex w : g.neighbors(u)) {
            if (!self_done && u < w) {
                if (old[u] > 0.0) sum += old[u] * 0.5;
                self_done = true;
            }
            if (old[w] > 0.0) sum += old[w] / (2.0 * g.degree(w));
        }
        if (!self_done && old[u] > 0.0) sum += old[u] * 0.5;
        out_m[static_cast<std::size_t>(i)] = sum;
        ops += 1 + g.degree(u);
    }

    for (Vertex w : support) old[w] = 0.0;
    for (Vertex u : candidates) mark[u] = 0;
    std::vector<Vertex> out_v(candidates.begin(), candidates.end());
    candidates.clear();
    if (work) *work += ops;
    return SparseMass::from_sorted(mass.seed(), std::move(out_v), std::move(out_m));
}

}  // namespace lgc::kernels
