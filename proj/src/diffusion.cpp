#include "lgc/diffusion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lgc/quality.hpp"

namespace lgc {

SparseMass::SparseMass(Vertex seed) : seed_(seed), vertices_{seed}, values_{1.0} {}

SparseMass::SparseMass(Vertex seed, std::vector<std::pair<Vertex, double>> entries) : seed_(seed) {
    std::sort(entries.begin(), entries.end());
    vertices_.reserve(entries.size());
    values_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].first == entries[i - 1].first) {
            throw std::invalid_argument("duplicate vertex in sparse mass");
        }
        if (!(entries[i].second > 0.0)) throw std::invalid_argument("sparse mass entries must be positive");
        vertices_.push_back(entries[i].first);
        values_.push_back(entries[i].second);
    }
}

SparseMass SparseMass::from_sorted(Vertex seed, std::vector<Vertex> vertices, std::vector<double> values) {
    SparseMass out;
    out.seed_ = seed;
    out.vertices_ = std::move(vertices);
    out.values_ = std::move(values);
    return out;
}

double SparseMass::mass(Vertex v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return 0.0;
    return values_[static_cast<std::size_t>(it - vertices_.begin())];
}

double SparseMass::total() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

std::uint64_t SparseMass::volume(const Graph& g) const {
    std::uint64_t vol = 0;
    for (Vertex v : vertices_) vol += g.degree(v);
    return vol;
}

double l1_distance(const SparseMass& a, const SparseMass& b) {
    auto av = a.support(), bv = b.support();
    auto am = a.values(), bm = b.values();
    std::size_t i = 0, j = 0;
    double sum = 0.0;
    while (i < av.size() || j < bv.size()) {
        if (j == bv.size() || (i < av.size() && av[i] < bv[j])) {
            sum += std::abs(am[i++]);
        } else if (i == av.size() || bv[j] < av[i]) {
            sum += std::abs(bm[j++]);
        } else {
            sum += std::abs(am[i++] - bm[j++]);
        }
    }
    return sum;
}

SparseMass diffuse_step(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws, StepKernel kernel,
                        std::uint64_t* work) {
    if (ws.dense.size() != g.vertex_count()) throw std::invalid_argument("workspace sized for another graph");
    return kernel == StepKernel::parallel ? kernels::diffuse_pull_omp(g, mass, ws, work)
                                          : kernels::diffuse_push(g, mass, ws, work);
}

SparseMass diffuse_step(const Graph& g, const SparseMass& mass) {
    DiffusionWorkspace ws(g.vertex_count());
    return diffuse_step(g, mass, ws);
}

SparseMass truncate(const SparseMass& mass, double alpha, std::uint64_t* work) {
    if (alpha < 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must lie in [0, 1)");
    const double seed_mass = mass.seed_mass();
    if (!(seed_mass > 0.0)) throw std::invalid_argument("truncation threshold undefined: seed has no mass");
    if (alpha == 0.0) return mass;

    auto support = mass.support();
    auto values = mass.values();
    // The seed can never end above the total mass, so anything at or above
    // alpha * total survives regardless of how much the seed absorbs.
    const double ceiling = alpha * mass.total();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] != mass.seed() && values[i] < ceiling) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : support[a] < support[b];
    });

    // Smallest entries go first; once one survives, every larger one does too.
    double seed_value = seed_mass;
    std::vector<char> removed(support.size(), 0);
    std::size_t removed_count = 0;
    for (auto i : candidates) {
        if (!(values[i] < alpha * seed_value)) break;
        seed_value += values[i];
        removed[i] = 1;
        ++removed_count;
    }
    if (work) *work += support.size() + candidates.size();
    if (removed_count == 0) return mass;

    std::vector<Vertex> out_v;
    std::vector<double> out_m;
    out_v.reserve(support.size() - removed_count);
    out_m.reserve(support.size() - removed_count);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (removed[i]) continue;
        out_v.push_back(support[i]);
        out_m.push_back(support[i] == mass.seed() ? seed_value : values[i]);
    }
    return SparseMass::from_sorted(mass.seed(), std::move(out_v), std::move(out_m));
}

void DiffusionConfig::validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
    if (!(convergence_epsilon >= 0.0)) throw std::invalid_argument("convergence epsilon must be nonnegative");
}

DiffusionResult run_diffusion(const Graph& g, Vertex seed, const DiffusionConfig& cfg) {
    cfg.validate();
    check_vertex(g, seed);
    if (g.degree(seed) == 0) throw GraphError("seed " + g.label(seed) + " is isolated");

    using clock = std::chrono::steady_clock;
    DiffusionWorkspace ws(g.vertex_count());
    DiffusionResult result;
    result.mass = SparseMass(seed);
    result.log.reserve(std::min<std::size_t>(cfg.max_iterations, 4096));

    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        auto start = cfg.record_timing ? clock::now() : clock::time_point{};
        std::uint64_t work = 0;
        const auto input_volume = result.mass.volume(g);
        auto next = diffuse_step(g, result.mass, ws, cfg.kernel, &work);
        next = truncate(next, cfg.alpha, &work);
        double change = l1_distance(next, result.mass);
        result.mass = std::move(next);

        IterationRecord rec;
        rec.iteration = it;
        rec.l1_change = change;
        rec.support_size = result.mass.size();
        rec.support_volume = result.mass.volume(g);
        rec.input_volume = input_volume;
        rec.work = work;
        rec.mass_bytes = result.mass.bytes();
        rec.seed_mass = result.mass.seed_mass();
        if (cfg.record_timing) rec.seconds = std::chrono::duration<double>(clock::now() - start).count();
        result.log.push_back(rec);

        result.iterations = it;
        if (change < cfg.convergence_epsilon) {
            result.converged = true;
            break;
        }
    }
    return result;
}

ClusterReport extract_cluster(const Graph& g, const SparseMass& mass) {
    if (mass.empty()) throw std::invalid_argument("cannot extract a cluster from an empty distribution");
    const Vertex seed = mass.seed();
    const double seed_mass = mass.seed_mass();
    if (!(seed_mass > 0.0)) throw std::invalid_argument("seed carries no mass");

    auto support = mass.support();
    auto values = mass.values();
    std::vector<std::size_t> rest;
    rest.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] != seed) rest.push_back(i);
    }
    auto score = [&](std::size_t i) { return values[i] / static_cast<double>(g.degree(support[i])); };
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return score(a) > score(b); });

    std::vector<Vertex> order{seed};
    for (auto i : rest) order.push_back(support[i]);

    auto sweep = sweep_cut(g, order);
    ClusterReport report;
    report.seed = seed;
    report.degenerate = mass.volume(g) == g.total_volume();
    std::size_t take = std::max<std::size_t>(sweep.best_prefix, 1);
    report.conductance = sweep.best_prefix > 0 ? sweep.best_conductance : 1.0;
    report.members.reserve(take);
    report.members.push_back({seed, 1.0});
    for (std::size_t k = 1; k < take; ++k) {
        report.members.push_back({order[k], values[rest[k - 1]] / seed_mass});
    }
    return report;
}

ClusterReport diffusion_cluster(const Graph& g, Vertex seed, const DiffusionConfig& cfg) {
    auto run = run_diffusion(g, seed, cfg);
    auto report = extract_cluster(g, run.mass);
    report.iterations = run.iterations;
    report.converged = run.converged;
    report.iteration_log = std::move(run.log);
    return report;
}

std::vector<Vertex> ClusterReport::member_set() const {
    std::vector<Vertex> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.vertex);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lgc
