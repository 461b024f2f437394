#include "lgc/adaptive_walk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lgc/quality.hpp"

namespace lgc {

WalkConfig WalkConfig::defaults(std::size_t expected_cluster_size) {
    WalkConfig cfg;
    auto steps = 10 * std::max<std::size_t>(expected_cluster_size, 1);
    cfg.f_schedule = {{1.3, steps}, {2.0, steps}};
    return cfg;
}

void WalkConfig::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("walk alpha must be positive");
    if (!(beta >= alpha)) throw std::invalid_argument("walk beta must be at least alpha");
    for (const auto& phase : f_schedule) {
        if (!(phase.f >= 1.0)) throw std::invalid_argument("every f in the schedule must be >= 1");
    }
}

EnergyTable::EnergyTable(const Graph& g, Vertex seed, const WalkConfig& cfg)
    : graph_(&g), seed_(seed), current_(seed), alpha_(cfg.alpha),
      seed_degree_background_(cfg.seed_degree_background) {
    cfg.validate();
    check_vertex(g, seed);
    if (g.degree(seed) == 0) throw GraphError("seed " + g.label(seed) + " is isolated");
    seed_degree_ = static_cast<double>(g.degree(seed));
    raised_[seed] = cfg.beta / seed_degree_;
    visits_[seed] = 1;
    total_visits_ = 1;
    if (!cfg.f_schedule.empty()) f_ = cfg.f_schedule.front().f;
}

double EnergyTable::background(Vertex v) const {
    if (seed_degree_background_) return alpha_ / seed_degree_;
    auto d = graph_->degree(v);
    // Isolated vertices are unreachable; any positive value keeps energies positive.
    return alpha_ / static_cast<double>(d == 0 ? 1 : d);
}

double EnergyTable::energy(Vertex v) const {
    auto it = raised_.find(v);
    return it == raised_.end() ? background(v) : it->second;
}

std::uint64_t EnergyTable::visits(Vertex v) const {
    auto it = visits_.find(v);
    return it == visits_.end() ? 0 : it->second;
}

std::vector<Vertex> EnergyTable::visited() const {
    std::vector<Vertex> out;
    out.reserve(visits_.size());
    for (const auto& [v, count] : visits_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

void EnergyTable::set_f(double f) {
    if (!(f >= 1.0)) throw std::invalid_argument("f must be >= 1");
    f_ = f;
}

struct WalkStepAccess {
    static void finish(EnergyTable& s, Vertex from, Vertex to) {
        s.raised_[from] = s.energy(from) * s.f_;
        s.current_ = to;
        ++s.visits_[to];
        ++s.total_visits_;
        ++s.steps_;
    }
};

EnergyTable init_energies(const Graph& g, Vertex seed, const WalkConfig& cfg) {
    return EnergyTable(g, seed, cfg);
}

double acceptance_probability(const EnergyTable& state, Vertex from, Vertex to) {
    return std::min(state.energy(to) / state.energy(from), 1.0);
}

StepOutcome walk_step(const Graph& g, EnergyTable& state, WalkRng& rng) {
    const Vertex u = state.current();
    auto nb = g.neighbors(u);
    if (nb.empty()) throw GraphError("walker stuck at isolated vertex " + g.label(u));

    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    StepOutcome out{u, nb[pick(rng)], false, 0.0};
    out.acceptance = acceptance_probability(state, u, out.proposed);
    out.accepted = coin(rng) < out.acceptance;
    WalkStepAccess::finish(state, u, out.accepted ? out.proposed : u);
    return out;
}

WalkResult run_walk(const Graph& g, Vertex seed, const WalkConfig& cfg) {
    WalkResult result{init_energies(g, seed, cfg), {}};
    WalkRng rng(cfg.rng_seed);
    auto& state = result.state;
    for (const auto& phase : cfg.f_schedule) {
        state.set_f(phase.f);
        state.reset_to_seed();
        PhaseRecord rec;
        rec.f = phase.f;
        rec.steps = phase.steps;
        std::map<Vertex, std::uint64_t> landed;
        for (std::size_t s = 0; s < phase.steps; ++s) {
            auto step = walk_step(g, state, rng);
            if (step.accepted) ++rec.accepted;
            ++landed[state.current()];
        }
        rec.visits.assign(landed.begin(), landed.end());
        result.phases.push_back(std::move(rec));
    }
    return result;
}

ClusterReport extract_cluster_from_energy(const Graph& g, const EnergyTable& state) {
    const Vertex seed = state.seed();
    auto order = state.visited();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return state.energy(a) > state.energy(b); });

    ClusterReport report;
    report.seed = seed;
    const double seed_energy = state.energy(seed);
    if (order.size() <= 1) {
        report.degenerate = true;
        report.members.push_back({seed, 1.0});
        Vertex only[] = {seed};
        report.conductance = conductance(g, only);
        return report;
    }

    auto seed_pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), seed) - order.begin());
    auto sweep = sweep_cut(g, order, seed_pos + 1);
    std::size_t take = sweep.best_prefix;
    if (take == 0) {
        // Only possible when every admissible prefix is the whole vertex set.
        take = seed_pos + 1;
        report.degenerate = true;
    }
    report.conductance = sweep.best_prefix > 0 ? sweep.best_conductance : 1.0;
    // Seed first so the report reads the same way as a diffusion cluster.
    report.members.push_back({seed, 1.0});
    for (std::size_t k = 0; k < take; ++k) {
        if (order[k] != seed) report.members.push_back({order[k], state.energy(order[k]) / seed_energy});
    }
    return report;
}

ClusterReport walk_cluster(const Graph& g, Vertex seed, const WalkConfig& cfg) {
    auto run = run_walk(g, seed, cfg);
    auto report = extract_cluster_from_energy(g, run.state);
    report.iterations = run.state.steps();
    report.converged = false;
    report.phase_log = std::move(run.phases);
    return report;
}

}  // namespace lgc
