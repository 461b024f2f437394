#include "lgc/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "lgc/text_format.hpp"

namespace lgc {

EmbeddingMatrix build_embedding(const Graph& g, std::span<const Vertex> centers, const DiffusionConfig& cfg) {
    if (centers.size() < 2) throw std::invalid_argument("embedding needs at least two centres");
    std::vector<Vertex> sorted(centers.begin(), centers.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("embedding centres must be distinct");
    }
    for (Vertex c : centers) {
        check_vertex(g, c);
        if (g.degree(c) == 0) throw GraphError("centre " + g.label(c) + " is isolated");
    }
    cfg.validate();

    const auto dims = static_cast<std::ptrdiff_t>(centers.size());
    std::vector<SparseMass> columns(centers.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < dims; ++j) {
        columns[static_cast<std::size_t>(j)] = run_diffusion(g, centers[static_cast<std::size_t>(j)], cfg).mass;
    }

    EmbeddingMatrix e{DenseMatrix(g.vertex_count(), centers.size()), {centers.begin(), centers.end()}};
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto support = columns[j].support();
        auto values = columns[j].values();
        for (std::size_t i = 0; i < support.size(); ++i) e.values(support[i], j) = values[i];
    }
    return e;
}

DenseMatrix affinity_rows(const DenseMatrix& values) {
    DenseMatrix out = values;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        auto row = out.row(i);
        double sum = std::accumulate(row.begin(), row.end(), 0.0);
        if (sum > 0.0) {
            for (auto& x : row) x /= sum;
        }
    }
    return out;
}

void FcmConfig::validate() const {
    if (k < 2) throw std::invalid_argument("fcm needs k >= 2");
    if (!(fuzzifier > 1.0)) throw std::invalid_argument("fuzzifier must exceed 1");
    if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
    if (restarts < 1) throw std::invalid_argument("restarts must be positive");
}

std::size_t MembershipMatrix::argmax(std::size_t row) const {
    auto r = memberships.row(row);
    return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return sum;
}

void membership_row(std::span<const double> x, const DenseMatrix& centers, double exponent,
                    std::span<double> out, std::vector<double>& dist) {
    const auto k = centers.rows();
    for (std::size_t j = 0; j < k; ++j) dist[j] = squared_distance(x, centers.row(j));
    for (std::size_t j = 0; j < k; ++j) {
        if (dist[j] == 0.0) {
            std::fill(out.begin(), out.end(), 0.0);
            out[j] = 1.0;
            return;
        }
    }
    // u_ij = 1 / sum_l (d_ij^2 / d_il^2)^(1/(m-1))
    for (std::size_t j = 0; j < k; ++j) {
        double denom = 0.0;
        for (std::size_t l = 0; l < k; ++l) denom += std::pow(dist[j] / dist[l], exponent);
        out[j] = 1.0 / denom;
    }
}

double objective_row(std::span<const double> x, std::span<const double> u, const DenseMatrix& centers,
                     double fuzzifier) {
    double sum = 0.0;
    for (std::size_t j = 0; j < centers.rows(); ++j) {
        sum += std::pow(u[j], fuzzifier) * squared_distance(x, centers.row(j));
    }
    return sum;
}

}  // namespace

void update_memberships(const DenseMatrix& points, const DenseMatrix& centers, double fuzzifier,
                        DenseMatrix& memberships, FcmKernel kernel) {
    const auto n = static_cast<std::ptrdiff_t>(points.rows());
    const auto k = centers.rows();
    if (memberships.rows() != points.rows() || memberships.cols() != k) memberships = DenseMatrix(points.rows(), k);
    const double exponent = 1.0 / (fuzzifier - 1.0);
    if (kernel == FcmKernel::parallel) {
#pragma omp parallel
        {
            std::vector<double> dist(k);
#pragma omp for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                auto r = static_cast<std::size_t>(i);
                membership_row(points.row(r), centers, exponent, memberships.row(r), dist);
            }
        }
    } else {
        std::vector<double> dist(k);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            membership_row(points.row(i), centers, exponent, memberships.row(i), dist);
        }
    }
}

void update_centers(const DenseMatrix& points, const DenseMatrix& memberships, double fuzzifier,
                    DenseMatrix& centers, FcmKernel kernel) {
    const auto k = memberships.cols();
    const auto dims = points.cols();
    if (centers.rows() != k || centers.cols() != dims) centers = DenseMatrix(k, dims);
    // Parallel over centres only: each centre sums its points in row order, so
    // both kernels produce identical bits.
    auto one_center = [&](std::size_t j) {
        auto c = centers.row(j);
        std::fill(c.begin(), c.end(), 0.0);
        double weight = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            double w = std::pow(memberships(i, j), fuzzifier);
            weight += w;
            auto x = points.row(i);
            for (std::size_t d = 0; d < dims; ++d) c[d] += w * x[d];
        }
        if (weight > 0.0) {
            for (auto& v : c) v /= weight;
        }
    };
    if (kernel == FcmKernel::parallel) {
        const auto kk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < kk; ++j) one_center(static_cast<std::size_t>(j));
    } else {
        for (std::size_t j = 0; j < k; ++j) one_center(j);
    }
}

double fcm_objective(const DenseMatrix& points, const MembershipMatrix& msm) {
    if (msm.memberships.rows() != points.rows() || msm.centers.cols() != points.cols() ||
        msm.memberships.cols() != msm.centers.rows()) {
        throw std::invalid_argument("fcm dimensions disagree");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        total += objective_row(points.row(i), msm.memberships.row(i), msm.centers, msm.fuzzifier);
    }
    return total;
}

MembershipMatrix fcm_fit_from(const DenseMatrix& points, DenseMatrix initial_centers, const FcmConfig& cfg) {
    cfg.validate();
    if (initial_centers.rows() != cfg.k || initial_centers.cols() != points.cols()) {
        throw std::invalid_argument("initial centres must be k x D");
    }
    if (points.rows() < cfg.k) throw std::invalid_argument("fewer points than clusters");

    MembershipMatrix msm;
    msm.fuzzifier = cfg.fuzzifier;
    msm.centers = std::move(initial_centers);
    msm.memberships = DenseMatrix(points.rows(), cfg.k);
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        update_memberships(points, msm.centers, cfg.fuzzifier, msm.memberships, cfg.kernel);
        update_centers(points, msm.memberships, cfg.fuzzifier, msm.centers, cfg.kernel);
        double obj = fcm_objective(points, msm);
        msm.iterations = it;
        bool done = !msm.objective_history.empty() && msm.objective_history.back() - obj < cfg.tolerance;
        msm.objective_history.push_back(obj);
        if (done) {
            msm.converged = true;
            break;
        }
    }
    return msm;
}

namespace {

DenseMatrix sample_centers(const DenseMatrix& points, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(points.rows());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    // Prefer rows with distinct values; fall back to distinct indices.
    std::vector<std::size_t> chosen;
    for (auto i : order) {
        if (chosen.size() == k) break;
        bool duplicate = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
            return squared_distance(points.row(c), points.row(i)) == 0.0;
        });
        if (!duplicate) chosen.push_back(i);
    }
    for (auto i : order) {
        if (chosen.size() == k) break;
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
    }
    DenseMatrix centers(k, points.cols());
    for (std::size_t j = 0; j < k; ++j) {
        auto src = points.row(chosen[j]);
        std::copy(src.begin(), src.end(), centers.row(j).begin());
    }
    return centers;
}

}  // namespace

MembershipMatrix fcm_fit(const DenseMatrix& points, const FcmConfig& cfg) {
    cfg.validate();
    if (points.rows() < cfg.k) throw std::invalid_argument("fewer points than clusters");
    std::seed_seq seq{cfg.rng_seed, cfg.rng_seed >> 32};
    std::vector<std::uint64_t> seeds(cfg.restarts);
    {
        std::vector<std::uint32_t> raw(2 * cfg.restarts);
        seq.generate(raw.begin(), raw.end());
        for (std::size_t r = 0; r < cfg.restarts; ++r) {
            seeds[r] = (static_cast<std::uint64_t>(raw[2 * r]) << 32) | raw[2 * r + 1];
        }
    }
    MembershipMatrix best;
    double best_obj = std::numeric_limits<double>::infinity();
    for (auto s : seeds) {
        auto fit = fcm_fit_from(points, sample_centers(points, cfg.k, s), cfg);
        if (fit.objective() < best_obj) {
            best_obj = fit.objective();
            best = std::move(fit);
        }
    }
    return best;
}

std::vector<std::vector<Vertex>> overlap_report(const MembershipMatrix& msm, double threshold) {
    if (!(threshold > 0.0 && threshold <= 0.5)) throw std::invalid_argument("threshold must lie in (0, 0.5]");
    std::vector<std::vector<Vertex>> clusters(msm.memberships.cols());
    for (std::size_t i = 0; i < msm.memberships.rows(); ++i) {
        auto top = msm.argmax(i);
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (j == top || msm.memberships(i, j) >= threshold) clusters[j].push_back(static_cast<Vertex>(i));
        }
    }
    return clusters;
}

void write_memberships_csv(std::ostream& out, const Graph& g, const MembershipMatrix& msm) {
    out << "vertex";
    for (std::size_t j = 0; j < msm.memberships.cols(); ++j) out << ",m" << j;
    out << '\n';
    for (std::size_t i = 0; i < msm.memberships.rows(); ++i) {
        out << g.label(static_cast<Vertex>(i));
        for (std::size_t j = 0; j < msm.memberships.cols(); ++j) out << ',' << format_double(msm.memberships(i, j));
        out << '\n';
    }
}

}  // namespace lgc
