#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lgc/diffusion.hpp"
#include "lgc/graph.hpp"

namespace lgc {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Vertex embedding: column j holds the converged diffusion mass seeded at centers[j].
struct EmbeddingMatrix {
    DenseMatrix values;  ///< n x D
    std::vector<Vertex> centers;
};

/// Runs one diffusion per centre (concurrently under OpenMP) and densifies the results.
EmbeddingMatrix build_embedding(const Graph& g, std::span<const Vertex> centers, const DiffusionConfig& cfg);

/// Each row scaled to sum 1: a vertex's relative affinity to the centres.
/// Rows that are entirely zero stay zero.
DenseMatrix affinity_rows(const DenseMatrix& values);

enum class FcmKernel { serial, parallel };

struct FcmConfig {
    std::size_t k = 2;
    double fuzzifier = 2.0;
    double tolerance = 1e-9;
    std::size_t max_iterations = 300;
    std::uint64_t rng_seed = 0;
    /// Independent initialisations; the lowest final objective wins.
    std::size_t restarts = 1;
    FcmKernel kernel = FcmKernel::serial;

    void validate() const;
};

struct MembershipMatrix {
    DenseMatrix memberships;  ///< n x k, rows sum to 1
    DenseMatrix centers;      ///< k x D
    double fuzzifier = 2.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Objective after every completed membership+centre update.
    std::vector<double> objective_history;

    double objective() const { return objective_history.empty() ? 0.0 : objective_history.back(); }
    std::size_t argmax(std::size_t row) const;
};

/// F_m = sum_i sum_j u_ij^m ||x_i - c_j||^2
double fcm_objective(const DenseMatrix& points, const MembershipMatrix& msm);

/// Membership update for fixed centres. A point sitting exactly on a centre gets
/// membership 1 there (the first such centre) and 0 elsewhere.
void update_memberships(const DenseMatrix& points, const DenseMatrix& centers, double fuzzifier,
                        DenseMatrix& memberships, FcmKernel kernel = FcmKernel::serial);
/// Centre update for fixed memberships: c_j = sum_i u_ij^m x_i / sum_i u_ij^m.
void update_centers(const DenseMatrix& points, const DenseMatrix& memberships, double fuzzifier,
                    DenseMatrix& centers, FcmKernel kernel = FcmKernel::serial);

/// Alternating optimisation from explicit initial centres.
MembershipMatrix fcm_fit_from(const DenseMatrix& points, DenseMatrix initial_centers, const FcmConfig& cfg);

/// Alternating optimisation from k distinct rows drawn with cfg.rng_seed.
MembershipMatrix fcm_fit(const DenseMatrix& points, const FcmConfig& cfg);

/// Vertex u joins every cluster j with u_uj >= threshold, and always its argmax.
/// threshold must lie in (0, 0.5].
std::vector<std::vector<Vertex>> overlap_report(const MembershipMatrix& msm, double threshold);

/// CSV: `vertex,m0,m1,...` one row per vertex.
void write_memberships_csv(std::ostream& out, const Graph& g, const MembershipMatrix& msm);

}  // namespace lgc
