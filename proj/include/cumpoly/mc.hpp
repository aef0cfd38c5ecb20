#pragma once

// Seeded Monte Carlo estimates of mixed moments, used as an independent check
// on the exact tables. Floating point is confined to this module.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <cumpoly/cumulants.hpp>
#include <cumpoly/models.hpp>

namespace cumpoly::mc
{

// S = Y_1 + ... + Y_N with N ~ Poisson(intensity) and Gaussian Y_j.
struct RandomSumSpec {
    Rational intensity;
    GaussianSpec summand;
};

// Tr A for a diagonal n x n matrix with i.i.d. N(mean, variance) entries.
struct MatrixSpec {
    unsigned n = 1;
    Rational mean;
    Rational variance;
};

using ModelSpec = std::variant<MertonSpec, VGSpec, RandomSumSpec, MatrixSpec>;

struct SampleSpec {
    ModelSpec model;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    unsigned order = 4;
    // 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct MomentEstimate {
    MultiIndex index;
    double estimate = 0;
    double se = 0;
    std::uint64_t samples = 0;
};

inline constexpr unsigned batch_count = 100;

std::size_t model_dim(const ModelSpec &model);
std::string model_name(const ModelSpec &model);

// Raw mixed moments of every index with 1 <= |i| <= order, graded-lex order.
// Standard errors come from batch means over `batch_count` batches, each
// batch drawing from its own generator seeded by (seed, batch).
std::vector<MomentEstimate> simulate_moments(const SampleSpec &spec);

// The exact moment table the simulation targets.
SequenceTable<Rational> symbolic_moments(const ModelSpec &model, unsigned order);

struct ComparisonRow {
    MultiIndex index;
    Rational symbolic;
    double estimate = 0;
    double se = 0;
    bool pass = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double k = 4;
    bool all_pass() const;
};

// Passes an index when |symbolic - estimate| <= k * se.
ComparisonReport compare(const SequenceTable<Rational> &symbolic, const std::vector<MomentEstimate> &empirical,
                         double k);

// Lower-triangular L with L L^T = a; throws std::invalid_argument when a is
// not positive semidefinite.
std::vector<std::vector<double>> cholesky(const std::vector<std::vector<double>> &a);

} // namespace cumpoly::mc
