#include <cumpoly/mc.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <cumpoly/symfunc.hpp>

namespace cumpoly::mc
{

namespace
{

using Matrix = std::vector<std::vector<double>>;
using Rng = std::mt19937_64;

Matrix to_double(const RationalMatrix &m)
{
    Matrix out(m.size());
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (const auto &v : m[r]) {
            out[r].push_back(cumpoly::to_double(v));
        }
    }
    return out;
}

std::vector<double> to_double(const std::vector<Rational> &v)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto &x : v) {
        out.push_back(cumpoly::to_double(x));
    }
    return out;
}

// x += scale * L z with fresh standard normals z.
void add_correlated_normal(std::vector<double> &x, const Matrix &l, double scale, Rng &rng,
                           std::normal_distribution<double> &normal)
{
    if (scale == 0) {
        return;
    }
    const std::size_t d = x.size();
    thread_local std::vector<double> z;
    z.resize(d);
    for (auto &v : z) {
        v = normal(rng);
    }
    for (std::size_t r = 0; r < d; ++r) {
        double acc = 0;
        for (std::size_t s = 0; s <= r; ++s) {
            acc += l[r][s] * z[s];
        }
        x[r] += scale * acc;
    }
}

std::uint64_t poisson(double mean, Rng &rng)
{
    if (mean <= 0) {
        return 0;
    }
    return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

// One draw of the model's state vector.
class Sampler
{
public:
    explicit Sampler(const ModelSpec &model) : model_(model)
    {
        std::visit([this](const auto &m) { prepare(m); }, model_);
    }

    std::size_t dim() const noexcept
    {
        return dim_;
    }

    void draw(std::vector<double> &x, Rng &rng)
    {
        std::normal_distribution<double> normal;
        x.assign(dim_, 0.0);
        std::visit([&](const auto &m) { draw_from(m, x, rng, normal); }, model_);
    }

private:
    void prepare(const MertonSpec &m)
    {
        m.validate();
        dim_ = m.dim();
        chol_ = cholesky(to_double(m.covariance));
        chol_jump_ = cholesky(to_double(m.jump.covariance));
        mean_ = to_double(m.drift);
        jump_mean_ = to_double(m.jump.mean);
        horizon_ = cumpoly::to_double(m.horizon);
        rate_ = cumpoly::to_double(m.intensity) * horizon_;
    }
    void prepare(const VGSpec &m)
    {
        m.validate();
        if (m.nu < 0) {
            throw std::invalid_argument("vg: nu must be > 0 for simulation");
        }
        dim_ = m.dim();
        chol_ = cholesky(to_double(m.covariance));
        mean_ = to_double(m.drift);
        shape_ = cumpoly::to_double(m.time / m.nu);
        scale_ = cumpoly::to_double(m.nu);
    }
    void prepare(const RandomSumSpec &m)
    {
        m.summand.validate();
        if (m.intensity < 0) {
            throw std::invalid_argument("random sum: intensity must be >= 0");
        }
        dim_ = m.summand.dim();
        chol_jump_ = cholesky(to_double(m.summand.covariance));
        jump_mean_ = to_double(m.summand.mean);
        rate_ = cumpoly::to_double(m.intensity);
    }
    void prepare(const MatrixSpec &m)
    {
        if (m.n == 0) {
            throw std::invalid_argument("matrix: n must be >= 1");
        }
        if (m.variance < 0) {
            throw std::invalid_argument("matrix: variance must be >= 0");
        }
        dim_ = 1;
        mean_ = {cumpoly::to_double(m.mean)};
        scale_ = std::sqrt(cumpoly::to_double(m.variance));
    }

    // A sum of k i.i.d. N(mu, S) vectors is N(k mu, k S).
    void add_jumps(std::vector<double> &x, std::uint64_t k, Rng &rng, std::normal_distribution<double> &normal)
    {
        if (k == 0) {
            return;
        }
        const double kd = static_cast<double>(k);
        for (std::size_t r = 0; r < dim_; ++r) {
            x[r] += kd * jump_mean_[r];
        }
        add_correlated_normal(x, chol_jump_, std::sqrt(kd), rng, normal);
    }

    void draw_from(const MertonSpec &, std::vector<double> &x, Rng &rng, std::normal_distribution<double> &normal)
    {
        for (std::size_t r = 0; r < dim_; ++r) {
            x[r] = mean_[r] * horizon_;
        }
        add_correlated_normal(x, chol_, std::sqrt(horizon_), rng, normal);
        add_jumps(x, poisson(rate_, rng), rng, normal);
    }
    void draw_from(const VGSpec &, std::vector<double> &x, Rng &rng, std::normal_distribution<double> &normal)
    {
        const double g = shape_ > 0 ? std::gamma_distribution<double>(shape_, scale_)(rng) : 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            x[r] = mean_[r] * g;
        }
        add_correlated_normal(x, chol_, std::sqrt(g), rng, normal);
    }
    void draw_from(const RandomSumSpec &, std::vector<double> &x, Rng &rng,
                   std::normal_distribution<double> &normal)
    {
        add_jumps(x, poisson(rate_, rng), rng, normal);
    }
    void draw_from(const MatrixSpec &m, std::vector<double> &x, Rng &rng, std::normal_distribution<double> &normal)
    {
        double trace = 0;
        for (unsigned k = 0; k < m.n; ++k) {
            trace += mean_[0] + scale_ * normal(rng);
        }
        x[0] = trace;
    }

    ModelSpec model_;
    std::size_t dim_ = 0;
    Matrix chol_, chol_jump_;
    std::vector<double> mean_, jump_mean_;
    double horizon_ = 0, rate_ = 0, shape_ = 0, scale_ = 0;
};

} // namespace

Matrix cholesky(const Matrix &a)
{
    const std::size_t d = a.size();
    double scale = 0;
    for (const auto &row : a) {
        if (row.size() != d) {
            throw std::invalid_argument("cholesky: matrix must be square");
        }
        for (double v : row) {
            scale = std::max(scale, std::abs(v));
        }
    }
    const double tol = 1e-12 * std::max(scale, 1.0);
    Matrix l(d, std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        double diag = a[j][j];
        for (std::size_t k = 0; k < j; ++k) {
            diag -= l[j][k] * l[j][k];
        }
        if (diag < -tol) {
            throw std::invalid_argument("covariance matrix is not positive semidefinite");
        }
        const bool degenerate = diag <= tol;
        l[j][j] = degenerate ? 0.0 : std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = a[i][j];
            for (std::size_t k = 0; k < j; ++k) {
                v -= l[i][k] * l[j][k];
            }
            if (degenerate) {
                if (std::abs(v) > tol) {
                    throw std::invalid_argument("covariance matrix is not positive semidefinite");
                }
                l[i][j] = 0.0;
            } else {
                l[i][j] = v / l[j][j];
            }
        }
    }
    return l;
}

std::size_t model_dim(const ModelSpec &model)
{
    return std::visit(
        [](const auto &m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandomSumSpec>) {
                return m.summand.dim();
            } else if constexpr (std::is_same_v<T, MatrixSpec>) {
                return 1;
            } else {
                return m.dim();
            }
        },
        model);
}

std::string model_name(const ModelSpec &model)
{
    static const char *names[] = {"merton", "vg", "randsum", "matrix"};
    return names[model.index()];
}

std::vector<MomentEstimate> simulate_moments(const SampleSpec &spec)
{
    if (spec.samples == 0) {
        throw std::invalid_argument("simulate_moments: sample count must be >= 1");
    }
    if (spec.order == 0) {
        throw std::invalid_argument("simulate_moments: order must be >= 1");
    }
    const Sampler prototype(spec.model);
    const std::size_t d = prototype.dim();
    const auto indices = indices_up_to(d, spec.order, 1);
    const std::size_t n_idx = indices.size();

    const std::uint64_t batches = std::min<std::uint64_t>(batch_count, spec.samples);
    std::vector<std::vector<double>> sums(batches, std::vector<double>(n_idx, 0.0));
    std::vector<std::uint64_t> sizes(batches);
    for (std::uint64_t b = 0; b < batches; ++b) {
        sizes[b] = spec.samples / batches + (b < spec.samples % batches ? 1 : 0);
    }

    auto run_batch = [&](std::uint64_t b) {
        Sampler sampler = prototype;
        std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                          static_cast<std::uint32_t>(b)};
        Rng rng(seq);
        std::vector<double> x;
        std::vector<std::vector<double>> powers(d, std::vector<double>(spec.order + 1, 1.0));
        auto &acc = sums[b];
        for (std::uint64_t s = 0; s < sizes[b]; ++s) {
            sampler.draw(x, rng);
            for (std::size_t r = 0; r < d; ++r) {
                for (unsigned k = 1; k <= spec.order; ++k) {
                    powers[r][k] = powers[r][k - 1] * x[r];
                }
            }
            for (std::size_t q = 0; q < n_idx; ++q) {
                double v = 1.0;
                for (std::size_t r = 0; r < d; ++r) {
                    v *= powers[r][indices[q][r]];
                }
                acc[q] += v;
            }
        }
    };

    unsigned threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint64_t b = next++; b < batches; b = next++) {
                    run_batch(b);
                }
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    std::vector<MomentEstimate> out;
    out.reserve(n_idx);
    for (std::size_t q = 0; q < n_idx; ++q) {
        double total = 0;
        for (std::uint64_t b = 0; b < batches; ++b) {
            total += sums[b][q];
        }
        const double mean = total / static_cast<double>(spec.samples);
        double var = 0;
        for (std::uint64_t b = 0; b < batches; ++b) {
            const double dev = sums[b][q] / static_cast<double>(sizes[b]) - mean;
            var += dev * dev;
        }
        const double se = batches > 1 ? std::sqrt(var / static_cast<double>(batches - 1) / static_cast<double>(batches))
                                       : 0.0;
        out.push_back({indices[q], mean, se, spec.samples});
    }
    return out;
}

SequenceTable<Rational> symbolic_moments(const ModelSpec &model, unsigned order)
{
    return std::visit(
        [order](const auto &m) -> SequenceTable<Rational> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MertonSpec>) {
                return merton_moments(m, order);
            } else if constexpr (std::is_same_v<T, VGSpec>) {
                return vg_moments(m, order);
            } else if constexpr (std::is_same_v<T, RandomSumSpec>) {
                return moments_from_cumulants(
                    random_sum_cumulants(poisson_cumulants(m.intensity, order), gaussian_cumulants(m.summand, order)));
            } else {
                const auto entry = gaussian_cumulants(GaussianSpec{{m.mean}, {{m.variance}}}, order);
                const auto tm = trace_moments_from_matrix_cumulants(entry, m.n, order);
                return SequenceTable<Rational>::univariate(TableKind::moment, tm.moments);
            }
        },
        model);
}

bool ComparisonReport::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow &r) { return r.pass; });
}

ComparisonReport compare(const SequenceTable<Rational> &symbolic, const std::vector<MomentEstimate> &empirical,
                         double k)
{
    if (!(k > 0)) {
        throw std::invalid_argument("compare: k must be positive");
    }
    if (empirical.empty()) {
        throw std::invalid_argument("compare: no estimates");
    }
    ComparisonReport report;
    report.k = k;
    for (const auto &e : empirical) {
        if (e.index.dim() != symbolic.dim() || e.index.degree() > symbolic.order() || e.index.is_zero()) {
            throw std::out_of_range("compare: symbolic table has no entry at index " + e.index.to_string());
        }
        ComparisonRow row{e.index, symbolic[e.index], e.estimate, e.se, false};
        const double target = cumpoly::to_double(row.symbolic);
        const double slack = 1e-12 * std::max(1.0, std::abs(target));
        row.pass = std::isfinite(e.estimate) && std::abs(target - e.estimate) <= k * e.se + slack;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace cumpoly::mc
