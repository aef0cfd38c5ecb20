#include <cumpoly/models.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace cumpoly
{

namespace
{

void validate_covariance(const RationalMatrix &cov, std::size_t dim, const char *what)
{
    if (cov.size() != dim) {
        throw std::invalid_argument(std::string(what) + ": covariance must be " + std::to_string(dim) + "x" +
                                    std::to_string(dim));
    }
    for (std::size_t r = 0; r < dim; ++r) {
        if (cov[r].size() != dim) {
            throw std::invalid_argument(std::string(what) + ": covariance must be square");
        }
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t s = r + 1; s < dim; ++s) {
            if (cov[r][s] != cov[s][r]) {
                throw std::invalid_argument(std::string(what) + ": covariance is not symmetric");
            }
        }
    }
}

SequenceTable<Rational> scaled_entries(const SequenceTable<Rational> &c, const Rational &factor)
{
    return SequenceTable<Rational>::from_series(c.kind(), series_scale(factor, c.delta_series()));
}

} // namespace

void GaussianSpec::validate() const
{
    if (mean.empty()) {
        throw std::invalid_argument("gaussian: dimension must be >= 1");
    }
    validate_covariance(covariance, mean.size(), "gaussian");
}

void MertonSpec::validate() const
{
    if (drift.empty()) {
        throw std::invalid_argument("merton: dimension must be >= 1");
    }
    validate_covariance(covariance, drift.size(), "merton");
    jump.validate();
    if (jump.dim() != drift.size()) {
        throw std::invalid_argument("merton: jump law dimension mismatch");
    }
    if (intensity < 0) {
        throw std::invalid_argument("merton: intensity must be >= 0");
    }
    if (horizon < 0) {
        throw std::invalid_argument("merton: horizon must be >= 0");
    }
}

void VGSpec::validate() const
{
    if (drift.empty()) {
        throw std::invalid_argument("vg: dimension must be >= 1");
    }
    validate_covariance(covariance, drift.size(), "vg");
    if (nu == 0) {
        throw std::invalid_argument("vg: nu must be non-zero");
    }
    if (time < 0) {
        throw std::invalid_argument("vg: time must be >= 0");
    }
}

SequenceTable<Rational> gaussian_cumulants(const GaussianSpec &spec, unsigned order)
{
    spec.validate();
    const std::size_t d = spec.dim();
    SequenceTable<Rational> t(TableKind::cumulant, d, order);
    if (order >= 1) {
        for (std::size_t r = 0; r < d; ++r) {
            t.set(MultiIndex::unit(d, r), spec.mean[r]);
        }
    }
    if (order >= 2) {
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t s = r; s < d; ++s) {
                t.set(MultiIndex::unit(d, r) + MultiIndex::unit(d, s), spec.covariance[r][s]);
            }
        }
    }
    return t;
}

SequenceTable<Rational> merton_unit_cumulants(const MertonSpec &spec, unsigned order)
{
    spec.validate();
    const auto diffusion = gaussian_cumulants(GaussianSpec{spec.drift, spec.covariance}, order);
    const auto jump_moments = moments_from_cumulants(gaussian_cumulants(spec.jump, order));
    TruncatedSeries<Rational> k = diffusion.delta_series();
    for (const auto &[i, m] : jump_moments.series().coefficients()) {
        if (!i.is_zero()) {
            k.add(i, spec.intensity * m);
        }
    }
    return SequenceTable<Rational>::from_series(TableKind::cumulant, std::move(k));
}

SequenceTable<Rational> merton_cumulants(const MertonSpec &spec, unsigned order)
{
    return scaled_entries(merton_unit_cumulants(spec, order), spec.horizon);
}

SequenceTable<Rational> merton_moments(const MertonSpec &spec, unsigned order)
{
    return moments_from_cumulants(merton_cumulants(spec, order));
}

SequenceTable<Rational> vg_outer_cumulants(const Rational &time, const Rational &nu, unsigned order)
{
    if (nu == 0) {
        throw std::invalid_argument("vg: nu must be non-zero");
    }
    SequenceTable<Rational> g(TableKind::cumulant, 1, order);
    const Rational rate = time / nu;
    for (unsigned j = 1; j <= order; ++j) {
        g.set(MultiIndex{j}, rate * Rational(factorial(j - 1)));
    }
    return g;
}

SequenceTable<Rational> vg_inner_cumulants(const VGSpec &spec, unsigned order)
{
    spec.validate();
    GaussianSpec inner{spec.drift, spec.covariance};
    for (auto &m : inner.mean) {
        m *= spec.nu;
    }
    for (auto &row : inner.covariance) {
        for (auto &v : row) {
            v *= spec.nu;
        }
    }
    return gaussian_cumulants(inner, order);
}

SequenceTable<Rational> vg_cumulants(const VGSpec &spec, unsigned order)
{
    return random_sum_cumulants(vg_outer_cumulants(spec.time, spec.nu, order), vg_inner_cumulants(spec, order));
}

SequenceTable<Rational> vg_moments(const VGSpec &spec, unsigned order)
{
    return moments_from_cumulants(vg_cumulants(spec, order));
}

Poly hermite(const MultiIndex &i, const RationalMatrix &covariance)
{
    const std::size_t d = i.dim();
    const auto gauss = ring_cast<Poly>(gaussian_cumulants(GaussianSpec{std::vector<Rational>(d, 0), covariance},
                                                          std::max(i.degree(), 2U)));
    // Degenerate vector with K(z) = <y, z>.
    SequenceTable<Poly> linear(TableKind::cumulant, d, std::max(i.degree(), 1U));
    for (std::size_t r = 0; r < d; ++r) {
        linear.set(MultiIndex::unit(d, r), Poly::variable("y_" + std::to_string(r + 1)));
    }
    const Poly p = multivariable_cumulant_polynomial(i, std::vector<SequenceTable<Poly>>{linear, gauss},
                                                     {"@u_1", "@u_2"});
    return p.evaluate(std::map<std::string, Rational>{{"@u_1", Rational(1)}, {"@u_2", Rational(-1)}});
}

TruncatedSeries<Rational> nef_series(const std::vector<Rational> &x, const SequenceTable<Rational> &cumulants)
{
    if (x.size() != cumulants.dim()) {
        throw DimensionMismatch("nef_series: x has " + std::to_string(x.size()) + " coordinates, table has dimension " +
                                std::to_string(cumulants.dim()));
    }
    // Cumulant table of <theta, x> - K_X(theta).
    SequenceTable<Rational> shifted = scaled_entries(cumulants, Rational(-1));
    if (cumulants.order() >= 1) {
        for (std::size_t r = 0; r < x.size(); ++r) {
            const auto e = MultiIndex::unit(x.size(), r);
            shifted.set(e, x[r] + shifted[e]);
        }
    }
    return moments_from_cumulants(shifted).series();
}

ShiftedTable shifted_cumulants(const SequenceTable<Rational> &c, const std::vector<Rational> &theta,
                               bool exactly_representable)
{
    auto shifted = series_shift(c.delta_series(), theta, exactly_representable);
    return {SequenceTable<Rational>::from_series(c.kind(), std::move(shifted.series)), shifted.exact_order};
}

SequenceTable<Rational> sheffer_coefficients(const SequenceTable<Rational> &c_tilde, const SequenceTable<Rational> &c)
{
    return moments_from_cumulants(convolve_cumulant_tables<Rational>({c_tilde, c}));
}

} // namespace cumpoly
