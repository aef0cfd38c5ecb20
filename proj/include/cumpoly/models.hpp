#pragma once

// Cumulant tables of concrete models and the transforms built on them:
// Gaussian vectors, Merton jump diffusion, common-clock variance gamma,
// multivariate Hermite polynomials, natural exponential families and Sheffer
// sequences. All parameters are exact rationals.

#include <cstddef>
#include <vector>

#include <cumpoly/cumulants.hpp>
#include <cumpoly/poly.hpp>
#include <cumpoly/rational.hpp>
#include <cumpoly/series.hpp>

namespace cumpoly
{

using RationalMatrix = std::vector<std::vector<Rational>>;

struct GaussianSpec {
    std::vector<Rational> mean;
    RationalMatrix covariance;

    std::size_t dim() const noexcept
    {
        return mean.size();
    }
    // Throws std::invalid_argument for non-square or non-symmetric covariance.
    void validate() const;
};

struct MertonSpec {
    std::vector<Rational> drift;
    RationalMatrix covariance;
    Rational intensity;
    GaussianSpec jump;
    Rational horizon;

    std::size_t dim() const noexcept
    {
        return drift.size();
    }
    void validate() const;
};

struct VGSpec {
    Rational time;
    Rational nu;
    std::vector<Rational> drift;
    RationalMatrix covariance;

    std::size_t dim() const noexcept
    {
        return drift.size();
    }
    void validate() const;
};

// First-order entries are the mean, second-order entries the covariance
// (c_{2e_r} = Sigma_rr, c_{e_r+e_s} = Sigma_rs), everything else zero.
SequenceTable<Rational> gaussian_cumulants(const GaussianSpec &spec, unsigned order);

// Per-unit-time cumulants <m,z> + <z,z Sigma>/2 + lambda (M_Y(z) - 1).
SequenceTable<Rational> merton_unit_cumulants(const MertonSpec &spec, unsigned order);
// Cumulants of X_t: the unit table times t.
SequenceTable<Rational> merton_cumulants(const MertonSpec &spec, unsigned order);
SequenceTable<Rational> merton_moments(const MertonSpec &spec, unsigned order);

// Cumulants (t/nu) (i-1)! of the subordinator umbra with gf 1 - (t/nu) log(1 - z).
SequenceTable<Rational> vg_outer_cumulants(const Rational &time, const Rational &nu, unsigned order);
// Cumulants of the Gaussian N(theta nu, Sigma nu) fed into the outer table.
SequenceTable<Rational> vg_inner_cumulants(const VGSpec &spec, unsigned order);
SequenceTable<Rational> vg_cumulants(const VGSpec &spec, unsigned order);
SequenceTable<Rational> vg_moments(const VGSpec &spec, unsigned order);

// H_i(y, Sigma): coefficient of z^i/i! in exp(<y,z> - <z,z Sigma>/2), as a
// polynomial in y_1..y_d.
Poly hermite(const MultiIndex &i, const RationalMatrix &covariance);

// Coefficients of F_X(theta) = exp{<theta,x> - K_X(theta)} in theta.
TruncatedSeries<Rational> nef_series(const std::vector<Rational> &x, const SequenceTable<Rational> &cumulants);

struct ShiftedTable {
    SequenceTable<Rational> table;
    int exact_order; // see ShiftResult
};

// Taylor re-centering of the table's generating function at theta:
// f(k_theta, z) = 1 + f(k, z + theta) - f(k, theta).
ShiftedTable shifted_cumulants(const SequenceTable<Rational> &c, const std::vector<Rational> &theta,
                               bool exactly_representable = false);

// Coefficients of exp{K~(theta) + K(theta)}.
SequenceTable<Rational> sheffer_coefficients(const SequenceTable<Rational> &c_tilde, const SequenceTable<Rational> &c);

} // namespace cumpoly
