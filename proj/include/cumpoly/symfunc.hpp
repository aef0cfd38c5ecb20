#pragma once

// Power-sum expressions, elementary symmetric polynomials in the exponential
// convention, and cumulants of diagonal random matrices.

#include <string>
#include <vector>

#include <cumpoly/cumulants.hpp>
#include <cumpoly/poly.hpp>
#include <cumpoly/rational.hpp>

namespace cumpoly
{

// A polynomial in the formal power sums s_1, s_2, ...
class PowerSumExpr
{
public:
    PowerSumExpr() = default;
    explicit PowerSumExpr(Poly p) : poly_(std::move(p)) {}

    static std::string symbol(unsigned j)
    {
        return "s_" + std::to_string(j);
    }

    const Poly &poly() const noexcept
    {
        return poly_;
    }
    // Substitutes s_j = y_1^j + ... + y_n^j.
    Poly expand(unsigned n) const;

    friend bool operator==(const PowerSumExpr &, const PowerSumExpr &) = default;

private:
    Poly poly_;
};

// The symmetric power sum y_1^j + ... + y_n^j.
Poly power_sum(unsigned j, unsigned n, const std::string &stem = "y");

struct WeightedSumMoment {
    PowerSumExpr power_sums;
    Poly expanded;
};

// E[(X_1 y_1 + ... + X_n y_n)^i] for i.i.d. X_k with cumulants c.
WeightedSumMoment weighted_sum_moment(unsigned i, const SequenceTable<Poly> &c, unsigned n);
WeightedSumMoment weighted_sum_moment(unsigned i, const SequenceTable<Rational> &c, unsigned n);

// Same quantity from the multivariate machinery: the i-th moment of <X, y>
// with X having independent coordinates, as a polynomial in y_1..y_n.
Poly weighted_sum_moment_direct(unsigned i, const SequenceTable<Poly> &c, unsigned n);

// c_k = (-1)^{k-1} (k-1)!: cumulants of the compositional inverse of the
// Bell umbra, with gf log(1 + z).
SequenceTable<Rational> inverse_bell_cumulants(unsigned order);

struct ElementarySymmetric {
    // Entry k is e_k for k = 0..order with sum e_k z^k / k! = prod_j (1 + y_j z).
    std::vector<Poly> direct;
    std::vector<Poly> via_power_sums;
    bool agree = false;
};

ElementarySymmetric elementary_symmetric(unsigned n, unsigned order);

struct TraceMomentTable {
    unsigned n = 1;
    // moments[k] = E[(Tr A)^{k+1}].
    std::vector<Rational> moments;

    unsigned order() const noexcept
    {
        return static_cast<unsigned>(moments.size());
    }
    friend bool operator==(const TraceMomentTable &, const TraceMomentTable &) = default;
};

// E[(Tr A)^i] = C_{i,A}(n) for i = 1..order.
TraceMomentTable trace_moments_from_matrix_cumulants(const SequenceTable<Rational> &c_a, unsigned n, unsigned order);
// Inverse: cumulants of Tr A divided by n.
SequenceTable<Rational> matrix_cumulants_from_trace_moments(const TraceMomentTable &tm);

struct SamplingInvariance {
    SequenceTable<Rational> population; // recovered with dimension n
    SequenceTable<Rational> sample;     // recovered with dimension m
    bool pass = false;
};

// Diagonal matrices of n i.i.d. entries and of an m-subsample have the same
// matrix cumulants.
SamplingInvariance sampling_invariance_check(const SequenceTable<Rational> &c_x, unsigned n, unsigned m,
                                             unsigned order);

} // namespace cumpoly
