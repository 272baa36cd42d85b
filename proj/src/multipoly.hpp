#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace mz {

// d-variate polynomial of total degree <= n in a tensor Chebyshev basis
// rescaled to a bounding box. Coefficients are indexed by multi-indices
// kappa with |kappa| <= n, enumerated in odometer order (last axis fastest).
class MultiPoly final : public ScalarField {
public:
    MultiPoly(int dim, int degree, Box box);

    static std::size_t coeff_count(int dim, int degree);

    // iid standard normal coefficients ("gauss-cheb" ensemble); deterministic
    // for a fixed seed and platform.
    static MultiPoly random(int dim, int degree, std::uint64_t seed, Box box);

    int dim() const override { return dim_; }
    int degree() const { return degree_; }
    const Box& box() const { return box_; }

    double& coeff(std::size_t flat) { return coeffs_[flat]; }
    const Vec& coeffs() const { return coeffs_; }
    const std::vector<std::vector<int>>& exponents() const { return exps_; }

    // Sets the coefficient of a given multi-index.
    void set_coeff(const std::vector<int>& kappa, double value);

    double value(std::span<const double> pt) const override;
    double value_grad(std::span<const double> pt, std::span<double> grad) const override;

    void scale(double factor);

    nlohmann::ordered_json to_json() const;
    static MultiPoly from_json(const nlohmann::json& j);

private:
    int dim_, degree_;
    Box box_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> flat_exps_;  // dim_ entries per coefficient, hot path
    Vec coeffs_;

    void eval_tables(std::span<const double> pt, Vec& t, Vec* dt) const;
};

// Univariate Chebyshev polynomial T_k on [-1,1]: (value, derivative).
std::pair<double, double> chebyshev_t(int k, double x);

}  // namespace mz
