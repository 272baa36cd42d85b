#pragma once

#include <functional>
#include <optional>
#include <string>

#include "common.hpp"

namespace mz {

// Boundary function g : base_box subset R^{d-1} -> R together with its
// smoothness certificate: the gradient is hoelder_L-Hoelder of exponent
// alpha-1 on base_box. When a Hessian is attached the function is certified
// C^2 and m_cert = ||g''||_inf + 18.
class AlphaGraphFunction {
public:
    using EvalFn = std::function<double(std::span<const double>)>;
    using GradFn = std::function<Vec(std::span<const double>)>;
    using HessFn = std::function<Vec(std::span<const double>)>;  // row-major (d-1)x(d-1)

    AlphaGraphFunction(EvalFn eval, GradFn grad, double alpha, double hoelder_L, Box base_box)
        : eval_(std::move(eval)),
          grad_(std::move(grad)),
          alpha_(alpha),
          hoelder_L_(hoelder_L),
          base_box_(std::move(base_box)) {
        if (!(alpha_ >= 1.0 && alpha_ <= 2.0)) throw ConfigError("alpha must lie in [1,2]");
        if (!(hoelder_L_ > 1.0)) throw ConfigError("Hoelder constant must exceed 1");
    }

    void certify_c2(HessFn hess, double sup_second_deriv) {
        hess_ = std::move(hess);
        m_cert_ = sup_second_deriv + 18.0;
    }

    double operator()(std::span<const double> x) const { return eval_(x); }
    Vec gradient(std::span<const double> x) const { return grad_(x); }
    Vec hessian(std::span<const double> x) const {
        if (!hess_) throw DomainError("function carries no C^2 certificate");
        return hess_(x);
    }

    bool is_c2() const { return static_cast<bool>(hess_); }
    // M = ||g''||_inf + 18 of the C^2 construction.
    double m_cert() const {
        if (!m_cert_) throw DomainError("function carries no C^2 certificate");
        return *m_cert_;
    }

    double alpha() const { return alpha_; }
    double hoelder_L() const { return hoelder_L_; }
    const Box& base_box() const { return base_box_; }
    int base_dim() const { return base_box_.dim(); }

    // Convenience for the univariate case (d = 2).
    double at(double x) const {
        double p[1] = {x};
        return eval_(std::span<const double>(p, 1));
    }
    double deriv_at(double x) const {
        double p[1] = {x};
        return grad_(std::span<const double>(p, 1))[0];
    }
    double second_deriv_at(double x) const {
        double p[1] = {x};
        return hessian(std::span<const double>(p, 1))[0];
    }

private:
    EvalFn eval_;
    GradFn grad_;
    HessFn hess_;
    double alpha_;
    double hoelder_L_;
    Box base_box_;
    std::optional<double> m_cert_;
};

// Model library, addressable by string id in the CLI and configs:
//   "quad"      g(x) = 1 - |x|^2/2          (C^2, alpha = 2)
//   "alpha:A"   g(x) = 1 - sum |x_i|^A      (exactly C^A at 0, 1 < A <= 2)
//   "trig"      g(x) = (1/4) sum cos(pi x_i) (C^inf, certified as alpha = 2)
// dim is the ambient dimension d; the base has d-1 variables.
AlphaGraphFunction make_model_function(const std::string& id, int dim);

bool is_model_id(const std::string& id);

// Steklov transform g_delta(x) = (1/4 delta^2) int_{[-delta,delta]^2}
// g(x+u+v) du dv (univariate base only). The value uses the equivalent
// triangular-kernel form, the gradient averages g', and the second
// derivative uses the divided-difference identity
//   g_delta''(x) = (1/4 delta^2) int_{-delta}^{delta} [g'(x+u+delta) - g'(x+u-delta)] du,
// so the delta^{alpha-2} growth of ||g_delta''|| stays observable. The
// output box shrinks by 2 delta per side and the result is C^2-certified.
AlphaGraphFunction steklov_transform(const AlphaGraphFunction& g, double delta,
                                     int panels = 24, int panel_order = 10);

// Solves C~ L delta^alpha = b/8 for delta (the Lemma that picks the smoothing
// scale from a layer width b). c_tilde is a config input; nothing at run time
// depends on its exact value.
double steklov_delta_for_budget(double b, double hoelder_L, double alpha, double c_tilde = 1.0);

}  // namespace mz
