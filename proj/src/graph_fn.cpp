#include "graph_fn.hpp"

#include <cmath>

#include "gauss.hpp"

namespace mz {

namespace {

constexpr double kPi = 3.14159265358979323846;

AlphaGraphFunction make_quad(int base_dim) {
    auto eval = [](std::span<const double> x) {
        return 1.0 - 0.5 * norm2sq(x);
    };
    auto grad = [base_dim](std::span<const double> x) {
        Vec g(base_dim);
        for (int i = 0; i < base_dim; ++i) g[i] = -x[i];
        return g;
    };
    AlphaGraphFunction f(eval, grad, 2.0, 1.25, Box::cube(-8.0, 8.0, base_dim));
    auto hess = [base_dim](std::span<const double>) {
        Vec h(base_dim * base_dim, 0.0);
        for (int i = 0; i < base_dim; ++i) h[i * base_dim + i] = -1.0;
        return h;
    };
    f.certify_c2(hess, 1.0);
    return f;
}

AlphaGraphFunction make_alpha(int base_dim, double a) {
    if (!(a > 1.0 && a <= 2.0)) throw ConfigError("alpha model requires exponent in (1,2]");
    auto eval = [a](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += std::pow(std::abs(xi), a);
        return 1.0 - s;
    };
    auto grad = [a, base_dim](std::span<const double> x) {
        Vec g(base_dim);
        for (int i = 0; i < base_dim; ++i) {
            double xi = x[i];
            g[i] = xi == 0.0 ? 0.0 : -a * std::copysign(std::pow(std::abs(xi), a - 1.0), xi);
        }
        return g;
    };
    // Per component |s(u)-s(v)| <= 2^{2-a} |u-v|^{a-1} for s(u) = sign(u)|u|^{a-1};
    // the Euclidean norm over d-1 components adds (d-1)^{(2-a)/2}.
    double L = a * std::pow(2.0, 2.0 - a) * std::pow(double(base_dim), (2.0 - a) / 2.0);
    AlphaGraphFunction f(eval, grad, a, L, Box::cube(-8.0, 8.0, base_dim));
    if (a == 2.0) {
        auto hess = [base_dim](std::span<const double>) {
            Vec h(base_dim * base_dim, 0.0);
            for (int i = 0; i < base_dim; ++i) h[i * base_dim + i] = -2.0;
            return h;
        };
        f.certify_c2(hess, 2.0);
    }
    return f;
}

AlphaGraphFunction make_trig(int base_dim) {
    auto eval = [](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += std::cos(kPi * xi);
        return 0.25 * s;
    };
    auto grad = [base_dim](std::span<const double> x) {
        Vec g(base_dim);
        for (int i = 0; i < base_dim; ++i) g[i] = -0.25 * kPi * std::sin(kPi * x[i]);
        return g;
    };
    double L = 0.25 * kPi * kPi * 1.01;
    AlphaGraphFunction f(eval, grad, 2.0, L, Box::cube(-8.0, 8.0, base_dim));
    auto hess = [base_dim](std::span<const double> x) {
        Vec h(base_dim * base_dim, 0.0);
        for (int i = 0; i < base_dim; ++i) h[i * base_dim + i] = -0.25 * kPi * kPi * std::cos(kPi * x[i]);
        return h;
    };
    f.certify_c2(hess, 0.25 * kPi * kPi);
    return f;
}

}  // namespace

AlphaGraphFunction make_model_function(const std::string& id, int dim) {
    if (dim < 2) throw ConfigError("model functions need ambient dimension >= 2");
    int base_dim = dim - 1;
    if (id == "quad") return make_quad(base_dim);
    if (id == "trig") return make_trig(base_dim);
    if (id.rfind("alpha:", 0) == 0) {
        double a = 0.0;
        try {
            a = std::stod(id.substr(6));
        } catch (const std::exception&) {
            throw ConfigError("bad alpha model id: " + id);
        }
        return make_alpha(base_dim, a);
    }
    throw ConfigError("unknown model function id: " + id);
}

bool is_model_id(const std::string& id) {
    if (id == "quad" || id == "trig") return true;
    if (id.rfind("alpha:", 0) == 0) {
        try {
            double a = std::stod(id.substr(6));
            return a > 1.0 && a <= 2.0;
        } catch (const std::exception&) {
            return false;
        }
    }
    return false;
}

AlphaGraphFunction steklov_transform(const AlphaGraphFunction& g, double delta,
                                     int panels, int panel_order) {
    if (g.base_dim() != 1) throw ConfigError("steklov_transform handles univariate bases only");
    if (!(delta > 0.0)) throw ConfigError("steklov delta must be positive");
    const Box& bb = g.base_box();
    if (bb.hi[0] - bb.lo[0] <= 4.0 * delta)
        throw DomainError("steklov delta too large for the base box");
    Box out_box({bb.lo[0] + 2.0 * delta}, {bb.hi[0] - 2.0 * delta});

    // u+v with u,v uniform on [-delta,delta] has the triangular density
    // (2 delta - |s|) / (4 delta^2) on [-2 delta, 2 delta].
    auto kernel_avg = [delta, panels, panel_order](const std::function<double(double)>& h) {
        double inv = 1.0 / (4.0 * delta * delta);
        double total = 0.0;
        for (int side = 0; side < 2; ++side) {
            double sgn = side == 0 ? -1.0 : 1.0;
            // Panels on [0, 2 delta], mapped to the signed side; split at the
            // kernel kink s = 0 and graded quadratically toward it.
            for (int k = 0; k < panels; ++k) {
                double t0 = double(k) / panels, t1 = double(k + 1) / panels;
                double a = 2.0 * delta * t0 * t0, b = 2.0 * delta * t1 * t1;
                total += gauss_legendre_integrate(a, b, panel_order, [&](double s) {
                    double ss = sgn * s;
                    return h(ss) * (2.0 * delta - s) * inv;
                });
            }
        }
        return total;
    };

    auto g_eval = [g](double x) { return g.at(x); };
    auto g_deriv = [g](double x) { return g.deriv_at(x); };

    auto eval = [kernel_avg, g_eval](std::span<const double> x) {
        double x0 = x[0];
        return kernel_avg([&](double s) { return g_eval(x0 + s); });
    };
    auto grad = [kernel_avg, g_deriv](std::span<const double> x) {
        double x0 = x[0];
        return Vec{kernel_avg([&](double s) { return g_deriv(x0 + s); })};
    };
    auto hess = [g_deriv, delta, panels, panel_order](std::span<const double> x) {
        double x0 = x[0];
        double inv = 1.0 / (4.0 * delta * delta);
        double total = 0.0;
        for (int k = 0; k < 2 * panels; ++k) {
            double a0 = -delta + delta * double(k) / panels;
            double b0 = a0 + delta / panels;
            total += gauss_legendre_integrate(a0, b0, panel_order, [&](double u) {
                return (g_deriv(x0 + u + delta) - g_deriv(x0 + u - delta)) * inv;
            });
        }
        return Vec{total};
    };

    // Lipschitz bound for g_delta': |g_delta''| <= L delta^{alpha-2} pointwise
    // from the divided-difference form; measure it on a grid for the cert.
    double sup_h = 0.0;
    {
        const int kGrid = 257;
        for (int i = 0; i < kGrid; ++i) {
            double x0 = out_box.lo[0] + (out_box.hi[0] - out_box.lo[0]) * i / (kGrid - 1);
            double p[1] = {x0};
            sup_h = std::max(sup_h, std::abs(hess(std::span<const double>(p, 1))[0]));
        }
        // refine around 0 where the alpha models concentrate their curvature
        if (out_box.lo[0] < 0.0 && out_box.hi[0] > 0.0) {
            for (int i = -32; i <= 32; ++i) {
                double x0 = 4.0 * delta * i / 32.0;
                if (x0 <= out_box.lo[0] || x0 >= out_box.hi[0]) continue;
                double p[1] = {x0};
                sup_h = std::max(sup_h, std::abs(hess(std::span<const double>(p, 1))[0]));
            }
        }
    }

    AlphaGraphFunction out(eval, grad, 2.0, std::max(1.001, sup_h * 1.01), out_box);
    out.certify_c2(hess, sup_h);
    return out;
}

double steklov_delta_for_budget(double b, double hoelder_L, double alpha, double c_tilde) {
    if (!(b > 0.0) || !(hoelder_L > 0.0) || !(c_tilde > 0.0))
        throw ConfigError("steklov_delta_for_budget: positive inputs required");
    return std::pow(b / (8.0 * c_tilde * hoelder_L), 1.0 / alpha);
}

}  // namespace mz
