#include "jacobi.hpp"

#include <cmath>

namespace mz {

double jacobi_value(int n, double beta, double y) {
    if (!(beta > -1.0)) throw ConfigError("jacobi: beta must exceed -1");
    if (n < 0) throw ConfigError("jacobi: n must be >= 0");
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = (beta + 1.0) * y;
    for (int k = 2; k <= n; ++k) {
        // a = b = beta specialization of the general Jacobi recurrence
        double tb = 2.0 * beta;
        double c0 = 2.0 * k * (k + tb) * (2.0 * k + tb - 2.0);
        double c1 = (2.0 * k + tb - 1.0) * (2.0 * k + tb) * (2.0 * k + tb - 2.0);
        double c2 = 2.0 * (k + beta - 1.0) * (k + beta - 1.0) * (2.0 * k + tb);
        double p2 = (c1 * y * p1 - c2 * p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::pair<double, double> jacobi_eval(const JacobiSpec& spec, double y) {
    double v = jacobi_value(spec.n, spec.beta, y);
    double d = 0.0;
    if (spec.n >= 1)
        d = (0.5 * spec.n + spec.beta + 0.5) * jacobi_value(spec.n - 1, spec.beta + 1.0, y);
    return {v, d};
}

double jacobi_value_at_one(int n, double beta) {
    // C(n+beta, n) via lgamma to cover non-integer beta
    return std::exp(std::lgamma(n + beta + 1.0) - std::lgamma(beta + 1.0) - std::lgamma(n + 1.0));
}

}  // namespace mz
