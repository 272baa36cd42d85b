#pragma once

#include <utility>

#include "common.hpp"

namespace mz {

// Ultraspherical Jacobi polynomial J_n^{(beta,beta)}.
struct JacobiSpec {
    double beta;  // > -1
    int n;        // >= 0
};

// Value by the standard three-term recurrence; derivative via
// J_n'(y) = (n/2 + beta + 1/2) J_{n-1}^{(beta+1,beta+1)}(y).
std::pair<double, double> jacobi_eval(const JacobiSpec& spec, double y);

double jacobi_value(int n, double beta, double y);

// Endpoint value J_n^{(beta,beta)}(1) = C(n+beta, n).
double jacobi_value_at_one(int n, double beta);

}  // namespace mz
