#include "multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mz {

namespace {

void enumerate_rec(int dim, int axis, int remaining, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (axis == dim) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur[axis] = k;
        enumerate_rec(dim, axis + 1, remaining - k, cur, out);
    }
}

}  // namespace

std::size_t MultiPoly::coeff_count(int dim, int degree) {
    // C(degree + dim, dim)
    std::size_t c = 1;
    for (int i = 1; i <= dim; ++i) c = c * (degree + i) / i;
    return c;
}

MultiPoly::MultiPoly(int dim, int degree, Box box)
    : dim_(dim), degree_(degree), box_(std::move(box)) {
    if (dim_ < 1 || dim_ > 8) throw ConfigError("MultiPoly: dim must lie in [1,8]");
    if (degree_ < 0) throw ConfigError("MultiPoly: degree must be >= 0");
    if (box_.dim() != dim_) throw ConfigError("MultiPoly: box dimension mismatch");
    std::vector<int> cur(dim_, 0);
    enumerate_rec(dim_, 0, degree_, cur, exps_);
    coeffs_.assign(exps_.size(), 0.0);
    flat_exps_.reserve(exps_.size() * dim_);
    for (const auto& e : exps_)
        for (int k : e) flat_exps_.push_back(k);
}

MultiPoly MultiPoly::random(int dim, int degree, std::uint64_t seed, Box box) {
    MultiPoly p(dim, degree, std::move(box));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& c : p.coeffs_) c = gauss(rng);
    return p;
}

void MultiPoly::set_coeff(const std::vector<int>& kappa, double value) {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == kappa) {
            coeffs_[i] = value;
            return;
        }
    }
    throw ConfigError("set_coeff: multi-index out of range");
}

std::pair<double, double> chebyshev_t(int k, double x) {
    double t0 = 1.0, t1 = x, d0 = 0.0, d1 = 1.0;
    if (k == 0) return {1.0, 0.0};
    for (int j = 2; j <= k; ++j) {
        double t2 = 2.0 * x * t1 - t0;
        double d2 = 2.0 * t1 + 2.0 * x * d1 - d0;
        t0 = t1;
        t1 = t2;
        d0 = d1;
        d1 = d2;
    }
    return {t1, d1};
}

void MultiPoly::eval_tables(std::span<const double> pt, Vec& t, Vec* dt) const {
    // per-axis blocks of degree_+1 entries; buffers owned by the caller and
    // reused across evaluations
    int stride = degree_ + 1;
    t.resize(std::size_t(dim_) * stride);
    if (dt) dt->resize(std::size_t(dim_) * stride);
    for (int i = 0; i < dim_; ++i) {
        double s = (2.0 * pt[i] - box_.lo[i] - box_.hi[i]) / (box_.hi[i] - box_.lo[i]);
        double* ti = t.data() + std::size_t(i) * stride;
        ti[0] = 1.0;
        if (degree_ >= 1) ti[1] = s;
        for (int k = 2; k <= degree_; ++k) ti[k] = 2.0 * s * ti[k - 1] - ti[k - 2];
        if (dt) {
            double* di = dt->data() + std::size_t(i) * stride;
            di[0] = 0.0;
            if (degree_ >= 1) di[1] = 1.0;
            for (int k = 2; k <= degree_; ++k)
                di[k] = 2.0 * ti[k - 1] + 2.0 * s * di[k - 1] - di[k - 2];
        }
    }
}

double MultiPoly::value(std::span<const double> pt) const {
    thread_local Vec t;
    eval_tables(pt, t, nullptr);
    int stride = degree_ + 1;
    double acc = 0.0;
    const int* e = flat_exps_.data();
    for (std::size_t j = 0; j < coeffs_.size(); ++j, e += dim_) {
        double term = coeffs_[j];
        for (int i = 0; i < dim_; ++i) term *= t[std::size_t(i) * stride + e[i]];
        acc += term;
    }
    return acc;
}

double MultiPoly::value_grad(std::span<const double> pt, std::span<double> grad) const {
    thread_local Vec t, dt;
    eval_tables(pt, t, &dt);
    int stride = degree_ + 1;
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) grad[i] = 0.0;
    double tv[8], dv[8];
    const int* e = flat_exps_.data();
    for (std::size_t j = 0; j < coeffs_.size(); ++j, e += dim_) {
        double c = coeffs_[j];
        double prod = c;
        for (int i = 0; i < dim_; ++i) {
            tv[i] = t[std::size_t(i) * stride + e[i]];
            dv[i] = dt[std::size_t(i) * stride + e[i]];
            prod *= tv[i];
        }
        acc += prod;
        for (int i = 0; i < dim_; ++i) {
            double term = c * dv[i];
            for (int l = 0; l < dim_; ++l)
                if (l != i) term *= tv[l];
            grad[i] += term;
        }
    }
    // chain rule for the box rescaling
    for (int i = 0; i < dim_; ++i) grad[i] *= 2.0 / (box_.hi[i] - box_.lo[i]);
    return acc;
}

void MultiPoly::scale(double factor) {
    for (double& c : coeffs_) c *= factor;
}

nlohmann::ordered_json MultiPoly::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim_;
    j["degree"] = degree_;
    j["basis"] = "cheb";
    j["box"] = {{"lo", box_.lo}, {"hi", box_.hi}};
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < exps_.size(); ++i)
        coeffs.push_back({exps_[i], coeffs_[i]});
    j["coeffs"] = std::move(coeffs);
    return j;
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
    if (j.at("basis").get<std::string>() != "cheb")
        throw ConfigError("MultiPoly::from_json: unsupported basis");
    Box box(j.at("box").at("lo").get<Vec>(), j.at("box").at("hi").get<Vec>());
    MultiPoly p(j.at("dim").get<int>(), j.at("degree").get<int>(), std::move(box));
    for (const auto& entry : j.at("coeffs"))
        p.set_coeff(entry.at(0).get<std::vector<int>>(), entry.at(1).get<double>());
    return p;
}

}  // namespace mz
