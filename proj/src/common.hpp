#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mz {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2sq(std::span<const double> a) { return dot(a, a); }
inline double norm2(std::span<const double> a) { return std::sqrt(norm2sq(a)); }

// Axis-aligned box in R^k.
struct Box {
    Vec lo, hi;

    Box() = default;
    Box(Vec l, Vec h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.size() != hi.size()) throw std::invalid_argument("Box: lo/hi size mismatch");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: lo must be < hi");
    }
    static Box cube(double l, double h, int k) { return Box(Vec(k, l), Vec(k, h)); }

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const double> x, double tol = 0.0) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
        return true;
    }
    bool contains_strictly(const Box& inner) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < inner.lo[i] && inner.hi[i] < hi[i])) return false;
        return true;
    }
    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }
    Box shrunk(double margin) const {
        Box b = *this;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            b.lo[i] += margin;
            b.hi[i] -= margin;
            if (!(b.lo[i] < b.hi[i])) throw std::invalid_argument("Box::shrunk: margin too large");
        }
        return b;
    }
};

// Compensated summation; partition-exactness checks need better than plain
// accumulation over ~1e6 cells.
struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives a per-item seed from a run seed; stable under any execution order.
inline std::uint64_t item_seed(std::uint64_t run_seed, std::uint64_t item) {
    return splitmix64(run_seed ^ splitmix64(item + 1));
}

// Scalar field on R^d with gradient access. Implemented by the polynomial
// types; geometry operations only see this interface.
struct ScalarField {
    virtual ~ScalarField() = default;
    virtual int dim() const = 0;
    virtual double value(std::span<const double> pt) const = 0;
    // grad must have size dim().
    virtual double value_grad(std::span<const double> pt, std::span<double> grad) const = 0;
};

// Runs fn(i) for i in [0, count); results must be written by index so the
// outcome is independent of the thread count.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline int default_thread_count() {
    if (const char* env = std::getenv("MZMESH_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_halfband = 0.0;  // 95% confidence half-width
};

// Unweighted least squares of y against x; the band uses Student t quantiles
// for the small sample sizes that occur here.
inline SlopeFit fit_line(const Vec& x, const Vec& y) {
    std::size_t k = x.size();
    if (k < 2 || y.size() != k) throw std::invalid_argument("fit_line: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) { mx += x[i]; my += y[i]; }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (k > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < k; ++i) {
            double r = y[i] - (f.intercept + f.slope * x[i]);
            ss += r * r;
        }
        double se = std::sqrt(ss / double(k - 2) / sxx);
        static const double t975[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228};
        std::size_t df = k - 2;
        double t = df <= 10 ? t975[df - 1] : 1.96;
        f.slope_halfband = t * se;
    }
    return f;
}

inline SlopeFit fit_loglog(const Vec& x, const Vec& y) {
    Vec lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("fit_loglog: positive data required");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

// Error categories surfaced through the C API as status codes.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mz
