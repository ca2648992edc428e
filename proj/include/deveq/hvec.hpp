#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "deveq/errors.hpp"

namespace deveq {

// Coefficient vector in the truncated Hilbert space, plain l^2 inner product.
using HVec = std::vector<double>;

inline double dot(const HVec& u, const HVec& v) {
    require_same_dim(u.size(), v.size(), "dot");
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
    return s;
}

inline double norm_sq(const HVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double norm(const HVec& v) { return std::sqrt(norm_sq(v)); }

inline HVec zeros(std::size_t n) { return HVec(n, 0.0); }

inline HVec basis(std::size_t n, std::size_t j) {
    HVec e(n, 0.0);
    e.at(j) = 1.0;
    return e;
}

inline HVec scaled(const HVec& v, double a) {
    HVec w(v);
    for (double& x : w) x *= a;
    return w;
}

inline HVec add(const HVec& u, const HVec& v) {
    require_same_dim(u.size(), v.size(), "add");
    HVec w(u);
    for (std::size_t j = 0; j < v.size(); ++j) w[j] += v[j];
    return w;
}

inline HVec sub(const HVec& u, const HVec& v) {
    require_same_dim(u.size(), v.size(), "sub");
    HVec w(u);
    for (std::size_t j = 0; j < v.size(); ++j) w[j] -= v[j];
    return w;
}

// w += a * v
inline void axpy(HVec& w, double a, const HVec& v) {
    require_same_dim(w.size(), v.size(), "axpy");
    for (std::size_t j = 0; j < v.size(); ++j) w[j] += a * v[j];
}

inline bool all_finite(const HVec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace deveq
