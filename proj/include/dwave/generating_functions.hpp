#pragma once

// The three parameter-dependent symbols whose Taylor coefficients define the
// asymptotic profiles, written once for any floating-point scalar so the same
// formula serves double evaluation and the multiprecision oracles.
//
//   f(r, c, t) = cos(t sqrt(r^2 - c))            (entire in c)
//   g(r, a, t) = exp(-2 t r^2 / (1 + sqrt(1 - 4 a r^2)))
//   h(r, a, t) = g(r, a, t) / sqrt(1 - 4 a r^2)

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dwave::gen {

template <class T>
T f(const T& r, const T& c, const T& t) {
    using std::cos;
    using std::cosh;
    using std::sqrt;
    const T z = r * r - c;
    if (z >= 0) {
        return cos(t * sqrt(z));
    }
    return cosh(t * sqrt(-z));
}

template <class T>
T g(const T& r, const T& a, const T& t) {
    using std::exp;
    using std::sqrt;
    const T root = sqrt(T(1) - 4 * a * r * r);
    return exp(-2 * t * r * r / (1 + root));
}

template <class T>
T h(const T& r, const T& a, const T& t) {
    using std::sqrt;
    return g(r, a, t) / sqrt(T(1) - 4 * a * r * r);
}

/// Weights w_{-p..p} of the central stencil for the k-th derivative on the
/// integer nodes -p..p (Fornberg's recursion). Requires 2p >= k.
template <class T>
std::vector<T> central_weights(int k, int p) {
    if (k < 0 || p < 0 || 2 * p < k) {
        throw std::domain_error("central_weights: need 0 <= k <= 2p");
    }
    const int npts = 2 * p + 1;
    std::vector<T> x(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) x[static_cast<std::size_t>(i)] = T(i - p);

    // c[i][m]: weight of node i for the m-th derivative
    std::vector<std::vector<T>> c(static_cast<std::size_t>(npts), std::vector<T>(static_cast<std::size_t>(k + 1), T(0)));
    T c1 = 1;
    T c4 = x[0];
    c[0][0] = 1;
    for (int i = 1; i < npts; ++i) {
        const int mn = std::min(i, k);
        T c2 = 1;
        const T c5 = c4;
        c4 = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) {
            const T c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            auto& ci = c[static_cast<std::size_t>(i)];
            auto& cj = c[static_cast<std::size_t>(j)];
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m) {
                    const auto um = static_cast<std::size_t>(m);
                    ci[um] = c1 * (T(m) * c[static_cast<std::size_t>(i - 1)][um - 1] - c5 * c[static_cast<std::size_t>(i - 1)][um]) / c2;
                }
                ci[0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int m = mn; m >= 1; --m) {
                const auto um = static_cast<std::size_t>(m);
                cj[um] = (c4 * cj[um] - T(m) * cj[um - 1]) / c3;
            }
            cj[0] = c4 * cj[0] / c3;
        }
        c1 = c2;
    }
    std::vector<T> out(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    return out;
}

/// k-th derivative of fn at x0 by the central (2p+1)-point stencil of spacing step.
template <class T, class Fn>
T central_derivative(const Fn& fn, const T& x0, const T& step, int k, int p) {
    const std::vector<T> w = central_weights<T>(k, p);
    T acc = 0;
    for (int i = -p; i <= p; ++i) {
        const T& wi = w[static_cast<std::size_t>(i + p)];
        if (wi != 0) {
            acc += wi * fn(x0 + T(i) * step);
        }
    }
    T scale = 1;
    for (int i = 0; i < k; ++i) scale *= step;
    return acc / scale;
}

}  // namespace dwave::gen
