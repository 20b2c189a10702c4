#pragma once

// Multiprecision reference values: central finite differences of the
// generating functions, and extended-precision evaluation of the exact
// symbolic kernels. Both run in 100-digit binary floating point.

#include "dwave/expansion_kernels.hpp"

namespace dwave::oracle {

/// d^k/dc^k cos(t sqrt(r^2 - c)) at c.
double fd_f_derivative(int k, double r, double c, double t);
/// d^k/da^k g(r, a, t) at a = 0.
double fd_g_derivative(int k, double r, double t);
/// d^k/da^k h(r, a, t) at a = 0.
double fd_h_derivative(int k, double r, double t);

double evaluate_extended(const kernels::TrigPoly& poly, double r, double t);
double evaluate_extended(const kernels::DiffusivePoly& poly, double r, double t);

}  // namespace dwave::oracle
