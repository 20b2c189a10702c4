#include "dwave/oracle.hpp"

#include "dwave/generating_functions.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace dwave::oracle {

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

constexpr double kStep = 1e-6;

Big to_big(const Rational& q) {
    return Big(q.numerator().get_str()) / Big(q.denominator().get_str());
}

int stencil_half_width(int k) { return k + 6; }

}  // namespace

double fd_f_derivative(int k, double r, double c, double t) {
    if (k < 0) {
        throw std::domain_error("fd_f_derivative: k must be >= 0");
    }
    const Big rb(r);
    const Big tb(t);
    const auto fn = [&](const Big& cc) { return gen::f(rb, cc, tb); };
    return static_cast<double>(gen::central_derivative(fn, Big(c), Big(kStep), k, stencil_half_width(k)));
}

double fd_g_derivative(int k, double r, double t) {
    if (k < 0) {
        throw std::domain_error("fd_g_derivative: k must be >= 0");
    }
    const Big rb(r);
    const Big tb(t);
    const auto fn = [&](const Big& a) { return gen::g(rb, a, tb); };
    return static_cast<double>(gen::central_derivative(fn, Big(0), Big(kStep), k, stencil_half_width(k)));
}

double fd_h_derivative(int k, double r, double t) {
    if (k < 0) {
        throw std::domain_error("fd_h_derivative: k must be >= 0");
    }
    const Big rb(r);
    const Big tb(t);
    const auto fn = [&](const Big& a) { return gen::h(rb, a, tb); };
    return static_cast<double>(gen::central_derivative(fn, Big(0), Big(kStep), k, stencil_half_width(k)));
}

double evaluate_extended(const kernels::TrigPoly& poly, double r, double t) {
    const Big rb(r);
    const Big tb(t);
    const Big s = sin(tb * rb);
    const Big c = cos(tb * rb);
    Big acc = 0;
    for (const auto& [key, coeff] : poly.terms()) {
        acc += to_big(coeff) * pow(tb, key.t_power) * pow(rb, key.r_power) *
               (key.phase == kernels::Phase::Sin ? s : c);
    }
    if (poly.denominator_r_power() > 0) {
        acc /= pow(rb, poly.denominator_r_power());
    }
    return static_cast<double>(acc);
}

double evaluate_extended(const kernels::DiffusivePoly& poly, double r, double t) {
    const Big r2 = Big(r) * Big(r);
    const Big tr2 = Big(t) * r2;
    Big acc = 0;
    for (const auto& [key, coeff] : poly.terms()) {
        acc += to_big(coeff) * pow(r2, key.first) * pow(tr2, key.second);
    }
    return static_cast<double>(acc * exp(-tr2));
}

}  // namespace dwave::oracle
