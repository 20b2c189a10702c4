#include "dwave/multiplier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace dwave::mult {

std::string to_string(Region region) {
    switch (region) {
        case Region::Low: return "L";
        case Region::Middle: return "M";
        case Region::High: return "H";
        case Region::All: return "ALL";
    }
    return "?";
}

Region parse_region(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "L") return Region::Low;
    if (upper == "M") return Region::Middle;
    if (upper == "H") return Region::High;
    if (upper == "ALL") return Region::All;
    throw std::invalid_argument("unknown region '" + name + "' (expected L, M, H or ALL)");
}

namespace {

void check_point(double r, double t) {
    if (!(r >= 0.0) || !(t >= 0.0)) {
        throw std::domain_error("multiplier evaluated outside r >= 0, t >= 0");
    }
}

// Degree-8 partial sums of cos(sqrt(w)) and sin(sqrt(w))/sqrt(w) in -w.
void branch_series(double w, double& cos_part, double& sin_part) {
    double c = 0.0;
    double s = 0.0;
    for (int m = 8; m >= 0; --m) {
        c = c * (-w) / ((2.0 * m + 1.0) * (2.0 * m + 2.0)) + 1.0;
        s = s * (-w) / ((2.0 * m + 2.0) * (2.0 * m + 3.0)) + 1.0;
    }
    cos_part = c;
    sin_part = s;
}

}  // namespace

double k0_hat(double r, double t) {
    check_point(r, t);
    const double w = t * t * (r - 0.5) * (r + 0.5);
    if (std::abs(w) < kBranchSeriesWindow) {
        double c = 0.0;
        double s = 0.0;
        branch_series(w, c, s);
        return std::exp(-0.5 * t) * c;
    }
    if (r > 0.5) {
        const double z = std::sqrt((r - 0.5) * (r + 0.5));
        return std::exp(-0.5 * t) * std::cos(t * z);
    }
    const double s = std::sqrt((0.5 - r) * (0.5 + r));
    const double d = r * r / (0.5 + s);
    return 0.5 * (std::exp(-t * d) + std::exp(-t * (0.5 + s)));
}

double k1_hat(double r, double t) {
    check_point(r, t);
    const double w = t * t * (r - 0.5) * (r + 0.5);
    if (std::abs(w) < kBranchSeriesWindow) {
        double c = 0.0;
        double s = 0.0;
        branch_series(w, c, s);
        return std::exp(-0.5 * t) * t * s;
    }
    if (r > 0.5) {
        const double z = std::sqrt((r - 0.5) * (r + 0.5));
        return std::exp(-0.5 * t) * std::sin(t * z) / z;
    }
    const double s = std::sqrt((0.5 - r) * (0.5 + r));
    const double d = r * r / (0.5 + s);
    return std::exp(-t * d) * -std::expm1(-2.0 * t * s) / (2.0 * s);
}

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double CutoffFamily::chi_low(double r) const {
    return 1.0 - smooth_step((r - low_start) / (low_end - low_start));
}

double CutoffFamily::chi_high(double r) const {
    return smooth_step((r - high_start) / (high_end - high_start));
}

double CutoffFamily::chi(Region region, double r) const {
    switch (region) {
        case Region::Low: return chi_low(r);
        case Region::Middle: return chi_middle(r);
        case Region::High: return chi_high(r);
        case Region::All: return 1.0;
    }
    return 1.0;
}

CutoffFamily cutoffs() { return CutoffFamily{}; }

WaveKernel::WaveKernel(int k) : k_(k), switch_x_(k == 0 ? 0.0 : k + 2.0), poly_(kernels::wave_Fk(k)) {
    constexpr int kSeriesTerms = 40;
    for (const auto& c : kernels::wave_Fk_scaled_series(k, kSeriesTerms)) {
        series_.push_back(c.to_double());
    }
}

double WaveKernel::operator()(double r, double t) const {
    const double x = t * r;
    if (k_ == 0) {
        return std::cos(x);
    }
    if (x < switch_x_) {
        const double x2 = x * x;
        double acc = 0.0;
        for (auto it = series_.rbegin(); it != series_.rend(); ++it) {
            acc = acc * x2 + *it;
        }
        return std::pow(t, 2 * k_) * acc;
    }
    return poly_.evaluate(r, t);
}

WaveProfile::WaveProfile(int i, int b) : i_(i) {
    for (const auto& term : kernels::wave_profile(i, b)) {
        terms_.emplace_back(term.weight.to_double(), WaveKernel(term.derivative_order));
    }
}

double WaveProfile::operator()(double r, double t) const {
    double acc = 0.0;
    for (const auto& [weight, kernel] : terms_) {
        acc += weight * kernel(r, t);
    }
    return i_ == 2 ? acc / t : acc;
}

DiffusiveProfile::DiffusiveProfile(int i, int l) {
    const kernels::DiffusivePoly poly = kernels::diffusive_profile(i, l);
    for (const auto& [key, c] : poly.terms()) {
        terms_.push_back({key.first, key.second, c.to_double()});
    }
}

double DiffusiveProfile::operator()(double r, double t) const {
    const double r2 = r * r;
    const double tr2 = t * r2;
    double acc = 0.0;
    for (const auto& term : terms_) {
        acc += term.coeff * std::pow(r2, term.k) * std::pow(tr2, term.j);
    }
    return acc * std::exp(-tr2);
}

namespace {

void check_indices(int i, int b, int l) {
    if ((i != 1 && i != 2) || b < 1 || l < 1) {
        throw std::domain_error("remainder indices need i in {1,2}, b >= 1, l >= 1");
    }
}

std::string profile_label(int i, int b, int l) {
    return "i=" + std::to_string(i) + ",b=" + std::to_string(b) + ",l=" + std::to_string(l);
}

}  // namespace

Multiplier profile_multiplier(int i, int b, int l) {
    check_indices(i, b, l);
    auto wave = std::make_shared<const WaveProfile>(i, b);
    auto diffusive = std::make_shared<const DiffusiveProfile>(i, l);
    return Multiplier{[wave, diffusive](double r, double t) {
                          check_point(r, t);
                          return std::exp(-0.5 * t) * (*wave)(r, t) + (*diffusive)(r, t);
                      },
                      "profile[" + profile_label(i, b, l) + "]"};
}

Multiplier remainder_multiplier(int i, int b, int l, Region region) {
    check_indices(i, b, l);
    auto wave = std::make_shared<const WaveProfile>(i, b);
    auto diffusive = std::make_shared<const DiffusiveProfile>(i, l);
    const CutoffFamily chi = cutoffs();
    const auto exact = i == 1 ? &k0_hat : &k1_hat;
    return Multiplier{[=](double r, double t) {
                          const double weight = chi.chi(region, r);
                          if (weight == 0.0) {
                              return 0.0;
                          }
                          const double rest = exact(r, t) - std::exp(-0.5 * t) * (*wave)(r, t) - (*diffusive)(r, t);
                          return weight * rest;
                      },
                      "m[" + profile_label(i, b, l) + "," + to_string(region) + "]"};
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

ComparisonMultipliers comparison_multipliers() {
    return ComparisonMultipliers{
        Multiplier{[](double r, double t) {
                       check_point(r, t);
                       return std::cos(t * r);
                   },
                   "w0_hat"},
        Multiplier{[](double r, double t) {
                       check_point(r, t);
                       return t * sinc(t * r);
                   },
                   "w1_hat"},
        Multiplier{[](double r, double t) {
                       check_point(r, t);
                       return std::exp(-t * r * r);
                   },
                   "heat_hat"},
    };
}

}  // namespace dwave::mult
