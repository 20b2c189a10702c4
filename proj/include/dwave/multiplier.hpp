#pragma once

// Floating-point evaluation of the damped-wave solution symbols, the smooth
// frequency cutoffs, the asymptotic profiles W and D, and the remainder
// symbols built from them. Every symbol is radial: it depends on r = |xi|.

#include "dwave/expansion_kernels.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dwave::mult {

struct Multiplier {
    std::function<double(double r, double t)> evaluate;
    std::string label;

    double operator()(double r, double t) const { return evaluate(r, t); }
};

enum class Region { Low, Middle, High, All };

std::string to_string(Region region);
/// Accepts L, M, H, ALL (case-insensitive).
Region parse_region(const std::string& name);

/// e^{-t/2} cos(t sqrt(r^2 - 1/4)), cosh form below r = 1/2.
double k0_hat(double r, double t);
/// e^{-t/2} sin(t z)/z with z = sqrt(r^2 - 1/4), sinh form below r = 1/2.
double k1_hat(double r, double t);

/// |t^2 (r^2 - 1/4)| below which k0_hat/k1_hat use their power series.
inline constexpr double kBranchSeriesWindow = 0.5;

struct CutoffFamily {
    double low_start = 0.25;
    double low_end = 1.0 / 3.0;
    double high_start = 1.0;
    double high_end = 2.0;

    double chi_low(double r) const;
    double chi_high(double r) const;
    double chi_middle(double r) const { return 1.0 - chi_low(r) - chi_high(r); }
    double chi(Region region, double r) const;
};

CutoffFamily cutoffs();

/// exp(-1/x) / (exp(-1/x) + exp(-1/(1-x))), clamped to [0, 1] outside (0, 1).
double smooth_step(double x);

/// Numerically stable evaluation of F_k(r, 0, t) for r >= 0: the power series
/// of F_k / t^{2k} in x = t r near the origin, the closed trigonometric form
/// beyond the switch point.
class WaveKernel {
public:
    explicit WaveKernel(int k);

    int order() const { return k_; }
    double switch_point() const { return switch_x_; }
    double operator()(double r, double t) const;

private:
    int k_;
    double switch_x_;
    std::vector<double> series_;
    kernels::TrigPoly poly_;
};

/// W^i_b(r, t) as a sum of weighted WaveKernels (W^2 carries its 2/t factor).
class WaveProfile {
public:
    WaveProfile(int i, int b);
    double operator()(double r, double t) const;

private:
    int i_;
    std::vector<std::pair<double, WaveKernel>> terms_;
};

/// D^i_l(r, t) with double coefficients.
class DiffusiveProfile {
public:
    DiffusiveProfile(int i, int l);
    double operator()(double r, double t) const;

private:
    struct Term {
        int k;
        int j;
        double coeff;
    };
    std::vector<Term> terms_;
};

/// chi_J(r) [exact - e^{-t/2} W^i_b - D^i_l]; Region::All omits the cutoff.
Multiplier remainder_multiplier(int i, int b, int l, Region region);

/// e^{-t/2} W^i_b(r, t) + D^i_l(r, t), the profile the remainder subtracts.
Multiplier profile_multiplier(int i, int b, int l);

/// sin(x)/x, stable at the origin.
double sinc(double x);

struct ComparisonMultipliers {
    Multiplier w0_hat;    ///< cos(t r): free wave with data (u0, 0)
    Multiplier w1_hat;    ///< sin(t r)/r: free wave with data (0, u1); also the w-tilde symbol
    Multiplier heat_hat;  ///< e^{-t r^2}
};

ComparisonMultipliers comparison_multipliers();

}  // namespace dwave::mult
