#pragma once

// Fourier-side L^2 norms of multiplier-filtered radial data, the radial data
// library, and the FFT grid path for n = 1, 2.
//
// Transform convention: u^(xi) = int e^{-i x.xi} u(x) dx, so the Fourier-side
// norm is (2 pi)^{n/2} times the physical one.

#include "dwave/multiplier.hpp"

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwave::spectral {

/// Raised when the quadrature tail beyond the cutoff radius is not negligible.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double tolerance)
        : std::runtime_error(what), estimate_(estimate), tolerance_(tolerance) {}
    double estimate() const { return estimate_; }
    double tolerance() const { return tolerance_; }

private:
    double estimate_;
    double tolerance_;
};

/// Raised when a grid does not resolve its data (energy in the top octave).
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, double fraction)
        : std::runtime_error(what), fraction_(fraction) {}
    double top_octave_fraction() const { return fraction_; }

private:
    double fraction_;
};

/// Surface measure of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Fourier-side radial data u^(|xi|).
struct RadialProfile {
    std::function<double(double)> evaluate;
    /// ||u^||_{L^2(R^n)} as a function of n, when known in closed form.
    std::optional<std::function<double(int)>> l2_closed_form;
    /// Upper bound for int_R^inf |u^(r)|^2 r^{n-1} dr.
    std::function<double(double R, int n)> tail_l2sq;
    /// Physical-side radial profile u(|x|), when known in closed form.
    std::optional<std::function<double(double, int)>> physical;
    /// Points where the profile is not smooth (support edges).
    std::vector<double> breakpoints;
    std::string label;

    double operator()(double r) const { return evaluate(r); }
};

RadialProfile gaussian(double sigma);
RadialProfile box(double radius);
RadialProfile cauchy_like();
RadialProfile ring(double center, double width);

/// Parses "gaussian(1)", "gaussian", "box(2)", "cauchy", "ring(1,0.1)".
RadialProfile data_library(const std::string& spec);

struct QuadratureSettings {
    double cutoff_radius = 12.0;
    int nodes_per_panel = 20;
    int grading_levels = 14;
};

/// Composite Gauss-Legendre rule on [0, R].
struct QuadratureRule {
    struct Panel {
        double a;
        double b;
    };
    std::vector<Panel> panels;
    std::vector<double> nodes;
    std::vector<double> weights;
    double cutoff_radius = 0.0;
    int nodes_per_panel = 0;
};

/// Panels: a geometric grading toward 0, the cutoff and branch points
/// 1/4, 1/3, 1/2, 1, 2 with geometric grading toward both ends of the cutoff
/// transition bands, unit steps to R, any extra breakpoints, and a width
/// cap of min(1, 8/min(t, 100)) so that cos(t r)-type factors stay resolved.
QuadratureRule make_rule(const QuadratureSettings& settings, double t = 0.0,
                         const std::vector<double>& extra_breaks = {});

/// (omega_{n-1} int_0^R |values(r)|^2 r^{n-1} dr)^{1/2}.
double radial_l2(const std::function<double(double)>& values, int n, const QuadratureRule& rule);

inline constexpr double kDefaultTailTolerance = 1e-10;

/// ||m(., t) data||_{L^2(R^n)} on the Fourier side, with a tail check.
double l2_norm_radial(const mult::Multiplier& m, const RadialProfile& data, int n, double t,
                      const QuadratureRule& rule, double tail_tolerance = kDefaultTailTolerance);

/// Same for an arbitrary radial Fourier-side function; max_abs_factor bounds
/// |values / data| beyond the cutoff for the tail estimate.
double l2_norm_radial(const std::function<double(double)>& values, const RadialProfile& data, int n,
                      double max_abs_factor, const QuadratureRule& rule,
                      double tail_tolerance = kDefaultTailTolerance);

struct MomentCheck {
    double lhs;
    double ratio;
};

/// || |x|^k e^{-t|x|^2} ||_{L^2(|x| <= 1)} and its ratio to (1+t)^{-n/4-k/2}.
MomentCheck moment_bound_check(int k, int n, double t);

// ---------------------------------------------------------------------------
// Grid path

struct GridField {
    int n = 1;
    std::size_t N = 0;
    double L = 0.0;
    std::vector<double> values;  ///< row-major, N^n entries

    double dx() const { return L / static_cast<double>(N); }
    std::size_t size() const { return values.size(); }
    double coordinate(std::size_t index) const { return -0.5 * L + static_cast<double>(index) * dx(); }
};

GridField zero_field(int n, std::size_t N, double L);
/// Samples u(|x|) on the grid.
GridField sample_physical(const std::function<double(double)>& radial, int n, std::size_t N, double L);
/// Physical field whose transform on the grid is data(|xi|).
GridField from_fourier(const RadialProfile& data, int n, std::size_t N, double L);

/// |xi| at every grid frequency, row-major, xi_k = 2 pi k / L.
std::vector<double> radial_frequencies(int n, std::size_t N, double L);
/// Grid approximation of u^(xi_k).
std::vector<std::complex<double>> forward_transform(const GridField& field);

/// (2 pi)^{n/2} (sum |u|^2 dx^n)^{1/2}.
double fourier_norm(const GridField& field);

/// Fraction of spectral energy at frequencies with some |k_d| > N/4.
double top_octave_fraction(const GridField& field);

struct EvolveOptions {
    int b = 1;
    int l = 1;
    double alias_tolerance = 1e-12;
};

struct GridEvolution {
    GridField u;
    GridField wave_profile_part;  ///< e^{-t/2} [W^1_b u0 + W^2_b (u0/2 + u1)]
    GridField diffusive_part;     ///< D^1_l u0 + D^2_l (u0/2 + u1)
    GridField w;                  ///< free wave with data (u0, u1)
    GridField wtilde;             ///< free wave with data (0, u0)
    GridField v;                  ///< heat flow of u0 + u1
};

GridEvolution evolve_grid(const GridField& u0, const GridField& u1, double t, const EvolveOptions& options = {});

/// Header row then one row per grid point: x (and y for n = 2), then each field.
void write_csv(const std::string& path, const std::vector<std::pair<std::string, const GridField*>>& fields);
/// Header: n and N as little-endian uint64, L as little-endian binary64; then row-major binary64 values.
void write_binary(const std::string& path, const GridField& field);
GridField read_binary(const std::string& path);

}  // namespace dwave::spectral
