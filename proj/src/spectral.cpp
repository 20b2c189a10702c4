#include "dwave/spectral.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <fftw3.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

namespace dwave::spectral {

double sphere_area(int n) {
    if (n < 1) {
        throw std::domain_error("sphere_area: dimension must be >= 1");
    }
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

// ---------------------------------------------------------------------------
// Data library

RadialProfile gaussian(double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("gaussian: sigma must be positive");
    }
    RadialProfile p;
    p.evaluate = [sigma](double r) { return std::exp(-(r / sigma) * (r / sigma)); };
    p.l2_closed_form = [sigma](int n) { return std::pow(M_PI * sigma * sigma / 2.0, 0.25 * n); };
    p.tail_l2sq = [sigma](double R, int n) {
        const double s2 = sigma * sigma / 2.0;
        return 0.5 * std::pow(s2, 0.5 * n) * boost::math::tgamma(0.5 * n, R * R / s2);
    };
    p.physical = [sigma](double x, int n) {
        return std::pow(sigma * sigma / (4.0 * M_PI), 0.5 * n) * std::exp(-sigma * sigma * x * x / 4.0);
    };
    std::ostringstream label;
    label << "gaussian(" << sigma << ")";
    p.label = label.str();
    return p;
}

RadialProfile box(double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("box: radius must be positive");
    }
    RadialProfile p;
    p.evaluate = [radius](double r) { return r <= radius ? 1.0 : 0.0; };
    p.l2_closed_form = [radius](int n) { return std::sqrt(sphere_area(n) * std::pow(radius, n) / n); };
    p.tail_l2sq = [radius](double R, int n) {
        return R >= radius ? 0.0 : (std::pow(radius, n) - std::pow(R, n)) / n;
    };
    p.breakpoints = {radius};
    std::ostringstream label;
    label << "box(" << radius << ")";
    p.label = label.str();
    return p;
}

RadialProfile cauchy_like() {
    RadialProfile p;
    p.evaluate = [](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r)); };
    p.l2_closed_form = [](int n) {
        if (n >= 8) {
            throw std::domain_error("cauchy: not square integrable for n >= 8");
        }
        return std::sqrt(std::pow(M_PI, 0.5 * n) * std::tgamma(4.0 - 0.5 * n) / std::tgamma(4.0));
    };
    p.tail_l2sq = [](double R, int n) {
        if (n >= 8) return std::numeric_limits<double>::infinity();
        return std::pow(R, n - 8) / (8.0 - n);
    };
    p.label = "cauchy";
    return p;
}

RadialProfile ring(double center, double width) {
    if (!(width > 0.0) || !(center > width)) {
        throw std::invalid_argument("ring: need 0 < width < center");
    }
    RadialProfile p;
    p.evaluate = [center, width](double r) {
        const double x = (r - center) / width;
        return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0;
    };
    p.tail_l2sq = [center, width](double R, int n) {
        const double outer = center + width;
        return R >= outer ? 0.0 : (std::pow(outer, n) - std::pow(R, n)) / n;
    };
    p.breakpoints = {center - width, center, center + width};
    std::ostringstream label;
    label << "ring(" << center << "," << width << ")";
    p.label = label.str();
    return p;
}

RadialProfile data_library(const std::string& spec) {
    static const std::regex pattern(R"(^\s*([a-z_-]+)\s*(?:\(([^)]*)\))?\s*$)");
    std::smatch match;
    if (!std::regex_match(spec, match, pattern)) {
        throw std::invalid_argument("unknown data '" + spec + "'");
    }
    const std::string name = match[1];
    std::vector<double> args;
    if (match[2].matched) {
        std::stringstream ss(match[2].str());
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                args.push_back(std::stod(item, &used));
                if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw std::invalid_argument("bad parameter '" + item + "' in data '" + spec + "'");
            }
        }
    }
    const auto expect = [&](std::size_t count) {
        if (args.size() > count) {
            throw std::invalid_argument("too many parameters in data '" + spec + "'");
        }
    };
    if (name == "gaussian") {
        expect(1);
        return gaussian(args.empty() ? 1.0 : args[0]);
    }
    if (name == "box") {
        expect(1);
        return box(args.empty() ? 1.0 : args[0]);
    }
    if (name == "cauchy" || name == "cauchy-like") {
        expect(0);
        return cauchy_like();
    }
    if (name == "ring") {
        expect(2);
        return ring(args.size() > 0 ? args[0] : 1.0, args.size() > 1 ? args[1] : 0.1);
    }
    throw std::invalid_argument("unknown data '" + spec + "' (expected gaussian, box, cauchy or ring)");
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {
constexpr int kTransitionGrading = 8;
}

QuadratureRule make_rule(const QuadratureSettings& settings, double t, const std::vector<double>& extra_breaks) {
    const double R = settings.cutoff_radius;
    if (!(R > 0.0) || settings.nodes_per_panel < 1 || settings.grading_levels < 0) {
        throw std::invalid_argument("make_rule: need R > 0, nodes >= 1, grading >= 0");
    }
    std::vector<double> breaks = {0.0, R, 0.25, 1.0 / 3.0, 0.5, 1.0, 2.0};
    for (int i = 1; i <= settings.grading_levels; ++i) {
        breaks.push_back(0.25 * std::ldexp(1.0, -i));
    }
    for (int k = 3; k < R; ++k) {
        breaks.push_back(k);
    }
    // the cutoffs behave like exp(-1/x) at both ends of their transition bands
    for (const auto& [a, b] : {std::pair{0.25, 1.0 / 3.0}, std::pair{1.0, 2.0}}) {
        for (int i = 1; i <= kTransitionGrading; ++i) {
            const double h = (b - a) * std::ldexp(1.0, -i);
            breaks.push_back(a + h);
            breaks.push_back(b - h);
        }
    }
    breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
    std::erase_if(breaks, [R](double x) { return !(x >= 0.0 && x <= R); });
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, b); }),
                 breaks.end());

    const double cap = t > 0.0 ? std::min(1.0, 8.0 / std::min(t, 100.0)) : 1.0;
    QuadratureRule rule;
    rule.cutoff_radius = R;
    rule.nodes_per_panel = settings.nodes_per_panel;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = breaks[i + 1];
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / cap - 1e-12)));
        for (int p = 0; p < pieces; ++p) {
            rule.panels.push_back({a + (b - a) * p / pieces, a + (b - a) * (p + 1) / pieces});
        }
    }
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(settings.nodes_per_panel)),
        &gsl_integration_glfixed_table_free);
    if (!table) {
        throw std::runtime_error("make_rule: could not build Gauss-Legendre table");
    }
    for (const auto& panel : rule.panels) {
        for (int i = 0; i < settings.nodes_per_panel; ++i) {
            double x = 0.0;
            double w = 0.0;
            gsl_integration_glfixed_point(panel.a, panel.b, static_cast<std::size_t>(i), &x, &w, table.get());
            rule.nodes.push_back(x);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

double radial_l2(const std::function<double(double)>& values, int n, const QuadratureRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        const double v = values(r);
        acc += rule.weights[i] * v * v * std::pow(r, n - 1);
    }
    return std::sqrt(sphere_area(n) * acc);
}

namespace {

void check_tail(const RadialProfile& data, int n, double max_abs_factor, double value, const QuadratureRule& rule,
                double tolerance) {
    const double tail_sq = data.tail_l2sq ? data.tail_l2sq(rule.cutoff_radius, n) : 0.0;
    if (tail_sq == 0.0 || max_abs_factor == 0.0) {
        return;
    }
    const double estimate = max_abs_factor * std::sqrt(sphere_area(n) * tail_sq);
    if (!(estimate <= tolerance * value) && estimate > 1e-300) {
        std::ostringstream msg;
        msg << "quadrature tail beyond R = " << rule.cutoff_radius << " is " << estimate << " against norm "
            << value << " for data " << data.label << " (relative tolerance " << tolerance << ")";
        throw AccuracyError(msg.str(), estimate, tolerance);
    }
}

}  // namespace

double l2_norm_radial(const std::function<double(double)>& values, const RadialProfile& data, int n,
                      double max_abs_factor, const QuadratureRule& rule, double tail_tolerance) {
    const double value = radial_l2(values, n, rule);
    check_tail(data, n, max_abs_factor, value, rule, tail_tolerance);
    return value;
}

double l2_norm_radial(const mult::Multiplier& m, const RadialProfile& data, int n, double t,
                      const QuadratureRule& rule, double tail_tolerance) {
    if (n < 1 || !(t >= 0.0)) {
        throw std::domain_error("l2_norm_radial: need n >= 1 and t >= 0");
    }
    double max_factor = 0.0;
    for (int j = 0; j <= 24; ++j) {
        max_factor = std::max(max_factor, std::abs(m(rule.cutoff_radius * (1.0 + j / 8.0), t)));
    }
    return l2_norm_radial([&](double r) { return m(r, t) * data(r); }, data, n, max_factor, rule, tail_tolerance);
}

MomentCheck moment_bound_check(int k, int n, double t) {
    if (k < 0 || n < 1 || !(t >= 0.0)) {
        throw std::domain_error("moment_bound_check: need k >= 0, n >= 1, t >= 0");
    }
    QuadratureSettings settings;
    settings.cutoff_radius = 1.0;
    settings.nodes_per_panel = 24;
    settings.grading_levels = 20;
    const QuadratureRule rule = make_rule(settings);
    const double lhs = radial_l2([&](double r) { return std::pow(r, k) * std::exp(-t * r * r); }, n, rule);
    return MomentCheck{lhs, lhs / std::pow(1.0 + t, -0.25 * n - 0.5 * k)};
}

// ---------------------------------------------------------------------------
// Grid path

namespace {

void check_grid(int n, std::size_t N, double L) {
    if ((n != 1 && n != 2) || N < 2 || (N & (N - 1)) != 0 || !(L > 0.0)) {
        throw std::invalid_argument("grid needs n in {1,2}, N a power of two >= 2, L > 0");
    }
}

std::size_t total_points(int n, std::size_t N) { return n == 1 ? N : N * N; }

long signed_index(std::size_t k, std::size_t N) {
    return k < N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
}

using Spectrum = std::vector<std::complex<double>>;

struct FftwPlan {
    fftw_plan plan = nullptr;
    ~FftwPlan() {
        if (plan) fftw_destroy_plan(plan);
    }
};

// In-place unnormalized DFT; sign is FFTW_FORWARD or FFTW_BACKWARD.
void dft(Spectrum& data, int n, std::size_t N, int sign) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    FftwPlan p;
    const int size = static_cast<int>(N);
    p.plan = n == 1 ? fftw_plan_dft_1d(size, ptr, ptr, sign, FFTW_ESTIMATE)
                    : fftw_plan_dft_2d(size, size, ptr, ptr, sign, FFTW_ESTIMATE);
    fftw_execute(p.plan);
}

// (-1)^{sum k_d}: the phase from the grid starting at -L/2.
double parity(std::size_t flat, int n, std::size_t N) {
    std::size_t sum = n == 1 ? flat : flat / N + flat % N;
    return (sum % 2 == 0) ? 1.0 : -1.0;
}

GridField inverse_transform(const Spectrum& spectrum, int n, std::size_t N, double L) {
    Spectrum work(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        work[i] = spectrum[i] * parity(i, n, N);
    }
    dft(work, n, N, FFTW_BACKWARD);
    GridField out = zero_field(n, N, L);
    const double scale = std::pow(static_cast<double>(N) * out.dx(), n);
    for (std::size_t i = 0; i < work.size(); ++i) {
        out.values[i] = work[i].real() / scale;
    }
    return out;
}

void require_same_shape(const GridField& a, const GridField& b) {
    if (a.n != b.n || a.N != b.N || a.L != b.L) {
        throw std::invalid_argument("grid fields have different shapes");
    }
}

}  // namespace

GridField zero_field(int n, std::size_t N, double L) {
    check_grid(n, N, L);
    GridField f;
    f.n = n;
    f.N = N;
    f.L = L;
    f.values.assign(total_points(n, N), 0.0);
    return f;
}

GridField sample_physical(const std::function<double(double)>& radial, int n, std::size_t N, double L) {
    GridField f = zero_field(n, N, L);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (n == 1) {
            f.values[i] = radial(std::abs(f.coordinate(i)));
        } else {
            f.values[i] = radial(std::hypot(f.coordinate(i / N), f.coordinate(i % N)));
        }
    }
    return f;
}

std::vector<double> radial_frequencies(int n, std::size_t N, double L) {
    check_grid(n, N, L);
    const double dxi = 2.0 * M_PI / L;
    std::vector<double> out(total_points(n, N));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (n == 1) {
            out[i] = dxi * std::abs(static_cast<double>(signed_index(i, N)));
        } else {
            out[i] = dxi * std::hypot(static_cast<double>(signed_index(i / N, N)),
                                      static_cast<double>(signed_index(i % N, N)));
        }
    }
    return out;
}

GridField from_fourier(const RadialProfile& data, int n, std::size_t N, double L) {
    const std::vector<double> xi = radial_frequencies(n, N, L);
    Spectrum spectrum(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        spectrum[i] = data(xi[i]);
    }
    return inverse_transform(spectrum, n, N, L);
}

std::vector<std::complex<double>> forward_transform(const GridField& field) {
    check_grid(field.n, field.N, field.L);
    Spectrum work(field.values.begin(), field.values.end());
    dft(work, field.n, field.N, FFTW_FORWARD);
    const double scale = std::pow(field.dx(), field.n);
    for (std::size_t i = 0; i < work.size(); ++i) {
        work[i] *= scale * parity(i, field.n, field.N);
    }
    return work;
}

double fourier_norm(const GridField& field) {
    double acc = 0.0;
    for (double v : field.values) acc += v * v;
    return std::pow(2.0 * M_PI, 0.5 * field.n) * std::sqrt(acc * std::pow(field.dx(), field.n));
}

double top_octave_fraction(const GridField& field) {
    const Spectrum spectrum = forward_transform(field);
    const long quarter = static_cast<long>(field.N / 4);
    double total = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double e = std::norm(spectrum[i]);
        total += e;
        bool high = false;
        if (field.n == 1) {
            high = std::abs(signed_index(i, field.N)) > quarter;
        } else {
            high = std::abs(signed_index(i / field.N, field.N)) > quarter ||
                   std::abs(signed_index(i % field.N, field.N)) > quarter;
        }
        if (high) top += e;
    }
    return total > 0.0 ? top / total : 0.0;
}

GridEvolution evolve_grid(const GridField& u0, const GridField& u1, double t, const EvolveOptions& options) {
    require_same_shape(u0, u1);
    if (!(t > 0.0)) {
        throw std::domain_error("evolve_grid: t must be positive");
    }
    for (const GridField* f : {&u0, &u1}) {
        const double fraction = top_octave_fraction(*f);
        if (fraction > options.alias_tolerance) {
            std::ostringstream msg;
            msg << "grid does not resolve the data: top-octave energy fraction " << fraction << " exceeds "
                << options.alias_tolerance;
            throw ResolutionError(msg.str(), fraction);
        }
    }
    const int n = u0.n;
    const std::size_t N = u0.N;
    const double L = u0.L;
    const Spectrum a = forward_transform(u0);
    const Spectrum b = forward_transform(u1);
    const std::vector<double> xi = radial_frequencies(n, N, L);

    const mult::WaveProfile w1(1, options.b);
    const mult::WaveProfile w2(2, options.b);
    const mult::DiffusiveProfile d1(1, options.l);
    const mult::DiffusiveProfile d2(2, options.l);
    const double damp = std::exp(-0.5 * t);

    Spectrum su(xi.size()), swave(xi.size()), sdiff(xi.size()), sw(xi.size()), swt(xi.size()), sv(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double r = xi[i];
        const std::complex<double> half_plus = 0.5 * a[i] + b[i];
        const double s1 = t * mult::sinc(t * r);
        su[i] = mult::k0_hat(r, t) * a[i] + mult::k1_hat(r, t) * half_plus;
        swave[i] = damp * (w1(r, t) * a[i] + w2(r, t) * half_plus);
        sdiff[i] = d1(r, t) * a[i] + d2(r, t) * half_plus;
        sw[i] = std::cos(t * r) * a[i] + s1 * b[i];
        swt[i] = s1 * a[i];
        sv[i] = std::exp(-t * r * r) * (a[i] + b[i]);
    }
    return GridEvolution{inverse_transform(su, n, N, L),   inverse_transform(swave, n, N, L),
                         inverse_transform(sdiff, n, N, L), inverse_transform(sw, n, N, L),
                         inverse_transform(swt, n, N, L),   inverse_transform(sv, n, N, L)};
}

// ---------------------------------------------------------------------------
// Export

void write_csv(const std::string& path, const std::vector<std::pair<std::string, const GridField*>>& fields) {
    if (fields.empty()) {
        throw std::invalid_argument("write_csv: no fields");
    }
    const GridField& first = *fields.front().second;
    for (const auto& [name, field] : fields) require_same_shape(first, *field);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << (first.n == 1 ? "x" : "x,y");
    for (const auto& [name, field] : fields) out << ',' << name;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first.n == 1) {
            std::snprintf(buf, sizeof buf, "%.17g", first.coordinate(i));
            out << buf;
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", first.coordinate(i / first.N),
                          first.coordinate(i % first.N));
            out << buf;
        }
        for (const auto& [name, field] : fields) {
            std::snprintf(buf, sizeof buf, ",%.17g", field->values[i]);
            out << buf;
        }
        out << '\n';
    }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    if (!in) throw std::runtime_error("truncated binary grid file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
    return v;
}

}  // namespace

void write_binary(const std::string& path, const GridField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    put_u64(out, static_cast<std::uint64_t>(field.n));
    put_u64(out, static_cast<std::uint64_t>(field.N));
    put_u64(out, std::bit_cast<std::uint64_t>(field.L));
    for (double v : field.values) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

GridField read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    const auto n = static_cast<int>(get_u64(in));
    const auto N = static_cast<std::size_t>(get_u64(in));
    const double L = std::bit_cast<double>(get_u64(in));
    GridField f = zero_field(n, N, L);
    for (double& v : f.values) v = std::bit_cast<double>(get_u64(in));
    return f;
}

}  // namespace dwave::spectral
