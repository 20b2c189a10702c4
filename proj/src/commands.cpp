#include "dwave/commands.hpp"

#include "dwave/expansion_kernels.hpp"
#include "dwave/lemma_suite.hpp"
#include "dwave/rate_lab.hpp"
#include "dwave/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace dwave::cli {

using Json = nlohmann::ordered_json;

namespace {

const char* const kSubcommands[] = {"coeffs", "lemmas", "equiv", "rates", "decompose"};
constexpr const char* kDefaultSnapshotDir = "dwave-decompose";

spectral::RadialProfile resolve_data(const RunConfig& c) {
    if (c.sigma) {
        if (c.data != "gaussian") {
            throw ConfigError("--sigma applies only to plain '--data gaussian'");
        }
        if (!(*c.sigma > 0.0)) {
            throw ConfigError("--sigma must be positive");
        }
        return spectral::gaussian(*c.sigma);
    }
    try {
        return spectral::data_library(c.data);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

spectral::QuadratureSettings quadrature(const RunConfig& c) {
    spectral::QuadratureSettings s;
    s.cutoff_radius = c.R;
    s.nodes_per_panel = c.nodes;
    return s;
}

bool is_power_of_two(std::size_t v) { return v >= 2 && (v & (v - 1)) == 0; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

Json trig_json(const kernels::TrigPoly& p) {
    Json j;
    j["denominator_r_power"] = p.denominator_r_power();
    Json terms = Json::array();
    for (const auto& [key, c] : p.terms()) {
        Json t;
        t["coeff"] = c.str();
        t["t_power"] = key.t_power;
        t["r_power"] = key.r_power;
        t["phase"] = key.phase == kernels::Phase::Sin ? "sin" : "cos";
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

void emit(std::ostream& out, const std::string& format, const Json& json, const std::string& table,
          const std::string& csv) {
    if (format == "json") {
        out << json.dump(2) << "\n";
    } else if (format == "csv") {
        out << csv;
    } else {
        out << table;
    }
}

}  // namespace

void validate(const RunConfig& c) {
    bool known = false;
    for (const char* s : kSubcommands) known = known || c.subcommand == s;
    if (!known) throw ConfigError("unknown subcommand '" + c.subcommand + "'");
    if (c.n < 1) throw ConfigError("--n must be >= 1");
    if (c.b < 1) throw ConfigError("--b must be >= 1");
    if (c.l < 1) throw ConfigError("--l must be >= 1");
    if (c.i < 0 || c.i > 2) throw ConfigError("--i must be 0 (both pieces), 1 or 2");
    try {
        (void)mult::parse_region(c.region);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.m < 0) throw ConfigError("--m must be >= 0");
    if (c.max_k < 1) throw ConfigError("--max-k must be >= 1");
    if (!(c.R > 0.0)) throw ConfigError("--R must be positive");
    if (c.nodes < 1) throw ConfigError("--nodes must be >= 1");
    if (!(c.tmin > 0.0) || !(c.tmax > c.tmin)) throw ConfigError("need 0 < --tmin < --tmax");
    if (c.samples < 5) throw ConfigError("--samples must be >= 5 for a rate fit");
    if (c.format != "table" && c.format != "json" && c.format != "csv") {
        throw ConfigError("--format must be table, json or csv");
    }
    if (c.L && *c.L < 1) throw ConfigError("--L must be >= 1");
    for (const auto& v : {c.alpha, c.beta}) {
        if (v && *v < 0) throw ConfigError("--alpha/--beta must be >= 0");
    }
    for (const auto& v : {c.sing, c.ik}) {
        if (v && *v < 1) throw ConfigError("--sing/--ik must be >= 1");
    }
    if (!(c.t > 0.0)) throw ConfigError("--t must be positive");
    if (c.grid != 0 && !is_power_of_two(c.grid)) throw ConfigError("--grid must be a power of two");
    if (c.length < 0.0) throw ConfigError("--length must be positive");
    if (c.subcommand == "decompose" && c.n > 3) throw ConfigError("decompose supports n = 1, 2, 3");
    if (c.subcommand == "rates" && c.theorem1 && !(2 * c.b > c.n)) {
        throw ConfigError("--theorem1 requires b > n/2 (got n = " + std::to_string(c.n) + ", b = " +
                          std::to_string(c.b) + ")");
    }
    (void)resolve_data(c);
}

int cmd_coeffs(const RunConfig& c, std::ostream& out) {
    const bool all = !c.L && !c.alpha && !c.beta && !c.sing && !c.ik;
    Json json = Json::object();
    std::string table;
    std::string csv = "table,j,k,value\n";

    if (c.L || all) {
        const int J = c.L.value_or(std::max(c.m, 1));
        Json L = Json::object();
        for (int j = 1; j <= J; ++j) {
            const std::string v = series::l_constant(j).str();
            L[std::to_string(j)] = v;
            table += "L_" + std::to_string(j) + " = " + v + "\n";
            csv += "L," + std::to_string(j) + ",," + v + "\n";
        }
        json["L"] = L;
    }
    const int m = std::max(c.alpha.value_or(all ? c.m : 0), c.beta.value_or(all ? c.m : 0));
    const kernels::TakedaCoefficients coeffs = kernels::takeda_coefficients(m);
    if (c.alpha || all) {
        const int am = c.alpha.value_or(c.m);
        Json alpha = Json::array();
        for (const auto& [jk, v] : coeffs.alpha) {
            if (jk.first + jk.second > am) continue;
            alpha.push_back({{"j", jk.first}, {"k", jk.second}, {"value", v.str()}});
            table += "alpha_" + std::to_string(jk.first) + "," + std::to_string(jk.second) + " = " + v.str() + "\n";
            csv += "alpha," + std::to_string(jk.first) + "," + std::to_string(jk.second) + "," + v.str() + "\n";
        }
        json["alpha"] = alpha;
    }
    if (c.beta || all) {
        const int bm = c.beta.value_or(c.m);
        Json beta = Json::array();
        for (int l = 0; l <= bm; ++l) {
            const std::string v = coeffs.beta[static_cast<std::size_t>(l)].str();
            beta.push_back(v);
            table += "beta_" + std::to_string(l) + " = " + v + "\n";
            csv += "beta," + std::to_string(l) + ",," + v + "\n";
        }
        json["beta"] = beta;
    }
    if (c.sing || all) {
        const int K = c.sing.value_or(c.max_k);
        Json sing = Json::array();
        for (int k = 1; k <= K; ++k) {
            const kernels::SingLimit s = kernels::sing_limit(k);
            sing.push_back({{"k", k}, {"t_power", s.t_power}, {"coeff", s.coeff.str()}});
            table += "sing_" + std::to_string(k) + " = t^" + std::to_string(s.t_power) + " * " + s.coeff.str() + "\n";
            csv += "sing," + std::to_string(k) + "," + std::to_string(s.t_power) + "," + s.coeff.str() + "\n";
        }
        json["sing"] = sing;
    }
    if (c.ik || all) {
        const int K = c.ik.value_or(c.max_k);
        Json ik = Json::array();
        for (int k = 1; k <= K; ++k) {
            const kernels::TrigPoly p = kernels::wave_Ik(k);
            ik.push_back({{"k", k}, {"poly", trig_json(p)}});
            table += "I_" + std::to_string(k) + " = " + kernels::to_string(p) + "\n";
            csv += "I," + std::to_string(k) + ",," + csv_field(kernels::to_string(p)) + "\n";
        }
        json["I"] = ik;
    }
    emit(out, c.format, json, table, csv);
    return kExitOk;
}

int cmd_lemmas(const RunConfig& c, std::ostream& out) {
    lemmas::LemmaOptions options;
    options.max_k = c.max_k;
    options.seed = c.seed;
    options.corrupt = c.corrupt;
    const auto results = lemmas::run_all(options);
    bool pass = true;
    Json suites = Json::array();
    std::string table;
    std::string csv = "suite,pass,checks,counterexample\n";
    for (const auto& r : results) {
        pass = pass && r.pass;
        suites.push_back(lemmas::to_json(r));
        table += lemmas::to_line(r) + "\n";
        csv += r.name + "," + (r.pass ? "true" : "false") + "," + std::to_string(r.checks) + "," +
               csv_field(r.counterexample.value_or("")) + "\n";
    }
    table += std::string(pass ? "all " : "not all ") + std::to_string(results.size()) + " suites pass (max k " +
             std::to_string(c.max_k) + ", seed " + std::to_string(c.seed) + (c.corrupt ? ", corrupted" : "") + ")\n";
    Json json;
    json["max_k"] = c.max_k;
    json["seed"] = c.seed;
    json["corrupt"] = c.corrupt;
    json["suites"] = suites;
    json["pass"] = pass;
    emit(out, c.format, json, table, csv);
    return pass ? kExitOk : kExitFailure;
}

int cmd_equiv(const RunConfig& c, std::ostream& out) {
    bool pass = true;
    Json orders = Json::array();
    std::string table;
    std::string csv = "m,equal,generator,k,j,profile,takeda\n";
    for (int m = 0; m <= c.m; ++m) {
        const kernels::EquivalenceResult r = kernels::check_equivalence(m);
        pass = pass && r.equal;
        Json entry;
        entry["m"] = m;
        entry["equal"] = r.equal;
        std::string line = "m=" + std::to_string(m) + ": " + (r.equal ? "true" : "false");
        std::string row = std::to_string(m) + "," + (r.equal ? "true" : "false");
        if (r.mismatch) {
            const auto& mm = *r.mismatch;
            const std::string gen = mm.which == kernels::Generator::G ? "g" : "h";
            entry["mismatch"] = {{"generator", gen},
                                 {"k", mm.k},
                                 {"j", mm.j},
                                 {"profile", mm.profile_coeff.str()},
                                 {"takeda", mm.takeda_coeff.str()}};
            line += " (" + gen + " part, monomial r^" + std::to_string(2 * mm.k) + " (t r^2)^" +
                    std::to_string(mm.j) + ": profile " + mm.profile_coeff.str() + ", Takeda " +
                    mm.takeda_coeff.str() + ")";
            row += "," + gen + "," + std::to_string(mm.k) + "," + std::to_string(mm.j) + "," +
                   mm.profile_coeff.str() + "," + mm.takeda_coeff.str();
        } else {
            row += ",,,,,";
        }
        orders.push_back(entry);
        table += line + "\n";
        csv += row + "\n";
    }
    Json json;
    json["m"] = c.m;
    json["orders"] = orders;
    json["pass"] = pass;
    emit(out, c.format, json, table, csv);
    return pass ? kExitOk : kExitFailure;
}

int cmd_rates(const RunConfig& c, std::ostream& out, std::ostream&) {
    const spectral::RadialProfile data = resolve_data(c);
    rates::RatesOptions options;
    options.window = rates::Window{c.tmin, c.tmax};
    options.samples = c.samples;
    options.quadrature = quadrature(c);
    if (c.theorem1) {
        const rates::Theorem1Report report = rates::check_theorem1(c.n, c.b, c.l, data, data, options);
        emit(out, c.format, rates::to_json(report), rates::to_table(report), rates::to_csv(report.full));
        return report.pass ? kExitOk : kExitFailure;
    }
    rates::SweepConfig config;
    config.n = c.n;
    config.b = c.b;
    config.l = c.l;
    config.piece = rates::piece_from_index(c.i);
    config.region = mult::parse_region(c.region);
    config.data0 = data;
    config.data1 = data;
    config.quadrature = options.quadrature;
    const rates::RatesReport report = rates::run_rates(config, options);
    emit(out, c.format, rates::to_json(report), rates::to_table(report), rates::to_csv(report.sweep));
    return report.pass ? kExitOk : kExitFailure;
}

int cmd_decompose(const RunConfig& c, std::ostream& out, std::ostream&) {
    const spectral::RadialProfile data = resolve_data(c);
    const spectral::QuadratureSettings settings = quadrature(c);
    const double t = c.t;
    const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(kDefaultSnapshotDir) : std::filesystem::path(c.out);

    struct Row {
        std::string name;
        std::optional<double> grid;
        double radial;
    };
    std::vector<Row> rows;
    const spectral::QuadratureRule rule = spectral::make_rule(settings, t, data.breakpoints);
    const mult::Multiplier exact{[](double r, double s) { return mult::k0_hat(r, s) + 1.5 * mult::k1_hat(r, s); },
                                 "k0+3/2 k1"};
    const double radial_u = spectral::l2_norm_radial(exact, data, c.n, t, rule);
    const double radial_v = 2.0 * spectral::l2_norm_radial(mult::comparison_multipliers().heat_hat, data, c.n, t, rule);
    const double radial_rem = rates::decomposition_norm(c.n, t, data, 0.0, settings);
    const double radial_tilde = rates::decomposition_norm(c.n, t, data, 1.0, settings);

    Json files = Json::array();
    std::size_t N = 0;
    double L = 0.0;
    if (c.n <= 2) {
        N = c.grid != 0 ? c.grid : (c.n == 1 ? 4096 : 256);
        L = c.length > 0.0 ? c.length : (c.n == 1 ? 160.0 : 80.0);
        const spectral::GridField u0 = spectral::from_fourier(data, c.n, N, L);
        const spectral::GridEvolution e = spectral::evolve_grid(u0, u0, t);
        spectral::GridField damped = e.w;
        spectral::GridField rem = e.u;
        spectral::GridField rem_tilde = e.u;
        const double damp = std::exp(-0.5 * t);
        for (std::size_t k = 0; k < rem.size(); ++k) {
            damped.values[k] = damp * e.w.values[k];
            rem.values[k] = e.u.values[k] - damped.values[k] - e.v.values[k];
            rem_tilde.values[k] = rem.values[k] - damp * (0.5 + t / 8.0) * e.wtilde.values[k];
        }
        std::filesystem::create_directories(dir);
        spectral::write_csv((dir / "snapshot.csv").string(),
                            {{"u", &e.u}, {"damped_wave", &damped}, {"heat", &e.v}, {"remainder", &rem}});
        files.push_back((dir / "snapshot.csv").string());
        for (const auto& [name, field] : std::vector<std::pair<std::string, const spectral::GridField*>>{
                 {"u", &e.u}, {"damped_wave", &damped}, {"heat", &e.v}, {"remainder", &rem}}) {
            const auto path = dir / (name + ".bin");
            spectral::write_binary(path.string(), *field);
            files.push_back(path.string());
        }
        rows = {{"|u^|", spectral::fourier_norm(e.u), radial_u},
                {"|v^|", spectral::fourier_norm(e.v), radial_v},
                {"|u^ - e^{-t/2}w^ - v^|", spectral::fourier_norm(rem), radial_rem},
                {"|u^ - e^{-t/2}(w^ + (1/2+t/8)w~^) - v^|", spectral::fourier_norm(rem_tilde), radial_tilde}};
    } else {
        rows = {{"|u^|", std::nullopt, radial_u},
                {"|v^|", std::nullopt, radial_v},
                {"|u^ - e^{-t/2}w^ - v^|", std::nullopt, radial_rem},
                {"|u^ - e^{-t/2}(w^ + (1/2+t/8)w~^) - v^|", std::nullopt, radial_tilde}};
    }

    Json json;
    json["n"] = c.n;
    json["t"] = t;
    json["data"] = data.label;
    if (N != 0) {
        json["grid"] = {{"N", N}, {"L", L}};
    } else {
        json["grid"] = nullptr;
    }
    Json norms = Json::array();
    std::ostringstream table;
    std::string csv = "quantity,grid,radial\n";
    table << "decompose n=" << c.n << " t=" << t << " data=" << data.label;
    if (N != 0) table << " grid N=" << N << " L=" << L;
    else table << " (radial only; the grid path covers n <= 2)";
    table << "\n";
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-44s %24s %24s\n", "quantity", "grid", "radial");
    table << buf;
    for (const auto& row : rows) {
        norms.push_back({{"quantity", row.name},
                         {"grid", row.grid ? Json(*row.grid) : Json(nullptr)},
                         {"radial", row.radial}});
        std::snprintf(buf, sizeof buf, "%-44s %24s %24.16e\n", row.name.c_str(),
                      row.grid ? rates::format_double(*row.grid).c_str() : "-", row.radial);
        table << buf;
        csv += csv_field(row.name) + "," + (row.grid ? rates::format_double(*row.grid) : "") + "," +
               rates::format_double(row.radial) + "\n";
    }
    for (const auto& f : files) table << "wrote " << f.get<std::string>() << "\n";
    json["norms"] = norms;
    json["files"] = files;
    emit(out, c.format, json, table.str(), csv);
    return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (config.subcommand == "decompose") {
            return cmd_decompose(config, out, err);
        }
        std::ofstream file;
        std::ostream* sink = &out;
        if (!config.out.empty()) {
            file.open(config.out, std::ios::binary);
            if (!file) {
                err << "error: cannot open '" << config.out << "' for writing\n";
                return kExitFailure;
            }
            sink = &file;
        }
        if (config.subcommand == "coeffs") return cmd_coeffs(config, *sink);
        if (config.subcommand == "lemmas") return cmd_lemmas(config, *sink);
        if (config.subcommand == "equiv") return cmd_equiv(config, *sink);
        return cmd_rates(config, *sink, err);
    } catch (const spectral::AccuracyError& e) {
        err << "accuracy error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const spectral::ResolutionError& e) {
        err << "resolution error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace dwave::cli
