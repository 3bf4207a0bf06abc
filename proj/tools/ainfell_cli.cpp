// Command-line front end: theta evaluation, triple products, verification
// suites, and the homotopy-coefficient fit.  One self-describing JSON record
// per invocation on stdout; diagnostics on stderr.
//
// Exit codes: 0 success / all checks pass, 1 internal error, 2 invalid
// modulus or unknown suite, 3 pole-margin violation, 4 transversality-margin
// violation, 5 ill-conditioned fit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ainfell/homotopy.hpp"
#include "ainfell/oracle.hpp"
#include "ainfell/products.hpp"
#include "ainfell/theta.hpp"
#include "ainfell/verify.hpp"

using json = nlohmann::json;
using C = std::complex<double>;

namespace {

struct RunConfig {
    double eps = 1e-12;
    int max_terms = 200000;
    int N = 256;
    int M = 64;
    double pole_margin = 1e-3;
    double transversality_margin = 1e-6;
    std::uint64_t seed = 1;
    std::string precision = "double";
    std::string out_path;
};

// config file from AINFELL_CONFIG (or --config), merged under explicit flags
RunConfig load_config(const std::string& explicit_path) {
    RunConfig cfg;
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("AINFELL_CONFIG")) path = env;
    }
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
    if (j.contains("max_terms")) cfg.max_terms = j["max_terms"].get<int>();
    if (j.contains("N")) cfg.N = j["N"].get<int>();
    if (j.contains("M")) cfg.M = j["M"].get<int>();
    if (j.contains("pole_margin")) cfg.pole_margin = j["pole_margin"].get<double>();
    if (j.contains("transversality_margin"))
        cfg.transversality_margin = j["transversality_margin"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("precision")) cfg.precision = j["precision"].get<std::string>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    return cfg;
}

C parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected RE,IM pair: " + s);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::pair<long long, long long> parse_char(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("expected P/Q characteristic: " + s);
    return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

json cxj(const C& z) { return json::array({z.real(), z.imag()}); }

void emit(const json& j, const RunConfig& cfg) {
    const std::string text = j.dump();
    std::cout << text << "\n";
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        f << text << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"a-infinity transfer and elliptic triple products"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "config file (also AINFELL_CONFIG)");

    // theta
    auto* cmd_theta = app.add_subcommand("theta", "evaluate a theta function");
    std::string theta_x, theta_tau, theta_char_s;
    std::optional<double> theta_eps;
    cmd_theta->add_option("--x", theta_x, "argument RE,IM")->required();
    cmd_theta->add_option("--tau", theta_tau, "modulus RE,IM")->required();
    cmd_theta->add_option("--char", theta_char_s, "rational characteristic P/Q");
    cmd_theta->add_option("--eps", theta_eps, "absolute tail target");

    // m3
    auto* cmd_m3 = app.add_subcommand("m3", "evaluate a triple product");
    std::string m3_side = "holomorphic", m3_u, m3_v, m3_tau;
    long long m3_k = 1, m3_l = 1, m3_a = 0, m3_b = 0, m3_c = 0, m3_d = 0;
    cmd_m3->add_option("--side", m3_side, "holomorphic | fukaya | oracle")
        ->check(CLI::IsMember({"holomorphic", "fukaya", "oracle"}));
    cmd_m3->add_option("--k", m3_k)->required();
    cmd_m3->add_option("--l", m3_l)->required();
    cmd_m3->add_option("--a", m3_a);
    cmd_m3->add_option("--b", m3_b);
    cmd_m3->add_option("--c", m3_c);
    cmd_m3->add_option("--d", m3_d);
    cmd_m3->add_option("--u", m3_u, "twist RE,IM")->required();
    cmd_m3->add_option("--v", m3_v, "twist RE,IM")->required();
    cmd_m3->add_option("--tau", m3_tau, "modulus RE,IM")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    std::optional<std::uint64_t> verify_seed;
    std::optional<double> verify_tol;
    cmd_verify->add_option("--suite", suite,
                           "ainf | morphism | cyclic | theta-addition | periodicity | residue | "
                           "homotopy | oracle")
        ->required();
    cmd_verify->add_option("--seed", verify_seed);
    cmd_verify->add_option("--tol", verify_tol);

    // fit-homotopy
    auto* cmd_fit = app.add_subcommand("fit-homotopy", "fit the difference expansion and check n2");
    long long fit_k = 1, fit_l = 1, fit_a = 0, fit_d = 0;
    std::string fit_w, fit_tau;
    int fit_samples = 8;
    std::optional<std::uint64_t> fit_seed;
    cmd_fit->add_option("--k", fit_k)->required();
    cmd_fit->add_option("--l", fit_l)->required();
    cmd_fit->add_option("--a", fit_a);
    cmd_fit->add_option("--d", fit_d);
    cmd_fit->add_option("--w", fit_w, "target twist RE,IM (lattice coordinates c1,c2)")->required();
    cmd_fit->add_option("--tau", fit_tau, "modulus RE,IM")->required();
    cmd_fit->add_option("--samples", fit_samples);
    cmd_fit->add_option("--seed", fit_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);

        if (*cmd_theta) {
            ainfell::TruncationPolicy pol;
            pol.eps = theta_eps.value_or(cfg.eps);
            pol.max_terms = cfg.max_terms;
            const C x = parse_pair(theta_x);
            const C tauv = parse_pair(theta_tau);
            double r = 0.0;
            if (!theta_char_s.empty()) {
                const auto [p, q] = parse_char(theta_char_s);
                r = ainfell::Characteristic(p, q).value();
            }
            ainfell::Modulus tau(tauv); // throws on Im <= 0
            json out;
            if (cfg.precision == "extended") {
                const auto e = ainfell::theta_char_eval<long double>(
                    r, std::complex<long double>(x.real(), x.imag()),
                    std::complex<long double>(tauv.real(), tauv.imag()), pol);
                out["value"] = json::array({double(e.value.real()), double(e.value.imag())});
                out["terms_used"] = e.terms_used;
                out["precision"] = "extended";
            } else {
                const auto e = ainfell::theta_char_eval<double>(r, x, tau.tau, pol);
                out["value"] = cxj(e.value);
                out["terms_used"] = e.terms_used;
            }
            emit(out, cfg);
            return 0;
        }

        if (*cmd_m3) {
            ainfell::TripleProductQuery q;
            q.k = m3_k;
            q.l = m3_l;
            q.a = m3_a;
            q.b = m3_b;
            q.c = m3_c;
            q.d = m3_d;
            q.tau = ainfell::Modulus(parse_pair(m3_tau));
            q.u = ainfell::LatticeCoord::from_value(parse_pair(m3_u), q.tau);
            q.v = ainfell::LatticeCoord::from_value(parse_pair(m3_v), q.tau);
            ainfell::SeriesSettings set;
            set.eps = cfg.eps;
            set.pole_margin = cfg.pole_margin;
            set.transversality_margin = cfg.transversality_margin;

            json out;
            out["query"] = {{"k", q.k}, {"l", q.l}, {"a", q.a}, {"b", q.b}, {"c", q.c},
                            {"d", q.d}, {"u", cxj(q.u.value)}, {"v", cxj(q.v.value)},
                            {"tau", cxj(q.tau.tau)}};
            if (m3_side == "holomorphic" || m3_side == "fukaya") {
                out["G"] = cxj(ainfell::m3_holomorphic(q, set));
                out["F"] = cxj(ainfell::m3_fukaya(q, set));
            } else {
                out["G"] = cxj(ainfell::m3_holomorphic(q, set));
                out["oracle"] = cxj(ainfell::m3_oracle(q, cfg.N, cfg.M));
            }
            emit(out, cfg);
            return 0;
        }

        if (*cmd_verify) {
            ainfell::VerifyOptions opt;
            opt.seed = verify_seed.value_or(cfg.seed);
            opt.tol_override = verify_tol.value_or(0.0);
            opt.N = std::min(cfg.N, 128);
            opt.M = std::min(cfg.M, 32);
            opt.extended = cfg.precision == "extended";
            const auto results = ainfell::run_suite(suite, opt); // throws unknown_suite
            bool all = true;
            json arr = json::array();
            for (const auto& r : results) {
                all = all && r.pass;
                std::cerr << (r.pass ? "[pass] " : "[FAIL] ") << suite << "/" << r.name
                          << " residual=" << r.residual << " tol=" << r.tol << "\n";
                arr.push_back({{"check", r.name}, {"residual", r.residual}, {"tol", r.tol},
                               {"pass", r.pass}});
            }
            json out;
            out["suite"] = suite;
            out["seed"] = opt.seed;
            out["checks"] = arr;
            out["pass"] = all;
            emit(out, cfg);
            return all ? 0 : 1;
        }

        if (*cmd_fit) {
            const ainfell::Modulus tau(parse_pair(fit_tau));
            const C wpair = parse_pair(fit_w);
            ainfell::SeriesSettings set;
            set.eps = cfg.eps;
            set.pole_margin = cfg.pole_margin;
            set.transversality_margin = cfg.transversality_margin;
            const auto samples = ainfell::homotopy_u_samples(fit_k, fit_l, tau, fit_samples,
                                                             fit_seed.value_or(cfg.seed));
            const auto fit = ainfell::homotopy_fit(fit_k, fit_l, fit_a, fit_d, wpair.real(),
                                                   wpair.imag(), tau, samples, set);
            // end-to-end identity at a fresh point (requires all d)
            const auto fits = ainfell::homotopy_fit_all_d(fit_k, fit_l, fit_a, wpair.real(),
                                                          wpair.imag(), tau, samples, set);
            const auto fresh = ainfell::homotopy_u_samples(fit_k, fit_l, tau, 1,
                                                           fit_seed.value_or(cfg.seed) + 1000);
            const double end_res = ainfell::n2_end_to_end_residual(fit_k, fit_l, fit_a, 0, 0,
                                                                   fresh[0], fits, tau, set);
            json coeffs = json::array();
            for (const auto& [qq, v] : fit.f) coeffs.push_back({qq, v.real(), v.imag()});
            json out;
            out["query"] = {{"k", fit_k}, {"l", fit_l}, {"a", fit_a}, {"d", fit_d},
                            {"w", cxj(wpair)}, {"tau", cxj(tau.tau)}, {"samples", fit_samples}};
            out["fit"] = {{"residual", fit.fit_residual},
                          {"fiber_consistency", fit.fiber_consistency},
                          {"coeffs", coeffs}};
            out["n2_end_to_end_residual"] = end_res;
            emit(out, cfg);
            return 0;
        }
    } catch (const ainfell::invalid_modulus& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ainfell::unknown_suite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ainfell::pole_proximity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ainfell::transversality_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ainfell::ill_conditioned_fit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
