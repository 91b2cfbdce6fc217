#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stiffness_lab/certificates.hpp"
#include "stiffness_lab/closed_form.hpp"
#include "stiffness_lab/criteria.hpp"
#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/json_io.hpp"
#include "stiffness_lab/transform.hpp"

namespace sl = stifflab;
using sl::json;

namespace {

// A profile argument is either inline JSON (starts with '{'), a path to a
// JSON file, or the inline form "<family> key=value ...", e.g.
// "powerlaw a=1 p=-2", "constant c=3", "exponential a=1 r=-0.5".
sl::CoefficientProfile parse_profile(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') {
        return sl::profile_from_json(json::parse(spec));
    }
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(spec);
        if (!in) {
            throw sl::DomainError("cannot open profile file '" + spec + "'");
        }
        json j;
        in >> j;
        return sl::profile_from_json(j);
    }

    std::istringstream ss(spec);
    std::string family;
    ss >> family;
    json j{{"family", family}};
    std::string kv;
    while (ss >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw sl::DomainError("expected key=value in profile spec, got '" + kv + "'");
        }
        j[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return sl::profile_from_json(j);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw sl::DomainError("cannot write '" + path + "'");
    }
    out << content;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_file(out_path, j.dump(2) + "\n");
    }
}

// Single-panel x1(t) line plot: axes plus one polyline, nothing interactive.
std::string render_svg(const sl::Trajectory& traj) {
    const double w = 720, h = 440, ml = 60, mr = 20, mt = 20, mb = 40;
    double tmin = traj.states.front().t, tmax = tmin;
    double ymin = traj.states.front().x1, ymax = ymin;
    for (const auto& s : traj.states) {
        tmin = std::min(tmin, s.t);
        tmax = std::max(tmax, s.t);
        ymin = std::min(ymin, s.x1);
        ymax = std::max(ymax, s.x1);
    }
    if (ymax == ymin) {
        ymax += 1.0;
        ymin -= 1.0;
    }
    if (tmax == tmin) {
        tmax += 1.0;
    }
    auto px = [&](double t) { return ml + (t - tmin) / (tmax - tmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml << "\" y=\"" << h - 10 << "\" font-size=\"12\">t = "
        << sl::format_number(tmin) << "</text>\n"
        << "<text x=\"" << w - mr - 120 << "\" y=\"" << h - 10 << "\" font-size=\"12\">t = "
        << sl::format_number(tmax) << "</text>\n"
        << "<text x=\"4\" y=\"" << py(ymax) + 4 << "\" font-size=\"12\">"
        << sl::format_number(ymax) << "</text>\n"
        << "<text x=\"4\" y=\"" << py(ymin) + 4 << "\" font-size=\"12\">"
        << sl::format_number(ymin) << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& s : traj.states) {
        svg << px(s.t) << ',' << py(s.x1) << ' ';
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

int sweep_threads() {
    if (const char* env = std::getenv("STIFFNESS_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct SimArgs {
    std::string alpha_spec;
    std::string k_spec;
    std::vector<double> x0{0.0, 1.0, 0.0};
    sl::IntegrationConfig cfg;
};

void add_config_flags(CLI::App* cmd, sl::IntegrationConfig& cfg) {
    cmd->add_option("--horizon", cfg.horizon, "final integration time");
    cmd->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
    cmd->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance");
    cmd->add_option("--escape-radius", cfg.escape_radius,
                    "escape radius (0 = 1e6 * max(1, ||x0||))");
    cmd->add_option("--max-steps", cfg.max_steps, "step budget");
    cmd->add_option("--max-step", cfg.max_step, "maximum step size (0 = unrestricted)");
    cmd->add_option("--samples", cfg.samples, "recorded sample count");
    cmd->add_option("--bound-factor", cfg.bound_factor,
                    "boundedness factor B in the tail test");
}

sl::Trajectory run_sim(const SimArgs& a) {
    const auto alpha = parse_profile(a.alpha_spec);
    const auto k = parse_profile(a.k_spec);
    const sl::PlanarState x0{a.x0[0], a.x0[1], a.x0[2]};
    return sl::integrate(alpha, k, x0, a.cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundedness and instability analysis for x'' + a(t)x' - k(t)x = 0"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "evaluate a boundedness criterion");
    bool use_thm1 = false, use_thm2 = false, use_chetaev = false;
    double beta = 1.0, omega = 1.0, t0 = 0.0, horizon = 100.0;
    std::string k_spec, alpha_spec, out_path;
    std::vector<double> window{1.0, 100.0};
    analyze->add_flag("--thm1", use_thm1, "constant damping, decaying stiffness conditions");
    analyze->add_flag("--thm2", use_thm2, "constant stiffness, growing damping conditions");
    analyze->add_flag("--chetaev", use_chetaev, "cone-based instability certificate");
    analyze->add_option("--beta", beta, "constant damping coefficient");
    analyze->add_option("--omega", omega, "constant frequency (k = omega^2)");
    analyze->add_option("--k", k_spec, "stiffness profile");
    analyze->add_option("--alpha", alpha_spec, "damping profile");
    analyze->add_option("--window", window, "analysis window [start end]")->expected(2);
    analyze->add_option("--t0", t0, "cone construction time (chetaev)");
    analyze->add_option("--horizon", horizon, "lookahead horizon (chetaev)");
    analyze->add_option("-o,--output", out_path, "write JSON here instead of stdout");

    // simulate / classify
    SimArgs sim;
    std::string csv_path, svg_path, report_path;
    auto* simulate = app.add_subcommand("simulate", "integrate and export the trajectory");
    simulate->add_option("--alpha", sim.alpha_spec, "damping profile")->required();
    simulate->add_option("--k", sim.k_spec, "stiffness profile")->required();
    simulate->add_option("--x0", sim.x0, "initial state [t x1 x2]")->expected(3);
    add_config_flags(simulate, sim.cfg);
    simulate->add_option("--csv", csv_path, "trajectory CSV path");
    simulate->add_option("--svg", svg_path, "x1(t) line plot path");
    simulate->add_option("-o,--output", report_path, "classification JSON path");

    SimArgs cls;
    auto* classify_cmd = app.add_subcommand("classify", "integrate and print the verdict");
    classify_cmd->add_option("--alpha", cls.alpha_spec, "damping profile")->required();
    classify_cmd->add_option("--k", cls.k_spec, "stiffness profile")->required();
    classify_cmd->add_option("--x0", cls.x0, "initial state [t x1 x2]")->expected(3);
    add_config_flags(classify_cmd, cls.cfg);
    classify_cmd->add_option("-o,--output", report_path, "classification JSON path");

    // oracle-compare
    auto* oracle = app.add_subcommand("oracle-compare",
                                      "closed-form solution vs numerical integration");
    std::string family_name = "ex3m2";
    double o_beta = 1.0, o_omega = 1.0, o_m = 1.0;
    std::vector<double> o_x0{1.0, 1.0, 0.0};
    sl::IntegrationConfig o_cfg;
    std::string o_csv;
    oracle->add_option("--family", family_name, "ex3m2 | ex4 | ex5x");
    oracle->add_option("--beta", o_beta, "damping parameter");
    oracle->add_option("--omega", o_omega, "frequency parameter");
    oracle->add_option("--m", o_m, "decay/growth rate parameter");
    oracle->add_option("--x0", o_x0, "initial state [t x1 x2]")->expected(3);
    add_config_flags(oracle, o_cfg);
    oracle->add_option("--csv", o_csv, "diff CSV path (default: stdout)");

    // transform
    auto* transform = app.add_subcommand("transform",
                                         "reparametrized coefficients from a time gauge");
    std::string gauge_spec, direction = "thm1";
    double n = 1.0, tr_beta = 1.0, tr_omega = 1.0;
    bool run_check = false;
    std::vector<double> tr_window{1.0, 10.0};
    transform->add_option("--gauge", gauge_spec, "gauge profile (pure family)")->required();
    transform->add_option("--direction", direction, "thm1 | thm2");
    transform->add_option("--n", n, "gauge exponent");
    transform->add_option("--beta", tr_beta, "base damping");
    transform->add_option("--omega", tr_omega, "base frequency");
    transform->add_flag("--check", run_check, "also run the corollary condition check");
    transform->add_option("--window", tr_window, "check window [start end]")->expected(2);
    transform->add_option("-o,--output", out_path, "write JSON here instead of stdout");

    // sweep
    auto* sweep = app.add_subcommand("sweep",
                                     "scan beta/omega for a power-law stiffness family");
    std::vector<double> betas{1.0}, omegas{1.0};
    double sw_p = -1.0;
    std::vector<double> sw_x0{1.0, 1.0, 0.0};
    sl::IntegrationConfig sw_cfg;
    std::string sw_csv;
    sweep->add_option("--betas", betas, "damping values")->delimiter(',');
    sweep->add_option("--omegas", omegas, "frequency values (k = omega^2 t^p)")
        ->delimiter(',');
    sweep->add_option("--p", sw_p, "stiffness power-law exponent");
    sweep->add_option("--x0", sw_x0, "initial state [t x1 x2]")->expected(3);
    add_config_flags(sweep, sw_cfg);
    sweep->add_option("--csv", sw_csv, "result CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (analyze->parsed()) {
            if (static_cast<int>(use_thm1) + static_cast<int>(use_thm2) +
                    static_cast<int>(use_chetaev) !=
                1) {
                throw sl::DomainError("pick exactly one of --thm1, --thm2, --chetaev");
            }
            const sl::Window win{window[0], window[1]};
            json out;
            if (use_thm1) {
                if (k_spec.empty()) {
                    throw sl::DomainError("--thm1 requires --k");
                }
                out = sl::report_to_json(sl::thm1_check(beta, parse_profile(k_spec), win));
                out["criterion"] = "thm1";
                out["beta"] = beta;
            } else if (use_thm2) {
                if (alpha_spec.empty()) {
                    throw sl::DomainError("--thm2 requires --alpha");
                }
                out = sl::report_to_json(
                    sl::thm2_check(omega, parse_profile(alpha_spec), win));
                out["criterion"] = "thm2";
                out["omega"] = omega;
            } else {
                if (k_spec.empty()) {
                    throw sl::DomainError("--chetaev requires --k");
                }
                const auto res =
                    sl::chetaev_instability_check(beta, parse_profile(k_spec), t0, horizon);
                out = {{"criterion", "chetaev"},
                       {"beta", beta},
                       {"t0", t0},
                       {"unstable_certified", res.unstable_certified},
                       {"cone_slope", res.cone_slope}};
                if (res.saddle_growth_rate.has_value()) {
                    out["saddle_growth_rate"] = *res.saddle_growth_rate;
                }
            }
            emit(out, out_path);
            return 0;
        }

        if (simulate->parsed() || classify_cmd->parsed()) {
            const SimArgs& a = simulate->parsed() ? sim : cls;
            const sl::Trajectory traj = run_sim(a);
            if (simulate->parsed() && !csv_path.empty()) {
                write_file(csv_path, sl::trajectory_to_csv(traj));
            }
            if (simulate->parsed() && !svg_path.empty()) {
                write_file(svg_path, render_svg(traj));
            }
            emit(sl::trajectory_summary_json(traj, a.cfg), report_path);
            return 0;
        }

        if (oracle->parsed()) {
            sl::SolutionFamily family;
            if (family_name == "ex3m2") {
                family = sl::SolutionFamily::Ex3m2;
            } else if (family_name == "ex4") {
                family = sl::SolutionFamily::Ex4;
            } else if (family_name == "ex5x") {
                family = sl::SolutionFamily::Ex5x;
            } else {
                throw sl::DomainError("unknown family '" + family_name + "'");
            }
            const sl::PlanarState x0{o_x0[0], o_x0[1], o_x0[2]};
            const auto sol = sl::fit_constants(family, o_beta, o_omega, o_m, x0);
            const auto traj =
                sl::integrate(sl::family_alpha(sol), sl::family_stiffness(sol), x0, o_cfg);

            std::string csv = "t,x_closed_form,x_integrated,abs_diff\n";
            double max_abs_diff = 0.0;
            for (const auto& s : traj.states) {
                const double exact = sl::solution_eval(sol, s.t);
                const double diff = std::abs(exact - s.x1);
                max_abs_diff = std::max(max_abs_diff, diff);
                csv += sl::format_number(s.t) + ',' + sl::format_number(exact) + ',' +
                       sl::format_number(s.x1) + ',' + sl::format_number(diff) + '\n';
            }
            if (o_csv.empty()) {
                std::cout << csv;
            } else {
                write_file(o_csv, csv);
                emit({{"family", family_name},
                      {"c1", sol.c1},
                      {"c2", sol.c2},
                      {"max_abs_diff", max_abs_diff},
                      {"asymptotic_limit", sl::asymptotic_limit(sol)},
                      {"config", sl::config_to_json(o_cfg)}},
                     "");
            }
            return 0;
        }

        if (transform->parsed()) {
            sl::Gauge gauge{parse_profile(gauge_spec), n,
                            direction == "thm2" ? sl::GaugeDirection::Thm2Base
                                                : sl::GaugeDirection::Thm1Base};
            if (direction != "thm1" && direction != "thm2") {
                throw sl::DomainError("--direction must be thm1 or thm2");
            }
            const auto sys = sl::reparametrize(gauge, tr_beta, tr_omega);
            json out{{"direction", direction},
                     {"n", n},
                     {"beta", tr_beta},
                     {"omega", tr_omega},
                     {"alpha", sl::profile_to_json(sys.alpha)},
                     {"k", sl::profile_to_json(sys.k)}};
            if (run_check) {
                out["corollary"] = sl::report_to_json(sl::corollary_condition_check(
                    gauge, tr_beta, tr_omega, {tr_window[0], tr_window[1]}));
            }
            emit(out, out_path);
            return 0;
        }

        if (sweep->parsed()) {
            struct Row {
                double beta, omega;
                std::string condition3;
                std::string classification;
            };
            std::vector<std::pair<double, double>> grid;
            for (double b : betas) {
                for (double w : omegas) {
                    grid.emplace_back(b, w);
                }
            }
            std::vector<Row> rows(grid.size());
            std::atomic<std::size_t> cursor{0};
            auto worker = [&] {
                for (std::size_t i = cursor.fetch_add(1); i < grid.size();
                     i = cursor.fetch_add(1)) {
                    const auto [b, w] = grid[i];
                    const auto k =
                        sl::CoefficientProfile::power_law(w * w, sw_p, sw_x0[0]);
                    const auto rep =
                        sl::thm1_check(b, k, {sw_x0[0], sw_cfg.horizon});
                    const auto traj = sl::integrate(
                        sl::CoefficientProfile::constant(b), k,
                        {sw_x0[0], sw_x0[1], sw_x0[2]}, sw_cfg);
                    rows[i] = {b, w, sl::to_string(rep.condition("decay_rate").status),
                               sl::to_string(traj.classification)};
                }
            };
            const int nthreads =
                std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(grid.size(), 1));
            std::vector<std::thread> pool;
            for (int i = 1; i < nthreads; ++i) {
                pool.emplace_back(worker);
            }
            worker();
            for (auto& th : pool) {
                th.join();
            }

            std::string csv = "beta,omega,decay_rate_condition,classification\n";
            for (const auto& r : rows) {
                csv += sl::format_number(r.beta) + ',' + sl::format_number(r.omega) + ',' +
                       r.condition3 + ',' + r.classification + '\n';
            }
            if (sw_csv.empty()) {
                std::cout << csv;
            } else {
                write_file(sw_csv, csv);
            }
            return 0;
        }
    } catch (const sl::NumericalError& e) {
        std::cerr << json{{"error", "numerical"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const sl::HypothesisError& e) {
        std::cerr << json{{"error", "hypothesis"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const sl::DomainError& e) {
        std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const sl::Error& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
