#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uwit/serialize.hpp"

using namespace uwit;

namespace {

Vec3 parse_vec3(const std::string& text) {
    Vec3 v;
    std::stringstream ss(text);
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',')) {
        if (k >= 3) throw std::invalid_argument("expected 3 comma-separated numbers, got more");
        std::size_t used = 0;
        v[k++] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad number in vector: " + tok);
    }
    if (k != 3) throw std::invalid_argument("expected 3 comma-separated numbers");
    return v;
}

Family parse_family(const std::string& f) {
    if (f == "psi") return Family::psi;
    if (f == "phi") return Family::phi;
    throw std::invalid_argument("family must be psi or phi");
}

ExecPolicy parse_policy(const std::string& p) {
    if (p == "serial") return ExecPolicy::serial;
    if (p == "parallel") return ExecPolicy::parallel;
    throw std::invalid_argument("policy must be serial or parallel");
}

std::string sidecar_path(const std::string& out) {
    if (out.size() > 4 && out.substr(out.size() - 4) == ".csv")
        return out.substr(0, out.size() - 4) + ".intervals.json";
    return out + ".intervals.json";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + path);
    os << text;
}

struct StateArgs {
    std::string json_path;
    std::string r = "0,0,0", s = "0,0,0", v = "0,0,0";
};

int cmd_state(const StateArgs& a) {
    Mat4 rho;
    if (!a.json_path.empty()) {
        json j;
        if (a.json_path == "-") {
            std::cin >> j;
        } else {
            std::ifstream is(a.json_path);
            if (!is) throw std::invalid_argument("cannot open " + a.json_path);
            is >> j;
        }
        rho = state_from_json(j);
    } else {
        rho = from_canonical({parse_vec3(a.r), parse_vec3(a.s), parse_vec3(a.v)});
    }
    if (!is_physical(rho)) {
        std::cerr << "unphysical state: min eigenvalue " << min_eigenvalue(rho) << "\n";
        return 2;
    }
    std::cout << report_to_json(witness_report(rho)).dump(2) << "\n";
    return 0;
}

struct McArgs {
    std::string r = "0,0,0", s = "0,0,0", policy = "parallel";
    std::uint64_t n = 10000000, seed = 42;
};

int cmd_montecarlo(const McArgs& a) {
    std::cerr << "sampling " << a.n << " correlation vectors (seed " << a.seed << ")\n";
    const auto t0 = std::chrono::steady_clock::now();
    FractionReport rep = sample_fractions(parse_vec3(a.r), parse_vec3(a.s), a.n,
                                          a.seed, parse_policy(a.policy));
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "done in " << dt << " s\n";
    std::cout << fractions_to_json(rep).dump(2) << "\n";
    return 0;
}

struct PcritArgs {
    std::string family = "psi", estimator = "all";
    double alpha = 0.70710678118654752440, theta = 0.0, purity = 1.0;
    bool as_json = false;
};

int cmd_pcrit(const PcritArgs& a) {
    EwlSpec spec{parse_family(a.family), a.purity, a.alpha, a.theta};
    std::vector<Estimator> list;
    if (a.estimator == "all") {
        list = {Estimator::te, Estimator::me, Estimator::fe};
    } else if (a.estimator == "te") {
        list = {Estimator::te};
    } else if (a.estimator == "me") {
        list = {Estimator::me};
    } else if (a.estimator == "fe") {
        list = {Estimator::fe};
    } else {
        throw std::invalid_argument("estimator must be te, me, fe or all");
    }
    json out = json::object();
    for (Estimator e : list) {
        CriticalP pc = critical_p(spec, e);
        const char* status = pc.status == PcStatus::crossed ? "crossed"
                             : pc.status == PcStatus::never_witnessed ? "never_witnessed"
                                                                      : "always_witnessed";
        out[to_string(e)] = json{{"status", status},
                                 {"pc", pc.status == PcStatus::crossed ? json(pc.pc) : json()},
                                 {"concurrence_region", {pc.c_lo, pc.c_hi}}};
    }
    if (a.as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "estimator  p_c        region_lo  region_hi  status\n";
    for (Estimator e : list) {
        const auto& j = out[to_string(e)];
        char buf[128];
        if (j["pc"].is_null())
            std::snprintf(buf, sizeof(buf), "%-9s  %-9s  %-9.6f  %-9.6f  %s\n", to_string(e),
                          "-", j["concurrence_region"][0].get<double>(),
                          j["concurrence_region"][1].get<double>(),
                          j["status"].get<std::string>().c_str());
        else
            std::snprintf(buf, sizeof(buf), "%-9s  %-9.6f  %-9.6f  %-9.6f  %s\n", to_string(e),
                          j["pc"].get<double>(), j["concurrence_region"][0].get<double>(),
                          j["concurrence_region"][1].get<double>(),
                          j["status"].get<std::string>().c_str());
        std::cout << buf;
    }
    return 0;
}

struct EvolveArgs {
    std::string model;
    double s = 1.0, eta = 0.01, omega_c = 2.0;
    double lambda = 0.1, delta = 0.0;
    std::string family = "psi", policy = "parallel";
    double alpha = 0.70710678118654752440, theta = 0.0, purity = 1.0;
    double t_max = 30.0, step = 0.0;
    std::string out;
};

WitnessTrajectory run_trajectory(const EvolveArgs& a) {
    EwlSpec spec{parse_family(a.family), a.purity, a.alpha, a.theta};
    PTrajectory traj;
    if (a.model == "ohmic") {
        const double step = a.step > 0 ? a.step : (a.t_max > 100 && a.s > 1 ? 0.05 : 0.005);
        std::cerr << "solving amplitude (s=" << a.s << ", eta=" << a.eta
                  << ", omega_c=" << a.omega_c << ", t_max=" << a.t_max
                  << ", step=" << step << ")\n";
        traj = solve_volterra_p({a.s, a.eta, a.omega_c}, a.t_max, step);
        std::cerr << "converged at internal step " << traj.solver_step << "\n";
    } else if (a.model == "lorentzian") {
        const double step = a.step > 0 ? a.step : 0.002;
        traj = lorentzian_trajectory({a.lambda, a.delta, 1.0}, a.t_max, step);
    } else {
        throw std::invalid_argument("model must be ohmic or lorentzian");
    }
    return evolve(spec, std::move(traj), parse_policy(a.policy));
}

int cmd_evolve(const EvolveArgs& a) {
    if (a.out.empty()) throw std::invalid_argument("--out is required");
    WitnessTrajectory wt = run_trajectory(a);
    std::ostringstream csv;
    write_trajectory_csv(csv, wt);
    write_file(a.out, csv.str());
    write_file(sidecar_path(a.out), intervals_to_json(wt).dump(2) + "\n");
    std::cerr << "wrote " << a.out << " and " << sidecar_path(a.out) << "\n";
    return 0;
}

struct FigArgs {
    std::string id;
    std::string outdir = ".";
    std::string policy = "parallel";
};

int cmd_figures(const FigArgs& a) {
    const std::string base = a.outdir + "/fig" + a.id;
    json manifest{{"figure", a.id}};
    std::vector<std::string> files;

    auto mesh_fig = [&](const Vec3& r, const Vec3& s) {
        const int res = 41;
        std::ostringstream csv;
        write_mesh_csv(csv, region_mesh(r, s, res));
        write_file(base + ".csv", csv.str());
        files = {"fig" + a.id + ".csv"};
        manifest["parameters"] = {{"r", {r[0], r[1], r[2]}},
                                  {"s", {s[0], s[1], s[2]}},
                                  {"resolution", res}};
    };
    auto sweep_fig = [&](Family fam) {
        EwlSpec spec{fam, 1.0, 0.70710678118654752440, 0.0};
        const Mat4 rho0 = ewl_state(spec);
        std::ostringstream csv;
        csv << "p,te,me,fe,bb,concurrence\n";
        char buf[200];
        const int n = 1000;
        for (int i = 0; i <= n; ++i) {
            const double p = static_cast<double>(i) / n;
            const Mat4 rho = apply_channel(rho0, p);
            const UncertaintyReport rep = witness_report(rho);
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", p,
                          rep.te, rep.me, rep.fe, rep.bb, rep.concurrence);
            csv << buf;
        }
        write_file(base + ".csv", csv.str());
        files = {"fig" + a.id + ".csv"};
        manifest["parameters"] = {{"family", fam == Family::psi ? "psi" : "phi"},
                                  {"p_step", 1.0 / n},
                                  {"alpha", spec.alpha},
                                  {"purity", spec.r}};
    };
    auto plane_fig = [&] {
        EwlSpec spec{Family::psi, 1.0, 0.70710678118654752440, 0.0};
        const Mat4 rho0 = ewl_state(spec);
        std::ostringstream csv;
        csv << "re_p,im_p,me,fe\n";
        char buf[160];
        const int n = 100;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double re = -1.0 + 2.0 * i / n;
                const double im = -1.0 + 2.0 * j / n;
                if (re * re + im * im > 1.0 + 1e-12) continue;
                const Mat4 rho = apply_channel(rho0, cplx(re, im));
                std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", re, im,
                              measurement_estimate(rho, sigma1(), sigma3()),
                              fano_estimate(rho, sigma1(), sigma3()));
                csv << buf;
            }
        write_file(base + ".csv", csv.str());
        files = {"fig" + a.id + ".csv"};
        manifest["parameters"] = {{"family", "psi"}, {"grid_step", 2.0 / n}};
    };
    auto traj_fig = [&](const std::string& model, Family fam, double sexp, double delta,
                        double t_max, double step) {
        EvolveArgs ea;
        ea.model = model;
        ea.s = sexp;
        ea.eta = 0.01;
        ea.omega_c = 2.0;
        ea.lambda = 0.1;
        ea.delta = delta;
        ea.family = fam == Family::psi ? "psi" : "phi";
        ea.t_max = t_max;
        ea.step = step;
        ea.policy = a.policy;
        WitnessTrajectory wt = run_trajectory(ea);
        std::ostringstream csv;
        write_trajectory_csv(csv, wt);
        write_file(base + ".csv", csv.str());
        write_file(base + ".intervals.json", intervals_to_json(wt).dump(2) + "\n");
        files = {"fig" + a.id + ".csv", "fig" + a.id + ".intervals.json"};
        if (model == "ohmic")
            manifest["parameters"] = {{"model", model},   {"family", ea.family},
                                      {"s", sexp},        {"eta", ea.eta},
                                      {"omega_c", ea.omega_c}, {"t_max", t_max},
                                      {"step", step}};
        else
            manifest["parameters"] = {{"model", model},     {"family", ea.family},
                                      {"lambda", ea.lambda}, {"delta", delta},
                                      {"t_max", t_max},     {"step", step}};
    };

    const Vec3 zero = Vec3::Zero();
    if (a.id == "1b") mesh_fig(zero, zero);
    else if (a.id == "1c") mesh_fig(Vec3(0, 0, 0.25), Vec3(0, 0, 0.25));
    else if (a.id == "1d") mesh_fig(Vec3(0.1, 0.1, 0.25), Vec3(0.1, 0.1, 0.25));
    else if (a.id == "2a") sweep_fig(Family::psi);
    else if (a.id == "2b") sweep_fig(Family::phi);
    else if (a.id == "3") plane_fig();
    else if (a.id == "4a") traj_fig("ohmic", Family::psi, 0.5, 0, 30, 0.005);
    else if (a.id == "4b") traj_fig("ohmic", Family::phi, 0.5, 0, 30, 0.005);
    else if (a.id == "4c") traj_fig("ohmic", Family::psi, 1.0, 0, 40, 0.005);
    else if (a.id == "4d") traj_fig("ohmic", Family::phi, 1.0, 0, 40, 0.005);
    else if (a.id == "4e") traj_fig("ohmic", Family::psi, 3.0, 0, 60, 0.005);
    else if (a.id == "4f") traj_fig("ohmic", Family::phi, 3.0, 0, 60, 0.005);
    else if (a.id == "5a") traj_fig("lorentzian", Family::psi, 0, 0.0, 30, 0.002);
    else if (a.id == "5b") traj_fig("lorentzian", Family::phi, 0, 0.0, 30, 0.002);
    else if (a.id == "5c") traj_fig("lorentzian", Family::psi, 0, 0.8, 60, 0.002);
    else if (a.id == "5d") traj_fig("lorentzian", Family::phi, 0, 0.8, 60, 0.002);
    else if (a.id == "6a") traj_fig("lorentzian", Family::psi, 0, 0.8, 60, 0.002);
    else if (a.id == "6b") traj_fig("lorentzian", Family::phi, 0, 0.8, 60, 0.002);
    else throw std::invalid_argument("unknown figure id: " + a.id);

    manifest["files"] = files;
    write_file(base + ".manifest.json", manifest.dump(2) + "\n");
    std::cerr << "wrote fig" << a.id << " files in " << a.outdir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic uncertainty witnesses for two-qubit states"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file ([subcommand] sections)");

    StateArgs sa;
    auto* st = app.add_subcommand("state", "report for one two-qubit state");
    st->add_option("--json", sa.json_path, "density matrix JSON file ('-' for stdin)");
    st->add_option("--r", sa.r, "local vector of A, canonical family");
    st->add_option("--s", sa.s, "local vector of B");
    st->add_option("--v", sa.v, "correlation diagonal");

    McArgs ma;
    auto* mc = app.add_subcommand("montecarlo", "sample the correlation cube");
    mc->add_option("--r", ma.r, "local vector of A");
    mc->add_option("--s", ma.s, "local vector of B");
    mc->add_option("--n", ma.n, "sample count (>= 1e4)");
    mc->add_option("--seed", ma.seed, "RNG seed");
    mc->add_option("--policy", ma.policy, "serial or parallel");

    PcritArgs pa;
    auto* pc = app.add_subcommand("pcrit", "critical channel amplitude per estimator");
    pc->add_option("--family", pa.family, "psi or phi");
    pc->add_option("--alpha", pa.alpha, "initial amplitude weight");
    pc->add_option("--theta", pa.theta, "initial relative phase");
    pc->add_option("--purity", pa.purity, "projector weight r");
    pc->add_option("--estimator", pa.estimator, "te, me, fe or all");
    pc->add_flag("--json", pa.as_json, "JSON output");

    EvolveArgs ea;
    auto* ev = app.add_subcommand("evolve", "witness trajectory under a reservoir");
    ev->add_option("--model", ea.model, "ohmic or lorentzian")->required();
    ev->add_option("--s", ea.s, "Ohmic-class exponent (1/2 or integer)");
    ev->add_option("--eta", ea.eta, "coupling");
    ev->add_option("--omega-c", ea.omega_c, "cutoff frequency");
    ev->add_option("--lambda", ea.lambda, "Lorentzian width");
    ev->add_option("--delta", ea.delta, "Lorentzian detuning");
    ev->add_option("--family", ea.family, "psi or phi");
    ev->add_option("--alpha", ea.alpha, "initial amplitude weight");
    ev->add_option("--theta", ea.theta, "initial relative phase");
    ev->add_option("--purity", ea.purity, "projector weight r");
    ev->add_option("--t-max", ea.t_max, "trajectory span");
    ev->add_option("--step", ea.step, "output grid step (0 = default)");
    ev->add_option("--out", ea.out, "trajectory CSV path")->required();
    ev->add_option("--policy", ea.policy, "serial or parallel");

    FigArgs fa;
    auto* fg = app.add_subcommand("figures", "write a preset dataset");
    fg->add_option("--id", fa.id, "one of 1b 1c 1d 2a 2b 3 4a-4f 5a-5d 6a 6b")->required();
    fg->add_option("--outdir", fa.outdir, "output directory");
    fg->add_option("--policy", fa.policy, "serial or parallel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (st->parsed()) return cmd_state(sa);
        if (mc->parsed()) return cmd_montecarlo(ma);
        if (pc->parsed()) return cmd_pcrit(pa);
        if (ev->parsed()) return cmd_evolve(ea);
        if (fg->parsed()) return cmd_figures(fa);
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
