// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: escape-time expansions, flux profiles, interaction
// coefficients, eigenvalue shifts, Monte Carlo runs, and the validation
// matrix. Emits JSON or CSV; output is deterministic for fixed inputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nesc/asymptotics.hpp"
#include "nesc/direct_solver.hpp"
#include "nesc/eigen_direct.hpp"
#include "nesc/eigenshift.hpp"
#include "nesc/errors.hpp"
#include "nesc/interaction.hpp"
#include "nesc/io.hpp"
#include "nesc/monte_carlo.hpp"
#include "nesc/neumann_disk.hpp"
#include "nesc/oracle.hpp"

namespace {

using nlohmann::json;

/// All floating output carries 9 significant digits.
double sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json round_floats(const json& j) {
    if (j.is_number_float()) return sig9(j.get<double>());
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_floats(*it);
        return out;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& e : j) out.push_back(round_floats(e));
        return out;
    }
    return j;
}

nesc::Vec2 parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw nesc::UsageError("--at expects 'x,y'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw nesc::UsageError("--at expects 'x,y' with numeric coordinates");
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw nesc::UsageError("--offsets expects a comma-separated number list");
        }
    }
    return out;
}

struct CommonOpts {
    double eps = 0.0;
    double center = 0.0;
    std::string config_path;
    std::string at;
    std::string format; // json | csv; empty = command default
    std::string out_path;
};

nesc::ProblemConfig resolve_problem(const CommonOpts& c, bool eps_given) {
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw nesc::UsageError("cannot open config file: " + c.config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw nesc::UsageError(std::string("config parse error: ") + e.what());
        }
        return nesc::parse_config(j);
    }
    if (!eps_given) throw nesc::UsageError("either --eps or --config is required");
    nesc::ProblemConfig cfg;
    cfg.targets.arcs.emplace_back(c.center, c.eps);
    nesc::validate(cfg.targets);
    cfg.raw = nesc::config_json(cfg.targets);
    return cfg;
}

void emit(const json& report, const CommonOpts& c) {
    const std::string fmt = c.format.empty() ? "json" : c.format;
    std::string text;
    if (fmt == "json") {
        text = round_floats(report).dump(2) + "\n";
    } else if (fmt == "csv") {
        // flat key,value rows with a versioned header
        std::ostringstream os;
        os << "# nesc " << report.value("command", "report") << " v1\n";
        os << "key,value\n";
        std::function<void(const std::string&, const json&)> walk =
            [&](const std::string& prefix, const json& j) {
                if (j.is_object()) {
                    for (auto it = j.begin(); it != j.end(); ++it)
                        walk(prefix.empty() ? it.key() : prefix + "." + it.key(), *it);
                } else if (j.is_array()) {
                    for (std::size_t i = 0; i < j.size(); ++i)
                        walk(prefix + "[" + std::to_string(i) + "]", j[i]);
                } else if (j.is_number_float()) {
                    os << prefix << "," << fmt9(j.get<double>()) << "\n";
                } else {
                    os << prefix << "," << j.dump() << "\n";
                }
            };
        walk("", report);
        text = os.str();
    } else {
        throw nesc::UsageError("--format must be json or csv");
    }
    if (c.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out_path);
        if (!f) throw nesc::UsageError("cannot open output file: " + c.out_path);
        f << text;
    }
}

int run_escape(const CommonOpts& c, bool eps_given, std::size_t modes) {
    const auto prob = resolve_problem(c, eps_given);
    if (c.at.empty()) throw nesc::UsageError("escape requires --at x,y");
    const nesc::Vec2 x = parse_point(c.at);

    json rep;
    rep["command"] = "escape";
    rep["config"] = prob.raw;
    rep["at"] = {x.x, x.y};

    auto pack = [&](const nesc::ExpansionResult& r) {
        json o;
        o["u"] = r.evaluate(x);
        o["leading"] = r.leading_constant;
        o["remainder"] = r.remainder_order;
        json cs;
        for (const auto& [k, v] : r.constants) cs[k] = v;
        o["constants"] = cs;
        if (r.corrector_pending) o["corrector_pending"] = true;
        return o;
    };

    const std::size_t n = prob.targets.arcs.size();
    if (prob.potential && !prob.potential->is_constant) {
        if (n != 1) throw nesc::UsageError("drift expansion supports a single arc");
        const auto r = nesc::drift_single_target(prob.targets, *prob.potential, x);
        const json o = pack(r);
        rep.update(o);
    } else if (n == 1) {
        rep.update(pack(nesc::single_target(prob.targets, x)));
    } else if (n == 2) {
        // two regimes can overlap at intermediate gaps; report both when the
        // clustered model applies
        rep.update(pack(nesc::two_separated(prob.targets, x)));
        const auto& a1 = prob.targets.arcs[0];
        const auto& a2 = prob.targets.arcs[1];
        if (a1.half_length == a2.half_length) {
            double ds = std::abs(a1.center_angle - a2.center_angle);
            ds = std::min(ds, 2.0 * nesc::pi - ds);
            if (ds / a1.half_length > 2.0)
                rep["clustered"] = pack(nesc::two_clustered(prob.targets, x));
        }
    } else {
        rep.update(pack(nesc::multi_cluster(prob.targets, x, modes)));
    }
    emit(rep, c);
    return 0;
}

int run_flux(const CommonOpts& c, bool eps_given) {
    const auto prob = resolve_problem(c, eps_given);
    const auto f = nesc::single_target_flux(prob.targets);
    json rep;
    rep["command"] = "flux";
    rep["config"] = prob.raw;
    rep["amplitude"] = f.amplitude;
    rep["mass"] = f.mass();
    rep["profile"] = "amplitude / sqrt(eps^2 - t^2)";
    rep["correction"] = f.correction_order;
    emit(rep, c);
    return 0;
}

int run_alpha(const CommonOpts& c, double d, bool d_given, std::size_t n,
              const std::string& offsets, std::size_t modes) {
    nesc::ClusterGeometry geom;
    if (d_given) {
        geom = nesc::ClusterGeometry::symmetric_pair(d);
    } else if (!offsets.empty()) {
        auto centers = parse_list(offsets);
        if (n != 0 && n != centers.size())
            throw nesc::UsageError("--n disagrees with the --offsets list length");
        geom = nesc::ClusterGeometry::from_scaled_centers(centers);
    } else {
        throw nesc::UsageError("alpha requires --d or --offsets");
    }
    const auto sol = nesc::solve_cluster(geom, modes);
    json rep;
    rep["command"] = "alpha";
    json alphas = json::array();
    for (double a : sol.alphas) alphas.push_back(a);
    rep["alphas"] = alphas;
    rep["condition"] = sol.condition_estimate;
    rep["residual"] = sol.residual;
    if (d_given) rep["d"] = d;
    emit(rep, c);
    return 0;
}

int run_eigen(const CommonOpts& c, bool eps_given, std::size_t j0, int order) {
    if (!eps_given) throw nesc::UsageError("eigen requires --eps");
    if (order != 1 && order != 2) throw nesc::UsageError("--order must be 1 or 2");
    const nesc::BoundaryArc arc(c.center, c.eps);
    nesc::TargetConfiguration cfg{{arc}};
    nesc::validate(cfg);
    const nesc::DiskKernelProvider prov;
    const auto res = nesc::shift_result(prov, j0, arc);
    json rep;
    rep["command"] = "eigen";
    rep["config"] = nesc::config_json(cfg);
    rep["j0"] = j0;
    rep["lambda0"] = res.lambda0;
    rep["order"] = order;
    rep["shift"] = (order == 1) ? res.leading_shift : res.corrected_shift;
    rep["leading"] = res.leading_shift;
    rep["corrected"] = res.corrected_shift;
    emit(rep, c);
    return 0;
}

int run_mc(const CommonOpts& c, bool eps_given, double h, std::size_t trials,
           std::uint64_t seed) {
    const auto prob = resolve_problem(c, eps_given);
    if (c.at.empty()) throw nesc::UsageError("mc requires --at x,y");
    const nesc::Vec2 x = parse_point(c.at);
    const auto est = nesc::mc_escape(x, prob.targets, prob.potential, h, trials, seed);
    json rep;
    rep["command"] = "mc";
    rep["config"] = prob.raw;
    rep["at"] = {x.x, x.y};
    rep["mean"] = est.mean;
    rep["stderr"] = est.stderr_;
    rep["trials"] = est.trials;
    rep["step"] = est.step;
    rep["seed"] = est.seed;
    emit(rep, c);
    return 0;
}

struct ValidateRow {
    std::string name;
    double eps = 0.0;
    std::optional<double> asym, direct, mc_mean, mc_stderr, abs_err, slope;
};

int run_validate(const CommonOpts& c, bool quick, std::uint64_t seed) {
    using nesc::Vec2;
    std::vector<ValidateRow> rows;
    bool breach = false;
    std::vector<std::string> breaches;

    // single-target ladder: direct vs asymptotic, remainder ratio
    const std::vector<double> ladder = {0.1, 0.05, 0.025};
    std::vector<double> errs;
    std::vector<double> directs;
    for (double eps : ladder) {
        nesc::TargetConfiguration cfg{{nesc::BoundaryArc(0.0, eps)}};
        const auto sol = nesc::solve_direct(cfg);
        const double ua = nesc::single_target(cfg, Vec2{0.0, 0.0}).evaluate({0.0, 0.0});
        const double ud = sol(Vec2{0.0, 0.0});
        if (std::abs(sol.total_mass() + nesc::pi) > 1e-8) {
            breach = true;
            breaches.push_back("flux mass differs from -pi at eps=" + fmt9(eps));
        }
        ValidateRow r;
        r.name = "single";
        r.eps = eps;
        r.asym = ua;
        r.direct = ud;
        r.abs_err = std::abs(ud - ua);
        errs.push_back(*r.abs_err);
        directs.push_back(ud);
        if (errs.size() > 1)
            r.slope = std::log2(errs[errs.size() - 2] / errs.back());
        rows.push_back(r);
    }

    // Monte Carlo against the direct value at the coarsest ladder point
    {
        const double eps = 0.1, h = 1e-3;
        const std::size_t trials = quick ? 2000 : 10000;
        nesc::TargetConfiguration cfg{{nesc::BoundaryArc(0.0, eps)}};
        const auto est = nesc::mc_escape(Vec2{0.0, 0.0}, cfg, std::nullopt, h, trials, seed);
        ValidateRow r;
        r.name = "mc-single";
        r.eps = eps;
        r.direct = directs[0];
        r.mc_mean = est.mean;
        r.mc_stderr = est.stderr_;
        r.abs_err = std::abs(est.mean - directs[0]);
        rows.push_back(r);
        // engineering bias model C sqrt(h); C = 25 bounds the measured fits
        if (*r.abs_err > 3.0 * (est.stderr_ + 25.0 * std::sqrt(h))) {
            breach = true;
            breaches.push_back("mc mean outside 3(stderr + C sqrt(h)) envelope");
        }
    }

    // two antipodal arcs: separated formula vs direct
    {
        const double eps = 0.05;
        nesc::TargetConfiguration cfg{
            {nesc::BoundaryArc(0.0, eps), nesc::BoundaryArc(nesc::pi, eps)}};
        const auto sol = nesc::solve_direct(cfg);
        const double ua = nesc::two_separated(cfg, Vec2{0.0, 0.0}).evaluate({0.0, 0.0});
        const double ud = sol(Vec2{0.0, 0.0});
        ValidateRow r;
        r.name = "two-separated";
        r.eps = eps;
        r.asym = ua;
        r.direct = ud;
        r.abs_err = std::abs(ud - ua);
        rows.push_back(r);
        if (*r.abs_err > 5.0 * eps) {
            breach = true;
            breaches.push_back("two-target formula vs direct above 5 eps");
        }
    }

    // clustered vs separated crossover at small eps
    for (double d : (quick ? std::vector<double>{50.0} : std::vector<double>{20.0, 50.0, 100.0})) {
        const double eps = 1e-4;
        nesc::TargetConfiguration cfg{
            {nesc::BoundaryArc(0.0, eps), nesc::BoundaryArc(d * eps, eps)}};
        const double uc = nesc::two_clustered(cfg, Vec2{0.0, 0.0}).evaluate({0.0, 0.0});
        const double us = nesc::two_separated(cfg, Vec2{0.0, 0.0}).evaluate({0.0, 0.0});
        ValidateRow r;
        r.name = "crossover-d" + fmt9(d);
        r.eps = eps;
        r.asym = uc;
        r.direct = us; // separated value in the reference column
        r.abs_err = std::abs(uc - us);
        rows.push_back(r);
        if (*r.abs_err > 0.03 * std::abs(us)) {
            breach = true;
            breaches.push_back("clustered/separated disagree beyond 3% at d=" + fmt9(d));
        }
    }

    std::ostringstream os;
    os << "# nesc validate v1\n";
    os << "# columns: case,eps,asym,direct,mc_mean,mc_stderr,abs_err,slope\n";
    os << "# config: quick=" << (quick ? 1 : 0) << " seed=" << seed << "\n";
    os << "case,eps,asym,direct,mc_mean,mc_stderr,abs_err,slope\n";
    auto cell = [&](const std::optional<double>& v) {
        return v ? fmt9(*v) : std::string();
    };
    for (const auto& r : rows)
        os << r.name << "," << fmt9(r.eps) << "," << cell(r.asym) << "," << cell(r.direct)
           << "," << cell(r.mc_mean) << "," << cell(r.mc_stderr) << "," << cell(r.abs_err)
           << "," << cell(r.slope) << "\n";
    for (const auto& b : breaches) os << "# BREACH: " << b << "\n";

    if (c.out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(c.out_path);
        if (!f) throw nesc::UsageError("cannot open output file: " + c.out_path);
        f << os.str();
    }
    return breach ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Narrow-escape asymptotics on the unit disk"};
    app.require_subcommand(1);

    CommonOpts c;
    double d = 0.0, h = 1e-4;
    std::size_t n = 0, j0 = 1, trials = 10000, modes = 64;
    int order = 2;
    std::uint64_t seed = 1;
    std::string offsets;
    bool quick = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", c.format, "output format: json|csv");
        cmd->add_option("--out", c.out_path, "write the report to a file");
    };

    auto* escape = app.add_subcommand("escape", "asymptotic escape time at a point");
    escape->add_option("--eps", c.eps, "arc half-length");
    escape->add_option("--center", c.center, "arc center angle (radians)");
    escape->add_option("--at", c.at, "evaluation point x,y");
    escape->add_option("--config", c.config_path, "geometry/potential JSON file");
    escape->add_option("--n", modes, "cluster solve truncation");
    add_common(escape);

    auto* flux = app.add_subcommand("flux", "leading flux profile through the arc");
    flux->add_option("--eps", c.eps, "arc half-length");
    flux->add_option("--center", c.center, "arc center angle (radians)");
    flux->add_option("--config", c.config_path, "geometry JSON file");
    add_common(flux);

    auto* alpha = app.add_subcommand("alpha", "cluster interaction coefficients");
    auto* dopt = alpha->add_option("--d", d, "scaled gap of the symmetric pair (> 2)");
    alpha->add_option("--n", n, "number of arcs (with --offsets)");
    alpha->add_option("--offsets", offsets, "scaled arc centers, comma separated");
    alpha->add_option("--modes", modes, "truncation per arc");
    add_common(alpha);

    auto* eigen = app.add_subcommand("eigen", "eigenvalue shift for one absorbing arc");
    eigen->add_option("--j0", j0, "eigenvalue index (1-based)");
    auto* eeps = eigen->add_option("--eps", c.eps, "arc half-length");
    eigen->add_option("--center", c.center, "arc center angle (radians)");
    eigen->add_option("--order", order, "1 = leading, 2 = two-term");
    add_common(eigen);

    auto* mc = app.add_subcommand("mc", "Monte Carlo escape-time estimate");
    mc->set_help_flag("--help", "print help"); // frees -h / --h for the step size
    mc->add_option("--eps", c.eps, "arc half-length");
    mc->add_option("--center", c.center, "arc center angle (radians)");
    mc->add_option("--at", c.at, "start point x,y");
    mc->add_option("--config", c.config_path, "geometry/potential JSON file");
    mc->add_option("--h", h, "time step");
    mc->add_option("--trials", trials, "number of trials");
    mc->add_option("--seed", seed, "RNG seed");
    add_common(mc);

    auto* validate = app.add_subcommand("validate", "asymptotic vs direct vs MC matrix");
    validate->add_flag("--quick", quick, "reduced matrix (documented 5 min budget)");
    validate->add_option("--seed", seed, "RNG seed for the MC rows");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*escape) return run_escape(c, escape->count("--eps") > 0, modes);
        if (*flux) return run_flux(c, flux->count("--eps") > 0);
        if (*alpha) return run_alpha(c, d, dopt->count() > 0, n, offsets, modes);
        if (*eigen) return run_eigen(c, eeps->count() > 0, j0, order);
        if (*mc) return run_mc(c, mc->count("--eps") > 0, h, trials, seed);
        if (*validate) return run_validate(c, quick, seed);
    } catch (const nesc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
