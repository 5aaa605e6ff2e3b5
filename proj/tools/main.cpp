// Command-line front end: experiment orchestration and CSV/JSON emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>\n#include <sstream>
#include <iostream>
#include <thread>

#include <shocklab/conditions.hpp>
#include <shocklab/designer.hpp>
#include <shocklab/evans.hpp>
#include <shocklab/hf.hpp>
#include <shocklab/io.hpp>
#include <shocklab/lopatinski.hpp>
#include <shocklab/moments.hpp>
#include <shocklab/profile.hpp>

using namespace shocklab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "shocklab 1.0.0";

struct GlobalOpts {
    std::string output_dir = ".";
    int workers = int(std::thread::hardware_concurrency());
    double tolerance_scale = 1.0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    std::string path(const std::string& name) {
        std::filesystem::create_directories(output_dir);
        std::string p = (std::filesystem::path(output_dir) / name).string();
        outputs.push_back(p);
        return p;
    }
    void manifest(const std::string& command, const json& inputs, const json& tolerances) {
        json m;
        m["command"] = command;
        m["version"] = kVersion;
        m["inputs"] = inputs;
        m["tolerances"] = tolerances;
        m["outputs"] = outputs;
        m["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream f((std::filesystem::path(output_dir) / (command + "_manifest.json")));
        f << m.dump(2) << "\n";
    }
};

struct ModelOpts {
    std::string model = "local";
    double C = 10.0, Gamma = 5.0 / 3.0, cv = 1.0;
    EquationOfState make() const {
        if (model == "global") return EquationOfState::global(C);
        if (model == "local") return EquationOfState::local();
        if (model == "stable") return EquationOfState::stable();
        if (model == "polytropic") return EquationOfState::polytropic(Gamma, cv);
        throw ConfigError("unknown model '" + model + "'");
    }
};

void add_model_opts(CLI::App* cmd, ModelOpts& m) {
    cmd->add_option("--model", m.model, "EOS model: global|local|stable|polytropic")
        ->default_val("local");
    cmd->add_option("--C", m.C, "global-model parameter C");
    cmd->add_option("--Gamma", m.Gamma, "polytropic exponent");
    cmd->add_option("--cv", m.cv, "polytropic specific heat");
}

std::shared_ptr<ViscousProfile> gas_profile_golden(const EquationOfState& model,
                                                   double s_minus) {
    HugoniotCurve curve = trace_backward(model, 1.0, 0.0, {s_minus});
    return std::make_shared<ViscousProfile>(
        shoot_profile(model, curve.samples[0].shock, 1.0, 1.0));
}

ShockTriple make_shock(const EquationOfState& model, double tau_p, double S_p, double s_minus) {
    HugoniotCurve curve = trace_backward(model, tau_p, S_p, {s_minus});
    return curve.samples[0].shock;
}

// sort a user grid for the requested direction and drop the anchor's side
std::vector<double> directional_grid(std::vector<double> grid, double s_anchor, bool backward) {
    if (backward) {
        std::sort(grid.begin(), grid.end(), std::greater<double>());
        while (!grid.empty() && grid.front() >= s_anchor - 1e-12) grid.erase(grid.begin());
    } else {
        std::sort(grid.begin(), grid.end());
        while (!grid.empty() && grid.front() <= s_anchor + 1e-12) grid.erase(grid.begin());
    }
    if (grid.empty()) throw ConfigError("entropy grid has no points on the traced side of the anchor");
    return grid;
}

json shock_json(const ShockTriple& sh) {
    return json{{"tau_minus", sh.minus.tau}, {"S_minus", sh.minus.S},
                {"tau_plus", sh.plus.tau},   {"S_plus", sh.plus.S},
                {"sigma", sh.sigma},         {"lax", sh.lax}};
}

void write_contour_csv(const std::string& path, const ContourResult& res) {
    CsvWriter csv(path, {"re_lambda", "im_lambda", "re_D", "im_D", "cum_arg", "log_abs_D"});
    for (const auto& p : res.points) {
        Complex d = (p.d.log_abs < 700.0) ? p.d.value() : Complex(0.0, 0.0);
        csv.row({p.lambda.real(), p.lambda.imag(), d.real(), d.imag(), p.cum_arg, p.d.log_abs});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shock-stability laboratory: inviscid (Lopatinski) and viscous (Evans) studies"};
    app.set_config("--config", "", "read options from a key-value config file");
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--output-dir", g.output_dir, "directory for result files")->capture_default_str();
    app.add_option("--workers", g.workers, "concurrency budget")->capture_default_str();
    app.add_option("--tolerance-scale", g.tolerance_scale,
                   "multiplies the Evans integration tolerances")
        ->capture_default_str();

    // ---- eos-check ----
    auto* eos_cmd = app.add_subcommand("eos-check", "structural-condition audit on a (tau,S) grid")->configurable();
    ModelOpts eos_model;
    add_model_opts(eos_cmd, eos_model);
    std::string eos_tau_range = "0.5,20", eos_s_range = "-30,2", eos_grid = "24,24";
    eos_cmd->add_option("--tau-range", eos_tau_range, "tau_lo,tau_hi");
    eos_cmd->add_option("--s-range", eos_s_range, "S_lo,S_hi");
    eos_cmd->add_option("--grid", eos_grid, "n_tau,n_S");

    // ---- hugoniot ----
    auto* hug_cmd = app.add_subcommand("hugoniot", "trace a 1-Hugoniot curve")->configurable();
    ModelOpts hug_model;
    add_model_opts(hug_cmd, hug_model);
    std::string hug_anchor = "1,0", hug_grid, hug_dir = "backward";
    hug_cmd->add_option("--anchor", hug_anchor, "anchor state tau,S");
    hug_cmd->add_option("--s-grid", hug_grid, "entropy grid start:step:end")->required();
    hug_cmd->add_option("--direction", hug_dir, "backward|forward");

    // ---- lopatinski ----
    auto* lop_cmd = app.add_subcommand("lopatinski", "signed Lopatinski study along a backward curve")->configurable();
    ModelOpts lop_model;
    add_model_opts(lop_cmd, lop_model);
    std::string lop_anchor = "1,0", lop_grid;
    lop_cmd->add_option("--anchor", lop_anchor, "anchor state tau,S");
    lop_cmd->add_option("--s-grid", lop_grid, "entropy grid start:step:end")->required();

    // ---- profile ----
    auto* prof_cmd = app.add_subcommand("profile", "viscous shock profile by stiff shooting")->configurable();
    ModelOpts prof_model;
    add_model_opts(prof_cmd, prof_model);
    std::string prof_anchor = "1,0";
    double prof_sminus = -5.0, prof_mu = 1.0, prof_kappa = 1.0;
    prof_cmd->add_option("--anchor", prof_anchor, "right state tau,S");
    prof_cmd->add_option("--s-minus", prof_sminus, "left-state entropy")->required();
    prof_cmd->add_option("--mu", prof_mu, "viscosity");
    prof_cmd->add_option("--kappa", prof_kappa, "heat conductivity");

    // ---- evans-winding / evans-roots / evans-hf ----
    auto add_evans_opts = [&](CLI::App* cmd, ModelOpts& m, std::string& anchor, double& sminus,
                              double& mu, double& kappa) {
        add_model_opts(cmd, m);
        cmd->add_option("--anchor", anchor, "right state tau,S");
        cmd->add_option("--s-minus", sminus, "left-state entropy")->required();
        cmd->add_option("--mu", mu, "viscosity");
        cmd->add_option("--kappa", kappa, "heat conductivity");
    };
    auto* win_cmd = app.add_subcommand("evans-winding", "winding number on a semicircular contour")->configurable();
    ModelOpts win_model;
    std::string win_anchor = "1,0";
    double win_sminus = -5.0, win_mu = 1.0, win_kappa = 1.0, win_radius = 250.0;
    int win_minpts = 40;
    std::string win_mode = "no-radial";
    add_evans_opts(win_cmd, win_model, win_anchor, win_sminus, win_mu, win_kappa);
    win_cmd->add_option("--radius", win_radius, "contour radius");
    win_cmd->add_option("--min-points", win_minpts, "minimum contour points");
    win_cmd->add_option("--mode", win_mode, "polar|no-radial");

    auto* roots_cmd = app.add_subcommand("evans-roots", "moment-method root localization")->configurable();
    ModelOpts roots_model;
    std::string roots_anchor = "1,0";
    double roots_sminus = -5.0, roots_mu = 1.0, roots_kappa = 1.0, roots_radius = 4.0;
    add_evans_opts(roots_cmd, roots_model, roots_anchor, roots_sminus, roots_mu, roots_kappa);
    roots_cmd->add_option("--radius", roots_radius, "contour radius");

    auto* hf_cmd = app.add_subcommand("evans-hf", "high-frequency fit table (doubling radii)")->configurable();
    ModelOpts hf_model;
    std::string hf_anchor = "1,0";
    double hf_sminus = -5.0, hf_mu = 1.0, hf_kappa = 1.0, hf_r0 = 2.0, hf_rmax = 512.0;
    add_evans_opts(hf_cmd, hf_model, hf_anchor, hf_sminus, hf_mu, hf_kappa);
    hf_cmd->add_option("--r-start", hf_r0, "first radius");
    hf_cmd->add_option("--r-max", hf_rmax, "largest radius");

    // ---- designer-scan ----
    auto* scan_cmd = app.add_subcommand("designer-scan", "(gamma, M gamma) unstable-root-count map")->configurable();
    std::string scan_gamma = "0.55,0.75", scan_mg = "1.6,2.3", scan_cells = "12,12";
    double scan_radius = 4.0;
    scan_cmd->add_option("--gamma-range", scan_gamma, "gamma_lo,gamma_hi");
    scan_cmd->add_option("--mgamma-range", scan_mg, "Mgamma_lo,Mgamma_hi");
    scan_cmd->add_option("--cells", scan_cells, "n_gamma,n_mgamma (<= 20 each)");
    scan_cmd->add_option("--radius", scan_radius, "contour radius (4 = spectral bound, 16 = paper's)");

    // ---- regen-goldens ----
    auto* golden_cmd = app.add_subcommand(
        "regen-goldens", "regenerate the high-frequency table goldens (and optionally diff)");
    golden_cmd->configurable();
    std::string golden_check;
    golden_cmd->add_option("--check", golden_check,
                           "directory of stored goldens to diff against (per-cell tolerance)");

    // ---- designer-track ----
    auto* track_cmd = app.add_subcommand("designer-track", "root trajectories along a parameter path")->configurable();
    std::string track_m = "2.72", track_gamma = "0.65";
    double track_radius = 4.0;
    track_cmd->add_option("--M", track_m, "rotation rate: fixed value or grid start:step:end");
    track_cmd->add_option("--gamma", track_gamma, "amplitude: fixed value or grid start:step:end");
    track_cmd->add_option("--radius", track_radius, "contour radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eos_cmd) {
            auto [tlo, thi] = parse_pair(eos_tau_range);
            auto [slo, shi] = parse_pair(eos_s_range);
            auto [gt, gs] = parse_pair(eos_grid);
            EquationOfState model = eos_model.make();
            StructuralReport rep = check_structural(model, tlo, thi, slo, shi, int(gt), int(gs));
            std::vector<std::string> cols = {"tau", "S"};
            for (int k = 0; k < StructuralReport::kNumConditions; ++k)
                cols.push_back(StructuralReport::condition_name(k));
            CsvWriter csv(g.path("conditions.csv"), cols);
            for (const PointConditions& pc : rep.points) {
                std::vector<double> row = {pc.tau, pc.S};
                for (int k = 0; k < 6; ++k) row.push_back(pc.g[k].residual);
                for (int k = 0; k < 4; ++k) row.push_back(pc.j[k].residual);
                row.push_back(pc.weak.residual);
                row.push_back(pc.medium_u.residual);
                row.push_back(pc.medium_s.residual);
                row.push_back(pc.strong.residual);
                csv.row(row);
            }
            json sum;
            for (int k = 0; k < StructuralReport::kNumConditions; ++k) {
                sum["all_hold"][StructuralReport::condition_name(k)] = rep.all_hold[k];
                sum["fail_count"][StructuralReport::condition_name(k)] = rep.fail_count[k];
            }
            sum["h1_ok"] = rep.h1_ok;
            sum["h2_ok"] = rep.h2_ok;
            std::ofstream(g.path("conditions_summary.json")) << sum.dump(2) << "\n";
            g.manifest("eos-check",
                       json{{"model", eos_model.model}, {"tau_range", eos_tau_range},
                            {"s_range", eos_s_range}, {"grid", eos_grid}},
                       json{{"fd_rel_tol", 1e-6}});
            std::cout << "eos-check: wrote conditions for " << rep.points.size() << " points\n";
        } else if (*hug_cmd) {
            auto [tau0, s0] = parse_pair(hug_anchor);
            std::vector<double> grid =
                directional_grid(parse_grid(hug_grid), s0, hug_dir != "forward");
            EquationOfState model = hug_model.make();
            HugoniotCurve curve = (hug_dir == "forward")
                                      ? trace_forward(model, tau0, s0, grid)
                                      : trace_backward(model, tau0, s0, grid);
            CsvWriter csv(g.path("hugoniot.csv"),
                          {"S", "tau", "p", "v", "e", "T", "sigma", "lax_ok", "mono_tau",
                           "mono_p", "mono_v", "mono_sigma2"});
            for (const CurveSample& cs : curve.samples) {
                const ThermoState& st =
                    (hug_dir == "forward") ? cs.shock.plus : cs.shock.minus;
                double v = (hug_dir == "forward") ? cs.shock.v_plus : 0.0;
                csv.row({cs.S, cs.tau, st.p, v, st.e, st.T, cs.shock.sigma, double(cs.lax_ok),
                         double(cs.mono_tau), double(cs.mono_p), double(cs.mono_v),
                         double(cs.mono_sigma2)});
            }
            g.manifest("hugoniot",
                       json{{"model", hug_model.model}, {"anchor", hug_anchor},
                            {"s_grid", hug_grid}, {"direction", hug_dir}},
                       json{{"bisect_tol", kHugoniotBisectTol}});
            std::cout << "hugoniot: " << curve.samples.size() << " samples\n";
        } else if (*lop_cmd) {
            auto [tau0, s0] = parse_pair(lop_anchor);
            std::vector<double> grid = directional_grid(parse_grid(lop_grid), s0, true);
            EquationOfState model = lop_model.make();
            HugoniotCurve curve = trace_backward(model, tau0, s0, grid);
            CsvWriter csv(g.path("lopatinski.csv"),
                          {"S", "tau", "delta", "delta_matrix", "delta_pform", "sign_delta",
                           "lop", "lop_alt", "strong_p", "weak_p", "monotone", "fwdmon",
                           "majda"});
            for (const CurveSample& cs : curve.samples) {
                if (!cs.lax_ok) continue;
                LopatinskiEvaluation ev = lopatinski_delta(model, cs.shock);
                const ShockConditions& c = ev.conditions;
                csv.row({cs.S, cs.tau, ev.delta, ev.delta_matrix, ev.delta_pform,
                         double(ev.sign_delta), double(c.lop.holds), double(c.lop_alt.holds),
                         double(c.strong_p.holds), double(c.weak_p.holds),
                         double(c.monotone.holds), double(c.fwdmon.holds),
                         double(c.majda.holds)});
            }
            auto tb = find_inviscid_transition(model, curve);
            json tj;
            tj["model"] = lop_model.model;
            tj["anchor"] = {{"tau", tau0}, {"S", s0}};
            if (tb) {
                tj["found"] = true;
                tj["s_bracket"] = {tb->s_lo, tb->s_hi};
                tj["tau_bracket"] = {tb->tau_lo, tb->tau_hi};
                tj["residuals"] = {tb->residual_lo, tb->residual_hi};
                tj["delta_sign_consistent"] = tb->delta_sign_consistent;
                // per-condition booleans at both bracket ends
                for (const char* side : {"lo", "hi"}) {
                    double s = side == std::string("lo") ? tb->s_lo : tb->s_hi;
                    ShockTriple sh = make_shock(model, tau0, s0, s);
                    ShockConditions c = condition_ladder(model, sh);
                    tj["conditions"][side] = {{"lop", c.lop.holds},
                                              {"lop_alt", c.lop_alt.holds},
                                              {"strong_p", c.strong_p.holds},
                                              {"weak_p", c.weak_p.holds},
                                              {"monotone", c.monotone.holds},
                                              {"fwdmon", c.fwdmon.holds},
                                              {"majda", c.majda.holds}};
                }
            } else {
                tj["found"] = false;
            }
            std::ofstream(g.path("transition.json")) << tj.dump(2) << "\n";
            g.manifest("lopatinski",
                       json{{"model", lop_model.model}, {"anchor", lop_anchor},
                            {"s_grid", lop_grid}},
                       json{{"bracket_width", 1e-7}});
            std::cout << "lopatinski: " << (tb ? "transition bracketed" : "no transition")
                      << "\n";
        } else if (*prof_cmd) {
            auto [tau0, s0] = parse_pair(prof_anchor);
            EquationOfState model = prof_model.make();
            ShockTriple sh = make_shock(model, tau0, s0, prof_sminus);
            ViscousProfile prof = shoot_profile(model, sh, prof_mu, prof_kappa);
            CsvWriter csv(g.path("profile.csv"), {"x", "tau", "S", "v", "T", "e"});
            for (size_t k = 0; k < prof.size(); ++k) {
                EosDerivs d = model.derivs(prof.tau[k], prof.S[k]);
                double v = -sh.sigma * (prof.tau[k] - sh.minus.tau);
                csv.row({prof.x[k], prof.tau[k], prof.S[k], v, d.e_s, d.e});
            }
            json meta;
            meta["mu"] = prof_mu;
            meta["kappa"] = prof_kappa;
            meta["sigma"] = sh.sigma;
            meta["shock"] = shock_json(sh);
            meta["L_minus"] = prof.L_minus;
            meta["L_plus"] = prof.L_plus;
            meta["end_dist_minus"] = prof.end_dist_minus;
            meta["end_dist_plus"] = prof.end_dist_plus;
            meta["midpoint_residual"] = prof.midpoint_residual();
            std::ofstream(g.path("profile_meta.json")) << meta.dump(2) << "\n";
            g.manifest("profile",
                       json{{"model", prof_model.model}, {"anchor", prof_anchor},
                            {"s_minus", prof_sminus}, {"mu", prof_mu}, {"kappa", prof_kappa}},
                       json{{"proximity", kProfileProximity}, {"offset", kProfileOffset}});
            std::cout << "profile: " << prof.size() << " mesh nodes, L = [" << -prof.L_minus
                      << ", " << prof.L_plus << "]\n";
        } else if (*win_cmd) {
            auto [tau0, s0] = parse_pair(win_anchor);
            EquationOfState model = win_model.make();
            ShockTriple sh = make_shock(model, tau0, s0, win_sminus);
            auto prof = std::make_shared<ViscousProfile>(
                shoot_profile(model, sh, win_mu, win_kappa));
            GasEvansSystem sys(prof);
            EvansOptions eo;
            eo.mode = (win_mode == "polar") ? EvansMode::Polar : EvansMode::NoRadial;
            eo.workers = g.workers;
            eo.rtol *= g.tolerance_scale;
            eo.atol *= g.tolerance_scale;
            SystemEvaluator ev(sys, eo);
            WindingOptions wo;
            wo.min_points = win_minpts;
            ContourResult res = winding_semicircle(ev, win_radius, wo);
            write_contour_csv(g.path("contour.csv"), res);
            json wj;
            wj["winding"] = res.winding;
            wj["radius"] = win_radius;
            wj["mode"] = win_mode;
            wj["points"] = res.points.size();
            wj["max_rel_step"] = res.max_rel_step;
            wj["rouche_ok"] = res.rouche_ok;
            wj["arg_residual"] = res.arg_residual;
            wj["shock"] = shock_json(sh);
            std::ofstream(g.path("winding.json")) << wj.dump(2) << "\n";
            g.manifest("evans-winding",
                       json{{"model", win_model.model}, {"anchor", win_anchor},
                            {"s_minus", win_sminus}, {"radius", win_radius}, {"mode", win_mode}},
                       json{{"refine", wo.refine}, {"rtol", eo.rtol}, {"atol", eo.atol}});
            std::cout << "evans-winding: winding " << res.winding << " on "
                      << res.points.size() << " points\n";
        } else if (*roots_cmd) {
            auto [tau0, s0] = parse_pair(roots_anchor);
            EquationOfState model = roots_model.make();
            ShockTriple sh = make_shock(model, tau0, s0, roots_sminus);
            auto prof = std::make_shared<ViscousProfile>(
                shoot_profile(model, sh, roots_mu, roots_kappa));
            GasEvansSystem sys(prof);
            EvansOptions eo;
            eo.workers = g.workers;
            eo.rtol *= g.tolerance_scale;
            eo.atol *= g.tolerance_scale;
            SystemEvaluator ev(sys, eo);
            MomentOptions mo;
            std::vector<RootEstimate> roots = moment_roots(ev, roots_radius, mo);
            json rj;
            rj["radius"] = roots_radius;
            rj["shock"] = shock_json(sh);
            rj["roots"] = json::array();
            for (const auto& r : roots)
                rj["roots"].push_back(json{{"re", r.location.real()},
                                           {"im", r.location.imag()},
                                           {"multiplicity", r.multiplicity},
                                           {"subcontour", r.trail}});
            std::ofstream(g.path("roots.json")) << rj.dump(2) << "\n";
            g.manifest("evans-roots",
                       json{{"model", roots_model.model}, {"anchor", roots_anchor},
                            {"s_minus", roots_sminus}, {"radius", roots_radius}},
                       json{{"fd_step_rel", mo.fd_step_rel}});
            std::cout << "evans-roots: " << roots.size() << " roots\n";
        } else if (*hf_cmd) {
            auto [tau0, s0] = parse_pair(hf_anchor);
            EquationOfState model = hf_model.make();
            ShockTriple sh = make_shock(model, tau0, s0, hf_sminus);
            auto prof =
                std::make_shared<ViscousProfile>(shoot_profile(model, sh, hf_mu, hf_kappa));
            GasEvansSystem sys(prof);
            EvansOptions eo;
            eo.workers = g.workers;
            eo.rtol *= g.tolerance_scale;
            eo.atol *= g.tolerance_scale;
            SystemEvaluator ev(sys, eo);
            HfOptions ho;
            ho.r_start = hf_r0;
            ho.r_max = hf_rmax;
            HfStudy study = hf_radius(ev, ho);
            CsvWriter csv(g.path("hf.csv"), {"R", "error", "C1", "C2"});
            for (const HfRow& r : study.rows) csv.row({r.radius, r.error, r.c1, r.c2});
            json hj;
            hj["converged"] = study.converged;
            hj["recommended_radius"] = study.recommended_radius;
            hj["shock"] = shock_json(sh);
            std::ofstream(g.path("hf.json")) << hj.dump(2) << "\n";
            g.manifest("evans-hf",
                       json{{"model", hf_model.model}, {"anchor", hf_anchor},
                            {"s_minus", hf_sminus}, {"r_start", hf_r0}, {"r_max", hf_rmax}},
                       json{{"threshold", ho.threshold}});
            std::cout << "evans-hf: " << (study.converged ? "converged" : "non-convergent")
                      << " over " << study.rows.size() << " radii\n";
        } else if (*scan_cmd) {
            auto [glo, ghi] = parse_pair(scan_gamma);
            auto [mlo, mhi] = parse_pair(scan_mg);
            auto [ng, nm] = parse_pair(scan_cells);
            if (ng > 20 || nm > 20)
                throw ConfigError("designer-scan: desk scale caps the grid at 20x20 cells");
            ScanOptions so;
            so.workers = g.workers;
            so.radius = scan_radius;
            std::vector<ScanCell> cells =
                region_scan(glo, ghi, int(ng), mlo, mhi, int(nm), so);
            CsvWriter csv(g.path("scan.csv"),
                          {"gamma", "mgamma", "count", "jump2", "near_delta_zero"});
            int failures = 0;
            for (const ScanCell& c : cells) {
                if (!c.error.empty()) ++failures;
                csv.row({c.gamma, c.mgamma, double(c.count), double(c.jump2),
                         double(c.near_delta_zero)});
            }
            g.manifest("designer-scan",
                       json{{"gamma_range", scan_gamma}, {"mgamma_range", scan_mg},
                            {"cells", scan_cells}, {"radius", scan_radius}},
                       json{{"spectral_bound", spectral_bound(1.0)}});
            std::cout << "designer-scan: " << cells.size() << " cells, " << failures
                      << " failures\n";
        } else if (*golden_cmd) {
            auto ladder = [&](const EquationOfState& model, double s_minus,
                              const std::string& name) {
                auto prof = gas_profile_golden(model, s_minus);
                GasEvansSystem sys(prof);
                EvansOptions eo;
                eo.workers = g.workers;
                SystemEvaluator ev(sys, eo);
                CsvWriter csv(g.path(name), {"R", "error", "C1", "C2"});
                for (double r = 2.0; r <= 512.0 * (1 + 1e-12); r *= 2.0) {
                    HfFit f = hf_fit_at_radius(ev, r, 8);
                    csv.row({r, f.error, f.c1, f.c2});
                }
            };
            ladder(EquationOfState::stable(), -5.0, "hf_stable_s5.csv");
            ladder(EquationOfState::global(10.0), -15.0, "hf_global_c10_s15.csv");
            {
                // synthetic exact-model table: converges at the first radius
                FunctionEvaluator fe(
                    [](Complex z) { return 1.7 * std::exp(0.4 * std::sqrt(z)); });
                HfOptions ho;
                HfStudy st = hf_radius(fe, ho);
                CsvWriter csv(g.path("hf_synthetic.csv"), {"R", "error", "C1", "C2"});
                for (const HfRow& r : st.rows) csv.row({r.radius, r.error, r.c1, r.c2});
            }
            if (!golden_check.empty()) {
                int bad = 0;
                for (const char* name :
                     {"hf_stable_s5.csv", "hf_global_c10_s15.csv", "hf_synthetic.csv"}) {
                    std::ifstream fresh(std::filesystem::path(g.output_dir) / name);
                    std::ifstream gold(std::filesystem::path(golden_check) / name);
                    if (!gold)
                        throw ConfigError(std::string("missing golden file ") + name);
                    std::string la, lb;
                    std::getline(fresh, la);
                    std::getline(gold, lb);  // header
                    while (std::getline(gold, lb)) {
                        if (!std::getline(fresh, la)) { ++bad; break; }
                        std::stringstream sa(la), sb(lb);
                        std::string ca, cb;
                        while (std::getline(sb, cb, ',')) {
                            if (!std::getline(sa, ca, ',')) { ++bad; break; }
                            double va = std::strtod(ca.c_str(), nullptr);
                            double vb = std::strtod(cb.c_str(), nullptr);
                            if (std::abs(va - vb) > 1e-6 * std::max(1.0, std::abs(vb))) ++bad;
                        }
                    }
                }
                if (bad > 0)
                    throw Error("regen-goldens: " + std::to_string(bad) +
                                " cells differ from the stored goldens");
                std::cout << "regen-goldens: all cells match the stored goldens\n";
            }
            g.manifest("regen-goldens", json{{"check", golden_check}},
                       json{{"per_cell_tol", 1e-6}});
            std::cout << "regen-goldens: wrote 3 tables\n";
        } else if (*track_cmd) {
            bool m_is_grid = track_m.find(':') != std::string::npos;
            bool g_is_grid = track_gamma.find(':') != std::string::npos;
            if (m_is_grid == g_is_grid)
                throw ConfigError(
                    "designer-track: exactly one of --M / --gamma must be a grid start:step:end");
            TrackOptions to;
            to.workers = g.workers;
            to.radius = track_radius;
            RootTrajectory traj;
            if (g_is_grid) {
                traj = track_roots(TrackParam::Gamma, std::stod(track_m),
                                   parse_grid(track_gamma), to);
            } else {
                traj = track_roots(TrackParam::M, std::stod(track_gamma), parse_grid(track_m),
                                   to);
            }
            json tj;
            tj["varying"] = g_is_grid ? "gamma" : "M";
            tj["fixed_value"] = traj.fixed_value;
            tj["steps"] = json::array();
            for (const TrackStep& st : traj.steps) {
                json roots = json::array();
                for (const auto& r : st.roots)
                    roots.push_back(json{{"re", r.location.real()},
                                         {"im", r.location.imag()},
                                         {"multiplicity", r.multiplicity}});
                tj["steps"].push_back(json{{"param", st.param},
                                           {"gamma", st.gamma},
                                           {"M", st.M},
                                           {"roots", roots}});
            }
            tj["events"] = json::array();
            for (const TrackEvent& e : traj.events)
                tj["events"].push_back(json{{"kind", TrackEvent::kind_name(e.kind)},
                                            {"param", e.param},
                                            {"bracket", {e.bracket_lo, e.bracket_hi}},
                                            {"note", e.note}});
            std::ofstream(g.path("trajectory.json")) << tj.dump(2) << "\n";
            g.manifest("designer-track",
                       json{{"M", track_m}, {"gamma", track_gamma}, {"radius", track_radius}},
                       json{{"event_refine", 1e-3}});
            std::cout << "designer-track: " << traj.steps.size() << " steps, "
                      << traj.events.size() << " events\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
