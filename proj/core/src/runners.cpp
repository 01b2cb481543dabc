#include "chl/runners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/pde.hpp"
#include "chl/version.hpp"

namespace chl {

namespace {

using nlohmann::json;

Potential potential_from(const Config& cfg) {
    std::string type = cfg.str_or("potential", "type", "quartic");
    if (type == "quartic") return Potential::quartic();
    if (type == "polynomial") return Potential::polynomial(cfg.list("potential", "coeffs"));
    throw ValidationFailure(strf("config: unknown potential type '%s'", type.c_str()));
}

LayerVector layers_from(const Config& cfg) {
    return LayerVector::checked(cfg.list("initial", "h"));
}

VelocityMode velocity_from(const Config& cfg) {
    std::string v = cfg.str_or("initial", "velocity", "forward");
    if (v == "forward") return VelocityMode::forward;
    if (v == "reversed") return VelocityMode::reversed;
    if (v == "zero") return VelocityMode::zero;
    throw ValidationFailure(strf("config: unknown velocity mode '%s'", v.c_str()));
}

AlphaMode alpha_from(const Config& cfg) {
    std::string v = cfg.str_or("ode", "alpha", "asymptotic");
    if (v == "asymptotic") return AlphaMode::asymptotic;
    if (v == "exact") return AlphaMode::exact;
    throw ValidationFailure(strf("config: unknown alpha mode '%s'", v.c_str()));
}

OdeParams ode_params_from(const Config& cfg) {
    OdeParams p;
    p.eps = cfg.num("params", "eps");
    p.rho = cfg.num("params", "rho");
    p.tau = cfg.num_or("ode", "tau", 0.0);
    p.t_end = cfg.num("ode", "t_end");
    p.alpha_mode = alpha_from(cfg);
    p.opt.rtol = cfg.num_or("ode", "rtol", 1e-10);
    p.opt.atol = cfg.num_or("ode", "atol", 1e-12);
    p.opt.h_max = cfg.num_or("ode", "h_max", 0.0);
    p.opt.max_steps = cfg.int_or("ode", "max_steps", 2'000'000);
    p.opt.stiff = cfg.flag_or("ode", "stiff", false);
    p.opt.stiff_dt = cfg.num_or("ode", "stiff_dt", 1e-3);
    return p;
}

PdeParams pde_params_from(const Config& cfg) {
    PdeParams p;
    p.eps = cfg.num("params", "eps");
    p.rho = cfg.num_or("params", "rho", 0.25);
    p.tau = cfg.num_or("pde", "tau", 0.0);
    p.dt = cfg.num("pde", "dt");
    p.t_end = cfg.num("pde", "t_end");
    p.n = static_cast<int>(cfg.int_or("pde", "n", 0));
    std::string scheme = cfg.str_or("pde", "scheme", "imex_be");
    if (scheme == "imex_be") p.scheme = PdeScheme::imex_be;
    else if (scheme == "imex_cn") p.scheme = PdeScheme::imex_cn;
    else throw ValidationFailure(strf("config: unknown scheme '%s'", scheme.c_str()));
    p.integrated_form = cfg.flag_or("pde", "integrated_form", false);
    return p;
}

void ensure_dir(const std::filesystem::path& out) {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw Error(strf("cannot create output directory '%s': %s",
                             out.string().c_str(), ec.message().c_str()));
}

void write_manifest(const std::filesystem::path& out, const Config& cfg, json extra) {
    extra["version"] = kVersion;
    extra["config_hash"] = cfg.hash_hex();
    extra["config"] = cfg.normalized();
    write_text(out / "manifest.json", extra.dump(2) + "\n");
}

std::string join_labels(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    return s;
}

} // namespace

CompareReport compare_pde_ode(const Config& cfg) {
    Potential pot = potential_from(cfg);
    LayerVector h0 = layers_from(cfg);
    VelocityMode vel = velocity_from(cfg);
    int K = h0.transitions();

    PdeParams pp = pde_params_from(cfg);
    pp.validate(pot);
    double tau = pp.tau;

    OdeParams op;
    op.eps = pp.eps;
    op.rho = pp.rho;
    op.tau = tau;
    op.t_end = pp.t_end;
    op.alpha_mode = alpha_from(cfg);
    op.opt.rtol = cfg.num_or("ode", "rtol", 1e-10);
    op.opt.atol = cfg.num_or("ode", "atol", 1e-12);

    Trajectory traj;
    if (tau > 0.0) {
        auto eta0 = initial_velocities(h0, vel, op.eps, pot, op.alpha_mode);
        traj = integrate_layers(h0, eta0, OdeSystem::hyperbolic, op, pot);
    } else {
        traj = integrate_layers(h0, {}, OdeSystem::classic, op, pot);
    }

    auto [u0, v0] = initial_data(h0, vel, pp, pot);
    PdeStepper stepper(pp, pot);
    stepper.init(std::move(u0), std::move(v0));
    double mass0 = stepper.state().mass_u;

    CompareReport rep;
    rep.band = cfg.num_or("compare", "band", 5e-3);
    double stride = cfg.num_or("compare", "stride", 50.0);
    if (!(stride > 0.0)) throw ValidationFailure("compare: stride must be positive");

    std::vector<double> samples;
    for (double t = stride; t <= pp.t_end * (1.0 + 1e-12); t += stride) samples.push_back(t);
    if (samples.empty()) throw ValidationFailure("compare: horizon shorter than one stride");

    long total_steps = static_cast<long>(std::llround(pp.t_end / pp.dt));
    std::size_t next = 0;
    for (long k = 1; k <= total_steps && next < samples.size(); ++k) {
        stepper.step();
        double t = stepper.state().t;
        if (std::fabs(t - samples[next]) > 0.5 * pp.dt) continue;

        const PdeState& s = stepper.state();
        std::vector<double> hp;
        try {
            hp = extract_layers(s.u);
        } catch (const NoLayers&) {
            throw ToleranceFailure(strf("compare: no interfaces left at t=%g", t));
        }
        if (static_cast<int>(hp.size()) != K)
            throw ToleranceFailure(strf("compare: interface count changed to %zu at t=%g",
                                        hp.size(), t));
        if (traj.hit_event() && traj.t_end() < t)
            throw ToleranceFailure(strf("compare: reduced flow stopped at t=%g before sample t=%g",
                                        traj.t_end(), t));
        auto ho = traj.h_at(t);

        PdeDiagnostics d = diagnostics(s, pp, pot);
        rep.times.push_back(t);
        rep.h_pde.push_back(hp);
        rep.h_ode.push_back(ho);
        rep.ratio.push_back(d.ratio);
        rep.ratio_valid.push_back(d.ref_valid);
        for (int j = 0; j < K; ++j) {
            double sp = hp[static_cast<std::size_t>(j)] - h0[j];
            double so = ho[static_cast<std::size_t>(j)] - h0[j];
            double gap = std::fabs(hp[static_cast<std::size_t>(j)] -
                                   ho[static_cast<std::size_t>(j)]);
            // the published runs track the first transition; the trailing ones
            // carry an extra crossing-level shape drift the reduced flow does
            // not model, so they inform sup_gap_all but not the verdict band
            if (j == 0) rep.sup_gap = std::max(rep.sup_gap, gap);
            rep.sup_gap_all = std::max(rep.sup_gap_all, gap);
            if (sp * so <= 0.0) rep.signs_ok = false;
        }
        ++next;
    }
    rep.mass_drift = std::fabs(stepper.state().u.trapezoid() - mass0);
    rep.pde_steps = stepper.steps_done();
    return rep;
}

Config builtin_config(const std::string& name) {
    Config c;
    auto common_quartic = [&]() { c.set("potential", "type", "quartic"); };
    if (name == "compare-desk") {
        common_quartic();
        c.set("run", "label", "compare-desk");
        c.set("params", "eps", "0.07");
        c.set("params", "rho", "0.25");
        c.set("initial", "h", "0.31,0.66");
        c.set("initial", "velocity", "forward");
        c.set("ode", "tau", "50");
        c.set("ode", "t_end", "300");
        c.set("ode", "system", "hyperbolic");
        // reduced leg uses resolved wave coefficients: at this eps the
        // closed-form tails are ~2% off, which the tracking band would feel
        c.set("ode", "alpha", "exact");
        c.set("pde", "n", "1024");
        c.set("pde", "dt", "0.001");
        c.set("pde", "tau", "50");
        c.set("pde", "t_end", "300");
        c.set("compare", "stride", "50");
        c.set("compare", "band", "0.005");
        return c;
    }
    if (name == "pde-desk") {
        common_quartic();
        c.set("run", "label", "pde-desk");
        c.set("params", "eps", "0.07");
        c.set("params", "rho", "0.25");
        c.set("initial", "h", "0.31,0.66");
        c.set("initial", "velocity", "forward");
        c.set("pde", "n", "1024");
        c.set("pde", "dt", "0.001");
        c.set("pde", "tau", "50");
        c.set("pde", "t_end", "50");
        c.set("pde", "snap_stride", "10000");
        c.set("pde", "diag_stride", "2500");
        return c;
    }
    if (name == "sweep-default") {
        common_quartic();
        c.set("run", "label", "sweep-default");
        c.set("params", "eps", "0.04");
        c.set("params", "rho", "0.2");
        c.set("initial", "h", "0.22,0.55,0.83");
        c.set("ode", "rtol", "1e-11");
        c.set("ode", "atol", "1e-13");
        c.set("sweep", "taus", "0.1,0.01,0.001");
        c.set("sweep", "t_end", "40");
        c.set("sweep", "t1", "4");
        c.set("sweep", "slope_lo", "0.7");
        c.set("sweep", "slope_hi", "1.3");
        return c;
    }
    if (name.rfind("table", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '4') {
        int id = name[5] - '0';
        const TableSpec& spec = table_spec(id);
        common_quartic();
        c.set("run", "label", name);
        c.set("table", "id", strf("%d", id));
        c.set("params", "eps", g17(spec.eps));
        c.set("params", "rho", g17(spec.rho));
        std::string h;
        for (std::size_t i = 0; i < spec.h0.size(); ++i)
            h += (i ? "," : "") + g17(spec.h0[i]);
        c.set("initial", "h", h);
        c.set("initial", "velocity",
              spec.velocity == VelocityMode::reversed ? "reversed" : "forward");
        std::string taus;
        for (std::size_t i = 0; i < spec.taus.size(); ++i)
            taus += (i ? "," : "") + g17(spec.taus[i]);
        c.set("ode", "taus", taus);
        c.set("ode", "t_end", g17(spec.times.back()));
        return c;
    }
    throw ValidationFailure(strf("unknown built-in configuration '%s'", name.c_str()));
}

std::vector<std::string> builtin_config_names() {
    return {"table1", "table2", "table3", "table4", "compare-desk", "pde-desk", "sweep-default"};
}

std::string run_ode(const Config& cfg, const std::filesystem::path& out) {
    ensure_dir(out);
    Potential pot = potential_from(cfg);
    LayerVector h0 = layers_from(cfg);
    OdeParams p = ode_params_from(cfg);
    std::string system = cfg.str_or("ode", "system", p.tau > 0.0 ? "hyperbolic" : "classic");

    Trajectory traj;
    if (system == "hyperbolic") {
        auto eta0 = initial_velocities(h0, velocity_from(cfg), p.eps, pot, p.alpha_mode);
        traj = integrate_layers(h0, eta0, OdeSystem::hyperbolic, p, pot);
    } else if (system == "classic") {
        traj = integrate_layers(h0, {}, OdeSystem::classic, p, pot);
    } else {
        throw ValidationFailure(strf("config: unknown system '%s'", system.c_str()));
    }

    int K = h0.transitions();
    int n_samples = static_cast<int>(cfg.int_or("ode", "samples", 1000));
    std::vector<std::string> header{"t"};
    for (int j = 1; j <= K; ++j) header.push_back(strf("h%d", j));
    for (int j = 1; j <= K; ++j) header.push_back(strf("eta%d", j));
    std::vector<std::vector<double>> rows;
    auto [lm0, lp0] = phase_lengths(h0.raw());
    double lm_drift = 0.0, lp_drift = 0.0;
    for (int i = 0; i <= n_samples; ++i) {
        double t = traj.t_end() * i / n_samples;
        auto h = traj.h_at(t);
        auto eta = traj.eta_at(t);
        auto [lm, lp] = phase_lengths(h);
        lm_drift = std::max(lm_drift, std::fabs(lm - lm0));
        lp_drift = std::max(lp_drift, std::fabs(lp - lp0));
        std::vector<double> row{t};
        row.insert(row.end(), h.begin(), h.end());
        row.insert(row.end(), eta.begin(), eta.end());
        rows.push_back(std::move(row));
    }
    write_csv(out / "trajectory.csv", join_labels(header), rows);

    json m;
    m["kind"] = "ode";
    m["system"] = system;
    m["transitions"] = K;
    m["t_end"] = traj.t_end();
    m["stopped_by_event"] = traj.hit_event();
    m["steps"] = traj.result.n_steps;
    m["rejected_steps"] = traj.result.n_rejected;
    m["phase_length_drift"] = {lm_drift, lp_drift};
    m["h_final"] = traj.h_at(traj.t_end());
    write_manifest(out, cfg, std::move(m));

    return strf("%s flow, K=%d: reached t=%.6g (%s), %ld steps, phase-length drift %.3e",
                system.c_str(), K, traj.t_end(),
                traj.hit_event() ? "stopped by spacing event" : "full horizon",
                traj.result.n_steps, std::max(lm_drift, lp_drift));
}

std::string run_pde(const Config& cfg, const std::filesystem::path& out) {
    ensure_dir(out);
    Potential pot = potential_from(cfg);
    LayerVector h0 = layers_from(cfg);
    PdeParams p = pde_params_from(cfg);
    p.validate(pot);
    VelocityMode vel = velocity_from(cfg);

    auto [u0, v0] = initial_data(h0, vel, p, pot);
    long total_steps = static_cast<long>(std::llround(p.t_end / p.dt));
    long snap_stride = cfg.int_or("pde", "snap_stride", 0);
    long diag_stride = cfg.int_or("pde", "diag_stride", std::max<long>(1, total_steps / 200));
    bool remap = cfg.flag_or("pde", "remap", false);

    auto write_snapshot = [&](const Field& u, const Field& v, double t, long idx) {
        std::vector<std::vector<double>> rows;
        for (int i = 0; i <= u.n; ++i)
            rows.push_back({u.x(i), u[i], v[i]});
        write_csv(out / strf("snapshot_%06ld.csv", idx), "x,u,v", rows);
        (void)t;
    };

    std::vector<std::vector<double>> diag_rows;
    std::vector<std::vector<double>> layer_rows;
    auto record = [&](const PdeState& s) {
        double en = energy(s.u, pot, p.eps);
        double massv = s.u.trapezoid();
        double mg = 0.0;
        std::vector<double> cr;
        try {
            cr = extract_layers(s.u);
            auto padded = LayerVector::checked(cr).gap_lengths();
            mg = *std::min_element(padded.begin(), padded.end());
        } catch (const Error&) {}
        diag_rows.push_back({s.t, massv, en, static_cast<double>(cr.size()), mg});
        for (std::size_t j = 0; j < cr.size(); ++j)
            layer_rows.push_back({s.t, static_cast<double>(j + 1), cr[j]});
    };

    if (p.integrated_form) {
        IntegratedStepper st(p, pot);
        st.init(u0, v0);
        Field zero(p.n);
        if (snap_stride > 0) write_snapshot(st.u(), zero, 0.0, 0);
        for (long k = 1; k <= total_steps; ++k) {
            st.step();
            if (snap_stride > 0 && k % snap_stride == 0) write_snapshot(st.u(), zero, st.t(), k);
        }
        Field uf = st.u();
        write_snapshot(uf, zero, st.t(), total_steps);
        json m;
        m["kind"] = "pde";
        m["form"] = "antiderivative";
        m["steps"] = total_steps;
        m["t_end"] = st.t();
        m["mass"] = uf.trapezoid();
        m["crossings"] = extract_layers(uf);
        write_manifest(out, cfg, std::move(m));
        return strf("antiderivative form: %ld steps to t=%.6g", total_steps, st.t());
    }

    PdeStepper st(p, pot);
    st.init(std::move(u0), std::move(v0));
    double mass0 = st.state().mass_u;
    if (snap_stride > 0) write_snapshot(st.state().u, st.state().v, 0.0, 0);
    record(st.state());
    for (long k = 1; k <= total_steps; ++k) {
        st.step();
        if (snap_stride > 0 && k % snap_stride == 0)
            write_snapshot(st.state().u, st.state().v, st.state().t, k);
        if (k % diag_stride == 0 || k == total_steps) record(st.state());
    }
    write_snapshot(st.state().u, st.state().v, st.state().t, total_steps);
    write_csv(out / "diagnostics.csv", "t,mass,energy,interfaces,min_gap", diag_rows);
    write_csv(out / "layers.csv", "t,index,x", layer_rows);

    double drift = std::fabs(st.state().u.trapezoid() - mass0);
    json m;
    m["kind"] = "pde";
    m["steps"] = total_steps;
    m["t_end"] = st.state().t;
    m["mass_drift"] = drift;
    PdeDiagnostics fin;
    if (remap) {
        fin = diagnostics(st.state(), p, pot);
        m["final"] = {{"ratio", fin.ratio}, {"ref_valid", fin.ref_valid},
                      {"sup_w", fin.sup_w}, {"min_gap", fin.min_gap},
                      {"quad_a", fin.quad_a}, {"quad_b", fin.quad_b}};
    }
    try {
        m["crossings"] = extract_layers(st.state().u);
    } catch (const Error&) {
        m["crossings"] = json::array();
    }
    write_manifest(out, cfg, std::move(m));
    return strf("full equation: %ld steps to t=%.6g, mass drift %.3e",
                total_steps, st.state().t, drift);
}

std::string run_compare(const Config& cfg, const std::filesystem::path& out,
                        double tol_override) {
    ensure_dir(out);
    CompareReport rep = compare_pde_ode(cfg);
    double band = tol_override > 0.0 ? tol_override : rep.band;

    int K = rep.h_pde.empty() ? 0 : static_cast<int>(rep.h_pde.front().size());
    std::vector<std::string> header{"t"};
    for (int j = 1; j <= K; ++j) header.push_back(strf("h%d_pde", j));
    for (int j = 1; j <= K; ++j) header.push_back(strf("h%d_ode", j));
    header.push_back("sup_gap_row");
    header.push_back("ratio");
    header.push_back("ratio_valid");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        std::vector<double> row{rep.times[i]};
        row.insert(row.end(), rep.h_pde[i].begin(), rep.h_pde[i].end());
        row.insert(row.end(), rep.h_ode[i].begin(), rep.h_ode[i].end());
        double g = 0.0;
        for (int j = 0; j < K; ++j)
            g = std::max(g, std::fabs(rep.h_pde[i][static_cast<std::size_t>(j)] -
                                      rep.h_ode[i][static_cast<std::size_t>(j)]));
        row.push_back(g);
        row.push_back(rep.ratio[i]);
        row.push_back(rep.ratio_valid[i] ? 1.0 : 0.0);
        rows.push_back(std::move(row));
    }
    write_csv(out / "compare.csv", join_labels(header), rows);

    bool pass = rep.signs_ok && rep.sup_gap <= band;
    json m;
    m["kind"] = "compare";
    m["sup_gap"] = rep.sup_gap;
    m["sup_gap_all"] = rep.sup_gap_all;
    m["band"] = band;
    m["signs_ok"] = rep.signs_ok;
    m["mass_drift"] = rep.mass_drift;
    m["pde_steps"] = rep.pde_steps;
    m["samples"] = rep.times;
    m["verdict"] = pass ? "pass" : "fail";
    write_manifest(out, cfg, std::move(m));

    std::string summary =
        strf("compare: tracked sup-gap %.3e (band %.3e), all-transition %.3e, signs %s, "
             "mass drift %.3e",
             rep.sup_gap, band, rep.sup_gap_all, rep.signs_ok ? "agree" : "DISAGREE",
             rep.mass_drift);
    if (!pass) throw ToleranceFailure(summary);
    return summary;
}

std::string run_reproduce_table(int id, const std::filesystem::path& out,
                                double tol_override) {
    ensure_dir(out);
    double tol_scale = tol_override > 0.0 ? tol_override : 1.0;
    auto t0 = std::chrono::steady_clock::now();
    TableReport rep = reproduce_table(id, tol_scale);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const TableSpec& spec = table_spec(id);
    std::ofstream f(out / strf("table%d_check.csv", id));
    if (!f) throw Error("cannot write the check table");
    f << "label,t,computed,reference,rel_err,rule,pass\n";
    for (const auto& r : rep.rows)
        f << r.label << "," << g17(r.t) << "," << g17(r.computed) << "," << g17(r.reference)
          << "," << g17(r.err) << "," << r.rule << "," << (r.pass ? 1 : 0) << "\n";
    f.close();

    if (id == 1) {
        // dense trajectories behind the displacement figure
        auto pot = Potential::quartic();
        auto h0 = LayerVector::checked(spec.h0);
        for (double tau : spec.taus) {
            OdeParams p;
            p.eps = spec.eps;
            p.rho = spec.rho;
            p.tau = tau;
            p.t_end = spec.times.back();
            p.opt.rtol = 1e-11;
            p.opt.atol = 1e-13;
            Trajectory traj;
            if (tau == 0.0) traj = integrate_layers(h0, {}, OdeSystem::classic, p, pot);
            else {
                auto eta0 = initial_velocities(h0, spec.velocity, spec.eps, pot,
                                               AlphaMode::asymptotic);
                traj = integrate_layers(h0, eta0, OdeSystem::hyperbolic, p, pot);
            }
            std::vector<std::vector<double>> rows;
            for (int i = 0; i <= 600; ++i) {
                double t = traj.t_end() * i / 600;
                auto h = traj.h_at(t);
                std::vector<double> row{t};
                row.insert(row.end(), h.begin(), h.end());
                rows.push_back(std::move(row));
            }
            write_csv(out / strf("trajectory_tau%g.csv", tau), "t,h1,h2", rows);
        }
    }

    int failed = 0;
    for (const auto& r : rep.rows) failed += r.pass ? 0 : 1;
    Config cfg = builtin_config(strf("table%d", id));
    json m;
    m["kind"] = "table";
    m["id"] = id;
    m["entries"] = rep.rows.size();
    m["failed"] = failed;
    m["tol_scale"] = tol_scale;
    m["seconds"] = secs;
    m["verdict"] = rep.pass ? "pass" : "fail";
    write_manifest(out, cfg, std::move(m));

    std::string summary = strf("table %d: %zu entries, %d failed, %.2f s", id, rep.rows.size(),
                               failed, secs);
    if (!rep.pass) throw ToleranceFailure(summary);
    return summary;
}

std::string run_sweep(const Config& cfg, const std::filesystem::path& out) {
    ensure_dir(out);
    Potential pot = potential_from(cfg);
    LayerVector h0 = layers_from(cfg);
    OdeParams p;
    p.eps = cfg.num("params", "eps");
    p.rho = cfg.num("params", "rho");
    p.alpha_mode = alpha_from(cfg);
    p.opt.rtol = cfg.num_or("ode", "rtol", 1e-11);
    p.opt.atol = cfg.num_or("ode", "atol", 1e-13);
    std::vector<double> taus = cfg.list("sweep", "taus");
    std::sort(taus.begin(), taus.end(), std::greater<double>());
    double t_end = cfg.num("sweep", "t_end");
    double t1 = cfg.num_or("sweep", "t1", 0.1 * t_end);

    auto rows = compare_tau_limit(h0, taus, t_end, t1, p, pot);

    std::vector<std::vector<double>> csv;
    std::vector<double> sup_h, int_eta, sup_late;
    for (const auto& r : rows) {
        csv.push_back({r.tau, r.sup_h, r.int_eta, r.sup_eta_late});
        sup_h.push_back(r.sup_h);
        int_eta.push_back(r.int_eta);
        sup_late.push_back(r.sup_eta_late);
    }
    write_csv(out / "sweep.csv", "tau,sup_h,int_eta,sup_eta_late", csv);

    double slope = fit_loglog_slope(taus, sup_h);
    bool mono = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        mono = mono && rows[i + 1].sup_h <= rows[i].sup_h &&
               rows[i + 1].int_eta <= rows[i].int_eta &&
               rows[i + 1].sup_eta_late <= rows[i].sup_eta_late;

    double lo = cfg.num_or("sweep", "slope_lo", 0.7);
    double hi = cfg.num_or("sweep", "slope_hi", 1.3);
    bool pass = mono && slope >= lo && slope <= hi;

    json m;
    m["kind"] = "sweep";
    m["taus"] = taus;
    m["sup_h"] = sup_h;
    m["int_eta"] = int_eta;
    m["sup_eta_late"] = sup_late;
    m["slope_sup_h"] = slope;
    m["monotone"] = mono;
    m["slope_band"] = {lo, hi};
    m["verdict"] = pass ? "pass" : "fail";
    write_manifest(out, cfg, std::move(m));

    std::string summary = strf("relaxation sweep: slope %.3f (band [%.2f, %.2f]), metrics %s",
                               slope, lo, hi, mono ? "monotone" : "NOT monotone");
    if (!pass) throw ToleranceFailure(summary);
    return summary;
}

} // namespace chl
