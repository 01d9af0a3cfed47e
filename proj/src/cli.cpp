#include "kwlab/report.hpp"

#include "kwlab/flow.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace kw {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text << '\n';
    if (!f) throw UsageError("cannot write '" + path + "'");
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << std::setprecision(17);
    return f;
}

// config schema: {N, L, dt, steps, seed, init: {kind, amplitude}, kmax_linear}
struct FlowSpec {
    int N = 0;
    double L = 2.0 * M_PI;
    double dt = 0.0;
    int steps = 0;
    std::uint64_t seed = 1;
    std::string kind;
    double amplitude = 0.0;
    int kmax = 2;
};

[[noreturn]] void schema(const std::string& field, const std::string& expected)
{
    throw UsageError("config: field '" + field + "' must be " + expected);
}

FlowSpec parse_flow_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    for (const auto& [key, _] : j.items())
        if (key != "N" && key != "L" && key != "dt" && key != "steps" && key != "seed" && key != "init" && key != "kmax_linear")
            throw UsageError("config: unknown field '" + key + "'");

    FlowSpec s;
    auto integer = [&](const json& o, const char* name, bool required, auto& dst) {
        if (!o.contains(name)) {
            if (required) schema(name, "present (integer)");
            return;
        }
        const auto& v = o.at(name);
        if (!v.is_number_integer()) schema(name, "an integer");
        if (v.is_number_unsigned())
            dst = static_cast<std::remove_reference_t<decltype(dst)>>(v.get<std::uint64_t>());
        else {
            if (v.get<std::int64_t>() < 0) schema(name, "a non-negative integer");
            dst = static_cast<std::remove_reference_t<decltype(dst)>>(v.get<std::int64_t>());
        }
    };
    auto number = [&](const json& o, const char* name, bool required, double& dst) {
        if (!o.contains(name)) {
            if (required) schema(name, "present (number)");
            return;
        }
        const auto& v = o.at(name);
        if (!v.is_number()) schema(name, "a number");
        dst = v.get<double>();
    };
    integer(j, "N", true, s.N);
    number(j, "L", false, s.L);
    number(j, "dt", true, s.dt);
    integer(j, "steps", true, s.steps);
    integer(j, "seed", false, s.seed);
    integer(j, "kmax_linear", false, s.kmax);
    if (!j.contains("init")) schema("init", "present (object)");
    const auto& init = j.at("init");
    if (!init.is_object()) schema("init", "an object");
    for (const auto& [key, _] : init.items())
        if (key != "kind" && key != "amplitude") throw UsageError("config: unknown field 'init." + key + "'");
    if (!init.contains("kind") || !init.at("kind").is_string()) schema("init.kind", "a string");
    s.kind = init.at("kind").get<std::string>();
    if (s.kind != "zero" && s.kind != "random" && s.kind != "abelian") schema("init.kind", "one of zero, random, abelian");
    number(init, "amplitude", s.kind != "zero", s.amplitude);
    if (s.N < 8) schema("N", "an integer >= 8");
    if (!(s.L > 0.0)) schema("L", "a positive number");
    if (!(s.dt > 0.0)) schema("dt", "a positive number");
    if (s.kmax < 1 || 2 * s.kmax >= s.N) schema("kmax_linear", "an integer with 1 <= kmax_linear < N/2");
    return s;
}

int flow_run(const std::string& config, const std::string& out_dir, bool timing, std::ostream& out)
{
    const FlowSpec s = parse_flow_config(config);
    TorusField F0;
    if (s.kind == "zero")
        F0 = zero_field(s.N, s.L);
    else if (s.kind == "random")
        F0 = random_field(s.N, s.seed, s.amplitude, s.kmax, s.L);
    else
        F0 = abelian_field(s.N, s.amplitude, s.L);

    const auto t0 = std::chrono::steady_clock::now();
    FlowTrace tr;
    try {
        tr = run_flow(F0, FlowConfig{s.dt, s.steps});
    } catch (const CflError& e) {
        std::ostringstream m;
        m << std::setprecision(6) << e.what() << " (h = " << F0.h() << "); use dt <= " << e.suggested_dt;
        throw UsageError(m.str());
    }

    const std::string dir = out_dir.empty() ? "." : out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    {
        auto csv = open_out(dir + "/trace.csv");
        csv << "step,time,cs,grad_norm_sq,energy_identity_relerr,constraint_drift,sup_a\n";
        for (std::size_t i = 0; i < tr.step.size(); ++i) {
            csv << tr.step[i] << ',' << tr.time[i] << ',' << tr.cs[i] << ',' << tr.grad_norm_sq[i] << ',';
            if (!std::isnan(tr.energy_identity_relerr[i])) csv << tr.energy_identity_relerr[i];
            csv << ',' << tr.constraint_drift[i] << ',' << tr.sup_a[i] << '\n';
        }
        if (!csv) throw UsageError("cannot write '" + dir + "/trace.csv'");
    }
    const auto fit = lojasiewicz_fit(tr.time, tr.cs);
    json j;
    j["config"] = {{"N", s.N}, {"L", s.L}, {"dt", s.dt}, {"steps", s.steps}, {"seed", s.seed},
                   {"init", {{"kind", s.kind}, {"amplitude", s.amplitude}}}, {"kmax_linear", s.kmax}};
    j["monotone"] = tr.monotone;
    j["monotone_worst_excess"] = tr.monotone_worst;
    j["energy_identity_max_relerr"] = tr.energy_identity_max;
    j["rate_forms_max_relerr"] = tr.forms_max;
    j["initial_constraint"] = tr.initial_constraint;
    j["final_constraint_drift"] = tr.constraint_drift.back();
    j["cs_initial"] = tr.cs.front();
    j["cs_final"] = tr.cs.back();
    json lj = {{"status", fit.status}, {"model", fit.model}};
    if (fit.status == "ok") {
        lj["cs_inf"] = fit.cs_inf;
        lj["rate"] = fit.rate;
        lj["power"] = fit.power;
        lj["mu"] = fit.mu;
        lj["rms_exponential"] = fit.rms_exp;
        lj["rms_power"] = fit.rms_pow;
    }
    j["lojasiewicz"] = lj;
    if (timing) j["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(j.dump(2), dir + "/summary.json", out);
    return tr.monotone ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical checks for the linearized Kapustin-Witten operator and the flow on the torus", "kwlab"};
    app.require_subcommand(1);
    app.fallthrough();

    SuiteOptions opt;
    std::string out_path;
    app.add_option("--seed", opt.seed, "seed for every randomized check");
    app.add_option("--out", out_path, "report file (flow run: output directory)");
    app.add_option("--tolerance-scale", opt.tolerance_scale, "multiplies every numeric tolerance")
        ->check(CLI::PositiveNumber);
    app.add_flag("--timing", opt.timing, "record wall time in the report");

    auto add_model_opts = [&](CLI::App* s) {
        s->add_option("--m", opt.model_m, "single model index m >= 0")->check(CLI::NonNegativeNumber);
        s->add_option("--samples", opt.samples, "property samples per m")->check(CLI::PositiveNumber);
    };
    auto add_operator_opts = [&](CLI::App* s) {
        s->add_option("--background", opt.background, "trivial, nahm, model:<m> or torus");
        s->add_option("--points", opt.points, "random evaluation points")->check(CLI::PositiveNumber);
    };

    std::map<CLI::App*, std::string> suite_cmds;
    for (const auto& name : suite_names()) {
        if (name == "spectral") continue;
        CLI::App* s = app.add_subcommand(name, "run the " + name + " suite");
        if (name == "model" || name == "all") add_model_opts(s);
        if (name == "operator" || name == "all") add_operator_opts(s);
        suite_cmds[s] = name;
    }

    CLI::App* verify = app.add_subcommand("verify", "per-module verification");
    verify->require_subcommand(1);
    for (const char* name : {"algebra", "clifford", "model", "operator"}) {
        CLI::App* s = verify->add_subcommand(name, std::string("verify ") + name);
        if (std::string(name) == "model") add_model_opts(s);
        if (std::string(name) == "operator") add_operator_opts(s);
        suite_cmds[s] = name;
    }

    CLI::App* spectral = app.add_subcommand("spectral", "spectral suite, or one of its parts");
    spectral->require_subcommand(0, 1);
    int mesh = 2000;
    std::string csv_path, case_name = "case3";
    int case_m = 1;
    double lambda = 1.0, k = 1.0, a0 = 1.0, b0 = 1.0;
    CLI::App* sp_hemi = spectral->add_subcommand("hemisphere", "lowest eigenvalue on the half-sphere");
    sp_hemi->add_option("--mesh", mesh)->check(CLI::Range(100, 1 << 20));
    sp_hemi->add_option("--csv", csv_path, "eigenfunction table");
    CLI::App* sp_hardy = spectral->add_subcommand("hardy", "Hardy quotient families");
    CLI::App* sp_excl = spectral->add_subcommand("exclusion", "exclusion interval for one reduced case");
    sp_excl->add_option("--case", case_name, "b3ct, case2 or case3");
    sp_excl->add_option("--m", case_m)->check(CLI::PositiveNumber);
    sp_excl->add_option("--csv", csv_path, "eigenfunction table");
    CLI::App* sp_ode = spectral->add_subcommand("ode", "radial system and admissibility");
    sp_ode->add_option("--lambda", lambda);
    sp_ode->add_option("--k", k);
    sp_ode->add_option("--a0", a0, "a(1)");
    sp_ode->add_option("--b0", b0, "b(1)");
    sp_ode->add_option("--csv", csv_path, "trajectory on [0.01, 10]");

    CLI::App* flow = app.add_subcommand("flow", "gradient flow on the torus");
    flow->require_subcommand(1);
    std::string config;
    CLI::App* flow_run_cmd = flow->add_subcommand("run", "run a flow from a JSON config");
    flow_run_cmd->add_option("--config", config, "config file")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "kwlab: " << e.what() << '\n';
        return 2;
    }

    try {
        for (const auto& [cmd, name] : suite_cmds) {
            if (!cmd->parsed()) continue;
            const SuiteReport r = run_suite(name, opt);
            emit(r.to_json().dump(2), out_path, out);
            return r.exit_code();
        }
        if (spectral->parsed()) {
            SuiteReport r;
            if (sp_hemi->parsed()) {
                HemisphereResult h;
                r = spectral_hemisphere(opt, mesh, &h);
                if (!csv_path.empty()) {
                    auto f = open_out(csv_path);
                    f << "theta,f\n";
                    for (std::size_t i = 0; i < h.theta.size(); ++i) f << h.theta[i] << ',' << h.f[i] << '\n';
                }
            } else if (sp_hardy->parsed()) {
                r = spectral_hardy(opt);
            } else if (sp_excl->parsed()) {
                ExclusionCase c;
                try {
                    c = parse_case(case_name);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                r = spectral_exclusion(opt, {{c, case_m}});
                if (!csv_path.empty()) {
                    SLProblem p;
                    p.potential = case_potential(c, case_m);
                    const auto s = rayleigh_min(p);
                    auto f = open_out(csv_path);
                    f << "Theta,f\n";
                    for (std::size_t i = 0; i < s.grid.size(); ++i) f << s.grid[i] << ',' << s.f[i] << '\n';
                }
            } else if (sp_ode->parsed()) {
                if (k == 0.0) throw UsageError("--k must be nonzero");
                r.suite = "radial_ode";
                r.seed = opt.seed;
                std::vector<double> g;
                for (int i = 0; i <= 120; ++i) g.push_back(0.01 * std::pow(1000.0, i / 120.0));
                const auto st = radial_ode_solve(lambda, k, 1.0, {a0, b0}, g);
                r.expect_le("residual", "plumbing", st.max_residual, 1e-8 * opt.tolerance_scale);
                r.expect_le("identity", "weighted norm identity for the radial system", st.max_identity,
                            1e-8 * opt.tolerance_scale);
                const auto a = radial_admissible(lambda, k);
                r.extra = {{"lambda", lambda}, {"k", k}, {"overflow", st.overflow},
                           {"admissible", a.admissible}, {"exponent", a.exponent},
                           {"expected_exponent", a.expected_exponent}, {"fit_rms", a.fit_rms},
                           {"integral", a.integral}, {"extension_change", a.extension_change}};
                if (!csv_path.empty()) {
                    auto f = open_out(csv_path);
                    f << "x,a,b\n";
                    for (std::size_t i = 0; i < st.x.size(); ++i) f << st.x[i] << ',' << st.a[i] << ',' << st.b[i] << '\n';
                }
            } else {
                r = run_suite("spectral", opt);
            }
            emit(r.to_json().dump(2), out_path, out);
            return r.exit_code();
        }
        if (flow_run_cmd->parsed()) return flow_run(config, out_path, opt.timing, out);
    } catch (const UsageError& e) {
        err << "kwlab: " << e.what() << '\n';
        return 2;
    } catch (const UnknownSuite& e) {
        err << "kwlab: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "kwlab: " << e.what() << '\n';
        return 2;
    }
    err << "kwlab: nothing to do\n";
    return 2;
}

}  // namespace kw
