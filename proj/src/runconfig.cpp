#include "csymrd/runconfig.hpp"

#include "csymrd/ansatz.hpp"
#include "csymrd/catalog.hpp"
#include "csymrd/certify.hpp"
#include "csymrd/errors.hpp"
#include "csymrd/exact.hpp"
#include "csymrd/kernels/array_ops.hpp"
#include "csymrd/ode.hpp"
#include "csymrd/pde.hpp"
#include "csymrd/reduce.hpp"
#include "csymrd/rng.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <atomic>
#include <thread>

namespace csymrd {

using json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double RunConfig::num(const std::string& key) const {
    if (!settings.contains(key))
        throw UsageError("missing required setting --" + key);
    const auto& v = settings.at(key);
    if (v.is_number()) return v.get<double>();
    try {
        return std::stod(v.get<std::string>());
    } catch (...) {
        throw UsageError("setting --" + key + " is not a number");
    }
}

double RunConfig::num_or(const std::string& key, double fallback) const {
    return settings.contains(key) ? num(key) : fallback;
}

bool RunConfig::has(const std::string& key) const {
    return settings.contains(key);
}

std::string RunConfig::str_or(const std::string& key,
                              const std::string& fallback) const {
    if (!settings.contains(key)) return fallback;
    const auto& v = settings.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
}

int RunConfig::int_or(const std::string& key, int fallback) const {
    return settings.contains(key) ? static_cast<int>(num(key)) : fallback;
}

namespace {

struct OptDef {
    const char* key;
    char type; // 'd' number, 'i' integer, 's' string, 'b' flag
    const char* help;
};

const std::vector<OptDef> kParamOpts = {
    {"beta", 'd', "power-law exponent of the varying diffusivity"},
    {"mu", 'd', "branch parameter of the T1 families"},
    {"alpha", 'd', "free constant of the operator/system branch"},
    {"alpha1", 'd', "first reaction amplitude"},
    {"alpha2", 'd', "second reaction amplitude"},
    {"k", 'd', "reaction coupling exponent"},
    {"delta2", 'd', "scale of the v-side diffusivity"},
    {"u0", 'd', "anchor point of the implicitly defined diffusivity"},
    {"h0", 'd', "h(u0)"},
    {"h0prime", 'd', "h'(u0), must differ from -1/4"},
    {"kappa", 'd', "flux-form exponent kappa = beta/(beta+1)"},
    {"alpha1s", 'd', "flux-form first amplitude"},
    {"alpha2s", 'd', "flux-form second amplitude"},
    {"lambda1", 'd', "family scale parameter"},
    {"t0", 'd', "family singular time"},
    {"sign", 'd', "+1/-1 offset of the sine branch"},
    {"d1", 's', "first diffusivity kind: power | exp | case3"},
    {"d2", 's', "second diffusivity kind: power | exp | case3"},
};

struct CommandDef {
    std::string name;
    std::vector<OptDef> opts;
    bool with_params = false;
};

std::vector<CommandDef> command_defs() {
    std::vector<CommandDef> cmds;
    cmds.push_back({"catalog list", {{"json", 'b', "emit JSON"}}, false});
    cmds.push_back({"certify",
                    {{"system", 's', "catalogue system id"},
                     {"operator", 's', "catalogue operator id"},
                     {"samples", 'i', "number of random jet samples"},
                     {"tol", 'd', "residual tolerance (default 1e-9)"},
                     {"config", 's', "JSON config file"}},
                    true});
    cmds.push_back({"reduce",
                    {{"triple", 's', "reduction id: c3 t1r1 t1r2 t1r3 t1r4"},
                     {"samples", 'i', "number of sample points"},
                     {"tol", 'd', "residual tolerance (default 1e-10)"},
                     {"config", 's', "JSON config file"}},
                    true});
    cmds.push_back({"integrate",
                    {{"triple", 's', "reduction id (default c3)"},
                     {"phi0", 'd', "initial phi"},
                     {"psi0", 'd', "initial psi"},
                     {"t-start", 'd', "start time"},
                     {"t-end", 'd', "end time"},
                     {"rtol", 'd', "relative tolerance"},
                     {"atol", 'd', "absolute tolerance"},
                     {"config", 's', "JSON config file"}},
                    true});
    cmds.push_back({"exact eval",
                    {{"family", 's', "C9 | C14 | PlaneWave"},
                     {"t-min", 'd', "grid start time"},
                     {"t-max", 'd', "grid end time"},
                     {"nt", 'i', "time samples"},
                     {"x-min", 'd', "grid left end"},
                     {"x-max", 'd', "grid right end"},
                     {"nx", 'i', "space samples"},
                     {"config", 's', "JSON config file"}},
                    true});
    cmds.push_back({"classify",
                    {{"alpha1s", 'd', "flux-form first amplitude"},
                     {"alpha2s", 'd', "flux-form second amplitude"},
                     {"kappa", 'd', "flux-form exponent"},
                     {"k", 'd', "coupling exponent"},
                     {"t0", 'd', "singular time"},
                     {"config", 's', "JSON config file"}},
                    false});
    cmds.push_back({"simulate",
                    {{"system", 's', "flux-form system id (S-c13)"},
                     {"n", 'i', "grid cells"},
                     {"x-min", 'd', "left end"},
                     {"x-max", 'd', "right end"},
                     {"t-start", 'd', "start time"},
                     {"t-end", 'd', "end time"},
                     {"cfl", 'd', "cfl number in (0,1]"},
                     {"snapshots", 's', "comma-separated snapshot times"},
                     {"config", 's', "JSON config file"}},
                    true});
    cmds.push_back({"convergence",
                    {{"system", 's', "flux-form system id (S-c13)"},
                     {"grids", 's', "comma-separated grid sizes"},
                     {"x-min", 'd', "left end"},
                     {"x-max", 'd', "right end"},
                     {"t-start", 'd', "start time"},
                     {"t-end", 'd', "end time"},
                     {"cfl", 'd', "cfl number in (0,1]"},
                     {"threads", 'i', "worker threads (0 = auto)"},
                     {"config", 's', "JSON config file"}},
                    true});
    return cmds;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw UsageError("bad list element '" + item + "'");
        }
    }
    return out;
}

CatalogParams params_from(const RunConfig& cfg) {
    CatalogParams p;
    const auto opt = [&](const char* key) -> std::optional<double> {
        if (!cfg.has(key)) return std::nullopt;
        return cfg.num(key);
    };
    p.beta = opt("beta");
    p.mu = opt("mu");
    p.alpha = opt("alpha");
    p.alpha1 = opt("alpha1");
    p.alpha2 = opt("alpha2");
    p.k = opt("k");
    p.delta2 = opt("delta2");
    p.u0 = opt("u0");
    p.h0 = opt("h0");
    p.h0prime = opt("h0prime");
    p.kappa = opt("kappa");
    p.alpha1s = opt("alpha1s");
    p.alpha2s = opt("alpha2s");
    p.lambda1 = opt("lambda1");
    p.t0 = opt("t0");
    p.sign = opt("sign");
    p.d1_kind = cfg.str_or("d1", "power");
    p.d2_kind = cfg.str_or("d2", "power");
    return p;
}

void config_header(std::ostream& o, const RunConfig& cfg) {
    o << "# command: " << cfg.command << "\n";
    o << "# seed: " << cfg.seed << "\n";
    o << "# rng: splitmix64\n";
    o << "# kernel: "
      << kernels::backend_name(kernels::active_backend()) << "\n";
    for (const auto& [k, v] : cfg.settings.items())
        o << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump())
          << "\n";
}

json config_json(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    j["rng"] = "splitmix64";
    j["kernel"] = kernels::backend_name(kernels::active_backend());
    j["config"] = cfg.settings;
    return j;
}

// family parameters linked to a flux-form instance
FamilyParams family_params_of(const PhysicalRDSystem& ph,
                              const RunConfig& cfg) {
    FamilyParams fp;
    fp.beta = ph.params.at("beta");
    fp.k = ph.params.at("k");
    fp.alpha1 = ph.params.at("alpha1s") / (fp.beta + 1.0);
    fp.alpha2 = ph.params.at("alpha2s") / 3.0;
    fp.lambda1 = cfg.num_or("lambda1", 1.0);
    fp.t0 = cfg.num_or("t0", -1.0);
    return fp;
}

int exec_catalog_list(const RunConfig& cfg, std::ostream& out) {
    const auto entries = catalog_list();
    if (cfg.settings.value("json", false)) {
        json j = config_json(cfg);
        json items = json::array();
        for (const auto& e : entries)
            items.push_back({{"id", e.id},
                             {"kind", e.kind},
                             {"brief", e.brief},
                             {"params", e.param_keys}});
        j["catalog"] = items;
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& e : entries) {
        out << e.id << " (" << e.kind << ")\n    " << e.brief << "\n";
        if (!e.param_keys.empty()) out << "    params: " << e.param_keys << "\n";
    }
    return 0;
}

int exec_certify(const RunConfig& cfg, std::ostream& out) {
    const CatalogParams p = params_from(cfg);
    const std::string sys_id = cfg.str_or("system", "");
    const std::string op_id = cfg.str_or("operator", "");
    if (sys_id.empty())
        throw UsageError(
            "certify needs --system; catalogue ids: T1-I T1-II T1-III T2-I "
            "T2-II T2-III S-c2 S-c8 S-c13");
    if (op_id.empty())
        throw UsageError(
            "certify needs --operator; catalogue ids: Q-T1-I Q-T1-II Q-T1-III "
            "Q-T2-I Q-T2-II Q-T2-III");
    const RDSystem sys = catalog_system(sys_id, p);
    const SymmetryOperator op = catalog_operator(op_id, p);
    SamplerConfig sc;
    sc.n = cfg.int_or("samples", 200);
    sc.tol = cfg.num_or("tol", 1e-9);
    sc.seed = cfg.seed;
    const CertificationReport rep = certify(sys, op, sc);

    json j = config_json(cfg);
    j["system"] = sys_id;
    j["operator"] = op_id;
    j["n_samples"] = rep.n_samples;
    j["n_failed"] = rep.n_failed;
    j["tol"] = rep.tol;
    j["max_invariance_residual"] = rep.max_invariance_residual;
    j["max_determining_residual"] = rep.max_determining_residual;
    j["restriction_residuals"] = {rep.restriction_residuals.first,
                                  rep.restriction_residuals.second};
    j["is_lie"] = rep.is_lie;
    j["verdict"] = verdict_name(rep.verdict);
    for (const auto& note : sys.notes) j["notes"].push_back(note);
    out << j.dump(2) << "\n";
    return rep.verdict == Verdict::Fails ? 1 : 0;
}

int exec_reduce(const RunConfig& cfg, std::ostream& out) {
    const std::string id = cfg.str_or("triple", "");
    if (id.empty())
        throw UsageError("reduce needs --triple (c3 t1r1 t1r2 t1r3 t1r4)");
    const ReductionTriple tr = catalog_triple(id, params_from(cfg));
    const int n = cfg.int_or("samples", 100);
    const double tol = cfg.num_or("tol", 1e-10);
    SplitMix64 rng(cfg.seed);
    const double xlo = std::max(tr.ansatz.x_min_valid + 0.1, -1.0);
    const double xhi = std::min(tr.ansatz.x_max_valid - 0.1, 1.0);
    CatalogParams op_params = params_from(cfg);
    if (id != "c3") {
        op_params.mu = tr.sys.params.at("mu");
        op_params.d1_kind = (id == "t1r1" || id == "t1r2") ? "exp" : "power";
    }
    const SymmetryOperator op =
        catalog_operator(id == "c3" ? "Q-T1-I" : "Q-T1-II", op_params);
    double worst = 0.0, worst_surface = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = rng.uniform(0.0, 1.0);
        const double x = rng.uniform(xlo, xhi);
        const double phi = rng.uniform(0.5, 2.0);
        const double psi = rng.uniform(0.5, 2.0);
        const ResidualPair r =
            reduction_residual(tr.sys, tr.ansatz, tr.ode, t, x, phi, psi);
        worst = std::max(worst, std::max(std::fabs(r.r1), std::fabs(r.r2)));
        const auto [s1, s2] =
            invariant_surface_residual(tr.ansatz, op, t, x, phi, psi);
        worst_surface =
            std::max(worst_surface, std::max(std::fabs(s1), std::fabs(s2)));
    }
    json j = config_json(cfg);
    j["triple"] = id;
    j["n_samples"] = n;
    j["tol"] = tol;
    j["max_reduction_residual"] = worst;
    j["max_invariant_surface_residual"] = worst_surface;
    j["pass"] = worst < tol;
    out << j.dump(2) << "\n";
    return worst < tol ? 0 : 1;
}

int exec_integrate(const RunConfig& cfg, std::ostream& out) {
    const std::string id = cfg.str_or("triple", "c3");
    const ReductionTriple tr = catalog_triple(id, params_from(cfg));
    IntegrateOptions opt;
    opt.rtol = cfg.num_or("rtol", 1e-9);
    opt.atol = cfg.num_or("atol", 1e-12);
    const double t0 = cfg.num_or("t_start", 0.0);
    const double t1 = cfg.num("t_end");
    const Trajectory traj =
        integrate(tr.ode, {cfg.num("phi0"), cfg.num("psi0")}, t0, t1, opt);

    config_header(out, cfg);
    out << "# termination: "
        << (traj.termination == Termination::Completed        ? "Completed"
            : traj.termination == Termination::BlowUpDetected ? "BlowUpDetected"
                                                              : "DomainExit")
        << "\n";
    if (traj.termination == Termination::BlowUpDetected)
        out << "# blowup_time: " << fmt17(traj.blowup_time) << "\n";
    out << "t,phi,psi\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        out << fmt17(traj.t[i]) << "," << fmt17(traj.y[i][0]) << ","
            << fmt17(traj.y[i][1]) << "\n";
    return 0;
}

int exec_exact_eval(const RunConfig& cfg, std::ostream& out) {
    const std::string fam_id = cfg.str_or("family", "");
    FamilyParams fp;
    fp.beta = cfg.num_or("beta", 2.0);
    fp.k = cfg.num_or("k", 1.0);
    fp.alpha1 = cfg.num_or("alpha1", 1.0);
    fp.alpha2 = cfg.num_or("alpha2", 1.0);
    fp.lambda1 = cfg.num_or("lambda1", 1.0);
    fp.t0 = cfg.num_or("t0", 0.0);
    ExactSolutionFamily fam;
    if (fam_id == "C9")
        fam = make_family_c9(fp);
    else if (fam_id == "C14")
        fam = make_family_c14(fp);
    else if (fam_id == "PlaneWave")
        fam = make_plane_wave(fp.beta, fp.alpha1, fp.alpha2);
    else
        throw UsageError("--family must be C9, C14 or PlaneWave");

    const double tmin = cfg.num("t_min"), tmax = cfg.num("t_max");
    const double xmin = cfg.num("x_min"), xmax = cfg.num("x_max");
    const int nt = cfg.int_or("nt", 11), nx = cfg.int_or("nx", 11);
    if (nt < 1 || nx < 1) throw UsageError("nt and nx must be positive");
    // validate the whole window before any output is written
    if (!fam.valid(tmin, xmin) || !fam.valid(tmax, xmin))
        throw DomainError(
            "requested time window leaves the family validity set");

    config_header(out, cfg);
    out << "t,x,U,V\n";
    for (int it = 0; it < nt; ++it) {
        const double t =
            nt == 1 ? tmin : tmin + (tmax - tmin) * it / (nt - 1.0);
        for (int ix = 0; ix < nx; ++ix) {
            const double x =
                nx == 1 ? xmin : xmin + (xmax - xmin) * ix / (nx - 1.0);
            const auto [c1, c2] = fam.eval(t, x);
            out << fmt17(t) << "," << fmt17(x) << "," << fmt17(c1.val) << ","
                << fmt17(c2.val) << "\n";
        }
    }
    return 0;
}

int exec_classify(const RunConfig& cfg, std::ostream& out) {
    const Regime r =
        classify_regime(cfg.num("alpha1s"), cfg.num("alpha2s"),
                        cfg.num("kappa"), cfg.num("k"), cfg.num("t0"));
    out << regime_name(r) << "\n";
    return 0;
}

PhysicalRDSystem physical_from(const RunConfig& cfg) {
    const std::string id = cfg.str_or("system", "S-c13");
    return catalog_physical(id, params_from(cfg));
}

int exec_simulate(const RunConfig& cfg, std::ostream& out) {
    const PhysicalRDSystem ph = physical_from(cfg);
    const ExactSolutionFamily fam =
        make_family_c14(family_params_of(ph, cfg));
    const double xl = cfg.num_or("x_min", 0.0);
    const double xr = cfg.num_or("x_max", 0.5);
    const double ts = cfg.num_or("t_start", 0.0);
    const double te = cfg.num_or("t_end", 0.25);
    const int n = cfg.int_or("n", 128);
    SimulateOptions opt;
    opt.cfl = cfg.num_or("cfl", 0.9);
    opt.snapshot_times = parse_list(cfg.str_or("snapshots", ""));
    const GridField ic = grid_from_family(fam, xl, xr, n, ts);
    const auto snaps =
        simulate(ph, ic, BoundaryCondition::from_family(fam), te, opt);

    config_header(out, cfg);
    out << "t,x,U,V\n";
    for (const auto& g : snaps)
        for (int i = 0; i <= g.n; ++i)
            out << fmt17(g.time) << "," << fmt17(g.x_at(i)) << ","
                << fmt17(g.U[i]) << "," << fmt17(g.V[i]) << "\n";
    return 0;
}

int exec_convergence(const RunConfig& cfg, std::ostream& out) {
    const PhysicalRDSystem ph = physical_from(cfg);
    const ExactSolutionFamily fam =
        make_family_c14(family_params_of(ph, cfg));
    const double xl = cfg.num_or("x_min", 0.0);
    const double xr = cfg.num_or("x_max", 0.5);
    const double ts = cfg.num_or("t_start", 0.0);
    const double te = cfg.num_or("t_end", 0.25);
    SimulateOptions opt;
    opt.cfl = cfg.num_or("cfl", 0.9);
    const auto gl = parse_list(cfg.str_or("grids", "64,128,256"));
    if (gl.size() < 2) throw UsageError("need at least two grid sizes");
    std::vector<int> grids(gl.begin(), gl.end());

    std::vector<double> errors(grids.size(), 0.0);
    std::vector<std::string> failures(grids.size());
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int want = cfg.int_or("threads", 0);
    const int nthreads = std::max(
        1, std::min<int>(static_cast<int>(grids.size()),
                         want > 0 ? want : std::max(1, hw)));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grids.size()) return;
            try {
                const GridField ic =
                    grid_from_family(fam, xl, xr, grids[i], ts);
                const auto snaps = simulate(
                    ph, ic, BoundaryCondition::from_family(fam), te, opt);
                const auto errs = error_vs_exact({snaps.back()}, fam);
                errors[i] = errs.front().linf();
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < grids.size(); ++i)
        if (!failures[i].empty())
            throw Error("grid " + std::to_string(grids[i]) +
                        " failed: " + failures[i]);

    const double order = convergence_order(errors);
    json j = config_json(cfg);
    j["grids"] = grids;
    j["linf_errors"] = errors;
    j["order"] = order;
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    const auto cmds = command_defs();

    // split off the (possibly two-word) command
    std::size_t consumed = 0;
    std::string command;
    for (const auto& c : cmds) {
        std::stringstream ss(c.name);
        std::vector<std::string> words;
        std::string w;
        while (ss >> w) words.push_back(w);
        if (args.size() >= words.size()) {
            bool match = true;
            for (std::size_t i = 0; i < words.size(); ++i)
                if (args[i] != words[i]) match = false;
            if (match) {
                command = c.name;
                consumed = words.size();
                break;
            }
        }
    }
    if (command.empty()) {
        std::string known;
        for (const auto& c : cmds) known += c.name + ", ";
        throw UsageError("unknown or missing command; known: " +
                         known.substr(0, known.size() - 2));
    }
    const CommandDef* def = nullptr;
    for (const auto& c : cmds)
        if (c.name == command) def = &c;

    std::vector<OptDef> opts = def->opts;
    if (def->with_params)
        opts.insert(opts.end(), kParamOpts.begin(), kParamOpts.end());
    opts.push_back({"seed", 'i', "sampler seed (default: CSYM_RD_SEED)"});
    opts.push_back({"out", 's', "write the artifact to this file"});

    CLI::App app{"csymrd " + command};
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    for (const auto& o : opts) {
        std::string flag = "--";
        for (const char* ch = o.key; *ch; ++ch)
            flag += *ch == '_' ? '-' : *ch;
        if (o.type == 'b')
            app.add_flag(flag, flags[o.key], o.help);
        else
            app.add_option(flag, values[o.key], o.help);
    }
    std::vector<std::string> rest(args.begin() + consumed, args.end());
    std::reverse(rest.begin(), rest.end()); // CLI11 wants reversed args
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string("flag error: ") + e.what());
    }

    RunConfig cfg;
    cfg.command = command;
    cfg.settings = json::object();

    // precedence: flags > config file > defaults
    json from_file;
    const auto file_it = values.find("config");
    if (file_it != values.end() && app.count("--config") > 0) {
        std::ifstream in(file_it->second);
        if (!in) throw UsageError("cannot open config file " + file_it->second);
        try {
            in >> from_file;
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad config JSON: ") + e.what());
        }
        if (!from_file.is_object())
            throw UsageError("config file must hold a JSON object");
        for (const auto& [key, v] : from_file.items()) {
            bool known = false;
            for (const auto& o : opts)
                if (key == o.key) known = true;
            if (!known)
                throw UsageError("unknown config key '" + key + "' for " +
                                 command);
        }
    }

    for (const auto& o : opts) {
        const std::string key = o.key;
        std::string flag = "--";
        for (const char* ch = o.key; *ch; ++ch)
            flag += *ch == '_' ? '-' : *ch;
        const std::string jkey = [&] {
            std::string s = key;
            for (auto& ch : s)
                if (ch == '-') ch = '_';
            return s;
        }();
        if (o.type == 'b') {
            if (flags[key]) cfg.settings[jkey] = true;
            continue;
        }
        if (app.count(flag) > 0) {
            if (o.type == 's')
                cfg.settings[jkey] = values[key];
            else {
                try {
                    cfg.settings[jkey] = std::stod(values[key]);
                } catch (...) {
                    throw UsageError("flag " + flag + " needs a number, got '" +
                                     values[key] + "'");
                }
            }
        } else if (from_file.contains(key)) {
            cfg.settings[jkey] = from_file.at(key);
        }
    }
    cfg.settings.erase("config");

    // seed precedence: flag/file > env > fixed default
    if (cfg.settings.contains("seed")) {
        cfg.seed = static_cast<std::uint64_t>(cfg.num("seed"));
    } else if (const char* env = std::getenv("CSYM_RD_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    } else {
        cfg.seed = 24601;
    }
    cfg.settings["seed"] = cfg.seed;
    cfg.out_path = cfg.str_or("out", "");
    return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out) {
    if (cfg.command == "catalog list") return exec_catalog_list(cfg, out);
    if (cfg.command == "certify") return exec_certify(cfg, out);
    if (cfg.command == "reduce") return exec_reduce(cfg, out);
    if (cfg.command == "integrate") return exec_integrate(cfg, out);
    if (cfg.command == "exact eval") return exec_exact_eval(cfg, out);
    if (cfg.command == "classify") return exec_classify(cfg, out);
    if (cfg.command == "simulate") return exec_simulate(cfg, out);
    if (cfg.command == "convergence") return exec_convergence(cfg, out);
    throw UsageError("unhandled command " + cfg.command);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(args);
        if (!cfg.out_path.empty()) {
            std::ofstream f(cfg.out_path);
            if (!f)
                throw UsageError("cannot open output file " + cfg.out_path);
            return execute(cfg, f);
        }
        return execute(cfg, out);
    } catch (const UsageError& e) {
        err << "{\"error\":\"UsageError\",\"message\":\"" << e.what()
            << "\"}\n";
        return 2;
    } catch (const InvalidParams& e) {
        // parameter constraint violations are usage problems
        err << "{\"error\":\"InvalidParams\",\"message\":\"" << e.what()
            << "\"}\n";
        return 2;
    } catch (const Error& e) {
        // single-line machine-readable error record
        std::string type = "Error";
        if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
        else if (dynamic_cast<const BoundaryCase*>(&e)) type = "BoundaryCase";
        else if (dynamic_cast<const SingularManifold*>(&e)) type = "SingularManifold";
        else if (dynamic_cast<const PositivityLoss*>(&e)) type = "PositivityLoss";
        else if (dynamic_cast<const StepCollapse*>(&e)) type = "StepCollapse";
        else if (dynamic_cast<const StiffnessFailure*>(&e)) type = "StiffnessFailure";
        else if (dynamic_cast<const DegenerateErrors*>(&e)) type = "DegenerateErrors";
        else if (dynamic_cast<const UnsupportedDiffusivity*>(&e)) type = "UnsupportedDiffusivity";
        else if (dynamic_cast<const UnsupportedOperator*>(&e)) type = "UnsupportedOperator";
        else if (dynamic_cast<const IncompatiblePair*>(&e)) type = "IncompatiblePair";
        else if (dynamic_cast<const UnsupportedOrder*>(&e)) type = "UnsupportedOrder";
        err << "{\"error\":\"" << type << "\",\"message\":\"" << e.what()
            << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        err << "{\"error\":\"Exception\",\"message\":\"" << e.what()
            << "\"}\n";
        return 1;
    }
}

} // namespace csymrd
