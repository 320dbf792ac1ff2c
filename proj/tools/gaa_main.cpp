// Command-line front end: every pipeline is a subcommand that writes CSV
// outputs plus a manifest.json sufficient to reproduce each number.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "gaa/agp.hpp"
#include "gaa/io.hpp"
#include "gaa/model.hpp"
#include "gaa/rstat.hpp"
#include "gaa/scaling.hpp"
#include "gaa/sff.hpp"
#include "gaa/spectra.hpp"
#include "gaa/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gaa;

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_root;
};

struct PhysicsOpts {
    int L = 12;
    int N = -1;  // -1: half filling for even L, (L+1)/2 for odd
    double V = 1.0;
    double alpha = 0.0;
    double lambda = 1.0;
    std::string boundary = "open";

    ModelParams params() const {
        ModelParams p;
        p.L = L;
        p.N = N >= 0 ? N : half_filling(L);
        p.V = V;
        p.alpha = alpha;
        p.lambda = lambda;
        p.boundary = boundary == "periodic" ? Boundary::Periodic : Boundary::Open;
        validate(p);
        return p;
    }
};

struct GridOpts {
    double lambda_min = 0.5;
    double lambda_max = 3.0;
    int lambda_steps = 11;

    std::vector<double> lambdas() const {
        if (lambda_steps < 1) throw CLI::ValidationError("--lambda-steps must be >= 1");
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(lambda_steps));
        if (lambda_steps == 1) {
            grid.push_back(lambda_min);
            return grid;
        }
        for (int j = 0; j < lambda_steps; ++j)
            grid.push_back(lambda_min +
                           (lambda_max - lambda_min) * j / (lambda_steps - 1.0));
        return grid;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "master seed (unsigned 64-bit)")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--out", opts.out_root,
                    "output root (default: $GAA_OUT_ROOT or ./gaa-runs)");
}

void add_physics(CLI::App* cmd, PhysicsOpts& opts, bool with_lambda = true) {
    cmd->add_option("--L", opts.L, "site count")->capture_default_str();
    cmd->add_option("--N", opts.N, "particle count (default: half filling)");
    cmd->add_option("--V", opts.V, "nearest-neighbor interaction")->capture_default_str();
    cmd->add_option("--alpha", opts.alpha, "flattening parameter in [0, 1)")
        ->capture_default_str();
    if (with_lambda)
        cmd->add_option("--lambda", opts.lambda, "quasi-periodic strength")
            ->capture_default_str();
    cmd->add_option("--boundary", opts.boundary, "boundary condition")
        ->check(CLI::IsMember({"open", "periodic"}))
        ->capture_default_str();
}

void add_grid(CLI::App* cmd, GridOpts& opts) {
    cmd->add_option("--lambda-min", opts.lambda_min)->capture_default_str();
    cmd->add_option("--lambda-max", opts.lambda_max)->capture_default_str();
    cmd->add_option("--lambda-steps", opts.lambda_steps)->capture_default_str();
}

fs::path resolve_out_root(const CommonOpts& opts) {
    if (!opts.out_root.empty()) return opts.out_root;
    if (const char* env = std::getenv("GAA_OUT_ROOT"); env && *env) return env;
    return "gaa-runs";
}

// Run directory keyed by the resolved configuration, so identical invocations
// land in (and overwrite) the same place with identical bytes.
fs::path run_directory(const CommonOpts& opts, const std::string& subcommand,
                       const json& config) {
    const std::string tag = hash_hex(fnv1a64(config.dump()));
    return resolve_out_root(opts) / fs::path(subcommand + "_" + tag);
}

json physics_json(const PhysicsOpts& phys) {
    return json{{"L", phys.L},          {"N", phys.params().N}, {"V", phys.V},
                {"alpha", phys.alpha},  {"lambda", phys.lambda}, {"boundary", phys.boundary}};
}

void write_manifest(const fs::path& dir, const std::string& subcommand, const json& config,
                    const CommonOpts& opts, int n_points, int n_realizations,
                    const json& counters, double wall_clock_s) {
    json seeds = json::array();
    for (int point = 0; point < n_points; ++point) {
        json per_point = json::array();
        const std::uint64_t point_seed =
            n_points == 1 ? opts.seed : derive_seed(opts.seed, static_cast<std::uint64_t>(point));
        for (int r = 0; r < n_realizations; ++r)
            per_point.push_back(derive_seed(point_seed, static_cast<std::uint64_t>(r)));
        seeds.push_back(per_point);
    }
    json manifest{{"subcommand", subcommand},
                  {"version", kVersion},
                  {"config", config},
                  {"master_seed", opts.seed},
                  {"threads", opts.threads},
                  {"realization_seeds", seeds},
                  {"counters", counters},
                  {"wall_clock_s", wall_clock_s}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---- spectrum ---------------------------------------------------------------

int run_spectrum(const CommonOpts& common, const PhysicsOpts& phys, int samples,
                 std::optional<double> fixed_phi) {
    Stopwatch clock;
    const ModelParams base = phys.params();
    json config = physics_json(phys);
    config["samples"] = samples;
    config["seed"] = common.seed;
    if (fixed_phi) config["phi"] = *fixed_phi;
    const fs::path dir = run_directory(common, "spectrum", config);

    const FockBasis basis = enumerate_basis(base.L, base.N);
    EnsembleConfig ens{samples, common.seed, common.threads};
    auto spectra = run_realizations<Eigen::VectorXd>(ens, [&](std::uint64_t seed, int) {
        ModelParams p = base;
        p.phi = fixed_phi ? *fixed_phi : phase_from_seed(seed);
        return full_diagonalize(build_hamiltonian(p, basis), false, seed).eigenvalues;
    });

    for (int r = 0; r < samples; ++r) {
        CsvTable csv("index,eigenvalue");
        const auto& evals = spectra[static_cast<std::size_t>(r)];
        for (Eigen::Index i = 0; i < evals.size(); ++i)
            csv.add_row({std::to_string(i), format_double(evals(i))});
        const std::uint64_t seed = derive_seed(common.seed, static_cast<std::uint64_t>(r));
        write_text_file(dir / ("spectrum_r" + std::to_string(r) + "_s" + std::to_string(seed) +
                               ".csv"),
                        csv.text());
    }
    write_manifest(dir, "spectrum", config, common, 1, samples, json::object(), clock.seconds());
    std::printf("spectrum: %d realization(s), D=%lld -> %s\n", samples,
                static_cast<long long>(basis.size()), dir.string().c_str());
    return 0;
}

// ---- rstat / phase-diagram ----------------------------------------------------

int run_rstat_like(const std::string& name, const CommonOpts& common, const PhysicsOpts& phys,
                   const GridOpts& grid, const std::vector<double>& alphas, int samples,
                   double window_halfwidth, bool full_spectrum) {
    Stopwatch clock;
    ModelParams base = phys.params();
    json config = physics_json(phys);
    config["lambda_grid"] = {grid.lambda_min, grid.lambda_max, grid.lambda_steps};
    config["alphas"] = alphas;
    config["samples"] = samples;
    config["window"] = window_halfwidth;
    config["full_spectrum"] = full_spectrum;
    config["seed"] = common.seed;
    const fs::path dir = run_directory(common, name, config);

    EnsembleConfig ens{samples, common.seed, common.threads};
    const EnergyWindow window{-window_halfwidth, window_halfwidth};
    const auto table =
        phase_diagram_scan(base, alphas, grid.lambdas(), ens, window, full_spectrum);

    CsvTable csv("alpha,lambda,L,V,n_samples,mean_r,stderr");
    long skipped = 0, degenerate = 0;
    for (const auto& row : table) {
        csv.add_row({format_double(row.alpha), format_double(row.lambda), std::to_string(base.L),
                     format_double(base.V), std::to_string(samples),
                     format_double(row.stats.mean_r), format_double(row.stats.stderr_r)});
        skipped += row.stats.n_skipped;
        degenerate += row.stats.n_degenerate;
    }
    write_text_file(dir / (name + ".csv"), csv.text());
    write_manifest(dir, name, config, common, static_cast<int>(table.size()), samples,
                   json{{"skipped_realizations", skipped}, {"degenerate_pairs", degenerate}},
                   clock.seconds());
    std::printf("%s: %zu point(s) x %d realizations -> %s\n", name.c_str(), table.size(),
                samples, dir.string().c_str());
    return 0;
}

// ---- sff ----------------------------------------------------------------------

int run_sff(const CommonOpts& common, const PhysicsOpts& phys, std::vector<double> alphas,
            int samples, const SFFConfig& sff_cfg) {
    Stopwatch clock;
    ModelParams base = phys.params();
    if (alphas.empty()) alphas.push_back(phys.alpha);
    json config = physics_json(phys);
    config["alphas"] = alphas;
    config["samples"] = samples;
    config["eta"] = sff_cfg.eta;
    config["epsilon"] = sff_cfg.epsilon;
    config["smoothing_window"] = sff_cfg.smoothing_window;
    config["seed"] = common.seed;
    const fs::path dir = run_directory(common, "sff", config);

    EnsembleConfig ens{samples, common.seed, common.threads};
    CsvTable scan_csv("alpha,tau_thouless,last_log_ratio,n_realizations");
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        ModelParams p = base;
        p.alpha = alphas[k];
        EnsembleConfig point = ens;
        point.master_seed = derive_seed(ens.master_seed, k);
        const SFFCurve curve = gaa_sff_curve(p, point, sff_cfg);

        CsvTable csv("tau,K,K_goe");
        for (Eigen::Index i = 0; i < curve.tau.size(); ++i)
            csv.add_row({format_double(curve.tau(i)), format_double(curve.K(i)),
                         format_double(goe_sff(curve.tau(i)))});
        const std::string stem = "sff_alpha" + format_double(alphas[k]);
        write_text_file(dir / (stem + ".csv"), csv.text());

        json sidecar{{"eta", curve.eta},
                     {"epsilon", curve.epsilon_threshold},
                     {"tau_H", 1.0},
                     {"n_realizations", curve.n_realizations},
                     {"seed", point.master_seed},
                     {"last_log_ratio", curve.last_log_ratio}};
        if (curve.tau_thouless)
            sidecar["tau_thouless"] = *curve.tau_thouless;
        else
            sidecar["tau_thouless"] = "exceeds_grid";
        write_text_file(dir / (stem + ".json"), sidecar.dump(2) + "\n");

        scan_csv.add_row({format_double(alphas[k]),
                          curve.tau_thouless ? format_double(*curve.tau_thouless)
                                             : std::string("exceeds_grid"),
                          format_double(curve.last_log_ratio),
                          std::to_string(curve.n_realizations)});
    }
    if (alphas.size() > 1) write_text_file(dir / "thouless_vs_alpha.csv", scan_csv.text());
    write_manifest(dir, "sff", config, common, static_cast<int>(alphas.size()), samples,
                   json::object(), clock.seconds());
    std::printf("sff: %zu alpha point(s) x %d realizations -> %s\n", alphas.size(), samples,
                dir.string().c_str());
    return 0;
}

// ---- chi ------------------------------------------------------------------------

int run_chi(const CommonOpts& common, const PhysicsOpts& phys, const GridOpts& grid,
            const std::string& kind_name, int samples, double window_halfwidth) {
    Stopwatch clock;
    ModelParams base = phys.params();
    const PerturbationKind kind = kind_name == "local" ? PerturbationKind::LocalDensity
                                                       : PerturbationKind::ExtensiveNN;
    json config = physics_json(phys);
    config["lambda_grid"] = {grid.lambda_min, grid.lambda_max, grid.lambda_steps};
    config["kind"] = kind_name;
    config["samples"] = samples;
    config["window"] = window_halfwidth;
    config["seed"] = common.seed;
    const fs::path dir = run_directory(common, "chi", config);

    EnsembleConfig ens{samples, common.seed, common.threads};
    const EnergyWindow window{-window_halfwidth, window_halfwidth};
    const auto rows = chi_lambda_sweep(base, grid.lambdas(), kind, ens, window);

    CsvTable csv("alpha,lambda,L,kind,zeta,f_scaled,stderr,n_excluded");
    long excluded = 0;
    for (const auto& row : rows) {
        csv.add_row({format_double(row.alpha), format_double(row.lambda), std::to_string(row.L),
                     kind_name, format_double(row.zeta), format_double(row.f_scaled),
                     format_double(row.stderr_zeta), std::to_string(row.n_excluded)});
        excluded += row.n_excluded;
    }
    write_text_file(dir / "chi.csv", csv.text());
    write_manifest(dir, "chi", config, common, static_cast<int>(rows.size()), samples,
                   json{{"excluded_pairs", excluded}}, clock.seconds());
    std::printf("chi: %zu point(s) x %d realizations (%s) -> %s\n", rows.size(), samples,
                kind_name.c_str(), dir.string().c_str());
    return 0;
}

// ---- collapse ----------------------------------------------------------------------

int run_collapse(const CommonOpts& common, const std::string& input,
                 const std::string& ansatz_name, const std::string& drift_name,
                 const DEConfig& de_base) {
    Stopwatch clock;
    std::vector<CollapsePoint> points;
    {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open collapse input: " + input);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (header) {  // expect "L,lambda,value"
                header = false;
                if (line.find("L") == 0 || line.find("l") == 0) continue;
            }
            CollapsePoint p;
            if (std::sscanf(line.c_str(), "%d,%lf,%lf", &p.L, &p.lambda, &p.value) != 3)
                throw std::runtime_error("bad collapse input row: " + line);
            points.push_back(p);
        }
    }
    if (points.empty()) throw std::runtime_error("collapse input has no data rows");

    AnsatzSpec spec;
    spec.correlation =
        ansatz_name == "bkt" ? CorrelationKind::BKT : CorrelationKind::PowerLaw;
    spec.drift = drift_name == "linear"   ? DriftKind::LinearL
                 : drift_name == "inverse" ? DriftKind::InverseL
                 : drift_name == "invlog"  ? DriftKind::InverseLogL
                                           : DriftKind::Const;
    DEConfig de = de_base;
    de.seed = common.seed;

    json config{{"input", input},           {"ansatz", ansatz_name}, {"drift", drift_name},
                {"population", de.population}, {"generations", de.max_generations},
                {"restarts", de.restarts},  {"seed", common.seed},
                {"n_points", points.size()}};
    const fs::path dir = run_directory(common, "collapse", config);

    const CollapseResult result = collapse(points, spec, de);

    json out{{"correlation", ansatz_name},
             {"drift", drift_name},
             {"nu", result.best.nu},
             {"lambda0", result.best.lambda0},
             {"lambda1", spec.drift == DriftKind::Const ? 0.0 : result.best.lambda1},
             {"cost", result.cost},
             {"n_points", points.size()},
             {"evaluations", result.evaluations},
             {"seed", common.seed}};
    json stars = json::array();
    for (const auto& [L, star] : critical_lambda_table(points, spec.drift, result.best))
        stars.push_back({{"L", L}, {"lambda_star", star}});
    out["lambda_star"] = stars;
    write_text_file(dir / "collapse.json", out.dump(2) + "\n");

    CsvTable csv("theta,value,L");
    for (const auto& [theta_v, value, L] : result.theta_sorted)
        csv.add_row({format_double(theta_v), format_double(value), std::to_string(L)});
    write_text_file(dir / "collapse_sorted.csv", csv.text());

    write_manifest(dir, "collapse", config, common, 1, 0, json::object(), clock.seconds());
    std::printf("collapse: %s/%s cost=%.6g nu=%.4g lambda0=%.4g -> %s\n", ansatz_name.c_str(),
                drift_name.c_str(), result.cost, result.best.nu, result.best.lambda0,
                dir.string().c_str());
    return 0;
}

// ---- validate ------------------------------------------------------------------------

int run_validate(bool quick) {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %s -- %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        if (!ok) ++failures;
    };

    {
        ModelParams p;
        p.L = quick ? 233 : 610;
        p.N = 1;
        p.alpha = 0.0;
        p.phi = 0.123;
        auto median_ipr = [&](double lambda) {
            ModelParams q = p;
            q.lambda = lambda;
            Eigen::VectorXd ipr = single_particle_ipr(q).ipr;
            std::sort(ipr.data(), ipr.data() + ipr.size());
            return ipr(ipr.size() / 2);
        };
        const double ext = median_ipr(0.5);
        const double loc = median_ipr(1.5);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "L=%d: median IPR %.3g (< %.3g) below, %.3g (> 0.1) above the dual point",
                      p.L, ext, 3.0 / p.L, loc);
        report("self-duality at lambda* = t", ext < 3.0 / p.L && loc > 0.1, buf);
    }
    {
        ModelParams p;
        p.L = quick ? 377 : 987;
        p.N = 1;
        p.alpha = 0.5;
        p.lambda = 0.6;
        p.phi = 0.456;
        const double edge = mobility_edge_energy(p);
        const SingleParticleIpr res = single_particle_ipr(p);
        long agree = 0;
        for (Eigen::Index n = 0; n < res.energies.size(); ++n) {
            const bool predicted = res.energies(n) > edge;
            const bool observed = res.ipr(n) > 0.02;
            if (predicted == observed) ++agree;
        }
        const double frac = static_cast<double>(agree) / static_cast<double>(res.energies.size());
        char buf[160];
        std::snprintf(buf, sizeof(buf), "L=%d: %.1f%% agreement with E_c=%.3g (need >= 90%%)",
                      p.L, 100.0 * frac, edge);
        report("mobility-edge classification", frac >= 0.90, buf);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-chaos diagnostics for an interacting quasi-periodic chain"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags override)");
    app.allow_config_extras(false);
    app.set_version_flag("--version", std::string(kVersion));

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "dump raw eigenvalues per realization");
    spectrum->fallthrough();
    CommonOpts spectrum_common;
    PhysicsOpts spectrum_phys;
    int spectrum_samples = 1;
    double spectrum_phi = -1.0;
    add_common(spectrum, spectrum_common);
    add_physics(spectrum, spectrum_phys);
    spectrum->add_option("--samples", spectrum_samples)->capture_default_str();
    spectrum->add_option("--phi", spectrum_phi, "fixed phase offset (default: seeded)");

    // rstat
    auto* rstat = app.add_subcommand("rstat", "gap-ratio statistics over a lambda grid");
    rstat->fallthrough();
    CommonOpts rstat_common;
    PhysicsOpts rstat_phys;
    GridOpts rstat_grid;
    int rstat_samples = 200;
    double rstat_window = 0.1;
    bool rstat_full = false;
    add_common(rstat, rstat_common);
    add_physics(rstat, rstat_phys, false);
    add_grid(rstat, rstat_grid);
    rstat->add_option("--samples", rstat_samples, "realizations per grid point")
        ->capture_default_str();
    rstat->add_option("--window", rstat_window, "scaled-energy half width")
        ->capture_default_str();
    rstat->add_flag("--full-spectrum", rstat_full, "use every eigenvalue, no window");

    // phase-diagram
    auto* phase = app.add_subcommand("phase-diagram", "gap-ratio scan over (alpha, lambda)");
    phase->fallthrough();
    CommonOpts phase_common;
    PhysicsOpts phase_phys;
    GridOpts phase_grid;
    double phase_alpha_min = 0.0, phase_alpha_max = 0.8;
    int phase_alpha_steps = 5;
    int phase_samples = 50;
    double phase_window = 0.1;
    bool phase_full = false;
    add_common(phase, phase_common);
    add_physics(phase, phase_phys, false);
    add_grid(phase, phase_grid);
    phase->add_option("--alpha-min", phase_alpha_min)->capture_default_str();
    phase->add_option("--alpha-max", phase_alpha_max)->capture_default_str();
    phase->add_option("--alpha-steps", phase_alpha_steps)->capture_default_str();
    phase->add_option("--samples", phase_samples)->capture_default_str();
    phase->add_option("--window", phase_window)->capture_default_str();
    phase->add_flag("--full-spectrum", phase_full);

    // sff
    auto* sff = app.add_subcommand("sff", "spectral form factor and Thouless time");
    sff->fallthrough();
    CommonOpts sff_common;
    PhysicsOpts sff_phys;
    std::vector<double> sff_alphas;
    int sff_samples = 200;
    SFFConfig sff_cfg;
    add_common(sff, sff_common);
    add_physics(sff, sff_phys);
    sff->add_option("--alphas", sff_alphas, "alpha grid (default: --alpha)");
    sff->add_option("--samples", sff_samples)->capture_default_str();
    sff->add_option("--eta", sff_cfg.eta, "filter width fraction")->capture_default_str();
    sff->add_option("--epsilon", sff_cfg.epsilon, "Thouless ratio threshold")
        ->capture_default_str();
    sff->add_option("--smoothing", sff_cfg.smoothing_window, "moving-average points")
        ->capture_default_str();

    // chi
    auto* chi = app.add_subcommand("chi", "fidelity susceptibility over a lambda grid");
    chi->fallthrough();
    CommonOpts chi_common;
    PhysicsOpts chi_phys;
    GridOpts chi_grid;
    std::string chi_kind = "extensive";
    int chi_samples = 20;
    double chi_window = 0.1;
    add_common(chi, chi_common);
    add_physics(chi, chi_phys, false);
    add_grid(chi, chi_grid);
    chi->add_option("--kind", chi_kind, "deformation operator")
        ->check(CLI::IsMember({"local", "extensive"}))
        ->capture_default_str();
    chi->add_option("--samples", chi_samples)->capture_default_str();
    chi->add_option("--window", chi_window)->capture_default_str();

    // collapse
    auto* coll = app.add_subcommand("collapse", "finite-size scaling collapse of a CSV");
    coll->fallthrough();
    CommonOpts coll_common;
    std::string coll_input;
    std::string coll_ansatz = "bkt";
    std::string coll_drift = "linear";
    DEConfig coll_de;
    add_common(coll, coll_common);
    coll->add_option("--input", coll_input, "CSV with header L,lambda,value")->required();
    coll->add_option("--ansatz", coll_ansatz)->check(CLI::IsMember({"power", "bkt"}))
        ->capture_default_str();
    coll->add_option("--drift", coll_drift)
        ->check(CLI::IsMember({"const", "linear", "inverse", "invlog"}))
        ->capture_default_str();
    coll->add_option("--de-population", coll_de.population)->capture_default_str();
    coll->add_option("--de-generations", coll_de.max_generations)->capture_default_str();
    coll->add_option("--de-restarts", coll_de.restarts)->capture_default_str();

    // validate
    auto* val = app.add_subcommand("validate", "run the one-particle oracle checks");
    val->fallthrough();
    bool val_quick = false;
    val->add_flag("--quick", val_quick, "smaller sizes for smoke testing");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed())
            return run_spectrum(spectrum_common, spectrum_phys, spectrum_samples,
                                spectrum_phi >= 0.0 ? std::optional<double>(spectrum_phi)
                                                    : std::nullopt);
        if (rstat->parsed())
            return run_rstat_like("rstat", rstat_common, rstat_phys, rstat_grid,
                                  {rstat_phys.alpha}, rstat_samples, rstat_window, rstat_full);
        if (phase->parsed()) {
            std::vector<double> alphas;
            for (int j = 0; j < phase_alpha_steps; ++j)
                alphas.push_back(phase_alpha_steps == 1
                                     ? phase_alpha_min
                                     : phase_alpha_min + (phase_alpha_max - phase_alpha_min) *
                                                             j / (phase_alpha_steps - 1.0));
            return run_rstat_like("phase-diagram", phase_common, phase_phys, phase_grid, alphas,
                                  phase_samples, phase_window, phase_full);
        }
        if (sff->parsed())
            return run_sff(sff_common, sff_phys, sff_alphas, sff_samples, sff_cfg);
        if (chi->parsed()) {
            // Unless a range was given, fit the grid to the alpha-dependent
            // crossing region.
            if (chi->count("--lambda-min") == 0 && chi->count("--lambda-max") == 0) {
                const auto [lo, hi] = susceptibility_fit_window(chi_phys.alpha);
                chi_grid.lambda_min = lo;
                chi_grid.lambda_max = hi;
            }
            return run_chi(chi_common, chi_phys, chi_grid, chi_kind, chi_samples, chi_window);
        }
        if (coll->parsed())
            return run_collapse(coll_common, coll_input, coll_ansatz, coll_drift, coll_de);
        if (val->parsed()) return run_validate(val_quick);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
