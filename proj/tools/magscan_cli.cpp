// magscan: ground-state scans of radial magnetic Schrodinger fibers,
// model-operator constants, the thin-annulus circle limit, asymptotic fits,
// the linear superconductivity criterion, and the two-panel figure.
#include <CLI11.hpp>

#include "magscan/config.hpp"
#include "magscan/csv.hpp"
#include "magscan/errors.hpp"
#include "magscan/gl.hpp"
#include "magscan/models.hpp"
#include "magscan/pool.hpp"
#include "magscan/scan.hpp"
#include "magscan/svg.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace magscan;

struct CliOptions {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides; // key, value
    std::string out_path;
};

RunConfig assemble(const CliOptions& opt, const std::string& subcommand) {
    RunConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw config_error("cannot open config file " + opt.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    }
    for (const auto& [key, value] : opt.overrides)
        apply_config_entry(cfg, key, value, "--" + key);
    cfg.subcommand = subcommand;
    return cfg;
}

void emit(const CliOptions& opt, const std::string& default_name, const std::string& doc,
          const RunConfig& cfg) {
    std::string path = opt.out_path;
    if (path.empty()) path = cfg.out_dir + "/" + default_name;
    write_text_file(path, doc);
    std::cerr << "wrote " << path << "\n";
}

void print_warnings(const RadialFieldSpec& field) {
    for (const auto& w : field.warnings()) std::cerr << "warning: " << w << "\n";
}

ScanParams scan_params(const RunConfig& cfg) {
    ScanParams p;
    p.grid_n = cfg.grid_n.value_or(0);
    p.workers = cfg.workers;
    return p;
}

int run_constants(const CliOptions& opt) {
    RunConfig cfg;
    cfg.out_dir = ".";
    for (const auto& [key, value] : opt.overrides)
        apply_config_entry(cfg, key, value, "--" + key);
    const auto dg = degennes_constants(6000, 12.0);
    const auto mg = montgomery_constants(4000, 8.0);
    emit(opt, "constants.csv", constants_csv(dg, mg), cfg);
    return 0;
}

int run_scan(const CliOptions& opt) {
    const RunConfig cfg = assemble(opt, "scan");
    const auto field = cfg.make_field();
    print_warnings(field);
    const auto table = sweep(field, cfg.make_domain(), cfg.make_B_grid(), scan_params(cfg));
    emit(opt, "scan.csv", sweep_csv(table), cfg);
    return 0;
}

int run_annulus_limit(const CliOptions& opt) {
    const RunConfig cfg = assemble(opt, "annulus-limit");
    if (cfg.ro_list.empty()) throw config_error("annulus-limit needs ro_list=<Ro1,Ro2,...>");
    const double Ri = cfg.ri.value_or(1.0);
    const auto grid = cfg.make_B_grid();
    if (grid.size() != 1) throw config_error("annulus-limit needs a single B value");
    const double B = grid[0];
    const auto errs = annulus_limit_error(Ri, cfg.ro_list, B, scan_params(cfg));
    std::vector<double> lams(errs.size());
    const double limit = limit_operator_lambda(Ri, B).first;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        const auto pt = ground_state(RadialFieldSpec::constant(1.0),
                                     DomainSpec::annulus(Ri, cfg.ro_list[i]), B,
                                     scan_params(cfg));
        lams[i] = pt.lambda1;
        (void)limit;
    }
    emit(opt, "annulus_limit.csv", annulus_limit_csv(Ri, B, cfg.ro_list, lams, errs), cfg);
    return 0;
}

int run_oscillation(const CliOptions& opt) {
    const RunConfig cfg = assemble(opt, "oscillation");
    const auto field = cfg.make_field();
    print_warnings(field);
    const auto table = sweep(field, cfg.make_domain(), cfg.make_B_grid(), scan_params(cfg));
    const auto breaks = monotonicity_breaks(table);
    std::string doc = sweep_csv(table);
    doc += "# descent_pairs: " + std::to_string(breaks.size()) + "\n";
    std::size_t shown = 0;
    for (const auto& [b1, b2] : breaks) {
        doc += "# descent," + format_number(b1) + "," + format_number(b2) + "\n";
        if (++shown >= 50) {
            doc += "# ... (" + std::to_string(breaks.size() - shown) + " more)\n";
            break;
        }
    }
    emit(opt, "oscillation.csv", doc, cfg);
    return 0;
}

int run_asymptotic(const CliOptions& opt) {
    const RunConfig cfg = assemble(opt, "asymptotic");
    if (cfg.fit_model.empty())
        throw config_error("asymptotic needs fit_model=<exterior|interior|plane-pos|"
                           "plane-zero|annulus>");
    FitModel model = FitModel::Exterior;
    if (cfg.fit_model == "interior") model = FitModel::Interior;
    else if (cfg.fit_model == "plane-pos") model = FitModel::PlaneDeltaPos;
    else if (cfg.fit_model == "plane-zero") model = FitModel::PlaneDeltaZero;
    else if (cfg.fit_model == "annulus") model = FitModel::AnnulusLimit;
    const auto field = cfg.make_field();
    print_warnings(field);
    const auto constants = compute_model_constants();
    const auto table = sweep(field, cfg.make_domain(), cfg.make_B_grid(), scan_params(cfg));
    const auto fit = asymptotic_fit(table, model, constants);
    emit(opt, "asymptotic.csv", fit_csv(fit), cfg);
    return 0;
}

int run_gl_set(const CliOptions& opt) {
    const RunConfig cfg = assemble(opt, "gl-set");
    if (!cfg.kappa) throw config_error("gl-set needs kappa=<value>");
    const auto field = cfg.make_field();
    print_warnings(field);
    const auto v =
        n_set(field, cfg.make_domain(), *cfg.kappa, cfg.make_sigma_grid(), scan_params(cfg));
    emit(opt, "gl_set.csv", gl_csv(v), cfg);
    return 0;
}

int run_figure(const CliOptions& opt) {
    RunConfig cfg;
    for (const auto& [key, value] : opt.overrides)
        apply_config_entry(cfg, key, value, "--" + key);
    const auto data = figure_data(cfg.grid_n.value_or(800), cfg.workers);
    emit(opt, "figure.svg", emit_figure(data), cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral scans of radial magnetic Schrodinger operators"};
    app.require_subcommand(1);

    CliOptions opt;
    const std::vector<std::string> keys = {"field",        "domain", "B",       "sigma",
                                           "kappa",        "grid_n", "trunc_factor",
                                           "inner_cutoff", "ri",     "workers", "out_dir",
                                           "ro_list",      "fit_model"};
    std::map<std::string, std::string> flag_values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "key=value config file");
        sub->add_option("--out", opt.out_path, "output path");
        for (const auto& k : keys)
            sub->add_option("--" + k, flag_values[k], "config key " + k);
    };

    std::map<std::string, std::function<int(const CliOptions&)>> handlers = {
        {"constants", run_constants},   {"scan", run_scan},
        {"annulus-limit", run_annulus_limit}, {"oscillation", run_oscillation},
        {"asymptotic", run_asymptotic}, {"gl-set", run_gl_set},
        {"figure", run_figure},
    };
    const std::map<std::string, std::string> blurbs = {
        {"constants", "model-operator constants and identity residuals"},
        {"scan", "ground-state sweep over B"},
        {"annulus-limit", "thin-annulus convergence to the circle limit"},
        {"oscillation", "sweep plus descent detection"},
        {"asymptotic", "sweep plus asymptotic-formula fit"},
        {"gl-set", "linear superconductivity criterion over sigma"},
        {"figure", "two-panel SVG (circle limit and annulus fibers)"},
    };
    for (const auto& [name, blurb] : blurbs) add_common(app.add_subcommand(name, blurb));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    for (const auto& k : keys)
        if (!flag_values[k].empty()) opt.overrides.emplace_back(k, flag_values[k]);

    try {
        return handlers.at(sub)(opt);
    } catch (const magscan::resolution_error& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return 4;
    } catch (const magscan::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const magscan::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
