#include "magscan/config.hpp"
#include "magscan/errors.hpp"

#include <cmath>
#include <sstream>

namespace magscan {

namespace {

double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": malformed number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

void parse_range(const std::string& value, const std::string& where, double& lo, double& hi,
                 double& step) {
    const auto parts = split(value, ':');
    if (parts.size() == 1) {
        lo = hi = parse_number(parts[0], where);
        step = 0;
        return;
    }
    if (parts.size() != 3)
        throw config_error(where + ": expected <value> or <min>:<max>:<step>, got '" + value +
                           "'");
    lo = parse_number(parts[0], where);
    hi = parse_number(parts[1], where);
    step = parse_number(parts[2], where);
    if (!(step > 0) || !(hi > lo))
        throw config_error(where + ": inconsistent range '" + value + "'");
    if ((hi - lo) / step > 2e6) throw config_error(where + ": range produces too many points");
}

std::vector<double> expand_range(double lo, double hi, double step) {
    std::vector<double> grid;
    if (step <= 0) {
        grid.push_back(lo);
        return grid;
    }
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) grid.push_back(lo + step * static_cast<double>(i));
    return grid;
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where) {
    if (key == "field") {
        cfg.field_spec = value;
        (void)cfg.make_field(); // eager validation
    } else if (key == "domain") {
        cfg.domain_spec = value;
        (void)cfg.make_domain();
    } else if (key == "B") {
        parse_range(value, where, cfg.B_min, cfg.B_max, cfg.B_step);
        cfg.has_B = true;
    } else if (key == "sigma") {
        parse_range(value, where, cfg.sigma_min, cfg.sigma_max, cfg.sigma_step);
        cfg.has_sigma = true;
    } else if (key == "kappa") {
        cfg.kappa = parse_number(value, where);
        if (!(*cfg.kappa > 0)) throw config_error(where + ": kappa must be > 0");
    } else if (key == "grid_n") {
        const double v = parse_number(value, where);
        if (!(v >= 16 && v <= 200000)) throw config_error(where + ": grid_n out of range");
        cfg.grid_n = static_cast<std::size_t>(v);
    } else if (key == "trunc_factor") {
        cfg.trunc_factor = parse_number(value, where);
        if (!(*cfg.trunc_factor >= 6)) throw config_error(where + ": trunc_factor must be >= 6");
    } else if (key == "inner_cutoff") {
        cfg.inner_cutoff = parse_number(value, where);
        if (!(*cfg.inner_cutoff > 0)) throw config_error(where + ": inner_cutoff must be > 0");
    } else if (key == "ri") {
        cfg.ri = parse_number(value, where);
        if (!(*cfg.ri > 0)) throw config_error(where + ": ri must be > 0");
    } else if (key == "workers") {
        const double v = parse_number(value, where);
        if (!(v >= 1 && v <= 512)) throw config_error(where + ": workers out of range");
        cfg.workers = static_cast<unsigned>(v);
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "ro_list") {
        cfg.ro_list.clear();
        for (const auto& tok : split(value, ','))
            cfg.ro_list.push_back(parse_number(tok, where));
        if (cfg.ro_list.empty()) throw config_error(where + ": empty ro_list");
    } else if (key == "fit_model") {
        if (value != "exterior" && value != "interior" && value != "plane-pos" &&
            value != "plane-zero" && value != "annulus")
            throw config_error(where + ": unknown fit_model '" + value + "'");
        cfg.fit_model = value;
    } else {
        throw config_error(where + ": unknown key '" + key + "'");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        apply_config_entry(cfg, key, value, "line " + std::to_string(lineno));
        any = true;
    }
    if (!any)
        throw config_error("empty config: required keys are field=<spec> and domain=<spec>");
    if (cfg.field_spec.empty() || cfg.domain_spec.empty())
        throw config_error("config must set both field=<spec> and domain=<spec>");
    return cfg;
}

RadialFieldSpec RunConfig::make_field() const {
    const auto parts = split(field_spec, ':');
    if (parts.empty()) throw config_error("field: empty spec");
    if (parts[0] == "constant" && parts.size() == 2)
        return RadialFieldSpec::constant(parse_number(parts[1], "field"));
    if (parts[0] == "parabolic" && parts.size() == 2)
        return RadialFieldSpec::parabolic_well(parse_number(parts[1], "field"));
    if (parts[0] == "custom" && parts.size() == 2)
        return RadialFieldSpec::from_profile_file(parts[1]);
    throw config_error("field: expected constant:<b>, parabolic:<delta> or custom:<path>, "
                       "got '" + field_spec + "'");
}

DomainSpec RunConfig::make_domain() const {
    const auto parts = split(domain_spec, ':');
    if (parts.empty()) throw config_error("domain: empty spec");
    DomainSpec d;
    if (parts[0] == "annulus" && parts.size() == 3) {
        d = DomainSpec::annulus(parse_number(parts[1], "domain"),
                                parse_number(parts[2], "domain"));
    } else if (parts[0] == "disc" && parts.size() == 1) {
        d = DomainSpec::disc();
    } else if (parts[0] == "exterior" && parts.size() == 1) {
        d = DomainSpec::exterior_disc();
    } else if (parts[0] == "plane" && parts.size() == 1) {
        d = DomainSpec::plane();
    } else {
        throw config_error("domain: expected annulus:<Ri>:<Ro>, disc, exterior or plane, "
                           "got '" + domain_spec + "'");
    }
    if (trunc_factor) d.truncation_width_factor = *trunc_factor;
    if (inner_cutoff) d.inner_cutoff = *inner_cutoff;
    d.validate();
    return d;
}

std::vector<double> RunConfig::make_B_grid() const {
    if (!has_B) throw config_error("this subcommand needs B=<value> or B=<min>:<max>:<step>");
    return expand_range(B_min, B_max, B_step);
}

std::vector<double> RunConfig::make_sigma_grid() const {
    if (!has_sigma)
        throw config_error("this subcommand needs sigma=<min>:<max>:<step>");
    return expand_range(sigma_min, sigma_max, sigma_step);
}

} // namespace magscan
