#pragma once
#include "magscan/discretize.hpp"
#include "magscan/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace magscan {

// Parsed run configuration (key=value file and/or CLI flags; flags override
// the file). Parsing validates everything it can see eagerly, so a bad
// config dies with a line diagnostic before any numerics start.
struct RunConfig {
    std::string subcommand;

    std::string field_spec;  // constant:<b> | parabolic:<delta> | custom:<path>
    std::string domain_spec; // annulus:<Ri>:<Ro> | disc | exterior | plane

    bool has_B = false;
    double B_min = 0, B_max = 0, B_step = 0; // single value: min=max, step=0

    bool has_sigma = false;
    double sigma_min = 0, sigma_max = 0, sigma_step = 0;

    std::optional<double> kappa;
    std::optional<std::size_t> grid_n;
    std::optional<double> trunc_factor;
    std::optional<double> inner_cutoff;
    std::optional<double> ri; // annulus-limit inner radius
    unsigned workers = 1;
    std::string out_dir = ".";
    std::vector<double> ro_list;
    std::string fit_model; // exterior | interior | plane-pos | plane-zero | annulus

    RadialFieldSpec make_field() const;
    DomainSpec make_domain() const;
    std::vector<double> make_B_grid() const;
    std::vector<double> make_sigma_grid() const;
};

// Parses UTF-8 key=value lines ('#' comments allowed). Unknown keys,
// malformed numbers and inconsistent ranges are config errors carrying the
// line number. Empty input is an error listing the required keys.
RunConfig parse_config(const std::string& text);

// Applies one key=value assignment (shared by the file parser and the CLI
// flag layer). where names the source for diagnostics.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where);

} // namespace magscan
