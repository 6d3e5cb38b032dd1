#include "magscan/csv.hpp"
#include "magscan/errors.hpp"

#include <cstdio>
#include <fstream>

namespace magscan {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_document(const std::string& header, const std::vector<std::string>& rows) {
    std::string out = header;
    out.push_back('\n');
    for (const auto& r : rows) {
        out += r;
        out.push_back('\n');
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw config_error("write failed: " + path);
}

std::string sweep_csv(const SweepTable& table) {
    std::vector<std::string> rows;
    rows.reserve(table.points.size());
    for (const auto& p : table.points) {
        rows.push_back(format_number(p.B) + "," + format_number(p.lambda1) + "," +
                       std::to_string(p.m_star) + "," + std::to_string(p.m_lo) + "," +
                       std::to_string(p.m_hi) + "," + format_number(p.localization_metric));
    }
    return csv_document("B,lambda1,m_star,window_lo,window_hi,localization_metric", rows);
}

std::string annulus_limit_csv(double Ri, double B, const std::vector<double>& Ro,
                              const std::vector<double>& lambda1,
                              const std::vector<double>& errors) {
    std::vector<std::string> rows;
    const double limit = limit_operator_lambda(Ri, B).first;
    for (std::size_t i = 0; i < Ro.size(); ++i)
        rows.push_back(format_number(Ro[i]) + "," + format_number(lambda1[i]) + "," +
                       format_number(limit) + "," + format_number(errors[i]));
    return csv_document("Ro,lambda1,limit,error", rows);
}

std::string gl_csv(const GLVerdict& v) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < v.sigma_grid.size(); ++i)
        rows.push_back(format_number(v.sigma_grid[i]) + "," +
                       format_number(v.kappa * v.sigma_grid[i]) + "," +
                       format_number(v.lambda1[i]) + "," +
                       format_number(v.kappa * v.kappa) + "," +
                       (v.superconducting[i] ? "1" : "0"));
    std::string doc = csv_document("sigma,B,lambda1,kappa_sq,superconducting", rows);
    doc += "# components: " + std::to_string(v.components.size()) + "\n";
    for (const auto& [a, b] : v.components)
        doc += "# component," + format_number(a) + "," + format_number(b) + "\n";
    return doc;
}

std::string fit_csv(const AsymptoticFit& fit) {
    const char* names[] = {"exterior", "interior", "plane-pos", "plane-zero", "annulus"};
    std::vector<std::string> rows = {
        std::string("model,") + names[static_cast<int>(fit.model)],
        "phase," + format_number(fit.phase),
        "offset," + format_number(fit.offset),
        "amplitude," + format_number(fit.amplitude),
        "rms," + format_number(fit.rms),
        "period," + format_number(fit.period),
    };
    return csv_document("key,value", rows);
}

std::string constants_csv(const DeGennesResult& dg, const MontgomeryResult& mg) {
    const auto id = seconddG_identity(dg);
    std::vector<std::string> rows = {
        "theta0," + format_number(dg.theta0),
        "xi0," + format_number(dg.xi0),
        "phi0sq," + format_number(dg.phi0sq),
        "ddlambda_xi," + format_number(dg.ddlambda_xi),
        "Xi," + format_number(mg.Xi),
        "c0," + format_number(mg.c0),
        "residual_xi0sq_theta0," + format_number(dg.xi0 * dg.xi0 - dg.theta0),
        "residual_curvature," + format_number(dg.ddlambda_xi - 2.0 * dg.xi0 * dg.phi0sq),
        "residual_moment_norm," + format_number(dg.moment_residuals[0]),
        "residual_moment_first," + format_number(dg.moment_residuals[1]),
        "residual_moment_square," + format_number(dg.moment_residuals[2]),
        "residual_moment_cube," + format_number(dg.moment_residuals[3]),
        "residual_moment_rho," + format_number(dg.moment_residuals[4]),
        "residual_moment_rho3," + format_number(dg.moment_residuals[5]),
        "residual_moment_dpsi," + format_number(dg.moment_residuals[6]),
        "residual_resolvent," + format_number(id.residual),
        "residual_c0_resolvent," + format_number(mg.c0 - mg.c0_resolvent),
        "montgomery_scan_argmin," + format_number(mg.scan_argmin),
        "montgomery_lambda2_inf," + format_number(mg.lambda2_scan_inf),
    };
    return csv_document("name,value", rows);
}

} // namespace magscan
