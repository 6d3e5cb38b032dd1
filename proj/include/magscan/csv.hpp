#pragma once
#include "magscan/gl.hpp"
#include "magscan/models.hpp"
#include "magscan/scan.hpp"

#include <string>
#include <vector>

namespace magscan {

// 12 significant digits, locale-independent
std::string format_number(double v);

// header + rows, LF newlines, byte-deterministic for identical inputs
std::string csv_document(const std::string& header,
                         const std::vector<std::string>& rows);

void write_text_file(const std::string& path, const std::string& content);

// columns: B, lambda1, m_star, window_lo, window_hi, localization_metric
std::string sweep_csv(const SweepTable& table);

// columns: Ro, lambda1, limit, error
std::string annulus_limit_csv(double Ri, double B, const std::vector<double>& Ro,
                              const std::vector<double>& lambda1,
                              const std::vector<double>& errors);

// columns: sigma, B, lambda1, kappa_sq, superconducting; then a components
// summary block as comment lines
std::string gl_csv(const GLVerdict& v);

// key,value rows for a fit report
std::string fit_csv(const AsymptoticFit& fit);

// name,value rows for the model constants and their identity residuals
std::string constants_csv(const DeGennesResult& dg, const MontgomeryResult& mg);

} // namespace magscan
