// Convergence-history serialization (CSV/JSON) and static SVG plots.

#ifndef HHO_REPORT_HPP
#define HHO_REPORT_HPP

#include <string>

#include "hho/afem.hpp"

namespace hho {

inline constexpr const char* kVersion = "hho2d 1.0.0";

/// columns: level,ndof,eta,err_sigma,err_l2,eff_index,rate_eta,rate_err
std::string history_csv(const ConvergenceHistory& history);
/// full record: config echo, version, per-level data, tail rates
std::string history_json(const ConvergenceHistory& history);
/// log-log convergence plot
std::string convergence_svg(const ConvergenceHistory& history);
/// mesh wireframe
std::string mesh_svg(const Triangulation& mesh);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hho

#endif
