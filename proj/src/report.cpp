#include "hho/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hho {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> column(const ConvergenceHistory& h, double LevelRecord::*field) {
  std::vector<double> out;
  out.reserve(h.levels.size());
  for (const auto& rec : h.levels) out.push_back(rec.*field);
  return out;
}

std::vector<long> ndof_column(const ConvergenceHistory& h) {
  std::vector<long> out;
  out.reserve(h.levels.size());
  for (const auto& rec : h.levels) out.push_back(rec.ndof);
  return out;
}

}  // namespace

std::string history_csv(const ConvergenceHistory& history) {
  std::ostringstream out;
  out << "level,ndof,eta,err_sigma,err_l2,eff_index,rate_eta,rate_err\n";
  const auto ndof = ndof_column(history);
  const auto rate_eta = rate_steps(column(history, &LevelRecord::eta_tilde), ndof);
  const auto rate_err = rate_steps(column(history, &LevelRecord::err_sigma), ndof);
  for (std::size_t l = 0; l < history.levels.size(); l++) {
    const auto& rec = history.levels[l];
    out << rec.level << ',' << rec.ndof << ',' << fmt(rec.eta_tilde) << ',' << fmt(rec.err_sigma) << ','
        << fmt(rec.err_u) << ',' << fmt(rec.efficiency) << ','
        << (l == 0 ? "nan" : fmt(rate_eta[l - 1])) << ',' << (l == 0 ? "nan" : fmt(rate_err[l - 1])) << '\n';
  }
  return out.str();
}

std::string history_json(const ConvergenceHistory& history) {
  nlohmann::json j;
  j["version"] = kVersion;
  const RunConfig& c = history.config;
  j["config"] = {{"benchmark", c.benchmark}, {"k", c.k},          {"variant", to_string(c.variant)},
                 {"E", c.young},             {"nu", c.poisson},   {"use_lame", c.use_lame},
                 {"lambda", c.lambda},       {"mu", c.mu},        {"mode", c.mode},
                 {"theta", c.theta},         {"max_ndof", c.max_ndof}, {"max_levels", c.max_levels}};
  const auto ndof = ndof_column(history);
  auto levels = nlohmann::json::array();
  for (const auto& rec : history.levels) {
    levels.push_back({{"level", rec.level},
                      {"n_elements", rec.n_elements},
                      {"ndof", rec.ndof},
                      {"n_solved", rec.n_solved},
                      {"eta", rec.eta},
                      {"eta_tilde", rec.eta_tilde},
                      {"err_sigma", rec.err_sigma},
                      {"err_l2", rec.err_u},
                      {"err_pi_sigma", rec.err_pi_sigma},
                      {"eff_index", rec.efficiency},
                      {"osc_f", rec.osc_f},
                      {"osc_g", rec.osc_g},
                      {"osc_uD", rec.osc_ud},
                      {"h_max", rec.h_max},
                      {"spd", rec.spd},
                      {"t_solve", rec.t_solve},
                      {"t_estimate", rec.t_estimate},
                      {"t_refine", rec.t_refine}});
  }
  j["levels"] = levels;
  j["rates"] = {{"eta_tilde_tail", tail_rate(column(history, &LevelRecord::eta_tilde), ndof)},
                {"err_sigma_tail", tail_rate(column(history, &LevelRecord::err_sigma), ndof)},
                {"err_l2_tail", tail_rate(column(history, &LevelRecord::err_u), ndof)}};
  // NaN is not representable in JSON; nlohmann serializes it as null
  return j.dump(2) + "\n";
}

namespace {

struct LogAxis {
  double lo = 0.0, hi = 1.0;  // log10 range
  double pix0 = 0.0, pix1 = 1.0;

  double map(double v) const { return pix0 + (std::log10(v) - lo) / (hi - lo) * (pix1 - pix0); }
};

void polyline(std::ostringstream& out, const LogAxis& xa, const LogAxis& ya, const std::vector<long>& x,
              const std::vector<double>& y, const char* color) {
  out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
  for (std::size_t i = 0; i < x.size(); i++) {
    if (!(y[i] > 0.0)) continue;
    out << xa.map(static_cast<double>(x[i])) << ',' << ya.map(y[i]) << ' ';
  }
  out << "'/>\n";
}

}  // namespace

std::string convergence_svg(const ConvergenceHistory& history) {
  const int width = 640, height = 480, margin = 50;
  const auto ndof = ndof_column(history);
  const auto eta = column(history, &LevelRecord::eta_tilde);
  const auto err = column(history, &LevelRecord::err_sigma);

  double ymin = 1e300, ymax = 0.0, xmin = 1e300, xmax = 0.0;
  for (std::size_t i = 0; i < ndof.size(); i++) {
    xmin = std::min(xmin, static_cast<double>(ndof[i]));
    xmax = std::max(xmax, static_cast<double>(ndof[i]));
    for (double v : {eta[i], err[i]})
      if (v > 0.0 && std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
  }
  if (!(ymin < ymax)) {
    ymin = 1e-1;
    ymax = 1e1;
  }
  LogAxis xa{std::floor(std::log10(xmin)), std::ceil(std::log10(std::max(xmax, xmin * 10))),
             static_cast<double>(margin), static_cast<double>(width - margin)};
  LogAxis ya{std::floor(std::log10(ymin)), std::ceil(std::log10(ymax)), static_cast<double>(height - margin),
             static_cast<double>(margin)};

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << width << "' height='" << height
      << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  // decade grid
  for (int d = static_cast<int>(xa.lo); d <= static_cast<int>(xa.hi); d++) {
    double px = xa.map(std::pow(10.0, d));
    out << "<line x1='" << px << "' y1='" << margin << "' x2='" << px << "' y2='" << height - margin
        << "' stroke='#dddddd'/>\n";
    out << "<text x='" << px << "' y='" << height - margin + 18 << "' font-size='11' text-anchor='middle'>1e" << d
        << "</text>\n";
  }
  for (int d = static_cast<int>(ya.lo); d <= static_cast<int>(ya.hi); d++) {
    double py = ya.map(std::pow(10.0, d));
    out << "<line x1='" << margin << "' y1='" << py << "' x2='" << width - margin << "' y2='" << py
        << "' stroke='#dddddd'/>\n";
    out << "<text x='" << margin - 6 << "' y='" << py + 4 << "' font-size='11' text-anchor='end'>1e" << d
        << "</text>\n";
  }
  out << "<rect x='" << margin << "' y='" << margin << "' width='" << width - 2 * margin << "' height='"
      << height - 2 * margin << "' fill='none' stroke='black'/>\n";
  polyline(out, xa, ya, ndof, eta, "#c0392b");
  polyline(out, xa, ya, ndof, err, "#2980b9");
  out << "<text x='" << width / 2 << "' y='" << height - 12 << "' font-size='12' text-anchor='middle'>ndof</text>\n";
  out << "<text x='" << width - margin - 10 << "' y='" << margin + 16
      << "' font-size='12' text-anchor='end' fill='#c0392b'>estimator</text>\n";
  out << "<text x='" << width - margin - 10 << "' y='" << margin + 32
      << "' font-size='12' text-anchor='end' fill='#2980b9'>stress error</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string mesh_svg(const Triangulation& mesh) {
  const int size = 600, margin = 20;
  Vec2 lo = mesh.vertex(0), hi = mesh.vertex(0);
  for (int v = 0; v < mesh.n_vertices(); v++) {
    lo = lo.cwiseMin(mesh.vertex(v));
    hi = hi.cwiseMax(mesh.vertex(v));
  }
  const double scale = (size - 2.0 * margin) / std::max(hi.x() - lo.x(), hi.y() - lo.y());
  auto px = [&](const Vec2& p) { return margin + scale * (p.x() - lo.x()); };
  auto py = [&](const Vec2& p) { return size - margin - scale * (p.y() - lo.y()); };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << size << "' height='" << size
      << "' viewBox='0 0 " << size << ' ' << size << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  for (int s = 0; s < mesh.n_sides(); s++) {
    const Side& sd = mesh.side(s);
    const char* color = sd.label == SideLabel::Dirichlet ? "#c0392b"
                        : sd.label == SideLabel::Neumann ? "#2980b9"
                                                         : "#888888";
    out << "<line x1='" << px(mesh.vertex(sd.a)) << "' y1='" << py(mesh.vertex(sd.a)) << "' x2='"
        << px(mesh.vertex(sd.b)) << "' y2='" << py(mesh.vertex(sd.b)) << "' stroke='" << color
        << "' stroke-width='" << (sd.is_boundary() ? 1.4 : 0.6) << "'/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace hho
