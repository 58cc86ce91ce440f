#include "cli/output.hpp"

#include <cmath>
#include <cstdio>

namespace sforge::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

}  // namespace

nlohmann::json to_json(const ParamSet& s) {
  nlohmann::json a = nlohmann::json::array();
  for (double v : s.a) a.push_back(real(v));
  return {{"set_tag", std::string(to_string(s.set_tag))},
          {"eta", real(s.eta)},
          {"a", a},
          {"residual_norm", real(s.residual_norm)}};
}

nlohmann::json to_json(const ResidualReport& r) {
  return {{"target", std::string(to_string(r.target))},
          {"path", std::string(to_string(r.path))},
          {"grid_points", r.grid_points},
          {"max_abs_residual", real(r.max_abs_residual)},
          {"max_rel_residual", real(r.max_rel_residual)},
          {"skipped_singular", r.skipped_singular},
          {"threshold", r.threshold},
          {"pass", r.pass()}};
}

void write_slice_csv(std::ostream& out, const std::vector<SliceRow>& rows) {
  out << "xi,x,y,t,U,w,singular\n";
  for (const auto& r : rows) {
    out << format_real(r.xi) << ',' << format_real(r.x) << ',' << format_real(r.y) << ',' << format_real(r.t)
        << ',' << format_real(r.U) << ',' << format_real(r.w) << ',' << (r.singular ? 1 : 0) << '\n';
  }
}

void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows) {
  out << "x,y,t,U,w,singular\n";
  for (const auto& r : rows) {
    out << format_real(r.x) << ',' << format_real(r.y) << ',' << format_real(r.t) << ',' << format_real(r.U)
        << ',' << format_real(r.w) << ',' << (r.singular ? 1 : 0) << '\n';
  }
}

std::string gnuplot_script(const std::string& name, const std::string& title, const std::string& surface_csv,
                           const std::string& slice_csv) {
  std::string s;
  s += "# " + name + ": " + title + "\n";
  s += "# Rows flagged singular are masked out.\n";
  s += "set datafile separator ','\n";
  s += "set datafile missing 'nan'\n";
  s += "set terminal pngcairo size 1400,600\n";
  s += "set output '" + name + ".png'\n";
  s += "set multiplot layout 1,2 title '" + title + "'\n";
  s += "set title '(I) U(x, y)'\n";
  s += "set xlabel 'x'\nset ylabel 'y'\nset zlabel 'U'\n";
  s += "set palette rgbformulae 33,13,10\n";
  s += "splot '" + surface_csv + "' every ::1 using 1:2:($6 == 0 ? $4 : NaN):($6 == 0 ? $4 : NaN) "
       "with points pt 7 ps 0.4 palette notitle\n";
  s += "set title '(II) profile along xi'\n";
  s += "set xlabel 'xi'\nset ylabel 'value'\n";
  s += "plot '" + slice_csv + "' every ::1 using 1:($7 == 0 ? $5 : NaN) with lines lw 2 title 'U', \\\n";
  s += "     '" + slice_csv + "' every ::1 using 1:($7 == 0 ? $6 : NaN) with lines lw 2 dt 2 title 'w'\n";
  s += "unset multiplot\n";
  return s;
}

}  // namespace sforge::cli
