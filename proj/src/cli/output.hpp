#pragma once

#include "sforge/closed_form.hpp"
#include "sforge/expansion.hpp"
#include "sforge/verification.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace sforge::cli {

/// 17 significant digits, so every double round-trips.
std::string format_real(double v);

nlohmann::json to_json(const ParamSet& s);
nlohmann::json to_json(const ResidualReport& r);

struct SliceRow {
  double xi, x, y, t, U, w;
  bool singular;
};

struct SurfaceRow {
  double x, y, t, U, w;
  bool singular;
};

/// header xi,x,y,t,U,w,singular
void write_slice_csv(std::ostream& out, const std::vector<SliceRow>& rows);
/// header x,y,t,U,w,singular
void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows);

/// Gnuplot script: (I) surface of U over (x, y), (II) U and w against xi.
std::string gnuplot_script(const std::string& name, const std::string& title, const std::string& surface_csv,
                           const std::string& slice_csv);

}  // namespace sforge::cli
