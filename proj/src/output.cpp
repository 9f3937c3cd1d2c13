#include "cosserat/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cosserat {

std::string format_value(double x, bool infinite_is_exact) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) {
    if (infinite_is_exact && x > 0) return "exact";
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15e", x);
  return buf;
}

std::string summary_csv(std::span<const CheckResult> checks) {
  std::string out = "name,measured,tolerance,bound,pass\n";
  for (const auto& c : checks) {
    // Order checks carry an at-least bound; an infinite order means exact.
    const bool order_like = c.bound == Bound::at_least;
    out += c.name + ',' + format_value(c.measured, order_like) + ',' +
           format_value(c.tolerance) + ',' + (order_like ? "min" : "max") + ',' +
           (c.pass ? "pass" : "fail") + '\n';
  }
  return out;
}

std::string orders_csv(std::span<const OrderRow> rows) {
  std::string out = "residual,n_coarse,n_fine,error_coarse,error_fine,order\n";
  for (const auto& r : rows) {
    out += r.residual + ',' + std::to_string(r.n_coarse) + ',' + std::to_string(r.n_fine) +
           ',' + format_value(r.error_coarse) + ',' + format_value(r.error_fine) + ',' +
           format_value(r.order, true) + '\n';
  }
  return out;
}

std::string vtk_snapshot(const MicropolarState& state, std::string_view title) {
  const Grid& g = state.grid();
  const int n = g.n();
  char buf[160];
  std::string out = "# vtk DataFile Version 3.0\n";
  out += std::string(title.substr(0, 255)) + '\n';
  out += "ASCII\nDATASET STRUCTURED_POINTS\n";
  std::snprintf(buf, sizeof(buf), "DIMENSIONS %d %d %d\nORIGIN 0 0 0\nSPACING %.15e %.15e %.15e\n",
                n, n, n, g.spacing(), g.spacing(), g.spacing());
  out += buf;
  out += "POINT_DATA " + std::to_string(g.size()) + '\n';
  const std::pair<const char*, const VectorField*> arrays[] = {
      {"u", &state.u},
      {"phi", &state.phi},
      {"u_dot", &state.u_dot},
      {"phi_dot", &state.phi_dot},
  };
  for (const auto& [name, field] : arrays) {
    out += std::string("VECTORS ") + name + " double\n";
    for (Index p = 0; p < g.size(); ++p) {
      std::snprintf(buf, sizeof(buf), "%.12e %.12e %.12e\n", field->c[0][p], field->c[1][p],
                    field->c[2][p]);
      out += buf;
    }
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace cosserat
