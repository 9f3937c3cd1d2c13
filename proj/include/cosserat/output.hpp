#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "cosserat/error.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/verification.hpp"

namespace cosserat {

//! File system failure; the CLI maps it to exit status 2.
class IoError : public Error {
 public:
  using Error::Error;
};

//! %.15e, or "exact" / "inf" / "nan" for non-finite values.
std::string format_value(double x, bool infinite_is_exact = false);

//! name,measured,tolerance,bound,pass with bound "max" or "min".
std::string summary_csv(std::span<const CheckResult> checks);

//! residual,n_coarse,n_fine,error_coarse,error_fine,order.
std::string orders_csv(std::span<const OrderRow> rows);

/**
 * Legacy VTK text, STRUCTURED_POINTS with n^3 points, spacing h and
 * origin 0; point data vectors u, phi, u_dot, phi_dot in x-fastest order.
 */
std::string vtk_snapshot(const MicropolarState& state, std::string_view title);

//! Creates parent directories and writes `content`; throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cosserat
