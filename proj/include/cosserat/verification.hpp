#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cosserat/grid.hpp"
#include "cosserat/material.hpp"

namespace cosserat {

enum class Bound { at_most, at_least };

//! One row of a summary report. NaN measurements never pass.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::at_most;
  bool pass = false;
};

CheckResult make_check(std::string name, double measured, double tolerance,
                       Bound bound = Bound::at_most);
bool all_pass(std::span<const CheckResult> checks);

//! Order reported when both errors sit at roundoff.
inline constexpr double kExactOrder = std::numeric_limits<double>::infinity();
//! Errors below this count as roundoff in order measurements.
inline constexpr double kRoundoffFloor = 1e-12;

/**
 * log(coarse / fine) / log(refinement). Returns kExactOrder when both
 * errors are at roundoff, NaN when the error does not decrease.
 */
double observed_order(double coarse, double fine, double refinement = 2.0);

// Error measures on a grid. Each builds its own smooth random or analytic
// data from `seed`; the data depend on the seed and the box only, so the
// same seed on refined grids samples the same functions. Apart from
// dd_zero_defect and the manufactured residual they are discrete L2 norms.

//! max |d d a| over random scalar 0-forms and frame/so(3) 1-forms.
double dd_zero_defect(const Grid& grid, std::uint64_t seed);
//! |D T - Omega ^ e| for a random coframe and connection.
double first_bianchi_defect(const Grid& grid, std::uint64_t seed);
//! |D Omega| for a random connection.
double second_bianchi_defect(const Grid& grid, std::uint64_t seed);
//! |Omega| of Q^{-1} dQ for a smooth rotation field.
double pure_gauge_curvature_defect(const Grid& grid, std::uint64_t seed);
//! |T| and |Omega| of defect_free_configuration(Q).
double defect_free_torsion(const Grid& grid, std::uint64_t seed);
double defect_free_curvature(const Grid& grid, std::uint64_t seed);
//! |d(reconstruct(e)) - e| for a sampled exact coframe e = dy.
double poincare_defect(const Grid& grid, std::uint64_t seed);
//! |d F| for F = I + grad w with the gradient sampled exactly.
double compatibility_defect(const Grid& grid, std::uint64_t seed);
//! |Cartan - (Du - phi e)| for e = Q dX and a smooth u.
double lie_split_defect(const Grid& grid, std::uint64_t seed);
//! max |div sigma + f| for u = A sin(2 pi x / L) e_2 with the exact force.
double manufactured_static_defect(const Grid& grid, const MaterialParams& material);

/**
 * Lie derivative of e = Q dX along a smooth u by three routes: Cartan's
 * formula, the translation/rotation split, and the derivative in s of the
 * exact flow pullback (phi_s^* e)(X) = e(X_s) dX_s/dX. The flow derivative
 * uses central differences at s and s/2 and their Richardson combination.
 */
struct LieFlowReport {
  double cartan_vs_flow = 0.0;
  double split_vs_flow = 0.0;
  double cartan_vs_split = 0.0;
  double central_s_error = 0.0;       //!< |D(s) - Richardson| on the grid
  double central_half_s_error = 0.0;  //!< |D(s/2) - Richardson|
};
LieFlowReport lie_flow_comparison(const Grid& grid, std::uint64_t seed, double s);

//! max |(e(eps) - I) / eps - gamma| for a random state, one entry per eps.
std::vector<double> linearization_defects(const Grid& grid, std::uint64_t seed,
                                          std::span<const double> eps);
//! max |gamma| for a uniform infinitesimal rotation and its matched
//! displacement gradient.
double rigid_motion_strain(const Grid& grid, std::uint64_t seed);

//! Max-abs differences between the form and tensor balance residuals for a
//! random state with random accelerations and sources (omega = 0).
struct EquivalenceReport {
  double force = 0.0;
  double moment = 0.0;
};
EquivalenceReport form_tensor_equivalence(const Grid& grid, const MaterialParams& material,
                                          std::uint64_t seed);

//! Relative errors of the functional gradient check and its mutated twin.
struct GradientReport {
  double relative_error = 0.0;
  double mutated_relative_error = 0.0;
};
GradientReport gradient_consistency(const Grid& grid, const MaterialParams& material,
                                    std::uint64_t seed);

//! Named residual for convergence studies.
struct ResidualProbe {
  std::string name;
  std::function<double(const Grid&, std::uint64_t)> error;
};
std::vector<ResidualProbe> registered_residuals(const MaterialParams& material);

struct OrderRow {
  std::string residual;
  int n_coarse = 0;
  int n_fine = 0;
  double error_coarse = 0.0;
  double error_fine = 0.0;
  double order = 0.0;
};

//! Errors of every probe on each grid of `n_list` (strictly increasing,
//! each >= 4, at least two entries) and the order between neighbours.
std::vector<OrderRow> convergence_table(std::span<const ResidualProbe> probes,
                                        std::span<const int> n_list, double length,
                                        std::uint64_t seed,
                                        Stencil stencil = Stencil::central);

// Suites behind the verify-* scenarios.
std::vector<CheckResult> exterior_suite(int n, double length, std::uint64_t seed);
std::vector<CheckResult> kinematics_suite(int n, double length, std::uint64_t seed);
std::vector<CheckResult> variational_suite(int n, double length,
                                           const MaterialParams& material,
                                           std::uint64_t seed);

}  // namespace cosserat
