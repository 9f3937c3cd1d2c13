#include "cosserat/kinematics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cosserat/error.hpp"

namespace cosserat {

double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

Eigen::Matrix3d rotation_from_axial(const Eigen::Vector3d& a) {
  const double angle = a.norm();
  Eigen::Matrix3d k;
  k << 0.0, -a(2), a(1), a(2), 0.0, -a(0), -a(1), a(0), 0.0;
  // sin(t)/t and (1 - cos t)/t^2 with series near 0.
  double s, c;
  if (angle < 1e-4) {
    const double t2 = angle * angle;
    s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    s = std::sin(angle) / angle;
    c = (1.0 - std::cos(angle)) / (angle * angle);
  }
  return Eigen::Matrix3d::Identity() + s * k + c * k * k;
}

namespace {

// Largest jump across the periodic seam relative to the largest interior
// jump, over all lines along all axes.
bool is_periodic_perturbation(const Grid& g, const ScalarField& w) {
  const int n = g.n();
  for (int axis = 0; axis < 3; ++axis) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        auto at = [&](int t) {
          std::array<int, 3> ijk{};
          ijk[axis] = t;
          ijk[(axis + 1) % 3] = a;
          ijk[(axis + 2) % 3] = b;
          return w[g.index(ijk[0], ijk[1], ijk[2])];
        };
        double interior = 0.0;
        double scale = 0.0;
        for (int t = 0; t + 1 < n; ++t) {
          interior = std::max(interior, std::abs(at(t + 1) - at(t)));
          scale = std::max(scale, std::abs(at(t)));
        }
        const double seam = std::abs(at(0) - at(n - 1));
        if (seam > 2.5 * interior + 1e-12 * std::max(1.0, scale)) return false;
      }
    }
  }
  return true;
}

Eigen::Matrix3d tensor_at(const TensorField& t, Index p) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = t.at(i, j)[p];
  }
  return m;
}

}  // namespace

TensorField deformation_gradient(const VectorField& placement) {
  const Grid& g = placement.grid;
  TensorField F(g);
  for (int i = 0; i < 3; ++i) {
    ScalarField w(placement.c[i]);
    for (Index p = 0; p < g.size(); ++p) w[p] -= g.position(p)[i];
    if (!is_periodic_perturbation(g, w)) {
      throw Error("placement is not a periodic perturbation of the identity");
    }
    for (int a = 0; a < 3; ++a) {
      ScalarField d = partial_derivative(g, w, a);
      if (i == a) {
        for (double& v : d) v += 1.0;
      }
      F.at(i, a) = std::move(d);
    }
  }
  for (Index p = 0; p < g.size(); ++p) {
    const double det = tensor_at(F, p).determinant();
    if (!(det > 0.0)) {
      throw Error("inadmissible motion: det F = " + std::to_string(det) +
                  " at point " + std::to_string(p));
    }
  }
  return F;
}

MotionField make_motion(const VectorField& placement, const VectorField& velocity) {
  if (!(placement.grid == velocity.grid)) throw Error("make_motion: grid mismatch");
  return MotionField{placement, velocity, deformation_gradient(placement)};
}

FormField compatibility_residual(const TensorField& F) {
  FormField as_form(F.grid, 1, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) {
      std::copy(F.at(i, a).begin(), F.at(i, a).end(), as_form.component(i, a).begin());
    }
  }
  return exterior_derivative(as_form);
}

RotationField::RotationField(TensorField q) : q_(std::move(q)) {
  for (Index p = 0; p < q_.grid.size(); ++p) {
    const Eigen::Matrix3d m = tensor_at(q_, p);
    const double orth = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    const double det = m.determinant();
    if (orth > kTolerance || std::abs(det - 1.0) > kTolerance) {
      throw Error("rotation field is not in SO(3) at point " + std::to_string(p));
    }
  }
}

Eigen::Matrix3d RotationField::at(Index p) const { return tensor_at(q_, p); }

RotationField RotationField::transposed() const {
  TensorField t(q_.grid);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t.at(i, j) = q_.at(j, i);
  }
  return RotationField(std::move(t));
}

Connection pure_gauge_connection(const RotationField& q, double relative_tolerance) {
  double asymmetry = 0.0;
  return pure_gauge_connection(q, asymmetry, relative_tolerance);
}

Connection pure_gauge_connection(const RotationField& q, double& asymmetry,
                                 double relative_tolerance) {
  const Grid& g = q.grid();
  const TensorField& m = q.matrices();
  FormField omega(g, 1, ValueKind::so3);
  asymmetry = 0.0;
  double magnitude = 0.0;
  for (int a = 0; a < 3; ++a) {
    std::array<ScalarField, 9> dq;
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) dq[3 * k + j] = partial_derivative(g, m.at(k, j), a);
    }
    for (Index p = 0; p < g.size(); ++p) {
      // w_ij = sum_k Q_ki dQ_kj
      Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) w(i, j) += m.at(k, i)[p] * dq[3 * k + j][p];
        }
      }
      asymmetry = std::max(asymmetry, (w + w.transpose()).cwiseAbs().maxCoeff());
      magnitude = std::max(magnitude, w.cwiseAbs().maxCoeff());
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          omega.component(so3_entry(i, j).slot, a)[p] = 0.5 * (w(i, j) - w(j, i));
        }
      }
    }
  }
  if (asymmetry > relative_tolerance * std::max(1.0, magnitude)) {
    throw Error("pure_gauge_connection: Q^T dQ is not skew (asymmetry " +
                std::to_string(asymmetry) + "); rotation field too rough or not orthogonal");
  }
  return Connection(std::move(omega));
}

Coframe compose_coframe(const RotationField& q, const Coframe& reference) {
  if (!(q.grid() == reference.grid())) throw Error("compose_coframe: grid mismatch");
  const Grid& g = q.grid();
  const TensorField& m = q.matrices();
  FormField e(g, 1, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) {
      auto dst = e.component(i, a);
      for (int k = 0; k < 3; ++k) {
        const auto& qik = m.at(i, k);
        const auto src = reference.form().component(k, a);
        for (Index p = 0; p < g.size(); ++p) dst[p] += qik[p] * src[p];
      }
    }
  }
  return Coframe(std::move(e));
}

CosseratConfiguration defect_free_configuration(const RotationField& q) {
  return CosseratConfiguration{compose_coframe(q, Coframe::identity(q.grid())),
                               pure_gauge_connection(q.transposed())};
}

VectorField poincare_reconstruct(const Coframe& e, double closure_tolerance) {
  const Grid& g = e.grid();
  const double closure = max_abs(exterior_derivative(e.form()));
  if (closure > closure_tolerance) {
    throw Error("coframe not closed: max |de| = " + std::to_string(closure));
  }
  const int n = g.n();
  const double h = g.spacing();
  VectorField y(g);
  for (int i = 0; i < 3; ++i) {
    // Periodic part p_a = e^i_a - delta^i_a and its cumulative trapezoid
    // integrals along each axis, starting at index 0.
    std::array<ScalarField, 3> cumulative;
    for (int a = 0; a < 3; ++a) {
      const auto src = e.form().component(i, a);
      ScalarField periodic(src.begin(), src.end());
      if (i == a) {
        for (double& v : periodic) v -= 1.0;
      }
      double mean = 0.0;
      for (double v : periodic) mean += v;
      mean /= static_cast<double>(periodic.size());
      if (std::abs(mean) > 1e-9) {
        throw Error("poincare_reconstruct: coframe mean differs from the identity");
      }
      ScalarField& c = cumulative[a];
      c.assign(periodic.size(), 0.0);
      for (Index p = 0; p < g.size(); ++p) {
        auto ijk = g.coords(p);
        if (ijk[a] != 0) continue;
        double acc = 0.0;
        for (int t = 1; t < n; ++t) {
          auto prev = ijk;
          prev[a] = t - 1;
          auto cur = ijk;
          cur[a] = t;
          const Index pp = g.index(prev[0], prev[1], prev[2]);
          const Index pc = g.index(cur[0], cur[1], cur[2]);
          acc += 0.5 * h * (periodic[pp] + periodic[pc]);
          c[pc] = acc;
        }
      }
    }
    static constexpr std::array<std::array<int, 3>, 6> kOrders{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto& out = y.c[i];
    for (Index p = 0; p < g.size(); ++p) {
      const auto x = g.coords(p);
      double sum = 0.0;
      for (const auto& order : kOrders) {
        // Leg along order[0] with the other two coordinates at 0, then
        // order[1] with order[2] at 0, then order[2] at the target.
        std::array<int, 3> first{0, 0, 0};
        first[order[0]] = x[order[0]];
        std::array<int, 3> second = first;
        second[order[1]] = x[order[1]];
        sum += cumulative[order[0]][g.index(first[0], first[1], first[2])] +
               cumulative[order[1]][g.index(second[0], second[1], second[2])] +
               cumulative[order[2]][p];
      }
      out[p] = g.position(p)[i] + sum / 6.0;
    }
  }
  return y;
}

FormField placement_differential(const VectorField& placement) {
  const Grid& g = placement.grid;
  FormField dy(g, 1, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    ScalarField w(placement.c[i]);
    for (Index p = 0; p < g.size(); ++p) w[p] -= g.position(p)[i];
    for (int a = 0; a < 3; ++a) {
      const ScalarField d = partial_derivative(g, w, a);
      auto dst = dy.component(i, a);
      for (Index p = 0; p < g.size(); ++p) dst[p] = (i == a ? 1.0 : 0.0) + d[p];
    }
  }
  return dy;
}

LieDerivative lie_derivative_coframe(const VectorField& u, const Coframe& e,
                                     const Connection& omega,
                                     double torsion_tolerance) {
  const double t = max_abs(torsion(e, omega));
  if (t > torsion_tolerance) {
    throw Error("lie_derivative_coframe: coframe is not torsion-free (max |T| = " +
                std::to_string(t) + ")");
  }
  const FormField u_frame = interior_product(u, e.form());  // u^i = i_u e^i

  FormField translational = exterior_derivative(u_frame);
  const FormField& w = omega.form();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const So3Entry wij = so3_entry(i, j);
      wedge_accumulate(w, wij.slot, u_frame, j, wij.sign, translational, i);
    }
  }

  FormField rotational = interior_product(u, w);
  FormField full = translational;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const So3Entry pij = so3_entry(i, j);
      wedge_accumulate(rotational, pij.slot, e.form(), j, -pij.sign, full, i);
    }
  }

  FormField cartan = exterior_derivative(u_frame);
  cartan += interior_product(u, exterior_derivative(e.form()));

  return LieDerivative{std::move(full), std::move(translational),
                       std::move(rotational), std::move(cartan)};
}

MicropolarState::MicropolarState(const Grid& grid)
    : u(grid), phi(grid), u_dot(grid), phi_dot(grid), u_ddot(grid), phi_ddot(grid) {}

StrainState linearized_strain(const MicropolarState& state) {
  const Grid& g = state.grid();
  StrainState s{TensorField(g), TensorField(g)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ScalarField du = partial_derivative(g, state.u.c[i], j);
      const double h_ij = state.mean_gradient(i, j);
      for (int k = 0; k < 3; ++k) {
        const double eps = levi_civita(i, j, k);
        if (eps == 0.0) continue;
        const auto& phik = state.phi.c[k];
        for (Index p = 0; p < g.size(); ++p) du[p] -= eps * phik[p];
      }
      if (h_ij != 0.0) {
        for (double& v : du) v += h_ij;
      }
      s.gamma.at(i, j) = std::move(du);
      s.kappa.at(i, j) = partial_derivative(g, state.phi.c[i], j);
    }
  }
  return s;
}

Coframe linearize_coframe(const MicropolarState& state, double eps) {
  const Grid& g = state.grid();
  std::array<ScalarField, 9> grad;
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a) grad[3 * k + a] = partial_derivative(g, state.u.c[k], a);
  }
  FormField e(g, 1, ValueKind::frame);
  for (Index p = 0; p < g.size(); ++p) {
    Eigen::Matrix3d f;
    for (int k = 0; k < 3; ++k) {
      for (int a = 0; a < 3; ++a) {
        f(k, a) = (k == a ? 1.0 : 0.0) +
                  eps * (grad[3 * k + a][p] + state.mean_gradient(k, a));
      }
    }
    const Eigen::Vector3d axial(eps * state.phi.c[0][p], eps * state.phi.c[1][p],
                                eps * state.phi.c[2][p]);
    const Eigen::Matrix3d m = rotation_from_axial(axial) * f;
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 3; ++a) e.component(i, a)[p] = m(i, a);
    }
  }
  return Coframe(std::move(e));
}

}  // namespace cosserat
