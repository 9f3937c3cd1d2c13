#include "cosserat/fields.hpp"

#include <cmath>
#include <numbers>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Matrix3d rot_x(double c) {
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, std::cos(c), -std::sin(c), 0, std::sin(c), std::cos(c);
  return r;
}
Eigen::Matrix3d rot_y(double b) {
  Eigen::Matrix3d r;
  r << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
  return r;
}
Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return r;
}
Eigen::Matrix3d d_rot_x(double c) {
  Eigen::Matrix3d r;
  r << 0, 0, 0, 0, -std::sin(c), -std::cos(c), 0, std::cos(c), -std::sin(c);
  return r;
}
Eigen::Matrix3d d_rot_y(double b) {
  Eigen::Matrix3d r;
  r << -std::sin(b), 0, std::cos(b), 0, 0, 0, -std::cos(b), 0, -std::sin(b);
  return r;
}
Eigen::Matrix3d d_rot_z(double a) {
  Eigen::Matrix3d r;
  r << -std::sin(a), -std::cos(a), 0, std::cos(a), -std::sin(a), 0, 0, 0, 0;
  return r;
}

}  // namespace

BandLimited::BandLimited(std::vector<Mode> modes, double length)
    : modes_(std::move(modes)), length_(length) {
  if (modes_.size() > 5) throw Error("band-limited field: at most 5 modes");
}

BandLimited BandLimited::random(std::mt19937_64& rng, double length, double amplitude,
                                int max_modes, int max_k) {
  std::uniform_int_distribution<int> count(1, max_modes);
  std::uniform_int_distribution<int> wave(-max_k, max_k);
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<Mode> modes(static_cast<std::size_t>(count(rng)));
  for (auto& m : modes) {
    do {
      for (int& k : m.k) k = wave(rng);
    } while (m.k[0] == 0 && m.k[1] == 0 && m.k[2] == 0);
    m.amplitude = amp(rng);
    m.phase = phase(rng);
  }
  return BandLimited(std::move(modes), length);
}

double BandLimited::value(const Eigen::Vector3d& x) const {
  double v = 0.0;
  for (const auto& m : modes_) {
    const double arg = kTwoPi * (m.k[0] * x(0) + m.k[1] * x(1) + m.k[2] * x(2)) / length_;
    v += m.amplitude * std::cos(arg + m.phase);
  }
  return v;
}

Eigen::Vector3d BandLimited::gradient(const Eigen::Vector3d& x) const {
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (const auto& m : modes_) {
    const double arg = kTwoPi * (m.k[0] * x(0) + m.k[1] * x(1) + m.k[2] * x(2)) / length_;
    const double s = -m.amplitude * std::sin(arg + m.phase) * kTwoPi / length_;
    for (int a = 0; a < 3; ++a) g(a) += s * m.k[a];
  }
  return g;
}

Eigen::Matrix3d BandLimited::hessian(const Eigen::Vector3d& x) const {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  const double w = kTwoPi / length_;
  for (const auto& m : modes_) {
    const double arg = w * (m.k[0] * x(0) + m.k[1] * x(1) + m.k[2] * x(2));
    const double c = -m.amplitude * std::cos(arg + m.phase) * w * w;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) h(a, b) += c * m.k[a] * m.k[b];
    }
  }
  return h;
}

ScalarField BandLimited::sample(const Grid& grid) const {
  ScalarField f(static_cast<std::size_t>(grid.size()));
  for (Index p = 0; p < grid.size(); ++p) f[p] = value(point(grid, p));
  return f;
}

ScalarField BandLimited::sample_derivative(const Grid& grid, int axis) const {
  ScalarField f(static_cast<std::size_t>(grid.size()));
  for (Index p = 0; p < grid.size(); ++p) f[p] = gradient(point(grid, p))(axis);
  return f;
}

BandLimitedVector BandLimitedVector::random(std::mt19937_64& rng, double length,
                                            double amplitude, int max_modes, int max_k) {
  BandLimitedVector v;
  for (auto& comp : v.c) comp = BandLimited::random(rng, length, amplitude, max_modes, max_k);
  return v;
}

Eigen::Vector3d BandLimitedVector::value(const Eigen::Vector3d& x) const {
  return {c[0].value(x), c[1].value(x), c[2].value(x)};
}

Eigen::Matrix3d BandLimitedVector::jacobian(const Eigen::Vector3d& x) const {
  Eigen::Matrix3d j;
  for (int i = 0; i < 3; ++i) j.row(i) = c[i].gradient(x).transpose();
  return j;
}

VectorField BandLimitedVector::sample(const Grid& grid) const {
  VectorField v(grid);
  for (int i = 0; i < 3; ++i) v.c[i] = c[i].sample(grid);
  return v;
}

AnalyticRotation AnalyticRotation::random(std::mt19937_64& rng, double length,
                                          double amplitude, int max_modes, int max_k) {
  AnalyticRotation r;
  for (auto& a : r.angles) a = BandLimited::random(rng, length, amplitude, max_modes, max_k);
  return r;
}

Eigen::Matrix3d AnalyticRotation::value(const Eigen::Vector3d& x) const {
  return rot_z(angles[0].value(x)) * rot_y(angles[1].value(x)) * rot_x(angles[2].value(x));
}

Eigen::Matrix3d AnalyticRotation::derivative(const Eigen::Vector3d& x, int axis) const {
  const double a = angles[0].value(x);
  const double b = angles[1].value(x);
  const double c = angles[2].value(x);
  const double da = angles[0].gradient(x)(axis);
  const double db = angles[1].gradient(x)(axis);
  const double dc = angles[2].gradient(x)(axis);
  return da * d_rot_z(a) * rot_y(b) * rot_x(c) + db * rot_z(a) * d_rot_y(b) * rot_x(c) +
         dc * rot_z(a) * rot_y(b) * d_rot_x(c);
}

RotationField AnalyticRotation::sample(const Grid& grid) const {
  TensorField q(grid);
  for (Index p = 0; p < grid.size(); ++p) {
    const Eigen::Matrix3d m = value(point(grid, p));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) q.at(i, j)[p] = m(i, j);
    }
  }
  return RotationField(std::move(q));
}

Eigen::Vector3d point(const Grid& grid, Index p) {
  const auto x = grid.position(p);
  return {x[0], x[1], x[2]};
}

FormField random_form(std::mt19937_64& rng, const Grid& grid, int degree, ValueKind kind,
                      double amplitude, int max_k) {
  FormField f(grid, degree, kind);
  for (int v = 0; v < f.value_count(); ++v) {
    for (int s = 0; s < f.slot_count(); ++s) {
      const ScalarField x = BandLimited::random(rng, grid.length(), amplitude, 5, max_k).sample(grid);
      std::copy(x.begin(), x.end(), f.component(v, s).begin());
    }
  }
  return f;
}

FormField random_coframe_form(std::mt19937_64& rng, const Grid& grid, double amplitude,
                              int max_k) {
  FormField e = random_form(rng, grid, 1, ValueKind::frame, amplitude, max_k);
  for (int i = 0; i < 3; ++i) {
    for (double& x : e.component(i, i)) x += 1.0;
  }
  return e;
}

FormField random_so3_form(std::mt19937_64& rng, const Grid& grid, int degree,
                          double amplitude, int max_k) {
  return random_form(rng, grid, degree, ValueKind::so3, amplitude, max_k);
}

MicropolarState random_state(std::mt19937_64& rng, const Grid& grid, double amplitude,
                             int max_k) {
  MicropolarState s(grid);
  const double L = grid.length();
  s.u = BandLimitedVector::random(rng, L, amplitude, 5, max_k).sample(grid);
  s.phi = BandLimitedVector::random(rng, L, amplitude, 5, max_k).sample(grid);
  s.u_dot = BandLimitedVector::random(rng, L, amplitude, 5, max_k).sample(grid);
  s.phi_dot = BandLimitedVector::random(rng, L, amplitude, 5, max_k).sample(grid);
  return s;
}

}  // namespace cosserat
