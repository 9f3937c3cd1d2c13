#include "cosserat/exterior.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

// (-1)^(number of elements of `mask` below bit `axis`).
double permutation_sign(unsigned mask, int axis) {
  const unsigned below = mask & ((1u << axis) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

// Sign of the shuffle bringing (J, K) into increasing order.
double shuffle_sign(unsigned j_mask, unsigned k_mask) {
  int inversions = 0;
  for (int j = 0; j < 3; ++j) {
    if (!(j_mask & (1u << j))) continue;
    for (int k = 0; k < j; ++k) {
      if (k_mask & (1u << k)) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1.0 : -1.0;
}

void require_same_grid(const FormField& a, const FormField& b) {
  if (!(a.grid() == b.grid())) throw Error("forms live on different grids");
}

}  // namespace

Coframe::Coframe(FormField e) : e_(std::move(e)) {
  if (e_.degree() != 1 || e_.kind() != ValueKind::frame) {
    throw Error("coframe must be a frame-valued 1-form");
  }
  const Grid& g = e_.grid();
  for (Index p = 0; p < g.size(); ++p) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 3; ++a) m(i, a) = e_.component(i, a)[p];
    }
    const double det = m.determinant();
    if (!(det > kMinDeterminant)) {
      throw Error("coframe is degenerate at point " + std::to_string(p) +
                  " (det = " + std::to_string(det) + ")");
    }
  }
}

Coframe Coframe::identity(const Grid& grid) {
  FormField e(grid, 1, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    for (double& v : e.component(i, i)) v = 1.0;
  }
  return Coframe(std::move(e));
}

Connection::Connection(FormField omega) : omega_(std::move(omega)) {
  if (omega_.degree() != 1 || omega_.kind() != ValueKind::so3) {
    throw Error("connection must be an so(3)-valued 1-form");
  }
}

Connection Connection::zero(const Grid& grid) {
  return Connection(FormField(grid, 1, ValueKind::so3));
}

void wedge_accumulate(const FormField& a, int va, const FormField& b, int vb,
                      double coeff, FormField& out, int vo) {
  require_same_grid(a, b);
  const int p = a.degree();
  const int q = b.degree();
  if (p + q > 3) throw Error("wedge: degree overflow (p + q > 3)");
  if (out.degree() != p + q) throw Error("wedge: output degree mismatch");
  if (coeff == 0.0) return;
  for (int sa = 0; sa < a.slot_count(); ++sa) {
    const unsigned ja = slot_mask(p, sa);
    const auto ac = a.component(va, sa);
    for (int sb = 0; sb < b.slot_count(); ++sb) {
      const unsigned kb = slot_mask(q, sb);
      if (ja & kb) continue;
      const double s = coeff * shuffle_sign(ja, kb);
      const auto bc = b.component(vb, sb);
      auto oc = out.component(vo, mask_slot(ja | kb));
      for (std::size_t n = 0; n < oc.size(); ++n) oc[n] += s * ac[n] * bc[n];
    }
  }
}

FormField wedge(const FormField& a, const FormField& b) {
  require_same_grid(a, b);
  if (a.degree() + b.degree() > 3) throw Error("wedge: degree overflow (p + q > 3)");
  ValueKind kind;
  if (a.kind() == ValueKind::scalar) {
    kind = b.kind();
  } else if (b.kind() == ValueKind::scalar) {
    kind = a.kind();
  } else {
    throw Error("wedge: frame/so3 contractions must be assembled by the caller");
  }
  FormField out(a.grid(), a.degree() + b.degree(), kind);
  for (int v = 0; v < out.value_count(); ++v) {
    const int va = a.kind() == ValueKind::scalar ? 0 : v;
    const int vb = b.kind() == ValueKind::scalar ? 0 : v;
    wedge_accumulate(a, va, b, vb, 1.0, out, v);
  }
  return out;
}

FormField exterior_derivative(const FormField& a) {
  const int k = a.degree();
  if (k >= 3) throw Error("exterior_derivative: input is a top-degree form");
  const Grid& g = a.grid();
  FormField out(g, k + 1, a.kind());
  for (int v = 0; v < a.value_count(); ++v) {
    for (int s = 0; s < a.slot_count(); ++s) {
      const unsigned j_mask = slot_mask(k, s);
      for (int axis = 0; axis < 3; ++axis) {
        if (j_mask & (1u << axis)) continue;
        const double sign = permutation_sign(j_mask, axis);
        const ScalarField deriv = partial_derivative(g, a.component(v, s), axis);
        auto oc = out.component(v, mask_slot(j_mask | (1u << axis)));
        for (std::size_t n = 0; n < oc.size(); ++n) oc[n] += sign * deriv[n];
      }
    }
  }
  return out;
}

FormField interior_product(const VectorField& u, const FormField& a) {
  const int k = a.degree();
  if (k == 0) throw Error("interior_product: cannot contract a 0-form");
  if (!(u.grid == a.grid())) throw Error("interior_product: grid mismatch");
  FormField out(a.grid(), k - 1, a.kind());
  for (int v = 0; v < a.value_count(); ++v) {
    for (int s = 0; s < a.slot_count(); ++s) {
      const unsigned i_mask = slot_mask(k, s);
      const auto ac = a.component(v, s);
      for (int b = 0; b < 3; ++b) {
        if (!(i_mask & (1u << b))) continue;
        const unsigned j_mask = i_mask & ~(1u << b);
        const double sign = permutation_sign(j_mask, b);
        const auto& ub = u.c[b];
        auto oc = out.component(v, mask_slot(j_mask));
        for (std::size_t n = 0; n < oc.size(); ++n) oc[n] += sign * ub[n] * ac[n];
      }
    }
  }
  return out;
}

FormField covariant_exterior_derivative(const FormField& a,
                                        const Connection& omega) {
  const FormField& w = omega.form();
  require_same_grid(a, w);
  FormField out = exterior_derivative(a);
  if (a.kind() == ValueKind::frame) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const So3Entry wij = so3_entry(i, j);
        wedge_accumulate(w, wij.slot, a, j, wij.sign, out, i);
      }
    }
  } else if (a.kind() == ValueKind::so3) {
    const double graded = (a.degree() % 2 == 0) ? -1.0 : 1.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const int vo = so3_entry(i, j).slot;
        for (int k = 0; k < 3; ++k) {
          const So3Entry wik = so3_entry(i, k);
          const So3Entry akj = so3_entry(k, j);
          wedge_accumulate(w, wik.slot, a, akj.slot, wik.sign * akj.sign, out, vo);
          const So3Entry aik = so3_entry(i, k);
          const So3Entry wkj = so3_entry(k, j);
          wedge_accumulate(a, aik.slot, w, wkj.slot, graded * aik.sign * wkj.sign,
                           out, vo);
        }
      }
    }
  } else {
    throw Error("covariant_exterior_derivative: value kind must be frame or so3");
  }
  return out;
}

FormField torsion(const Coframe& e, const Connection& omega) {
  return covariant_exterior_derivative(e.form(), omega);
}

FormField curvature(const Connection& omega) {
  const FormField& w = omega.form();
  FormField out = exterior_derivative(w);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int vo = so3_entry(i, j).slot;
      for (int k = 0; k < 3; ++k) {
        const So3Entry wik = so3_entry(i, k);
        const So3Entry wkj = so3_entry(k, j);
        wedge_accumulate(w, wik.slot, w, wkj.slot, wik.sign * wkj.sign, out, vo);
      }
    }
  }
  return out;
}

Complement complement_of_slot(int slot) {
  switch (slot) {
    case 0: return {2, 1.0};
    case 1: return {1, -1.0};
    case 2: return {0, 1.0};
    default: throw Error("complement_of_slot: slot out of range");
  }
}

TensorField dualize_stress(const FormField& sigma_form) {
  if (sigma_form.degree() != 2 || sigma_form.kind() != ValueKind::frame) {
    throw Error("dualize_stress: expected a frame-valued 2-form");
  }
  TensorField sigma(sigma_form.grid());
  for (int i = 0; i < 3; ++i) {
    for (int s = 0; s < 3; ++s) {
      const Complement c = complement_of_slot(s);
      const auto src = sigma_form.component(i, s);
      auto& dst = sigma.at(i, c.index);
      for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = c.sign * src[n];
    }
  }
  return sigma;
}

FormField undualize_stress(const TensorField& sigma) {
  FormField out(sigma.grid, 2, ValueKind::frame);
  for (int i = 0; i < 3; ++i) {
    for (int s = 0; s < 3; ++s) {
      const Complement c = complement_of_slot(s);
      const auto& src = sigma.at(i, c.index);
      auto dst = out.component(i, s);
      for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = c.sign * src[n];
    }
  }
  return out;
}

VectorField axial_dual(const TensorField& skew, double tol) {
  const double scale = std::max(1.0, max_abs(skew));
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const auto& a = skew.at(i, j);
      const auto& b = skew.at(j, i);
      for (std::size_t n = 0; n < a.size(); ++n) {
        if (std::abs(a[n] + b[n]) > tol * scale) {
          throw Error("axial_dual: input is not skew-symmetric");
        }
      }
    }
  }
  VectorField out(skew.grid);
  for (int s = 0; s < 3; ++s) {
    const Complement c = complement_of_slot(s);
    const int i = s == 2 ? 1 : 0;
    const int j = s == 0 ? 1 : 2;
    const auto& xij = skew.at(i, j);
    const auto& xji = skew.at(j, i);
    auto& dst = out.c[c.index];
    for (std::size_t n = 0; n < dst.size(); ++n) {
      dst[n] = c.sign * 0.5 * (xij[n] - xji[n]);
    }
  }
  return out;
}

TensorField axial_inverse(const VectorField& axial) {
  TensorField out(axial.grid);
  for (int s = 0; s < 3; ++s) {
    const Complement c = complement_of_slot(s);
    const int i = s == 2 ? 1 : 0;
    const int j = s == 0 ? 1 : 2;
    const auto& src = axial.c[c.index];
    auto& up = out.at(i, j);
    auto& lo = out.at(j, i);
    for (std::size_t n = 0; n < src.size(); ++n) {
      up[n] = c.sign * src[n];
      lo[n] = -up[n];
    }
  }
  return out;
}

FormField axial_from_so3(const FormField& so3_form) {
  if (so3_form.kind() != ValueKind::so3) throw Error("axial_from_so3: expected so3 values");
  FormField out(so3_form.grid(), so3_form.degree(), ValueKind::frame);
  for (int s = 0; s < 3; ++s) {
    const Complement c = complement_of_slot(s);
    for (int slot = 0; slot < so3_form.slot_count(); ++slot) {
      const auto src = so3_form.component(s, slot);
      auto dst = out.component(c.index, slot);
      for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = c.sign * src[n];
    }
  }
  return out;
}

FormField so3_from_axial(const FormField& frame_form) {
  if (frame_form.kind() != ValueKind::frame) throw Error("so3_from_axial: expected frame values");
  FormField out(frame_form.grid(), frame_form.degree(), ValueKind::so3);
  for (int s = 0; s < 3; ++s) {
    const Complement c = complement_of_slot(s);
    for (int slot = 0; slot < frame_form.slot_count(); ++slot) {
      const auto src = frame_form.component(c.index, slot);
      auto dst = out.component(s, slot);
      for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = c.sign * src[n];
    }
  }
  return out;
}

}  // namespace cosserat
