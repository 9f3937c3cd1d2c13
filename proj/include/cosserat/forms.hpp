#pragma once

#include <span>
#include <vector>

#include "cosserat/grid.hpp"

namespace cosserat {

//! What a form takes values in: plain scalars, a frame vector (index i),
//! or so(3) (skew pair [ij], stored for i < j only).
enum class ValueKind { scalar, frame, so3 };

int value_count(ValueKind kind);

//! Number of strictly increasing coordinate multi-indices of a k-form.
int slot_count(int degree);
//! Coordinate multi-index of `slot` as a bitmask over {x, y, z}.
unsigned slot_mask(int degree, int slot);
//! Inverse of slot_mask (the degree is the popcount of the mask).
int mask_slot(unsigned mask);

//! Storage slot and sign of entry (i, j) of an so(3) value; sign is 0 on
//! the diagonal. Slots: (0,1) -> 0, (0,2) -> 1, (1,2) -> 2.
struct So3Entry {
  int slot;
  double sign;
};
So3Entry so3_entry(int i, int j);

/**
 * A k-form field on the grid, optionally frame- or so(3)-valued.
 *
 * Layout: value index outermost, coordinate multi-index next, grid point
 * innermost, so every (value, slot) component is a contiguous ScalarField
 * sized grid.size().
 */
class FormField {
 public:
  FormField(const Grid& grid, int degree, ValueKind kind);

  const Grid& grid() const { return grid_; }
  int degree() const { return degree_; }
  ValueKind kind() const { return kind_; }
  int value_count() const { return cosserat::value_count(kind_); }
  int slot_count() const { return cosserat::slot_count(degree_); }

  std::span<double> component(int value, int slot);
  std::span<const double> component(int value, int slot) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  FormField& operator+=(const FormField& other);
  FormField& operator-=(const FormField& other);
  FormField& operator*=(double s);

 private:
  void require_compatible(const FormField& other) const;

  Grid grid_;
  int degree_;
  ValueKind kind_;
  std::vector<double> data_;
};

FormField operator+(FormField a, const FormField& b);
FormField operator-(FormField a, const FormField& b);
FormField operator*(double s, FormField a);

double max_abs(const FormField& f);
double l2_norm(const FormField& f);

}  // namespace cosserat
