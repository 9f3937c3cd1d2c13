#include "cosserat/forms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "cosserat/error.hpp"

namespace cosserat {

namespace {

constexpr std::array<std::array<unsigned, 3>, 4> kMasks{{
    {0b000u, 0u, 0u},
    {0b001u, 0b010u, 0b100u},
    {0b011u, 0b101u, 0b110u},
    {0b111u, 0u, 0u},
}};

}  // namespace

int value_count(ValueKind kind) { return kind == ValueKind::scalar ? 1 : 3; }

int slot_count(int degree) {
  if (degree < 0 || degree > 3) throw Error("form degree must be in 0..3");
  return (degree == 0 || degree == 3) ? 1 : 3;
}

unsigned slot_mask(int degree, int slot) {
  if (slot < 0 || slot >= slot_count(degree)) throw Error("form slot out of range");
  return kMasks[degree][slot];
}

int mask_slot(unsigned mask) {
  const int degree = std::popcount(mask);
  for (int s = 0; s < slot_count(degree); ++s) {
    if (kMasks[degree][s] == mask) return s;
  }
  throw Error("invalid coordinate multi-index mask");
}

So3Entry so3_entry(int i, int j) {
  if (i == j) return {0, 0.0};
  const int a = std::min(i, j);
  const int b = std::max(i, j);
  const int slot = a == 0 ? (b == 1 ? 0 : 1) : 2;
  return {slot, i < j ? 1.0 : -1.0};
}

FormField::FormField(const Grid& grid, int degree, ValueKind kind)
    : grid_(grid), degree_(degree), kind_(kind) {
  const auto count = static_cast<std::size_t>(cosserat::value_count(kind)) *
                     static_cast<std::size_t>(cosserat::slot_count(degree)) *
                     static_cast<std::size_t>(grid.size());
  data_.assign(count, 0.0);
}

std::span<double> FormField::component(int value, int slot) {
  const auto n = static_cast<std::size_t>(grid_.size());
  const auto offset = (static_cast<std::size_t>(value) * slot_count() + slot) * n;
  return std::span<double>(data_).subspan(offset, n);
}

std::span<const double> FormField::component(int value, int slot) const {
  const auto n = static_cast<std::size_t>(grid_.size());
  const auto offset = (static_cast<std::size_t>(value) * slot_count() + slot) * n;
  return std::span<const double>(data_).subspan(offset, n);
}

void FormField::require_compatible(const FormField& other) const {
  if (!(grid_ == other.grid_) || degree_ != other.degree_ || kind_ != other.kind_) {
    throw Error("form fields differ in grid, degree or value kind");
  }
}

FormField& FormField::operator+=(const FormField& other) {
  require_compatible(other);
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += other.data_[q];
  return *this;
}

FormField& FormField::operator-=(const FormField& other) {
  require_compatible(other);
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= other.data_[q];
  return *this;
}

FormField& FormField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

FormField operator+(FormField a, const FormField& b) { return a += b; }
FormField operator-(FormField a, const FormField& b) { return a -= b; }
FormField operator*(double s, FormField a) { return a *= s; }

double max_abs(const FormField& f) { return max_abs(f.data()); }

double l2_norm(const FormField& f) { return l2_norm(f.grid(), f.data()); }

}  // namespace cosserat
