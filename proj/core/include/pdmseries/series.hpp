#pragma once

#include <span>
#include <vector>

namespace pdmseries {

/// Coefficients c_0..c_M of a truncated power series about r = 0.
class SeriesVector {
 public:
  SeriesVector() : coeffs_{0.0} {}
  explicit SeriesVector(std::vector<double> coeffs);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// c_i, reading indices outside [0, order] as zero.
  double at(int i) const noexcept {
    return (i < 0 || i > order()) ? 0.0 : coeffs_[static_cast<std::size_t>(i)];
  }
  double operator[](int i) const noexcept { return coeffs_[static_cast<std::size_t>(i)]; }

  /// Horner evaluation of the partial sum.
  double evaluate(double r) const noexcept;

  /// Term-by-term derivative; order drops by one (order 0 maps to [0]).
  SeriesVector derivative() const;

  /// Copy with exactly new_order + 1 entries (zero padded or cut).
  SeriesVector resized(int new_order) const;

  bool operator==(const SeriesVector&) const = default;

 private:
  std::vector<double> coeffs_;
};

/// (a * b)[i] = sum_{j+k=i} a_j b_k for i <= order; missing entries read as zero.
SeriesVector cauchy_product(const SeriesVector& a, const SeriesVector& b, int order);

}  // namespace pdmseries
