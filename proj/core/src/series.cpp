#include "pdmseries/series.hpp"

#include <utility>

#include "pdmseries/errors.hpp"

namespace pdmseries {

SeriesVector::SeriesVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
}

double SeriesVector::evaluate(double r) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

SeriesVector SeriesVector::derivative() const {
  if (order() == 0) return SeriesVector({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return SeriesVector(std::move(d));
}

SeriesVector SeriesVector::resized(int new_order) const {
  if (new_order < 0) throw DomainError("series order must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(new_order) + 1, 0.0);
  for (int i = 0; i <= new_order && i <= order(); ++i) c[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
  return SeriesVector(std::move(c));
}

SeriesVector cauchy_product(const SeriesVector& a, const SeriesVector& b, int order) {
  if (order < 0) throw DomainError("series order must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  for (int i = 0; i <= order; ++i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += a.at(j) * b.at(i - j);
    c[static_cast<std::size_t>(i)] = s;
  }
  return SeriesVector(std::move(c));
}

}  // namespace pdmseries
