#pragma once

#include "gsa/reduce.hpp"

#include <Eigen/Dense>

namespace gsa::detail {

/// Pick-freeze reductions of one scalar pair. Moments are accumulated in
/// centered form around the shared mean f0 — algebraically identical to
/// the textbook second-moment-minus-square expressions, but free of the
/// cancellation they suffer when |mean| >> spread. Every reduction is a
/// pairwise sum so scalar and matrix paths can match bit-for-bit.
struct ScalarMoments {
  double f0 = 0.0;    // mean (Y + Y*)/2
  double num = 0.0;   // mean (Y - f0)(Y* - f0)   == mean Y Y* - f0^2
  double den = 0.0;   // mean ((Y-f0)^2 + (Y*-f0)^2)/2 == mean (Y^2+Y*^2)/2 - f0^2
  double jansen = 0.0;  // (1/2N) sum (Y - Y*)^2
};

template <class VecA, class VecB>
ScalarMoments scalar_moments(const VecA& y, const VecB& ys, Eigen::Index n) {
  const double dn = static_cast<double>(n);
  ScalarMoments m;
  m.f0 = pairwise_sum(n, [&](Eigen::Index k) { return (y(k) + ys(k)) / 2.0; }) /
         dn;
  const double f0 = m.f0;
  m.num = pairwise_sum(n,
                       [&](Eigen::Index k) {
                         return (y(k) - f0) * (ys(k) - f0);
                       }) /
          dn;
  m.den = pairwise_sum(n,
                       [&](Eigen::Index k) {
                         return ((y(k) - f0) * (y(k) - f0) +
                                 (ys(k) - f0) * (ys(k) - f0)) /
                                2.0;
                       }) /
          dn;
  m.jansen = pairwise_sum(n,
                          [&](Eigen::Index k) {
                            const double d = y(k) - ys(k);
                            return d * d;
                          }) /
             (2.0 * dn);
  return m;
}

/// Map-level degeneracy rule, evaluable on both routes without decoding:
/// the variance estimate is compared against the pixel's second moment
/// den + f0^2. Covers exact constants and tiny-negative roundoff.
inline bool degenerate_pixel(double den, double pixel_f0) {
  return !(den > 1e-12 * (den + pixel_f0 * pixel_f0));
}

}  // namespace gsa::detail
