#include "skycell/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace skycell {

namespace detail {

const std::array<double, 8>& Gk15::nodes() {
  return boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
}

const std::array<double, 8>& Gk15::kronrod_weights() {
  return boost::math::quadrature::gauss_kronrod<double, 15>::weights();
}

const std::array<double, 4>& Gk15::gauss_weights() {
  return boost::math::quadrature::gauss<double, 7>::weights();
}

}  // namespace detail

std::vector<double> make_edges(std::vector<double> points, double lo, double hi) {
  std::erase_if(points, [&](double x) { return !(x > lo && x < hi); });
  points.push_back(lo);
  points.push_back(hi);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace skycell
