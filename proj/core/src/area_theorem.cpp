#include "cdr/area_theorem.hpp"

#include <cmath>

#include "cdr/error.hpp"

namespace cdr::area {

std::vector<AreaSample> propagate_area(const PropagationConfig& c) {
  if (!std::isfinite(c.phi0) || !std::isfinite(c.alpha) || !std::isfinite(c.z_max) ||
      !std::isfinite(c.dz)) {
    throw Error(ErrorCode::NonFiniteValue, "propagation config is not finite");
  }
  if (c.alpha < 0.0 || !(c.dz > 0.0) || c.z_max < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "propagation needs alpha >= 0, dz > 0, z_max >= 0");
  }
  auto slope = [&](double phi) { return -0.5 * c.alpha * std::sin(phi); };

  std::vector<AreaSample> out{{0.0, c.phi0}};
  const auto n = static_cast<long>(std::ceil(c.z_max / c.dz - 1e-9));
  double phi = c.phi0;
  for (long k = 0; k < n; ++k) {
    const double z0 = static_cast<double>(k) * c.dz;
    const double z1 = std::min(z0 + c.dz, c.z_max);
    const double h = z1 - z0;
    const double k1 = slope(phi);
    const double k2 = slope(phi + 0.5 * h * k1);
    const double k3 = slope(phi + 0.5 * h * k2);
    const double k4 = slope(phi + h * k3);
    phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back({z1, phi});
  }
  return out;
}

}  // namespace cdr::area
