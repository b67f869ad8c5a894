#pragma once

#include <vector>

namespace cdr::area {

/// Propagation of a pulse area through an absorber, d(phi)/dz = -(alpha/2) sin(phi).
struct PropagationConfig {
  double phi0 = 0.0;   ///< input area, radians
  double alpha = 0.0;  ///< absorption coefficient, 1/length
  double z_max = 0.0;
  double dz = 1e-3;
};

struct AreaSample {
  double z;
  double phi;
};

/// RK4 in z. Samples at z = 0, dz, ..., with the last step shortened to land
/// on z_max exactly.
std::vector<AreaSample> propagate_area(const PropagationConfig& config);

}  // namespace cdr::area
