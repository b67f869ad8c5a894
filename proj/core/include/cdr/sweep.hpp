#pragma once

// Pulse-area sweeps over the closed-form stage solutions, and the fixed
// figure datasets built from them.

#include <array>
#include <string>
#include <string_view>

#include "cdr/analytic.hpp"
#include "cdr/table.hpp"

namespace cdr::sweep {

/// Which closed-form stage to evaluate. R2Dr is double rephasing without
/// the control pair; R2Cdr is the full controlled sequence.
enum class StageFunction { Data, R1, R2Dr, C1, C2, R2Cdr };

enum class AreaName { D, R1, C1, C2, R2 };

std::string_view to_string(StageFunction s) noexcept;
std::string_view to_string(AreaName a) noexcept;  ///< "phi_d", "phi_r1", ...

/// Accept "r2_cdr" / "phi_r1" and the short forms "r1" etc. Throws UnknownName.
StageFunction parse_stage(std::string_view name);
AreaName parse_area(std::string_view name);

bool uses_area(StageFunction stage, AreaName area) noexcept;

double get(const analytic::StageAreas& areas, AreaName name) noexcept;
void set(analytic::StageAreas& areas, AreaName name, double value) noexcept;

DensityMatrix evaluate(StageFunction stage, const analytic::StageAreas& areas);

struct SweepSpec {
  StageFunction stage = StageFunction::R1;
  AreaName varying = AreaName::R1;
  double lo = 0.0;
  double hi = 4.0 * kPi;
  int steps = 401;
  analytic::StageAreas fixed;  ///< the varying entry is ignored
};

/// Columns: <varying>, im_rho12, re_rho13, rho11, rho22, rho33.
/// Rows at lo + k (hi - lo) / (steps - 1).
/// Throws InvalidArgument for steps < 2, lo >= hi, or a varying area the
/// stage does not use.
Table run_sweep(const SweepSpec& spec);

enum class FigureId {
  Fig2a, Fig2b, Fig2c, Fig2d,
  Fig3a, Fig3b, Fig3c, Fig3d,
  Fig4a, Fig4b,
  Fig5a, Fig5b, Fig5c, Fig5d,
};

inline constexpr std::array<FigureId, 14> kAllFigures = {
    FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig2c, FigureId::Fig2d,
    FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig3c, FigureId::Fig3d,
    FigureId::Fig4a, FigureId::Fig4b, FigureId::Fig5a, FigureId::Fig5b,
    FigureId::Fig5c, FigureId::Fig5d,
};

std::string_view to_string(FigureId id) noexcept;  ///< "fig2a", ...
FigureId parse_figure(std::string_view name);

/// Sweep definition behind a figure: x axis 0..4pi in steps of pi/100.
SweepSpec figure_spec(FigureId id);

/// Columns kept in the figure dataset (after the x column).
std::vector<std::string> figure_columns(FigureId id);

/// Figure data with metadata (figure id, stage, varying area, fixed areas).
Table figure_dataset(FigureId id);

}  // namespace cdr::sweep
