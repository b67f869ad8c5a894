#include "cdr/sweep.hpp"

#include <cmath>

#include "cdr/error.hpp"

namespace cdr::sweep {

using analytic::StageAreas;

std::string_view to_string(StageFunction s) noexcept {
  switch (s) {
    case StageFunction::Data: return "data";
    case StageFunction::R1: return "r1";
    case StageFunction::R2Dr: return "r2_dr";
    case StageFunction::C1: return "c1";
    case StageFunction::C2: return "c2";
    case StageFunction::R2Cdr: return "r2_cdr";
  }
  return "?";
}

std::string_view to_string(AreaName a) noexcept {
  switch (a) {
    case AreaName::D: return "phi_d";
    case AreaName::R1: return "phi_r1";
    case AreaName::C1: return "phi_c1";
    case AreaName::C2: return "phi_c2";
    case AreaName::R2: return "phi_r2";
  }
  return "?";
}

StageFunction parse_stage(std::string_view name) {
  for (auto s : {StageFunction::Data, StageFunction::R1, StageFunction::R2Dr,
                 StageFunction::C1, StageFunction::C2, StageFunction::R2Cdr}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::UnknownName, "unknown stage '" + std::string(name) + "'");
}

AreaName parse_area(std::string_view name) {
  if (name.starts_with("phi_")) name.remove_prefix(4);
  for (auto a : {AreaName::D, AreaName::R1, AreaName::C1, AreaName::C2, AreaName::R2}) {
    if (to_string(a).substr(4) == name) return a;
  }
  throw Error(ErrorCode::UnknownName, "unknown area '" + std::string(name) + "'");
}

bool uses_area(StageFunction stage, AreaName area) noexcept {
  switch (area) {
    case AreaName::D: return true;
    case AreaName::R1: return stage != StageFunction::Data;
    case AreaName::C1:
      return stage == StageFunction::C1 || stage == StageFunction::C2 ||
             stage == StageFunction::R2Cdr;
    case AreaName::C2:
      return stage == StageFunction::C2 || stage == StageFunction::R2Cdr;
    case AreaName::R2:
      return stage == StageFunction::R2Dr || stage == StageFunction::R2Cdr;
  }
  return false;
}

double get(const StageAreas& a, AreaName name) noexcept {
  switch (name) {
    case AreaName::D: return a.phi_d;
    case AreaName::R1: return a.phi_r1;
    case AreaName::C1: return a.phi_c1;
    case AreaName::C2: return a.phi_c2;
    case AreaName::R2: return a.phi_r2;
  }
  return 0.0;
}

void set(StageAreas& a, AreaName name, double value) noexcept {
  switch (name) {
    case AreaName::D: a.phi_d = value; break;
    case AreaName::R1: a.phi_r1 = value; break;
    case AreaName::C1: a.phi_c1 = value; break;
    case AreaName::C2: a.phi_c2 = value; break;
    case AreaName::R2: a.phi_r2 = value; break;
  }
}

DensityMatrix evaluate(StageFunction stage, const StageAreas& a) {
  switch (stage) {
    case StageFunction::Data: return analytic::after_data(a.phi_d);
    case StageFunction::R1: return analytic::after_r1(a.phi_d, a.phi_r1);
    case StageFunction::R2Dr: return analytic::after_r2_dr(a.phi_d, a.phi_r1, a.phi_r2);
    case StageFunction::C1: return analytic::after_c1(a.phi_d, a.phi_r1, a.phi_c1);
    case StageFunction::C2:
      return analytic::after_c2(a.phi_d, a.phi_r1, a.phi_c1, a.phi_c2);
    case StageFunction::R2Cdr:
      return analytic::after_r2_cdr(a.phi_d, a.phi_r1, a.phi_c1, a.phi_c2, a.phi_r2);
  }
  throw Error(ErrorCode::UnknownName, "unknown stage function");
}

Table run_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs at least 2 steps");
  }
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi)) {
    throw Error(ErrorCode::InvalidArgument, "sweep range needs finite lo < hi");
  }
  if (!uses_area(spec.stage, spec.varying)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("stage ") + std::string(to_string(spec.stage)) +
                    " does not depend on " + std::string(to_string(spec.varying)));
  }

  Table t;
  t.columns = {std::string(to_string(spec.varying)), "im_rho12", "re_rho13",
               "rho11", "rho22", "rho33"};
  t.rows.reserve(spec.steps);
  StageAreas areas = spec.fixed;
  const double width = spec.hi - spec.lo;
  for (int k = 0; k < spec.steps; ++k) {
    const double x = k == spec.steps - 1
                         ? spec.hi
                         : spec.lo + width * static_cast<double>(k) / (spec.steps - 1);
    set(areas, spec.varying, x);
    const DensityMatrix rho = evaluate(spec.stage, areas);
    t.rows.push_back({x, rho(0, 1).imag(), rho(0, 2).real(), rho(0, 0).real(),
                      rho(1, 1).real(), rho(2, 2).real()});
  }
  return t;
}

std::string_view to_string(FigureId id) noexcept {
  switch (id) {
    case FigureId::Fig2a: return "fig2a";
    case FigureId::Fig2b: return "fig2b";
    case FigureId::Fig2c: return "fig2c";
    case FigureId::Fig2d: return "fig2d";
    case FigureId::Fig3a: return "fig3a";
    case FigureId::Fig3b: return "fig3b";
    case FigureId::Fig3c: return "fig3c";
    case FigureId::Fig3d: return "fig3d";
    case FigureId::Fig4a: return "fig4a";
    case FigureId::Fig4b: return "fig4b";
    case FigureId::Fig5a: return "fig5a";
    case FigureId::Fig5b: return "fig5b";
    case FigureId::Fig5c: return "fig5c";
    case FigureId::Fig5d: return "fig5d";
  }
  return "?";
}

FigureId parse_figure(std::string_view name) {
  for (FigureId id : kAllFigures) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::UnknownName, "unknown figure '" + std::string(name) + "'");
}

SweepSpec figure_spec(FigureId id) {
  constexpr double pi = kPi;
  SweepSpec s;
  s.lo = 0.0;
  s.hi = 4.0 * pi;
  s.steps = 401;
  // Fixed areas for the chain up to the swept pulse; later pulses unused.
  const double small_data = 0.1 * pi;
  const double half_pi_data = 0.5 * pi;
  switch (id) {
    case FigureId::Fig2a:
    case FigureId::Fig2b:
      s.stage = StageFunction::R1;
      s.varying = AreaName::R1;
      s.fixed = {small_data, 0, 0, 0, 0};
      break;
    case FigureId::Fig2c:
    case FigureId::Fig2d:
      s.stage = StageFunction::R2Dr;
      s.varying = AreaName::R2;
      s.fixed = {small_data, pi, 0, 0, 0};
      break;
    case FigureId::Fig3a:
    case FigureId::Fig3b:
      s.stage = StageFunction::C1;
      s.varying = AreaName::C1;
      s.fixed = {small_data, pi, 0, 0, 0};
      break;
    case FigureId::Fig3c:
    case FigureId::Fig3d:
      s.stage = StageFunction::C2;
      s.varying = AreaName::C2;
      s.fixed = {small_data, pi, pi, 0, 0};
      break;
    case FigureId::Fig4a:
    case FigureId::Fig4b:
      s.stage = StageFunction::R2Cdr;
      s.varying = AreaName::R2;
      s.fixed = {small_data, pi, pi, pi, 0};
      break;
    case FigureId::Fig5a:
      s.stage = StageFunction::R1;
      s.varying = AreaName::R1;
      s.fixed = {half_pi_data, 0, 0, 0, 0};
      break;
    case FigureId::Fig5b:
      s.stage = StageFunction::C1;
      s.varying = AreaName::C1;
      s.fixed = {half_pi_data, pi, 0, 0, 0};
      break;
    case FigureId::Fig5c:
      s.stage = StageFunction::C2;
      s.varying = AreaName::C2;
      s.fixed = {half_pi_data, pi, pi, 0, 0};
      break;
    case FigureId::Fig5d:
      s.stage = StageFunction::R2Cdr;
      s.varying = AreaName::R2;
      s.fixed = {half_pi_data, pi, pi, pi, 0};
      break;
  }
  return s;
}

std::vector<std::string> figure_columns(FigureId id) {
  switch (id) {
    case FigureId::Fig2b:
    case FigureId::Fig2d:
      return {"rho11", "rho22"};
    case FigureId::Fig3b:
    case FigureId::Fig3d:
    case FigureId::Fig4b:
      return {"rho11", "rho22", "rho33"};
    case FigureId::Fig3a:
      return {"im_rho12", "re_rho13"};
    default:
      return {"im_rho12"};
  }
}

Table figure_dataset(FigureId id) {
  const SweepSpec spec = figure_spec(id);
  const Table full = run_sweep(spec);
  const std::vector<std::string> keep = figure_columns(id);

  Table t;
  t.metadata.emplace_back("figure", std::string(to_string(id)));
  t.metadata.emplace_back("stage", std::string(to_string(spec.stage)));
  t.metadata.emplace_back("varying", std::string(to_string(spec.varying)));
  for (auto a : {AreaName::D, AreaName::R1, AreaName::C1, AreaName::C2, AreaName::R2}) {
    if (a == spec.varying || !uses_area(spec.stage, a)) continue;
    t.metadata.emplace_back(std::string(to_string(a)),
                            format_number(get(spec.fixed, a)));
  }

  std::vector<std::size_t> idx{0};
  t.columns.push_back(full.columns[0]);
  for (const auto& name : keep) {
    idx.push_back(full.column(name));
    t.columns.push_back(name);
  }
  t.rows.reserve(full.rows.size());
  for (const auto& row : full.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (std::size_t i : idx) r.push_back(row[i]);
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace cdr::sweep
