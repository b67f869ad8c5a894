#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdr/analytic.hpp"
#include "cdr/area_theorem.hpp"
#include "cdr/ensemble.hpp"
#include "cdr/error.hpp"
#include "cdr/sequence_file.hpp"
#include "cdr/sweep.hpp"
#include "cdr/table.hpp"
#include "cdr/verify.hpp"

namespace cdr::cli {

namespace {

double to_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed number '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Area options are kept as strings so that "pi/2" style values parse.
struct AreaArgs {
  std::string d = "0.1pi";
  std::string r1 = "pi";
  std::string c1 = "pi";
  std::string c2 = "pi";
  std::string r2 = "pi";

  void attach(CLI::App* cmd) {
    cmd->add_option("--phid", d, "data pulse area (e.g. 0.1pi, pi/2, 0.3)");
    cmd->add_option("--phir1", r1, "first rephasing area");
    cmd->add_option("--phic1", c1, "first control area");
    cmd->add_option("--phic2", c2, "second control area");
    cmd->add_option("--phir2", r2, "second rephasing area");
  }

  analytic::StageAreas areas() const {
    return {parse_area_value(d), parse_area_value(r1), parse_area_value(c1),
            parse_area_value(c2), parse_area_value(r2)};
  }
};

void print_table(std::ostream& out, const Table& t) { out << format_csv(t); }

int run_figures(const std::string& dir, std::ostream& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, "cannot create '" + dir + "': " + ec.message());
  }
  for (sweep::FigureId id : sweep::kAllFigures) {
    const std::string path =
        (std::filesystem::path(dir) / (std::string(sweep::to_string(id)) + ".csv"))
            .string();
    write_csv(sweep::figure_dataset(id), path);
    out << "wrote " << path << '\n';
  }
  return kSuccess;
}

int run_stages(const AreaArgs& args, std::ostream& out) {
  const auto chain = analytic::stage_chain(args.areas());
  out << "stage,im_rho12,re_rho13,im_rho13,rho11,rho22,rho33\n";
  for (const auto& [stage, rho] : chain) {
    out << analytic::to_string(stage) << ',' << format_number(rho(0, 1).imag()) << ','
        << format_number(rho(0, 2).real()) << ',' << format_number(rho(0, 2).imag())
        << ',' << format_number(rho(0, 0).real()) << ','
        << format_number(rho(1, 1).real()) << ',' << format_number(rho(2, 2).real())
        << '\n';
  }
  return kSuccess;
}

int run_echo(const std::string& seq_path, const std::string& engine_name,
             const std::string& csv_path, double threshold, unsigned threads,
             std::ostream& out) {
  const io::SequenceConfig cfg = io::load_sequence_file(seq_path);
  ensemble::SimulationOptions opts;
  if (engine_name == "hard") {
    opts.engine = ensemble::Engine::Hard;
  } else if (engine_name == "ode") {
    opts.engine = ensemble::Engine::Ode;
  } else {
    throw Error(ErrorCode::UnknownName, "unknown engine '" + engine_name + "'");
  }
  opts.threads = threads;

  const auto times = ensemble::time_grid(cfg.grid.t_end, cfg.grid.dt);
  const auto trace = ensemble::simulate_ensemble(cfg.sequence, cfg.ensemble, times, opts);
  const auto report =
      ensemble::detect_echoes(trace.times, trace.polarization, cfg.sequence, threshold);

  out << std::setprecision(6);
  out << "engine " << engine_name << ", " << cfg.ensemble.n_atoms << " atoms, "
      << times.size() << " samples\n";
  out << "predicted echoes (us):";
  for (double t : ensemble::predict_echo_times(cfg.sequence)) out << ' ' << t * 1e6;
  out << '\n';
  if (report.events.empty()) out << "no echoes detected\n";
  for (const auto& ev : report.events) {
    const auto k = static_cast<std::size_t>(
        std::lround((ev.time - trace.times.front()) / cfg.grid.dt));
    const bool inverted = trace.rho22[k] > trace.rho11[k];
    out << ev.label << ' ' << (ev.emissive() ? "emissive" : "absorptive")
        << " t=" << ev.time * 1e6 << " us |P|=" << ev.amplitude
        << " ImP=" << ev.value.imag() << " rho11=" << trace.rho11[k]
        << " rho22=" << trace.rho22[k]
        << (inverted ? " (population inverted)" : " (no inversion)") << '\n';
  }

  if (!csv_path.empty()) {
    Table t;
    t.metadata = {{"sequence", std::filesystem::path(seq_path).filename().string()},
                  {"engine", engine_name}};
    t.columns = {"t_us", "re_p", "im_p", "abs_p", "rho11", "rho22", "rho33"};
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Complex p = trace.polarization[k];
      t.rows.push_back({times[k] * 1e6, p.real(), p.imag(), std::abs(p),
                        trace.rho11[k], trace.rho22[k], trace.rho33[k]});
    }
    write_csv(t, csv_path);
  }
  return kSuccess;
}

int run_propagate(double phi0, double alpha, double z_max, double dz,
                  const std::string& csv_path, std::ostream& out) {
  const auto samples = area::propagate_area({phi0, alpha, z_max, dz});
  const double beer = phi0 * std::exp(-0.5 * alpha * z_max);
  out << std::setprecision(12) << "phi(z_max) = " << samples.back().phi
      << "  (small-area Beer's law: " << beer << ")\n";
  if (!csv_path.empty()) {
    Table t;
    t.metadata = {{"phi0", format_number(phi0)}, {"alpha", format_number(alpha)}};
    t.columns = {"z", "phi"};
    for (const auto& s : samples) t.rows.push_back({s.z, s.phi});
    write_csv(t, csv_path);
  }
  return kSuccess;
}

int run_verify(std::ostream& out) {
  const auto results = verify::run_all();
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  (deviation "
        << std::setprecision(3) << r.measured << ", tolerance " << r.tolerance << ')';
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  const bool ok = verify::all_passed(results);
  out << (ok ? "all checks passed\n" : "verification FAILED\n");
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

double parse_area_value(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty area value");
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return to_double(s);

  std::string_view coef = trim(s.substr(0, pos));
  std::string_view rest = trim(s.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double value = kPi;
  if (!coef.empty()) {
    value *= coef == "-" ? -1.0 : to_double(coef);
  }
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw Error(ErrorCode::InvalidArgument,
                  "malformed area '" + std::string(text) + "'");
    }
    const double den = to_double(trim(rest.substr(1)));
    if (den == 0.0) throw Error(ErrorCode::InvalidArgument, "division by zero in area");
    value /= den;
  }
  return value;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controlled double-rephasing photon echo simulator"};
  app.require_subcommand(1);

  std::string fig_dir = "figures";
  auto* figures = app.add_subcommand("figures", "write all 14 figure datasets as CSV");
  figures->add_option("--out", fig_dir, "output directory");

  std::string sw_stage, sw_vary, sw_lo = "0", sw_hi = "4pi", sw_out;
  int sw_steps = 401;
  AreaArgs sw_areas;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one pulse area through a stage");
  sweep_cmd->add_option("--stage", sw_stage, "data|r1|r2_dr|c1|c2|r2_cdr")->required();
  sweep_cmd->add_option("--vary", sw_vary, "phi_d|phi_r1|phi_c1|phi_c2|phi_r2")->required();
  sweep_cmd->add_option("--lo", sw_lo, "range start");
  sweep_cmd->add_option("--hi", sw_hi, "range end");
  sweep_cmd->add_option("--steps", sw_steps, "number of rows (>= 2)");
  sweep_cmd->add_option("--out", sw_out, "CSV path (stdout if omitted)");
  sw_areas.attach(sweep_cmd);

  AreaArgs st_areas;
  auto* stages = app.add_subcommand("stages", "print the stage-by-stage density matrix");
  st_areas.attach(stages);

  std::string echo_seq, echo_engine = "hard", echo_out;
  double echo_threshold = 0.5;
  unsigned echo_threads = 0;
  auto* echo = app.add_subcommand("echo", "simulate an ensemble and report echoes");
  echo->add_option("--seq", echo_seq, "sequence JSON file")->required();
  echo->add_option("--engine", echo_engine, "hard|ode");
  echo->add_option("--out", echo_out, "polarization trace CSV");
  echo->add_option("--threshold", echo_threshold, "detection threshold, fraction of max |P|");
  echo->add_option("--threads", echo_threads, "worker threads (0 = all cores)");

  double pr_phi0 = 0.0, pr_alpha = 1.0, pr_zmax = 0.0, pr_dz = 1e-3;
  std::string pr_phi0_text, pr_out;
  auto* propagate = app.add_subcommand("propagate", "propagate a pulse area (area theorem)");
  propagate->add_option("--phi0", pr_phi0_text, "input area")->required();
  propagate->add_option("--alpha", pr_alpha, "absorption coefficient")->required();
  propagate->add_option("--zmax", pr_zmax, "propagation length")->required();
  propagate->add_option("--dz", pr_dz, "step");
  propagate->add_option("--out", pr_out, "CSV path");

  auto* verify_cmd = app.add_subcommand("verify", "run the cross-validation suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*figures) return run_figures(fig_dir, out);
    if (*sweep_cmd) {
      sweep::SweepSpec spec;
      spec.stage = sweep::parse_stage(sw_stage);
      spec.varying = sweep::parse_area(sw_vary);
      spec.lo = parse_area_value(sw_lo);
      spec.hi = parse_area_value(sw_hi);
      spec.steps = sw_steps;
      spec.fixed = sw_areas.areas();
      const Table t = sweep::run_sweep(spec);
      if (sw_out.empty()) {
        print_table(out, t);
      } else {
        write_csv(t, sw_out);
      }
      return kSuccess;
    }
    if (*stages) return run_stages(st_areas, out);
    if (*echo) {
      return run_echo(echo_seq, echo_engine, echo_out, echo_threshold, echo_threads, out);
    }
    if (*propagate) {
      pr_phi0 = parse_area_value(pr_phi0_text);
      return run_propagate(pr_phi0, pr_alpha, pr_zmax, pr_dz, pr_out, out);
    }
    if (*verify_cmd) return run_verify(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? kIoError : kUsageError;
  }
  return kUsageError;
}

}  // namespace cdr::cli
