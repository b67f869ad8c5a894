#include "cdr/sequence_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdr/error.hpp"

namespace cdr::io {

using nlohmann::json;

namespace {

constexpr double kMicro = 1e-6;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::MissingField, where + " is missing '" + key + "'");
  }
  return *it;
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) {
    throw Error(ErrorCode::SyntaxError, where + " must be a number");
  }
  const double v = value.get<double>();
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFiniteValue, where + " is not finite");
  }
  return v;
}

double optional_number(const json& obj, const char* key, double fallback,
                       const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + "." + key);
}

void require_object(const json& value, const std::string& where) {
  if (!value.is_object()) {
    throw Error(ErrorCode::SyntaxError, where + " must be an object");
  }
}

}  // namespace

Channel parse_channel(std::string_view name) {
  if (name == "optical12") return Channel::Optical12;
  if (name == "control23") return Channel::Control23;
  throw Error(ErrorCode::UnknownChannel,
              "unknown channel '" + std::string(name) + "'");
}

SequenceConfig parse_sequence_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError,
                line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  require_object(doc, "document");

  SequenceConfig cfg;

  if (auto it = doc.find("ensemble"); it != doc.end()) {
    require_object(*it, "ensemble");
    const double sigma_hz =
        optional_number(*it, "sigma_hz", cfg.ensemble.sigma / (2.0 * kPi), "ensemble");
    cfg.ensemble.sigma = 2.0 * kPi * sigma_hz;
    if (auto n = it->find("n_atoms"); n != it->end()) {
      if (!n->is_number_integer()) {
        throw Error(ErrorCode::SyntaxError, "ensemble.n_atoms must be an integer");
      }
      cfg.ensemble.n_atoms = n->get<int>();
    }
    cfg.ensemble.span = optional_number(*it, "span", cfg.ensemble.span, "ensemble");
  }
  ensemble::check(cfg.ensemble);

  const json& grid = require(doc, "grid", "document");
  require_object(grid, "grid");
  cfg.grid.t_end = number(require(grid, "t_end", "grid"), "grid.t_end") * kMicro;
  cfg.grid.dt = optional_number(grid, "dt", cfg.ensemble.default_time_step() / kMicro,
                                "grid") *
                kMicro;
  if (!(cfg.grid.dt > 0.0) || cfg.grid.t_end < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "grid needs dt > 0 and t_end >= 0");
  }

  const json& pulses = require(doc, "pulses", "document");
  if (!pulses.is_array()) {
    throw Error(ErrorCode::SyntaxError, "pulses must be an array");
  }
  std::vector<Pulse> list;
  for (std::size_t k = 0; k < pulses.size(); ++k) {
    const std::string where = "pulses[" + std::to_string(k) + "]";
    const json& p = pulses[k];
    require_object(p, where);
    const json& ch = require(p, "channel", where);
    if (!ch.is_string()) {
      throw Error(ErrorCode::SyntaxError, where + ".channel must be a string");
    }
    Pulse pulse;
    pulse.channel = parse_channel(ch.get<std::string>());
    pulse.area = number(require(p, "area_pi", where), where + ".area_pi") * kPi;
    pulse.t_start = number(require(p, "t_start", where), where + ".t_start") * kMicro;
    pulse.duration = optional_number(p, "duration", 0.0, where) * kMicro;
    list.push_back(pulse);
  }
  cfg.sequence = PulseSequence(std::move(list), cfg.grid.t_end);
  return cfg;
}

SequenceConfig load_sequence_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_sequence_file(buf.str());
}

std::string serialize_sequence(const SequenceConfig& cfg) {
  json doc;
  json pulses = json::array();
  for (const Pulse& p : cfg.sequence.pulses()) {
    pulses.push_back({{"channel", std::string(to_string(p.channel))},
                      {"area_pi", p.area / kPi},
                      {"t_start", p.t_start / kMicro},
                      {"duration", p.duration / kMicro}});
  }
  doc["pulses"] = std::move(pulses);
  doc["ensemble"] = {{"sigma_hz", cfg.ensemble.sigma / (2.0 * kPi)},
                     {"n_atoms", cfg.ensemble.n_atoms},
                     {"span", cfg.ensemble.span}};
  doc["grid"] = {{"t_end", cfg.grid.t_end / kMicro}, {"dt", cfg.grid.dt / kMicro}};
  return doc.dump(2) + "\n";
}

}  // namespace cdr::io
