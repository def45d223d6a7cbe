#include "scp/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "scp/arith.hpp"
#include "scp/errors.hpp"

namespace scp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  std::size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return d;
}

std::int64_t to_int(const std::string& v) {
  std::size_t used = 0;
  const long long x = std::stoll(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument(v);
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "dat") return OutputFormat::dat;
  fail(ErrorKind::parse, "unknown output format '" + text + "'");
}

const char* output_format_name(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::dat: return "dat";
  }
  return "json";
}

void RunConfig::validate() const {
  if (rep_name != "delta" && rep_name != "sym2" && rep_name != "sym3" && rep_name != "formal_ones") {
    fail(ErrorKind::domain, "config: unknown rep_name '" + rep_name + "'");
  }
  if (table_bound < 1) fail(ErrorKind::domain, "config: table_bound must be >= 1");
  if (table_bound > arith::kDefaultTableCeiling) {
    fail(ErrorKind::resource, "config: table_bound " + std::to_string(table_bound) + " exceeds the ceiling " +
                                  std::to_string(arith::kDefaultTableCeiling));
  }
  if (threads < 1) fail(ErrorKind::domain, "config: threads must be >= 1");
  quadrature.validate();
  afe.validate();
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"rep_name", [&](const std::string& v) { cfg.rep_name = v; }},
      {"table_bound", [&](const std::string& v) { cfg.table_bound = to_int(v); }},
      {"output_format", [&](const std::string& v) { cfg.output_format = parse_output_format(v); }},
      {"threads", [&](const std::string& v) { cfg.threads = static_cast<unsigned>(to_int(v)); }},
      {"deterministic", [&](const std::string& v) { cfg.deterministic = to_bool(v); }},
      {"quad_rel_tol", [&](const std::string& v) { cfg.quadrature.rel_tol = to_double(v); }},
      {"quad_abs_tol", [&](const std::string& v) { cfg.quadrature.abs_tol = to_double(v); }},
      {"truncation_radius", [&](const std::string& v) { cfg.quadrature.truncation_radius = to_double(v); }},
      {"kernel_width", [&](const std::string& v) { cfg.afe.kernel_width = to_double(v); }},
      {"cutoff_multiplier", [&](const std::string& v) { cfg.afe.cutoff_multiplier = to_double(v); }},
      {"contour_sigma", [&](const std::string& v) { cfg.afe.contour_sigma = to_double(v); }},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) fail(ErrorKind::parse, where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) fail(ErrorKind::parse, where + "unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const Error& e) {
      fail(e.kind(), where + e.what());
    } catch (const std::exception&) {
      fail(ErrorKind::parse, where + "bad value '" + value + "' for " + key);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace scp
