#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "scp/lfunc.hpp"
#include "scp/quadrature.hpp"

namespace scp {

enum class OutputFormat { json, csv, dat };

OutputFormat parse_output_format(const std::string& text);
const char* output_format_name(OutputFormat format) noexcept;

struct RunConfig {
  std::string rep_name = "delta";  // delta, sym2, sym3, formal_ones
  std::int64_t table_bound = 10'000;
  OutputFormat output_format = OutputFormat::json;
  unsigned threads = 1;
  bool deterministic = false;
  special::QuadratureConfig quadrature;
  lfunc::AFEConfig afe;

  void validate() const;
};

// key=value lines; '#' starts a comment; blank lines are ignored.  Unknown
// keys and malformed values raise parse errors that name the line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace scp
