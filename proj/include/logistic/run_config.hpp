#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "logistic/chain_model.hpp"

namespace logistic {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Effective settings of one CLI run. Serialises to key=value lines; every
/// output file starts with that text so the run can be reproduced.
struct RunConfig {
  std::string command;
  ChainParams params;
  std::optional<std::uint64_t> seed;
  OutputFormat output = OutputFormat::Csv;
  unsigned threads = 1;
  std::map<std::string, std::string> options;  // command-specific, as text

  std::string to_text() const;
  /// to_text() with every line prefixed by `prefix`.
  std::string header(std::string_view prefix = "# ") const;
  static RunConfig from_text(std::string_view text);
  /// Reads the leading block of `prefix` lines written by header().
  static RunConfig from_header(std::string_view text, std::string_view prefix = "# ");

  bool operator==(const RunConfig&) const = default;
};

/// key=value lines; blank lines and lines starting with '#' are skipped and
/// whitespace around keys and values is trimmed. Throws DomainError on a
/// line without '='.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

}  // namespace logistic
