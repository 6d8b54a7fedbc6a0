#include "logistic/run_config.hpp"

#include <charconv>
#include <sstream>

#include "logistic/errors.hpp"

namespace logistic {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw DomainError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DomainError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    out[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "command=" << command << '\n'
     << "b=" << format_double(params.b) << '\n'
     << "mu=" << format_double(params.mu) << '\n'
     << "gamma=" << format_double(params.gamma) << '\n'
     << "L=" << params.L << '\n'
     << "variant=" << to_string(params.variant) << '\n';
  if (params.exploratory) os << "exploratory=1\n";
  if (seed) os << "seed=" << *seed << '\n';
  os << "output=" << to_string(output) << '\n' << "threads=" << threads << '\n';
  for (const auto& [k, v] : options) os << k << '=' << v << '\n';
  return os.str();
}

std::string RunConfig::header(std::string_view prefix) const {
  std::string out;
  std::istringstream is(to_text());
  for (std::string line; std::getline(is, line);) {
    out.append(prefix);
    out += line;
    out += '\n';
  }
  return out;
}

RunConfig RunConfig::from_text(std::string_view text) {
  RunConfig cfg;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "command") {
      cfg.command = value;
    } else if (key == "b") {
      cfg.params.b = parse_double(value);
    } else if (key == "mu") {
      cfg.params.mu = parse_double(value);
    } else if (key == "gamma") {
      cfg.params.gamma = parse_double(value);
    } else if (key == "L") {
      cfg.params.L = parse_int(value);
    } else if (key == "variant") {
      cfg.params.variant = parse_variant(value);
    } else if (key == "exploratory") {
      cfg.params.exploratory = value == "1" || value == "true";
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), s);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw DomainError("not a seed: '" + value + "'");
      }
      cfg.seed = s;
    } else if (key == "output") {
      cfg.output = parse_output_format(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_int(value));
    } else {
      cfg.options[key] = value;
    }
  }
  return cfg;
}

RunConfig RunConfig::from_header(std::string_view text, std::string_view prefix) {
  std::string body;
  while (text.substr(0, prefix.size()) == prefix) {
    const auto nl = text.find('\n');
    body.append(text.substr(prefix.size(), nl == std::string_view::npos ? std::string_view::npos
                                                                        : nl - prefix.size()));
    body += '\n';
    if (nl == std::string_view::npos) break;
    text = text.substr(nl + 1);
  }
  return from_text(body);
}

}  // namespace logistic
