#include "kuz/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kuz/errors.hpp"

namespace kuz {

namespace {

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, n);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, line);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.experiment << ',' << r.k << ',' << format_double(r.h) << ','
       << format_double(r.tau) << ',' << format_double(r.beta) << ',' << format_double(r.t)
       << ',' << format_optional(r.err_grad_dt) << ',' << format_optional(r.err_dt2) << ','
       << format_optional(r.err_grad_l6_acc) << ',' << format_optional(r.ebar) << ','
       << format_optional(r.rate) << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<ResultRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw ConfigError("csv: missing or unexpected header");
  }
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 11) {
      throw ConfigError("csv line " + std::to_string(lineno) + ": expected 11 fields");
    }
    ResultRow r;
    r.experiment = f[0];
    r.k = static_cast<int>(parse_double(f[1], lineno));
    r.h = parse_double(f[2], lineno);
    r.tau = parse_double(f[3], lineno);
    r.beta = parse_double(f[4], lineno);
    r.t = parse_double(f[5], lineno);
    r.err_grad_dt = parse_optional(f[6], lineno);
    r.err_dt2 = parse_optional(f[7], lineno);
    r.err_grad_l6_acc = parse_optional(f[8], lineno);
    r.ebar = parse_optional(f[9], lineno);
    r.rate = parse_optional(f[10], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_csv(in);
}

}  // namespace kuz
