#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kuz {

/// One row of a convergence study. Absent values are written as empty fields.
struct ResultRow {
  std::string experiment;
  int k = 0;
  double h = 0.0;
  double tau = 0.0;
  double beta = 0.0;
  double t = 0.0;
  std::optional<double> err_grad_dt;
  std::optional<double> err_dt2;
  std::optional<double> err_grad_l6_acc;
  std::optional<double> ebar;
  std::optional<double> rate;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,k,h,tau,beta,t,err_grad_dt,err_dt2,err_grad_l6_acc,ebar,rate";

/// Header line, then one LF-terminated row per record; numbers use 17
/// significant digits so that values round-trip exactly.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
/// Throws IoError when the file cannot be written.
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

/// Parse the format written by write_csv. Throws IoError on unreadable files
/// and ConfigError on malformed content.
std::vector<ResultRow> read_csv(std::istream& is);
std::vector<ResultRow> read_csv(const std::string& path);

}  // namespace kuz
