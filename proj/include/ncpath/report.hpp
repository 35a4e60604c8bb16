#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace ncpath {

/// One named verification outcome.
struct CheckRow {
  std::string check;
  std::string parameters;
  std::string value;
  std::string target;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// 17 significant digits.
std::string format_double(double v);
/// "re+imi" with 17 significant digits per part.
std::string format_complex(std::complex<double> v);

inline constexpr const char* kCheckCsvHeader = "check,parameters,value,target,error,tolerance,pass";

void write_checks_csv(std::ostream& os, const std::vector<CheckRow>& rows);
void write_checks_text(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace ncpath
