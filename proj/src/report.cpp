#include "ncpath/report.hpp"

#include <cstdio>
#include <ostream>

namespace ncpath {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(std::complex<double> v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

void write_checks_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
  os << kCheckCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.check << "," << r.parameters << "," << r.value << "," << r.target << "," << format_double(r.error) << ","
       << format_double(r.tolerance) << "," << (r.passed ? "pass" : "fail") << "\n";
  }
}

void write_checks_text(std::ostream& os, const std::vector<CheckRow>& rows) {
  std::size_t failed = 0;
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "[%s] %-34s error %.3e  tol %.1e  ", r.passed ? "PASS" : "FAIL", r.check.c_str(),
                  r.error, r.tolerance);
    os << line << r.parameters << "\n";
    if (!r.passed) ++failed;
  }
  os << rows.size() - failed << "/" << rows.size() << " checks passed\n";
}

}  // namespace ncpath
