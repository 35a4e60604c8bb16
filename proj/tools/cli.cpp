#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncpath/errors.hpp"
#include "ncpath/fock.hpp"
#include "ncpath/hilbert.hpp"
#include "ncpath/oracles.hpp"
#include "ncpath/propagator.hpp"
#include "ncpath/report.hpp"
#include "ncpath/verify_suite.hpp"

namespace ncpath::cli {

namespace {

const char* const kKernelHeader = "method,theta,mass,time,x0,y0,xf,yf,re_k,im_k,abs_k,rel_err";
const char* const kSweepHeader = "theta,mass,time,dx,re_k,im_k,abs_k";

std::string join(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_double(v);
  }
  return s;
}

std::string format_of(const RunConfig& c) {
  if (!c.format.empty()) return c.format;
  return c.command == "verify" ? "text" : "csv";
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

double Range::at(std::size_t i) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Range parse_range(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) || c.find(',') != std::string::npos)
    throw InvalidArgument("range '" + text + "' must be start,stop,count");
  Range r;
  try {
    std::size_t used = 0;
    r.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    r.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    const long n = std::stol(c, &used);
    if (used != c.size() || n < 1) throw std::invalid_argument(c);
    r.count = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw InvalidArgument("range '" + text + "' must be start,stop,count with count >= 1");
  }
  if (!std::isfinite(r.start) || !std::isfinite(r.stop)) throw InvalidArgument("range '" + text + "' is not finite");
  return r;
}

void RunConfig::validate() const {
  auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string("--") + name + " must be finite");
  };
  finite(theta, "theta");
  finite(mass, "mass");
  finite(time, "time");
  finite(x0, "x0");
  finite(y0, "y0");
  finite(xf, "xf");
  finite(yf, "yf");
  if (!(theta > 0.0)) throw InvalidArgument("--theta must be positive");
  if (!(mass > 0.0)) throw InvalidArgument("--mass must be positive");
  if (time < 0.0) throw InvalidArgument("--time must be non-negative");
  if (!(tol > 0.0) || !(oracle_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
  if (fock_dim < 4) throw InvalidArgument("--fock-dim must be at least 4");
  const std::string fmt = format;
  if (!fmt.empty() && fmt != "csv" && fmt != "text") throw InvalidArgument("--format must be csv or text");
  if (command == "kernel" && compare && !(time > 0.0)) throw InvalidArgument("--compare needs --time > 0");
  if (command == "sweep") {
    if (!sweep_dx.active() && !sweep_time.active() && !sweep_theta.active())
      throw InvalidArgument("sweep needs at least one of --sweep-dx, --sweep-time, --sweep-theta");
    if (sweep_time.active() && std::min(sweep_time.start, sweep_time.stop) < 0.0)
      throw InvalidArgument("--sweep-time must be non-negative");
    if (sweep_theta.active() && !(std::min(sweep_theta.start, sweep_theta.stop) > 0.0))
      throw InvalidArgument("--sweep-theta must be positive");
  }
}

int cmd_kernel(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const PhysicalParams params = PhysicalParams::make(c.mass, c.theta);
  const PlanePoint from{c.x0, c.y0}, to{c.xf, c.yf};
  const cplx exact = closed_form_kernel(params, c.time, from, to);

  struct Row {
    std::string method;
    cplx k;
  };
  std::vector<Row> rows{{"closed_form", exact}};
  if (c.compare) {
    rows.push_back({"sliced_n" + std::to_string(c.slices),
                    sliced_kernel(params, SliceSchedule::from_total(c.slices, c.time), from, to)});
    const auto dims = default_ladder(c.fock_dim);
    const OracleLadder ladder = oracle_ladder(params, c.time, from.z(params), to.z(params), dims, c.oracle_tol);
    if (!ladder.converged) {
      err << "error: superoperator oracle did not converge\n" << ladder.table();
      return kVerificationFailed;
    }
    rows.push_back({"superoperator_D" + std::to_string(c.fock_dim), ladder.rungs.back().value});
  }

  if (format_of(c) == "csv") {
    out << kKernelHeader << '\n';
    for (const auto& r : rows)
      out << r.method << ',' << join({c.theta, c.mass, c.time, c.x0, c.y0, c.xf, c.yf, r.k.real(), r.k.imag(),
                                      std::abs(r.k), rel_err(r.k, exact)})
          << '\n';
  } else {
    for (const auto& r : rows)
      out << r.method << ": K = " << format_complex(r.k) << "  |K| = " << format_double(std::abs(r.k)) << '\n';
    if (c.compare) {
      const double slice_tol = 1e-10;
      out << "closed_form vs sliced:        " << format_double(rel_err(rows[1].k, exact)) << " (tol "
          << format_double(slice_tol) << ")\n";
      out << "closed_form vs superoperator: " << format_double(rel_err(rows[2].k, exact)) << " (tol "
          << format_double(c.oracle_tol) << ")\n";
      out << "sliced vs superoperator:      " << format_double(rel_err(rows[2].k, rows[1].k)) << " (tol "
          << format_double(c.oracle_tol) << ")\n";
    }
  }
  return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream&) {
  const Range one_theta{c.theta, c.theta, 1}, one_time{c.time, c.time, 1};
  const double base_dx = std::hypot(c.xf - c.x0, c.yf - c.y0);
  const Range one_dx{base_dx, base_dx, 1};
  const Range& thetas = c.sweep_theta.active() ? c.sweep_theta : one_theta;
  const Range& times = c.sweep_time.active() ? c.sweep_time : one_time;
  const Range& dxs = c.sweep_dx.active() ? c.sweep_dx : one_dx;

  const bool csv = format_of(c) == "csv";
  out << (csv ? kSweepHeader : "theta mass time dx re_k im_k abs_k") << '\n';
  for (std::size_t a = 0; a < thetas.count; ++a) {
    const PhysicalParams params = PhysicalParams::make(c.mass, thetas.at(a));
    for (std::size_t b = 0; b < times.count; ++b)
      for (std::size_t d = 0; d < dxs.count; ++d) {
        const double dx = dxs.at(d);
        const cplx k = closed_form_kernel(params, times.at(b), {0.0, 0.0}, {dx, 0.0});
        std::string line = join({params.theta(), c.mass, times.at(b), dx, k.real(), k.imag(), std::abs(k)});
        if (!csv)
          for (auto& ch : line)
            if (ch == ',') ch = ' ';
        out << line << '\n';
      }
  }
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerifyConfig vc;
  vc.theta = c.theta;
  vc.mass = c.mass;
  vc.fock_dim = c.fock_dim;
  vc.tolerance = c.tol;
  vc.oracle_tolerance = c.oracle_tol;
  vc.no_star = c.no_star;
  const auto rows = run_verify_suite(vc);
  if (format_of(c) == "csv")
    write_checks_csv(out, rows);
  else
    write_checks_text(out, rows);
  for (const auto& r : rows)
    if (!r.passed) {
      err << "verification failed: first failing check: " << r.check << " [" << r.parameters << "]\n";
      return kVerificationFailed;
    }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Propagation kernel of a free particle on the noncommutative plane [x,y] = i theta.\n"
      "Natural units: theta has units of length^2, positions of length, hbar = 1."};
  app.require_subcommand(1, 1);
  RunConfig c;
  std::string dx_text, time_text, theta_text;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--theta", c.theta, "noncommutativity parameter, length^2 (> 0)")->capture_default_str();
    sub->add_option("--mass", c.mass, "particle mass (> 0)")->capture_default_str();
    sub->add_option("--fock-dim", c.fock_dim, "Fock truncation D for the superoperator oracle")->capture_default_str();
    sub->add_option("--tol", c.tol, "relative tolerance for exact checks and quadrature")->capture_default_str();
    sub->add_option("--oracle-tol", c.oracle_tol, "relative tolerance for the truncated oracle")->capture_default_str();
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
    sub->add_option("--format", c.format, "csv or text (default: csv for kernel/sweep, text for verify)");
  };
  auto endpoints = [&](CLI::App* sub) {
    sub->add_option("--time", c.time, "total time T (>= 0)")->capture_default_str();
    sub->add_option("--x0", c.x0, "initial x, length")->capture_default_str();
    sub->add_option("--y0", c.y0, "initial y, length")->capture_default_str();
    sub->add_option("--xf", c.xf, "final x, length")->capture_default_str();
    sub->add_option("--yf", c.yf, "final y, length")->capture_default_str();
  };

  CLI::App* kernel = app.add_subcommand("kernel", "evaluate the kernel between two points");
  common(kernel);
  endpoints(kernel);
  kernel->add_option("--slices", c.slices, "intermediate points n for --compare")->capture_default_str();
  kernel->add_flag("--compare", c.compare, "also evaluate the n-slice product and the superoperator oracle");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate the kernel over a grid (theta, then time, then dx)");
  common(sweep);
  endpoints(sweep);
  sweep->add_option("--sweep-dx", dx_text, "separation grid start,stop,count");
  sweep->add_option("--sweep-time", time_text, "time grid start,stop,count");
  sweep->add_option("--sweep-theta", theta_text, "theta grid start,stop,count");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  common(verify);
  verify->add_flag("--no-star", c.no_star, "replace the star product by the pointwise product (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    if (kernel->parsed()) c.command = "kernel";
    if (sweep->parsed()) c.command = "sweep";
    if (verify->parsed()) c.command = "verify";
    if (!dx_text.empty()) c.sweep_dx = parse_range(dx_text);
    if (!time_text.empty()) c.sweep_time = parse_range(time_text);
    if (!theta_text.empty()) c.sweep_theta = parse_range(theta_text);
    c.validate();
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) throw InvalidArgument("cannot open --out path '" + c.out + "'");
      sink = &file;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (c.command == "kernel") return cmd_kernel(c, *sink, err);
    if (c.command == "sweep") return cmd_sweep(c, *sink, err);
    return cmd_verify(c, *sink, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace ncpath::cli
