#pragma once

// Batch scans over n and their CSV / JSON / SVG renderings.
//
// CSV layout (schema hzeta-scan/1):
//   # hzeta-scan/1 series=<s> index=<i> shift=<m> digits=<d>
//   n,sign,log10_abs,slope,lgest_margin,verified_digits,precision_bits,wall_time_ms
// Empty cells mean "undefined" (slope at n = 1, lgest_margin off-progression).
// Every column except wall_time_ms is a deterministic function of the job.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hzeta/asymptotics.hpp"
#include "hzeta/diophantine.hpp"
#include "hzeta/hankel.hpp"
#include "hzeta/kronecker.hpp"
#include "hzeta/rational.hpp"

namespace hzeta {

inline constexpr const char* kScanSchema = "hzeta-scan/1";
inline constexpr const char* kWitnessSchema = "hzeta-witness/1";

struct ScanJob {
  SeriesSpec series = SeriesSpec::zeta();
  IndexSequence index = IndexSequence::progression(1, 0);
  ShiftMode shift = ShiftMode::cross;
  long n_max = 1;
  int digits = 15;
  int jobs = 1;
  HankelOptions hankel;

  void validate() const {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (digits < 1) throw DomainError("digits must be >= 1");
    if (jobs < 1) throw DomainError("jobs must be >= 1");
    series.validate();
  }
};

struct ScanRow {
  HankelResult result;
  std::optional<double> slope;         // log|H_n| / (n^2 log n)
  std::optional<double> lgest_margin;  // (log|H_n| - lgest_bound_log(a, n)) / n^2
  double wall_time_ms = 0;
};

namespace detail {

inline std::string fmt_double(double v, int sig = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

inline std::string fmt_optional(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

}  // namespace detail

// Computes n = 1..n_max, possibly on several threads; rows come back sorted by n.
// Throws the first failure (lowest n) after all workers finish.
inline std::vector<ScanRow> run_scan(const ScanJob& job) {
  job.validate();
  const auto count = static_cast<std::size_t>(job.n_max);
  std::vector<ScanRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const long n = static_cast<long>(i) + 1;
      const auto start = std::chrono::steady_clock::now();
      try {
        ScanRow row;
        row.result = hankel_log_det(job.series, job.index, job.shift, n, job.digits, job.hankel);
        const double log_abs = row.result.log_abs.to_double();
        const double nn = static_cast<double>(n);
        if (n >= 2) row.slope = log_abs / (nn * nn * std::log(nn));
        if (job.index.is_progression()) row.lgest_margin = (log_abs - lgest_bound_log(job.index.step, n)) / (nn * nn);
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows[i] = std::move(row);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int threads = std::min<int>(job.jobs, static_cast<int>(count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline std::string scan_header_comment(const ScanJob& job) {
  std::ostringstream os;
  os << "# " << kScanSchema << " series=" << job.series.summary() << " index=" << job.index.summary()
     << " shift=" << to_string(job.shift) << " digits=" << job.digits;
  return os.str();
}

inline std::string format_scan_csv(const ScanJob& job, const std::vector<ScanRow>& rows, bool timing = true) {
  std::ostringstream os;
  os << scan_header_comment(job) << "\n";
  os << "n,sign,log10_abs,slope,lgest_margin,verified_digits,precision_bits,wall_time_ms\n";
  for (const auto& r : rows) {
    os << r.result.n << "," << r.result.sign << "," << r.result.log10_abs.to_string(job.digits) << ","
       << detail::fmt_optional(r.slope) << "," << detail::fmt_optional(r.lgest_margin) << ","
       << r.result.verified_digits << "," << r.result.precision_bits << ",";
    if (timing) os << std::fixed << std::setprecision(3) << r.wall_time_ms << std::defaultfloat;
    os << "\n";
  }
  return os.str();
}

// log10_abs is a decimal string so no digits are lost to binary doubles.
inline nlohmann::ordered_json scan_json(const ScanJob& job, const std::vector<ScanRow>& rows, bool timing = true) {
  nlohmann::ordered_json out;
  out["schema"] = kScanSchema;
  out["series"] = job.series.summary();
  out["index"] = job.index.summary();
  out["shift"] = to_string(job.shift);
  out["digits"] = job.digits;
  auto& arr = out["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.result.n;
    row["sign"] = r.result.sign;
    row["log10_abs"] = r.result.log10_abs.to_string(job.digits);
    row["slope"] = r.slope ? nlohmann::ordered_json(*r.slope) : nlohmann::ordered_json(nullptr);
    row["lgest_margin"] = r.lgest_margin ? nlohmann::ordered_json(*r.lgest_margin) : nlohmann::ordered_json(nullptr);
    row["verified_digits"] = r.result.verified_digits;
    row["precision_bits"] = r.result.precision_bits;
    row["wall_time_ms"] = timing ? nlohmann::ordered_json(r.wall_time_ms) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(row));
  }
  return out;
}

struct ParsedScan {
  std::vector<long> n;
  std::vector<BigReal> log_abs;  // natural log, from the printed log10 column
  std::optional<long> progression_step;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

// Reads a scan CSV back. Rows whose sign is 0 are rejected.
inline ParsedScan parse_scan_csv(std::istream& in, unsigned bits = 256) {
  ParsedScan out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("index=progression:");
      if (pos != std::string::npos) {
        try {
          out.progression_step = std::stol(line.substr(pos + 18));
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad progression in header comment");
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("n,sign,log10_abs", 0) != 0) throw ParseError(lineno, "missing scan header row");
      header_seen = true;
      continue;
    }
    const auto cells = detail::split_csv(line);
    if (cells.size() < 3) throw ParseError(lineno, "expected at least 3 columns");
    try {
      const long n = std::stol(cells[0]);
      if (std::stoi(cells[1]) == 0) throw ParseError(lineno, "zero determinant");
      BigReal l10(cells[2], bits);
      out.n.push_back(n);
      out.log_abs.push_back(l10 * ln10(bits));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, std::string("malformed row: ") + e.what());
    }
  }
  if (!header_seen) throw ParseError(lineno, "no scan header row found");
  return out;
}

// Rows with n >= min_n only.
inline FitResult fit_scan(const std::vector<long>& ns, const std::vector<BigReal>& log_abs, long min_n = 5) {
  std::vector<long> fn;
  std::vector<BigReal> fy;
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] >= min_n) {
      fn.push_back(ns[i]);
      fy.push_back(log_abs[i]);
    }
  if (fn.size() < 3) throw DomainError("fit: need at least 3 rows with n >= " + std::to_string(min_n));
  return fit_growth(fn, fy);
}

inline std::string format_fit(const FitResult& fit, std::optional<long> a) {
  std::ostringstream os;
  os << "c1=" << detail::fmt_double(fit.c1, 10) << "\n";
  os << "c2=" << detail::fmt_double(fit.c2, 10) << "\n";
  os << "rms_residual=" << detail::fmt_double(fit.rms_residual, 6) << "\n";
  os << "n_range=" << fit.n_min << ".." << fit.n_max << "\n";
  if (a) {
    const double proved = -0.5 * static_cast<double>(*a);
    const double expected = -static_cast<double>(*a);
    os << "proved_bound c1<=" << detail::fmt_double(proved, 6) << ": " << (fit.c1 <= proved ? "holds" : "violated")
       << "\n";
    os << "expected c1=" << detail::fmt_double(expected, 6)
       << ": |c1-expected|=" << detail::fmt_double(std::fabs(fit.c1 - expected), 6) << "\n";
  }
  return os.str();
}

inline std::string format_witness_csv(const std::vector<WitnessRow>& rows, int digits = 15) {
  std::ostringstream os;
  os << "# " << kWitnessSchema << "\n";
  os << "n,log10_inv_H,product_bound_log10,C_n,trivial,exponent_basis\n";
  for (const auto& r : rows)
    os << r.n << "," << r.log10_inv_h.to_string(digits) << "," << r.product_bound_log10.to_string(digits) << ","
       << r.base.to_string(digits) << "," << (r.trivial ? "true" : "false") << ",\"" << r.exponent_basis << "\"\n";
  return os.str();
}

inline nlohmann::ordered_json witness_json(const std::vector<WitnessRow>& rows, int digits = 15) {
  nlohmann::ordered_json out;
  out["schema"] = kWitnessSchema;
  auto& arr = out["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["log10_inv_H"] = r.log10_inv_h.to_string(digits);
    row["product_bound_log10"] = r.product_bound_log10.to_string(digits);
    row["C_n"] = r.base.to_string(digits);
    row["trivial"] = r.trivial;
    row["exponent_basis"] = r.exponent_basis;
    arr.push_back(std::move(row));
  }
  return out;
}

inline nlohmann::ordered_json kronecker_json(const RationalSequence& seq, const RecurrenceReport& rec,
                                             const RationalityScan& scan) {
  nlohmann::ordered_json out;
  out["origin"] = seq.origin;
  out["length"] = seq.size();
  auto& r = out["recurrence"];
  r["found"] = rec.found;
  r["scanned_max_order"] = rec.scanned_max_order;
  if (rec.found) {
    r["order"] = rec.order;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& c : rec.coefficients) coeffs.push_back(format_rational(c));
    r["coefficients"] = coeffs;
    r["valid_from"] = rec.valid_from;
  }
  auto flags = nlohmann::ordered_json::array();
  for (const auto& [n, zero] : scan.flags) flags.push_back({{"n", n}, {"det_is_zero", zero}});
  out["hankel_flags"] = flags;
  out["zero_from"] = scan.zero_from ? nlohmann::ordered_json(*scan.zero_from) : nlohmann::ordered_json(nullptr);
  return out;
}

// Minimal line plot; x and y ranges are fitted to the data.
inline std::string svg_plot(const std::string& title, const std::vector<double>& xs, const std::vector<double>& ys,
                            const std::string& x_label, const std::string& y_label) {
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
     << "</text>\n";
  if (!xs.empty()) {
    auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    const double x0 = *xmin, x1 = (*xmax > *xmin) ? *xmax : *xmin + 1;
    const double y0 = *ymin, y1 = (*ymax > *ymin) ? *ymax : *ymin + 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) os << detail::fmt_double(px(xs[i]), 6) << "," << detail::fmt_double(py(ys[i]), 6) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << L << "\" y=\"" << H - 10 << "\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
       << " [" << detail::fmt_double(x0, 6) << ", " << detail::fmt_double(x1, 6) << "]</text>\n";
    os << "<text x=\"8\" y=\"" << T - 6 << "\" font-family=\"sans-serif\" font-size=\"12\">" << y_label << " ["
       << detail::fmt_double(y0, 6) << ", " << detail::fmt_double(y1, 6) << "]</text>\n";
  }
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace hzeta
