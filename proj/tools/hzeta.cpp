// hzeta: batch front end for Hankel determinants of zeta / Dirichlet-series values.
//
// Exit codes: 0 success, 2 configuration or parse error, 3 precision ceiling reached.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hzeta/hzeta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecision = 3;

struct Options {
  long a = 1;
  long b = 0;
  std::string sequence;
  std::string series = "zeta";
  std::string shift = "cross";
  long n = 0;
  long s = 2;
  int digits = 15;
  std::string format = "csv";
  std::string out;
  std::string in;
  std::string plot;
  int jobs = 1;
  bool no_timing = false;
  std::size_t max_order = 4;
  std::string inject_fault;
  unsigned max_bits = 1u << 18;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hzeta::DomainError("cannot open '" + path + "'");
  return in;
}

std::vector<mpq_class> read_rationals(const std::string& path) {
  auto in = open_input(path);
  return hzeta::read_rational_lines(in);
}

hzeta::SeriesSpec parse_series(const std::string& text) {
  if (text == "zeta") return hzeta::SeriesSpec::zeta();
  if (text.rfind("periodic:", 0) == 0) return hzeta::SeriesSpec::periodic(read_rationals(text.substr(9)));
  if (text.rfind("custom:", 0) == 0) return hzeta::SeriesSpec::finite(read_rationals(text.substr(7)), "custom:" + text.substr(7));
  throw hzeta::DomainError("--series must be zeta, periodic:<path> or custom:<path>");
}

hzeta::IndexSequence parse_index(const Options& o) {
  if (o.sequence.empty()) return hzeta::IndexSequence::progression(o.a, o.b);
  if (o.sequence.rfind("quadratic:", 0) == 0) {
    std::string rest = o.sequence.substr(10);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw hzeta::DomainError("--sequence quadratic:c,d needs two integers");
    try {
      return hzeta::IndexSequence::quadratic(std::stol(rest.substr(0, comma)), std::stol(rest.substr(comma + 1)));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const hzeta::DomainError*>(&e)) throw;
      throw hzeta::DomainError("--sequence quadratic:c,d needs two integers");
    }
  }
  if (o.sequence.rfind("explicit:", 0) == 0) {
    std::vector<long> values;
    for (const auto& q : read_rationals(o.sequence.substr(9))) {
      if (q.get_den() != 1) throw hzeta::DomainError("explicit sequence entries must be integers");
      values.push_back(q.get_num().get_si());
    }
    return hzeta::IndexSequence::explicit_list(std::move(values));
  }
  throw hzeta::DomainError("--sequence must be quadratic:c,d or explicit:<path>");
}

hzeta::ShiftMode parse_shift(const std::string& s) {
  if (s == "cross") return hzeta::ShiftMode::cross;
  if (s == "sequence") return hzeta::ShiftMode::sequence;
  throw hzeta::DomainError("--shift must be cross or sequence");
}

hzeta::ScanJob make_job(const Options& o) {
  hzeta::ScanJob job;
  job.series = parse_series(o.series);
  job.index = parse_index(o);
  job.shift = parse_shift(o.shift);
  job.n_max = o.n;
  job.digits = o.digits;
  job.jobs = o.jobs;
  job.hankel.max_bits = o.max_bits;
  job.validate();
  return job;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw hzeta::DomainError("cannot write '" + o.out + "'");
  f << text;
}

void write_plot(const std::string& path, const std::string& svg) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw hzeta::DomainError("cannot write '" + path + "'");
  f << svg;
}

int cmd_zeta(const Options& o) {
  const auto series = parse_series(o.series);
  auto ctx = hzeta::PrecisionContext::for_digits(static_cast<unsigned>(o.digits));
  hzeta::BigReal lo = hzeta::series_value(series, o.s, ctx);
  hzeta::BigReal hi = hzeta::series_value(series, o.s, ctx.widened());
  const int agree = hzeta::agreeing_digits(lo, hi, o.digits + 20);
  std::ostringstream os;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["series"] = series.summary();
    j["s"] = o.s;
    j["value"] = hi.to_string(o.digits);
    j["verified_digits"] = agree;
    os << j.dump(2) << "\n";
  } else {
    os << "s,value,verified_digits\n" << o.s << "," << hi.to_string(o.digits) << "," << agree << "\n";
  }
  emit(o, os.str());
  return kExitOk;
}

int cmd_hankel(const Options& o) {
  if (o.n < 1) throw hzeta::DomainError("--n must be >= 1");
  auto job = make_job(o);
  auto res = hzeta::hankel_log_det(job.series, job.index, job.shift, o.n, o.digits, job.hankel);
  std::ostringstream os;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = res.n;
    j["sign"] = res.sign;
    j["log10_abs"] = res.log10_abs.to_string(o.digits);
    j["verified_digits"] = res.verified_digits;
    j["precision_bits"] = res.precision_bits;
    j["method"] = hzeta::to_string(res.method);
    j["series"] = res.series;
    j["index"] = res.index;
    j["shift"] = hzeta::to_string(res.shift_mode);
    os << j.dump(2) << "\n";
  } else {
    os << "n,sign,log10_abs,verified_digits,precision_bits,method,series,index,shift\n"
       << res.n << "," << res.sign << "," << res.log10_abs.to_string(o.digits) << "," << res.verified_digits << ","
       << res.precision_bits << "," << hzeta::to_string(res.method) << ",\"" << res.series << "\",\"" << res.index
       << "\"," << hzeta::to_string(res.shift_mode) << "\n";
  }
  emit(o, os.str());
  return kExitOk;
}

int cmd_scan(const Options& o) {
  auto job = make_job(o);
  auto rows = hzeta::run_scan(job);
  if (o.format == "json")
    emit(o, hzeta::scan_json(job, rows, !o.no_timing).dump(2) + "\n");
  else
    emit(o, hzeta::format_scan_csv(job, rows, !o.no_timing));
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.slope) {
      xs.push_back(static_cast<double>(r.result.n));
      ys.push_back(*r.slope);
    }
  write_plot(o.plot, hzeta::svg_plot("log|H_n| / (n^2 log n)", xs, ys, "n", "slope"));
  return kExitOk;
}

int cmd_fit(const Options& o, bool a_given) {
  std::vector<long> ns;
  std::vector<hzeta::BigReal> ys;
  std::optional<long> step;
  if (!o.in.empty()) {
    auto in = open_input(o.in);
    auto parsed = hzeta::parse_scan_csv(in);
    ns = std::move(parsed.n);
    ys = std::move(parsed.log_abs);
    step = parsed.progression_step;
  } else {
    auto job = make_job(o);
    for (auto& r : hzeta::run_scan(job)) {
      ns.push_back(r.result.n);
      ys.push_back(std::move(r.result.log_abs));
    }
    if (job.index.is_progression()) step = job.index.step;
  }
  if (a_given) step = o.a;
  const auto fit = hzeta::fit_scan(ns, ys);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["c1"] = fit.c1;
    j["c2"] = fit.c2;
    j["rms_residual"] = fit.rms_residual;
    j["n_range"] = {fit.n_min, fit.n_max};
    if (step) {
      j["proved_bound"] = -0.5 * static_cast<double>(*step);
      j["proved_bound_holds"] = fit.c1 <= -0.5 * static_cast<double>(*step);
      j["expected"] = -static_cast<double>(*step);
    }
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, hzeta::format_fit(fit, step));
  }
  return kExitOk;
}

int cmd_witness(const Options& o) {
  auto job = make_job(o);
  auto rows = hzeta::run_scan(job);
  std::vector<hzeta::HankelResult> results;
  for (auto& r : rows) results.push_back(std::move(r.result));
  auto table = hzeta::witness_table(results);
  if (o.format == "json")
    emit(o, hzeta::witness_json(table).dump(2) + "\n");
  else
    emit(o, hzeta::format_witness_csv(table));
  std::vector<double> xs, ys;
  for (const auto& w : table) {
    xs.push_back(static_cast<double>(w.n));
    ys.push_back(w.base.to_double());
  }
  write_plot(o.plot, hzeta::svg_plot("growth witness C_n", xs, ys, "n", "C_n"));
  return kExitOk;
}

int cmd_kronecker(const Options& o) {
  if (o.in.empty()) throw hzeta::DomainError("kronecker needs --in <path>");
  hzeta::RationalSequence seq{read_rationals(o.in), o.in};
  const std::size_t usable = seq.size() >= 1 ? (seq.size() - 1) / 2 : 0;
  const std::size_t order = std::min(o.max_order, usable);
  if (order < 1) throw hzeta::DomainError("kronecker: sequence too short (need at least 3 terms)");
  auto rec = hzeta::find_recurrence(seq, order);
  auto scan = hzeta::rationality_scan(seq);
  emit(o, hzeta::kronecker_json(seq, rec, scan).dump(2) + "\n");
  return kExitOk;
}

int cmd_selftest(const Options& o) {
  if (o.inject_fault == "bernoulli") {
    // Wrong B_2 poisons every Euler-Maclaurin correction.
    hzeta::detail::BernoulliCache::instance().corrupt_for_testing(2, mpq_class(1, 5));
  } else if (!o.inject_fault.empty()) {
    throw hzeta::DomainError("unknown fault '" + o.inject_fault + "'");
  }
  std::ostringstream os;
  const bool ok = hzeta::run_selftest(os);
  emit(o, os.str());
  return ok ? kExitOk : 1;
}

void add_job_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--a", o.a, "progression step a");
  cmd->add_option("--b", o.b, "progression offset b");
  cmd->add_option("--sequence", o.sequence, "quadratic:c,d or explicit:<path> (overrides --a/--b)");
  cmd->add_option("--series", o.series, "zeta | periodic:<path> | custom:<path>");
  cmd->add_option("--shift", o.shift, "cross (entries f(n_{i+j})) or sequence (f(n_{i+j-1}))");
  cmd->add_option("--digits", o.digits, "target verified digits");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--max-bits", o.max_bits, "precision ceiling for the verification loop");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel determinants of zeta and Dirichlet-series values"};
  app.require_subcommand(1);
  Options o;

  auto* zeta = app.add_subcommand("zeta", "value of the series at an integer s >= 2");
  zeta->add_option("--s", o.s, "argument s")->required();
  zeta->add_option("--series", o.series, "zeta | periodic:<path> | custom:<path>");
  zeta->add_option("--digits", o.digits, "decimal digits");
  zeta->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  zeta->add_option("--out", o.out, "output path");

  auto* hankel = app.add_subcommand("hankel", "one verified determinant H_n");
  add_job_flags(hankel, o);
  hankel->add_option("--n", o.n, "matrix dimension")->required();

  auto* scan = app.add_subcommand("scan", "determinants for n = 1..nmax");
  add_job_flags(scan, o);
  scan->add_option("--nmax,--n", o.n, "largest n")->required();
  scan->add_option("--jobs", o.jobs, "parallel jobs");
  scan->add_option("--plot", o.plot, "write slope-vs-n SVG");
  scan->add_flag("--no-timing", o.no_timing, "leave the wall_time_ms column empty");

  auto* fit = app.add_subcommand("fit", "fit log|H_n| ~ c1 n^2 log n + c2 n^2 over n >= 5");
  add_job_flags(fit, o);
  fit->add_option("--in", o.in, "scan CSV to fit (otherwise a scan is run)");
  fit->add_option("--nmax,--n", o.n, "largest n when running a scan");
  fit->add_option("--jobs", o.jobs, "parallel jobs");

  auto* witness = app.add_subcommand("witness", "denominator-growth witnesses C_n");
  add_job_flags(witness, o);
  witness->add_option("--nmax,--n", o.n, "largest n")->required();
  witness->add_option("--jobs", o.jobs, "parallel jobs");
  witness->add_option("--plot", o.plot, "write C_n-vs-n SVG");

  auto* kron = app.add_subcommand("kronecker", "recurrence and Hankel-rank report for a rational sequence");
  kron->add_option("--in", o.in, "one rational per line (p/q or integer)")->required();
  kron->add_option("--max-order", o.max_order, "largest recurrence order scanned");
  kron->add_option("--out", o.out, "output path");

  auto* self = app.add_subcommand("selftest", "reduced-scale invariant suite");
  self->add_option("--inject-fault", o.inject_fault, "test hook: corrupt an internal table (bernoulli)");
  self->add_option("--out", o.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (zeta->parsed()) return cmd_zeta(o);
    if (hankel->parsed()) return cmd_hankel(o);
    if (scan->parsed()) return cmd_scan(o);
    if (fit->parsed()) return cmd_fit(o, fit->count("--a") > 0);
    if (witness->parsed()) return cmd_witness(o);
    if (kron->parsed()) return cmd_kronecker(o);
    if (self->parsed()) return cmd_selftest(o);
  } catch (const hzeta::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hzeta::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hzeta::UnverifiableError& e) {
    std::cerr << "precision ceiling: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const hzeta::BudgetExceeded& e) {
    std::cerr << "precision ceiling: " << e.what() << "\n";
    return kExitPrecision;
  }
  return kExitConfig;
}
