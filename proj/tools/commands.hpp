// Subcommand implementations for the sphere_qmc command-line tool. Each
// command writes to the given streams and returns a process exit code, so the
// test suite can drive them without spawning processes.
#ifndef SPHERE_QMC_TOOLS_COMMANDS_HPP
#define SPHERE_QMC_TOOLS_COMMANDS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphere_qmc/sphere_qmc.hpp"

namespace sphere_qmc::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

/// Thrown for unreadable or unwritable files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int exit_code_for(const Error &e) {
  switch (e.kind()) {
    case ErrorKind::invalid_input:
    case ErrorKind::unsupported:
    case ErrorKind::size_limit:
    case ErrorKind::domain:
      return kUsage;
    default:
      return kVerifyFailed;
  }
}

/// Runs a command body and maps failures onto exit codes.
inline int guarded(std::ostream &err, const std::function<int()> &body) {
  try {
    return body();
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------------------
// Point sources: a descriptor or a .csv/.json file.

inline bool looks_like_descriptor(const std::string &s) {
  for (const char *prefix : {"net:", "seq:", "fib:", "rand:"}) {
    if (s.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

inline AnyPointSet load_points(const std::string &source) {
  if (looks_like_descriptor(source)) return generate(source);
  std::ifstream in(source);
  if (!in) throw IoError("cannot open '" + source + "'");
  if (source.size() >= 5 && source.substr(source.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::invalid_input, std::string("json parse: ") + e.what());
    }
    return point_set_from_json(j);
  }
  return read_csv(in);
}

inline SpherePointSet as_sphere(const AnyPointSet &set) {
  if (const auto *sq = std::get_if<SquarePointSet>(&set)) return to_sphere(*sq);
  return std::get<SpherePointSet>(set);
}

inline SquarePointSet as_square(const AnyPointSet &set) {
  if (const auto *sq = std::get_if<SquarePointSet>(&set)) return *sq;
  throw Error(ErrorKind::invalid_input, "this computation needs points of the unit square");
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string descriptor;
  std::string output;  // empty: stdout
  bool sphere = false;
  bool json = false;
  int digits = 17;
};

inline int cmd_generate(const GenerateOptions &opt, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto square = generate(opt.descriptor);
    std::ostringstream buf;
    if (opt.sphere) {
      const auto sphere = to_sphere(square);
      if (opt.json) {
        buf << to_json(sphere).dump() << '\n';
      } else {
        write_csv(buf, sphere, opt.digits);
      }
    } else if (opt.json) {
      buf << to_json(square).dump() << '\n';
    } else {
      write_csv(buf, square, opt.digits);
    }
    if (opt.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(opt.output, std::ios::binary);
      if (!f) throw IoError("cannot write '" + opt.output + "'");
      f << buf.str();
      if (!f) throw IoError("write failed for '" + opt.output + "'");
    }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// discrepancy

struct DiscrepancyOptions {
  std::string source;
  std::string kind = "empirical-cap";
  HeightSweep sweep = HeightSweep::both_limits;
  std::size_t exact_limit = kExactCapDefaultLimit;
  bool json = false;
  int digits = 17;
};

inline DiscrepancyReport compute_report(const DiscrepancyOptions &opt, const AnyPointSet &set) {
  if (opt.kind == "L2-cap") {
    const auto z = as_sphere(set);
    DiscrepancyReport r;
    r.kind = ReportKind::l2_cap;
    r.value = l2_cap_discrepancy(z.points());
    r.n = z.size();
    r.provenance = z.provenance();
    r.params["sum_of_distances"] = sum_of_distances(z.points());
    return r;
  }
  if (opt.kind == "empirical-cap") return empirical_cap_discrepancy(as_sphere(set), opt.sweep);
  if (opt.kind == "exact-cap") return exact_cap_discrepancy(as_sphere(set), opt.exact_limit);
  if (opt.kind == "isotropic") return isotropic_report(as_square(set));
  throw Error(ErrorKind::invalid_input, "unknown discrepancy kind '" + opt.kind + "'");
}

inline int cmd_discrepancy(const DiscrepancyOptions &opt, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto set = load_points(opt.source);
    const auto report = compute_report(opt, set);
    if (opt.json) {
      out << to_json(report).dump() << '\n';
    } else {
      out << to_string(report.kind) << ',' << report.n << ',' << format_real(report.value, opt.digits)
          << '\n';
    }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// table

struct TableRow {
  int m = 0;
  std::uint64_t n = 0;
  double d_tilde = 0.0;
  double ratio_sqrt = 0.0;
  double ratio_log = 0.0;
  double bound = 0.0;
};

enum class TableKind { fibonacci, net };

/// D~ of the spherical point set, centres = the set, and its normalisations
/// D~ N^(3/4) / sqrt(log N) and D~ N^(3/4) / log N (natural log).
inline TableRow table_row(TableKind kind, int m, int base, HeightSweep sweep) {
  const auto square = kind == TableKind::fibonacci ? fibonacci_lattice(m) : digital_net(base, m);
  const auto sphere = to_sphere(square);
  TableRow row;
  row.m = m;
  row.n = sphere.size();
  row.d_tilde = empirical_cap_discrepancy(sphere, sweep).value;
  const double n = static_cast<double>(row.n);
  const double scale = std::pow(n, 0.75);
  const double ln = std::log(n);
  row.ratio_sqrt = row.d_tilde * scale / std::sqrt(ln);
  row.ratio_log = row.d_tilde * scale / ln;
  row.bound = cap_bound_from_iso(kind == TableKind::fibonacci ? iso_bound_fibonacci(m)
                                                              : iso_bound_net(base, m));
  return row;
}

struct TableOptions {
  TableKind kind = TableKind::fibonacci;
  int from = 17;
  int to = 20;
  int base = 2;
  HeightSweep sweep = HeightSweep::open_caps;
  bool json = false;
  int digits = 17;
};

inline int cmd_table(const TableOptions &opt, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    detail::require(opt.from <= opt.to, ErrorKind::invalid_input, "table: empty m-range");
    if (!opt.json) out << "m,n,d_tilde,ratio_sqrt,ratio_log,bound\n";
    nlohmann::json rows = nlohmann::json::array();
    bool all_ok = true;
    for (int m = opt.from; m <= opt.to; ++m) {
      try {
        const auto r = table_row(opt.kind, m, opt.base, opt.sweep);
        if (r.d_tilde > r.bound) all_ok = false;
        if (opt.json) {
          rows.push_back({{"m", r.m}, {"n", r.n}, {"d_tilde", r.d_tilde}, {"ratio_sqrt", r.ratio_sqrt},
                          {"ratio_log", r.ratio_log}, {"bound", r.bound}});
        } else {
          out << r.m << ',' << r.n << ',' << format_real(r.d_tilde, opt.digits) << ','
              << format_real(r.ratio_sqrt, opt.digits) << ',' << format_real(r.ratio_log, opt.digits)
              << ',' << format_real(r.bound, opt.digits) << '\n';
        }
        out.flush();
      } catch (const Error &e) {
        all_ok = false;
        err << "m=" << m << ": " << e.what() << '\n';
        if (opt.json) rows.push_back({{"m", m}, {"error", e.what()}});
      }
    }
    if (opt.json) out << rows.dump() << '\n';
    return all_ok ? static_cast<int>(kOk) : static_cast<int>(kVerifyFailed);
  });
}

// ---------------------------------------------------------------------------
// random-experiment

struct RandomExperimentOptions {
  std::size_t n = 64;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  bool empirical = true;
  int digits = 17;
};

struct SampleSummary {
  double mean = 0.0;
  double standard_error = 0.0;
};

inline SampleSummary summarize(const std::vector<double> &v) {
  const double n = static_cast<double>(v.size());
  const double mean = pairwise_sum(v) / n;
  if (v.size() < 2) return {mean, 0.0};
  CompensatedSum sq;
  for (double x : v) sq.add((x - mean) * (x - mean));
  return {mean, std::sqrt(sq.value() / (n - 1.0) / n)};
}

struct RandomExperimentResult {
  SampleSummary l2_squared;
  SampleSummary scaled_l2;  // 4 D_L2^2 N
  std::optional<SampleSummary> d_tilde;
  std::optional<SampleSummary> sqrt_n_d_tilde;
  bool checked = false;  // the 4/3 check needs at least 30 replications
  bool passed = true;
};

/// Replication r uses random_square_points(n, SplitMix64::derive(seed, r)).
inline RandomExperimentResult random_experiment(const RandomExperimentOptions &opt) {
  detail::require(opt.n >= 1 && opt.reps >= 1, ErrorKind::invalid_input,
                  "random-experiment: n and reps must be >= 1");
  std::vector<double> l2(opt.reps);
  std::vector<double> scaled(opt.reps);
  std::vector<double> dt(opt.empirical ? opt.reps : 0);
  std::vector<double> sdt(opt.empirical ? opt.reps : 0);
  const double nn = static_cast<double>(opt.n);
  for (std::size_t r = 0; r < opt.reps; ++r) {
    const auto z = to_sphere(random_square_points(opt.n, SplitMix64::derive(opt.seed, r)));
    const double d = l2_cap_discrepancy(z.points());
    l2[r] = d * d;
    scaled[r] = 4.0 * d * d * nn;
    if (opt.empirical) {
      dt[r] = empirical_cap_discrepancy(z).value;
      sdt[r] = std::sqrt(nn) * dt[r];
    }
  }
  RandomExperimentResult res;
  res.l2_squared = summarize(l2);
  res.scaled_l2 = summarize(scaled);
  if (opt.empirical) {
    res.d_tilde = summarize(dt);
    res.sqrt_n_d_tilde = summarize(sdt);
  }
  res.checked = opt.reps >= 30;
  if (res.checked) {
    res.passed = std::abs(res.scaled_l2.mean - 4.0 / 3.0) <= 4.0 * res.scaled_l2.standard_error;
  }
  return res;
}

inline int cmd_random_experiment(const RandomExperimentOptions &opt, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto res = random_experiment(opt);
    const auto row = [&](const char *name, const SampleSummary &s) {
      out << name << ',' << format_real(s.mean, opt.digits) << ','
          << format_real(s.standard_error, opt.digits) << '\n';
    };
    out << "quantity,mean,standard_error\n";
    row("l2_squared", res.l2_squared);
    row("4_l2_squared_n", res.scaled_l2);
    if (res.d_tilde) row("d_tilde", *res.d_tilde);
    if (res.sqrt_n_d_tilde) row("sqrt_n_d_tilde", *res.sqrt_n_d_tilde);
    if (!res.checked) {
      out << "# check skipped: fewer than 30 replications\n";
      return static_cast<int>(kOk);
    }
    out << "# check mean(4 D_L2^2 N) within 4/3 +- 4 SE: " << (res.passed ? "pass" : "FAIL") << '\n';
    return res.passed ? static_cast<int>(kOk) : static_cast<int>(kVerifyFailed);
  });
}

// ---------------------------------------------------------------------------
// trace-curve

struct TraceOptions {
  double u = 0.0;
  double v = 0.25;
  double t = 0.5;
  std::size_t resolution = 400;
  int digits = 17;
};

inline int cmd_trace_curve(const TraceOptions &opt, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto trace = trace_level_curve({opt.u, opt.v, opt.t}, opt.resolution);
    out << "# topology=" << to_string(trace.topology) << " transversal_pairs=" << trace.transversal_pairs
        << " tangential_pairs=" << trace.tangential_pairs << " flat=" << (trace.flat ? 1 : 0) << '\n';
    out << "segment,alpha,tau,kappa\n";
    for (std::size_t s = 0; s < trace.segments.size(); ++s) {
      for (const auto &p : trace.segments[s]) {
        out << s << ',' << format_real(p.alpha, opt.digits) << ',' << format_real(p.tau, opt.digits) << ','
            << format_real(p.kappa, opt.digits) << '\n';
      }
    }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCheck {
  std::string name;
  std::function<bool()> run;
};

/// Cross-module invariant checks. `full` adds larger nets and the N = 200
/// exact-cap oracle.
inline std::vector<VerifyCheck> verify_checks(bool full) {
  std::vector<VerifyCheck> checks;
  const int max_m = full ? 10 : 6;
  checks.push_back({"net-oracle b in {2,3,5}, m <= " + std::to_string(max_m), [max_m] {
                      for (int b : {2, 3, 5}) {
                        for (int m = 0; m <= max_m; ++m) {
                          if (b == 5 && m > (max_m == 10 ? 8 : 5)) continue;
                          if (!is_net(digital_net(b, m).points(), b, m)) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"sequence blocks b=2, 2^10 prefix", [] {
                      const auto seq = digital_sequence_prefix(2, 1024);
                      for (int m = 0; m <= 10; ++m) {
                        const std::size_t len = std::size_t{1} << m;
                        for (std::size_t k = 0; (k + 1) * len <= seq.size(); ++k) {
                          if (!is_net(seq.points().subspan(k * len, len), 2, m)) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"stolarsky identity, 10 random sets N=100", [] {
                      for (std::uint64_t s = 0; s < 10; ++s) {
                        const auto z = to_sphere(random_square_points(100, s));
                        const double d = l2_cap_discrepancy(z.points());
                        if (std::abs(4.0 * d * d + sum_of_distances(z.points()) - 4.0 / 3.0) > 1e-12) {
                          return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"fibonacci minimum distance, odd m <= 21", [] {
                      for (int m = 7; m <= 21; m += 2) {
                        const double f = static_cast<double>(fibonacci_number(m));
                        if (std::abs(min_distance(fibonacci_lattice(m).points()) - 1.0 / std::sqrt(f)) > 1e-12) {
                          return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"sandwich empirical <= exact <= 11 J bound", [full] {
                      std::vector<SquarePointSet> sets;
                      for (int m = 1; m <= (full ? 6 : 5); ++m) sets.push_back(digital_net(2, m));
                      for (int m = 3; m <= (full ? 11 : 9); ++m) sets.push_back(fibonacci_lattice(m));
                      for (const auto &sq : sets) {
                        const auto z = to_sphere(sq);
                        const double emp = empirical_cap_discrepancy(z).value;
                        const double ex = exact_cap_discrepancy(z).value;
                        const double bound = cap_bound_from_iso(isotropic_upper_bound(sq.provenance()));
                        if (!(emp <= ex + 1e-12 && ex <= bound)) return false;
                        if (ex < l2_cap_discrepancy(z.points()) / std::numbers::sqrt2 - 1e-12) return false;
                      }
                      return true;
                    }});
  checks.push_back({"curvature cubic discriminant grid", [full] {
                      const int g = full ? 200 : 50;
                      for (int i = 0; i < g; ++i) {
                        for (int j = 0; j < g; ++j) {
                          const double v = 0.005 + 0.99 * i / (g - 1);
                          const double tau = 0.005 + 0.99 * j / (g - 1);
                          if (!(curvature_cubic(v, tau).discriminant() > 0.0)) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"critical height zero of the curvature", [] {
                      for (double v : {0.1, 0.2, 0.3, 0.4}) {
                        if (std::abs(critical_curve_curvature(v, critical_tau(v))) > 1e-10) return false;
                      }
                      return true;
                    }});
  checks.push_back({"one transversal curvature pair inside the critical band", [] {
                      for (double v : {0.1, 0.25, 0.4}) {
                        for (double s : {-0.9, 0.0, 0.9}) {
                          const auto tr = trace_level_curve({0.3, v, s * (1.0 - 2.0 * v)}, 400);
                          if (tr.transversal_pairs != 1) return false;
                        }
                      }
                      return true;
                    }});
  if (full) {
    checks.push_back({"exact-cap oracle at N = 200", [] {
                        const auto z = to_sphere(random_square_points(200, 7));
                        const auto ex = exact_cap_discrepancy(z);
                        const auto emp = empirical_cap_discrepancy(z);
                        return emp.value <= ex.value + 1e-12 &&
                               std::abs(local_discrepancy(z.points(), *ex.witness, kExactCapTolerance) - ex.value) <= 1e-12;
                      }});
  }
  return checks;
}

inline int cmd_verify(bool full, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    bool ok = true;
    for (const auto &c : verify_checks(full)) {
      bool passed = false;
      try {
        passed = c.run();
      } catch (const Error &e) {
        err << c.name << ": " << e.what() << '\n';
      }
      ok = ok && passed;
      out << (passed ? "PASS  " : "FAIL  ") << c.name << '\n';
    }
    out << (ok ? "all checks passed" : "some checks failed") << '\n';
    return ok ? static_cast<int>(kOk) : static_cast<int>(kVerifyFailed);
  });
}

}  // namespace sphere_qmc::cli

#endif  // SPHERE_QMC_TOOLS_COMMANDS_HPP
