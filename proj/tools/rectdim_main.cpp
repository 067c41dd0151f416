#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rectdim.h"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string json_array(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const std::string& tok : split(s, ',')) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(tok, &pos);
    } catch (...) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + tok + "'");
    }
    if (pos != tok.size())
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const std::string& tok : split(s, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (...) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + tok + "'");
    }
  }
  return out;
}

// per-axis digit lists: "full:0,2" means axis 1 full, axis 2 digits {0,2}
struct AxesSpec {
  std::vector<int> bases;
  std::vector<int> digits_flat;
  std::vector<int> digit_counts;
};

AxesSpec parse_axes(const std::string& bases_str, const std::string& digits_str) {
  AxesSpec axes;
  axes.bases = parse_ints(bases_str, "--bases");
  if (axes.bases.empty()) throw CLI::ValidationError("--bases: at least one base required");
  std::vector<std::string> digit_parts;
  if (digits_str.empty()) {
    digit_parts.assign(axes.bases.size(), "full");
  } else {
    digit_parts = split(digits_str, ':');
  }
  if (digit_parts.size() != axes.bases.size())
    throw CLI::ValidationError("--digits: one entry per axis required");
  for (const std::string& part : digit_parts) {
    if (part == "full" || part.empty()) {
      axes.digit_counts.push_back(0);
      continue;
    }
    const auto ds = parse_ints(part, "--digits");
    axes.digit_counts.push_back(static_cast<int>(ds.size()));
    axes.digits_flat.insert(axes.digits_flat.end(), ds.begin(), ds.end());
  }
  return axes;
}

// "2/1:1/1" -> one p/q ratio per axis
void parse_et(const std::string& s, std::size_t naxes, std::vector<long long>& p,
              std::vector<long long>& q) {
  for (const std::string& part : split(s, ':')) {
    const auto pq = split(part, '/');
    try {
      p.push_back(std::stoll(pq.at(0)));
      q.push_back(pq.size() > 1 ? std::stoll(pq.at(1)) : 1);
    } catch (...) {
      throw CLI::ValidationError("--et: cannot parse '" + part + "'");
    }
  }
  if (p.size() != naxes) throw CLI::ValidationError("--et: one p/q ratio per axis required");
}

struct SweepSpec {
  std::string param;
  double lo = 0, hi = 0;
  int steps = 0;
  std::vector<double> grid() const {
    std::vector<double> g;
    for (int i = 0; i < steps; ++i)
      g.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return g;
  }
};

SweepSpec parse_sweep(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos)
    throw CLI::ValidationError("--sweep: expected param=lo:hi:steps");
  SweepSpec sw;
  sw.param = s.substr(0, eq);
  const auto parts = split(s.substr(eq + 1), ':');
  if (parts.size() != 3) throw CLI::ValidationError("--sweep: expected param=lo:hi:steps");
  try {
    sw.lo = std::stod(parts[0]);
    sw.hi = std::stod(parts[1]);
    sw.steps = std::stoi(parts[2]);
  } catch (...) {
    throw CLI::ValidationError("--sweep: cannot parse grid '" + s + "'");
  }
  if (sw.steps < 1) throw CLI::ValidationError("--sweep: empty grid");
  if (sw.hi < sw.lo) throw CLI::ValidationError("--sweep: hi must be >= lo");
  return sw;
}

struct BallSpec {
  std::vector<double> center;
  double radius = 0.5;
  bool given = false;
};

BallSpec parse_ball(const std::string& s) {
  BallSpec b;
  if (s.empty()) return b;
  b.given = true;
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw CLI::ValidationError("--ball: expected c1,c2,...:r");
  b.center = parse_doubles(parts[0], "--ball");
  try {
    b.radius = std::stod(parts[1]);
  } catch (...) {
    throw CLI::ValidationError("--ball: cannot parse radius");
  }
  return b;
}

const char* status_name(rectdim_status st) {
  switch (st) {
    case RECTDIM_OK:
      return "ok";
    case RECTDIM_INVALID_ARGUMENT:
      return "invalid_argument";
    case RECTDIM_BUDGET_EXCEEDED:
      return "budget_exceeded";
    case RECTDIM_VERIFICATION_FAILED:
      return "verification_failed";
    default:
      return "internal_error";
  }
}

int exit_for(rectdim_status st) {
  switch (st) {
    case RECTDIM_OK:
      return 0;
    case RECTDIM_INVALID_ARGUMENT:
      return 2;
    case RECTDIM_BUDGET_EXCEEDED:
      return 4;
    case RECTDIM_VERIFICATION_FAILED:
      return 3;
    default:
      return 1;
  }
}

struct Run {
  std::string command;
  std::string output = "-";
  std::string format = "json";
  std::uint64_t seed = 1;
  int threads = 1;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  std::string header() const {
    const auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    const std::time_t now = std::time(nullptr);
    char stamp[40];
    std::tm tmv{};
    gmtime_r(&now, &tmv);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tmv);
    std::string h = "{\"header\":{\"timestamp\":\"";
    h += stamp;
    h += "\",\"wall_time_s\":" + fmt(wall.count()) + "},\n";
    return h;
  }

  int emit_json(const std::string& inputs, const std::string& outputs) const {
    if (format == "csv")
      throw CLI::ValidationError("--format csv is only available for sweeps");
    std::string doc = header();
    doc += "\"schema_version\":1,\"command\":\"" + command + "\",\"version\":\"" +
           rectdim_version() + "\",\"seed\":" + std::to_string(seed) +
           ",\"threads\":" + std::to_string(threads) + ",\"inputs\":{" + inputs +
           "},\"outputs\":{" + outputs + "}}\n";
    return write(doc);
  }

  int emit_csv(const std::string& header_row, const std::vector<std::string>& rows) const {
    std::string doc = header_row + "\n";
    for (const auto& r : rows) doc += r + "\n";
    return write(doc);
  }

  int emit_error(rectdim_status st, const std::string& message) const {
    std::string doc = header();
    doc += "\"schema_version\":1,\"command\":\"" + command + "\",\"version\":\"" +
           rectdim_version() + "\",\"error\":{\"code\":" + std::to_string(exit_for(st)) +
           ",\"status\":\"" + status_name(st) + "\",\"message\":\"" +
           json_escape(message) + "\"}}\n";
    write(doc);
    std::cerr << command << ": " << message << "\n";
    return exit_for(st);
  }

  int write(const std::string& doc) const {
    if (output == "-") {
      std::cout << doc;
      return 0;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << output << "\n";
      return 1;
    }
    f << doc;
    return 0;
  }
};

// throws on failure with the library's message attached
struct ApiError {
  rectdim_status st;
  std::string message;
};

void check(rectdim_status st) {
  if (st != RECTDIM_OK) throw ApiError{st, rectdim_last_error()};
}

std::string dim_table_json(const rectdim_dim_report* rep, bool with_partition) {
  std::string out = "[";
  const int rows = rectdim_dim_report_rows(rep);
  for (int i = 0; i < rows; ++i) {
    double A = 0, value = 0;
    check(rectdim_dim_report_row(rep, i, &A, &value));
    if (i) out += ',';
    out += "{\"A\":" + fmt(A) + ",\"value\":" + fmt(value);
    if (with_partition) {
      int n1 = 0, n2 = 0, n3 = 0;
      check(rectdim_dim_report_row_partition_sizes(rep, i, &n1, &n2, &n3));
      std::vector<int> k1(n1), k2(n2), k3(n3);
      check(rectdim_dim_report_row_partition(rep, i, k1.data(), k2.data(), k3.data()));
      out += ",\"k1\":" + json_array(k1) + ",\"k2\":" + json_array(k2) +
             ",\"k3\":" + json_array(k3);
    }
    out += '}';
  }
  return out + "]";
}

std::string solver_outputs_json(const rectdim_solver_report* rep) {
  const int d = rectdim_solver_report_dims(rep);
  std::vector<double> deltas(d);
  double kappa = 0;
  check(rectdim_solver_report_space(rep, deltas.data(), &kappa));
  std::string out = "\"dim\":" + fmt(rectdim_solver_report_value(rep));
  out += ",\"closed_form\":" + fmt(rectdim_solver_report_closed_form(rep));
  out += ",\"argmin_i\":" + std::to_string(rectdim_solver_report_argmin_i(rep));
  out += std::string(",\"full_measure\":") +
         (rectdim_solver_report_full_measure(rep) ? "true" : "false");
  out += std::string(",\"full_hs_measure\":") +
         (rectdim_solver_report_full_hs_measure(rep) ? "true" : "false");
  out += ",\"space\":{\"deltas\":" + json_array(deltas) + ",\"kappa\":" + fmt(kappa) + "}";
  if (!rectdim_solver_report_full_measure(rep)) {
    std::vector<double> a(d), t(d);
    check(rectdim_solver_report_profile(rep, a.data(), t.data()));
    out += ",\"profile\":{\"a\":" + json_array(a) + ",\"t\":" + json_array(t) + "}";
    out += ",\"table\":" + dim_table_json(rectdim_solver_report_table(rep), false);
  }
  return out;
}

// ---------- dim-core ----------

struct DimCoreArgs {
  std::string deltas, a, t;
  double kappa = 0;
  std::string tie_policy = "default";
  bool hat = false;
  std::string sweep;
};

int run_dim_core(Run& run, const DimCoreArgs& args) {
  const auto deltas = parse_doubles(args.deltas, "--deltas");
  auto a = parse_doubles(args.a, "--a");
  auto t = parse_doubles(args.t, "--t");
  int policy = 0;
  if (args.tie_policy == "strict-k1")
    policy = 1;
  else if (args.tie_policy == "merge-equal")
    policy = 2;
  else if (args.tie_policy != "default")
    throw CLI::ValidationError("--tie-policy: default, strict-k1 or merge-equal");
  const int d = static_cast<int>(deltas.size());

  if (!args.sweep.empty()) {
    const SweepSpec sw = parse_sweep(args.sweep);
    if (sw.param != "t") throw CLI::ValidationError("--sweep: only t is sweepable");
    if (d != 1) throw CLI::ValidationError("--sweep t requires d = 1");
    if (run.format != "csv") throw CLI::ValidationError("sweeps emit csv; use --format csv");
    std::vector<std::string> rows;
    for (double tv : sw.grid()) {
      rectdim_dim_report* rep = nullptr;
      const double tvv[1] = {tv};
      check(rectdim_compute_s(d, deltas.data(), args.kappa, a.data(), tvv, policy,
                              args.hat ? 1 : 0, &rep));
      rows.push_back(fmt(tv) + "," + fmt(rectdim_dim_report_value(rep)) + "," +
                     fmt(rectdim_dim_report_argmin(rep)));
      rectdim_dim_report_free(rep);
    }
    return run.emit_csv("t,dim,argmin_A", rows);
  }

  rectdim_dim_report* rep = nullptr;
  check(rectdim_compute_s(d, deltas.data(), args.kappa, a.data(), t.data(), policy,
                          args.hat ? 1 : 0, &rep));
  std::string inputs = "\"deltas\":" + json_array(deltas) + ",\"kappa\":" + fmt(args.kappa) +
                       ",\"a\":" + json_array(a) + ",\"t\":" + json_array(t) +
                       ",\"tie_policy\":\"" + args.tie_policy + "\",\"hat\":" +
                       (args.hat ? "true" : "false");
  std::string outputs = "\"dim\":" + fmt(rectdim_dim_report_value(rep)) +
                        ",\"argmin_A\":" + fmt(rectdim_dim_report_argmin(rep)) +
                        ",\"table\":" + dim_table_json(rep, true);
  rectdim_dim_report_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- dim-simultaneous ----------

int run_dim_simultaneous(Run& run, const std::string& tau_str, const std::string& sweep) {
  if (!sweep.empty()) {
    const SweepSpec sw = parse_sweep(sweep);
    if (sw.param != "tau") throw CLI::ValidationError("--sweep: only tau is sweepable");
    if (run.format != "csv") throw CLI::ValidationError("sweeps emit csv; use --format csv");
    std::vector<std::string> rows;
    for (double tv : sw.grid()) {
      rectdim_solver_report* rep = nullptr;
      check(rectdim_simultaneous_dim(1, &tv, &rep));
      rows.push_back(fmt(tv) + "," + fmt(rectdim_solver_report_value(rep)) + "," +
                     std::to_string(rectdim_solver_report_full_measure(rep)));
      rectdim_solver_report_free(rep);
    }
    return run.emit_csv("tau,dim,full_measure", rows);
  }
  const auto tau = parse_doubles(tau_str, "--tau");
  rectdim_solver_report* rep = nullptr;
  check(rectdim_simultaneous_dim(static_cast<int>(tau.size()), tau.data(), &rep));
  const std::string inputs = "\"tau\":" + json_array(tau);
  const std::string outputs = solver_outputs_json(rep);
  rectdim_solver_report_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- dim-linear ----------

int run_dim_linear(Run& run, int m, int n, const std::string& lambda_str) {
  const auto lambda = parse_doubles(lambda_str, "--lambda");
  if (m == 0) m = static_cast<int>(lambda.size());
  rectdim_solver_report* rep = nullptr;
  check(rectdim_linear_forms_dim(m, n, lambda.data(), &rep));
  const std::string inputs =
      "\"m\":" + std::to_string(m) + ",\"n\":" + std::to_string(n) +
      ",\"lambda\":" + json_array(lambda);
  const std::string outputs = solver_outputs_json(rep);
  rectdim_solver_report_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- dim-shrink ----------

struct ShrinkArgs {
  std::string bases, digits, t;
  std::string sweep;
};

int run_dim_shrink(Run& run, const ShrinkArgs& args) {
  const AxesSpec axes = parse_axes(args.bases, args.digits);
  const int d = static_cast<int>(axes.bases.size());

  if (!args.sweep.empty()) {
    const SweepSpec sw = parse_sweep(args.sweep);
    if (sw.param != "t") throw CLI::ValidationError("--sweep: only t is sweepable");
    if (d != 1) throw CLI::ValidationError("--sweep t requires one axis");
    if (run.format != "csv") throw CLI::ValidationError("sweeps emit csv; use --format csv");
    std::vector<std::string> rows;
    for (double tv : sw.grid()) {
      rectdim_solver_report* rep = nullptr;
      check(rectdim_shrinking_dim(d, axes.bases.data(), axes.digits_flat.data(),
                                  axes.digit_counts.data(), &tv, &rep));
      rows.push_back(fmt(tv) + "," + fmt(rectdim_solver_report_value(rep)) + "," +
                     std::to_string(rectdim_solver_report_full_measure(rep)));
      rectdim_solver_report_free(rep);
    }
    return run.emit_csv("t,dim,full_measure", rows);
  }

  const auto t = parse_doubles(args.t, "--t");
  if (static_cast<int>(t.size()) != d)
    throw CLI::ValidationError("--t: one exponent per axis required");
  rectdim_solver_report* rep = nullptr;
  check(rectdim_shrinking_dim(d, axes.bases.data(), axes.digits_flat.data(),
                              axes.digit_counts.data(), t.data(), &rep));
  std::string inputs = "\"bases\":" + json_array(axes.bases) + ",\"digits\":\"" +
                       json_escape(args.digits.empty() ? "full" : args.digits) +
                       "\",\"t\":" + json_array(t);
  const std::string outputs = solver_outputs_json(rep);
  rectdim_solver_report_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- dim-mult ----------

struct MultArgs {
  double log_a = 0, log_b = 0, delta1 = 1, delta2 = 1;
  int base_a = 0, base_b = 0;
  std::string digits_a, digits_b;
  double t = -1, t1 = -1, t2 = -1;
  bool t_set = false, t1_set = false, t2_set = false;
  std::string sweep;
};

void apply_base_sugar(int base, const std::string& digits, double& log_ab, double& delta,
                      const char* what) {
  if (base == 0) return;
  if (base < 2) throw CLI::ValidationError(std::string(what) + ": base must be >= 2");
  const auto ds = parse_ints(digits, what);
  const int count = ds.empty() ? base : static_cast<int>(ds.size());
  log_ab = std::log(static_cast<double>(base));
  delta = std::log(static_cast<double>(count)) / std::log(static_cast<double>(base));
}

int run_dim_mult(Run& run, MultArgs args) {
  apply_base_sugar(args.base_a, args.digits_a, args.log_a, args.delta1, "--digits-a");
  apply_base_sugar(args.base_b, args.digits_b, args.log_b, args.delta2, "--digits-b");

  if (!args.sweep.empty()) {
    const SweepSpec sw = parse_sweep(args.sweep);
    if (sw.param != "t2") throw CLI::ValidationError("--sweep: only t2 is sweepable");
    if (!args.t_set) throw CLI::ValidationError("--sweep t2 requires --t");
    if (sw.lo < 0 || sw.hi > args.t)
      throw CLI::ValidationError("--sweep: t2 grid must lie inside [0, t]");
    if (run.format != "csv") throw CLI::ValidationError("sweeps emit csv; use --format csv");
    std::vector<std::string> rows;
    for (double t2 : sw.grid()) {
      rectdim_mult_pair_report* rep = nullptr;
      check(rectdim_mult_pair(args.log_a, args.delta1, args.log_b, args.delta2,
                              args.t - t2, t2, &rep));
      rows.push_back(fmt(t2) + "," + fmt(rectdim_mult_pair_value(rep)) + "," +
                     std::to_string(rectdim_mult_pair_case(rep)));
      rectdim_mult_pair_free(rep);
    }
    return run.emit_csv("t2,dim,case", rows);
  }

  std::string inputs = "\"log_a\":" + fmt(args.log_a) + ",\"delta1\":" + fmt(args.delta1) +
                       ",\"log_b\":" + fmt(args.log_b) + ",\"delta2\":" + fmt(args.delta2);

  if (args.t1_set || args.t2_set) {
    if (!(args.t1_set && args.t2_set))
      throw CLI::ValidationError("--t1 and --t2 must be given together");
    if (args.t_set) throw CLI::ValidationError("--t conflicts with --t1/--t2");
    rectdim_mult_pair_report* rep = nullptr;
    check(rectdim_mult_pair(args.log_a, args.delta1, args.log_b, args.delta2, args.t1,
                            args.t2, &rep));
    inputs += ",\"t1\":" + fmt(args.t1) + ",\"t2\":" + fmt(args.t2);
    std::string outputs = "\"dim\":" + fmt(rectdim_mult_pair_value(rep)) +
                          ",\"closed_form\":" + fmt(rectdim_mult_pair_closed_form(rep)) +
                          ",\"case\":" + std::to_string(rectdim_mult_pair_case(rep)) +
                          ",\"table\":" + dim_table_json(rectdim_mult_pair_table(rep), false);
    rectdim_mult_pair_free(rep);
    return run.emit_json(inputs, outputs);
  }

  if (!args.t_set) throw CLI::ValidationError("--t (or --t1/--t2) is required");
  rectdim_mult_report* rep = nullptr;
  check(rectdim_mult(args.log_a, args.delta1, args.log_b, args.delta2, args.t, run.threads,
                     &rep));
  inputs += ",\"t\":" + fmt(args.t);
  std::string outputs = "\"dim\":" + fmt(rectdim_mult_value(rep));
  outputs += std::string(",\"regime\":\"") +
             (rectdim_mult_formula_fails(rep) ? "formula_fails" : "formula_holds") + "\"";
  outputs += ",\"factor_formula\":" + fmt(rectdim_mult_factor_formula(rep));
  outputs += ",\"covering_upper\":" + fmt(rectdim_mult_covering_upper(rep));
  outputs += ",\"slicing_lower\":" + fmt(rectdim_mult_slicing_lower(rep));
  outputs += std::string(",\"swapped\":") + (rectdim_mult_swapped(rep) ? "true" : "false");
  outputs += std::string(",\"full_measure\":") +
             (rectdim_mult_full_measure(rep) ? "true" : "false");
  double v = 0;
  if (rectdim_mult_that_t2(rep, &v)) outputs += ",\"that_t2\":" + fmt(v);
  if (rectdim_mult_crossing_case_i(rep, &v)) outputs += ",\"crossing_case_i\":" + fmt(v);
  if (rectdim_mult_crossing_displayed(rep, &v))
    outputs += ",\"crossing_displayed\":" + fmt(v);
  rectdim_mult_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- orbit ----------

struct OrbitArgs {
  std::string samples_file;
  std::string rho = "inv";
  double cluster_eps = 0.05;
};

int run_orbit(Run& run, const OrbitArgs& args) {
  std::ifstream f(args.samples_file);
  if (!f) throw CLI::ValidationError("--samples-file: cannot open " + args.samples_file);
  std::vector<double> n_values, psi_flat, rho_log;
  int families = -1;
  std::string line;
  while (std::getline(f, line)) {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream iss(line);
    std::vector<double> vals;
    double v;
    while (iss >> v) vals.push_back(v);
    if (vals.empty() || (!line.empty() && line[0] == '#')) continue;
    if (vals.size() < 2)
      throw CLI::ValidationError("--samples-file: each line needs n and psi values");
    if (families < 0) families = static_cast<int>(vals.size()) - 1;
    if (static_cast<int>(vals.size()) - 1 != families)
      throw CLI::ValidationError("--samples-file: inconsistent column count");
    n_values.push_back(vals[0]);
    psi_flat.insert(psi_flat.end(), vals.begin() + 1, vals.end());
    if (args.rho == "inv")
      rho_log.push_back(-std::log(vals[0]));
    else if (args.rho == "exp")
      rho_log.push_back(-vals[0]);
    else
      throw CLI::ValidationError("--rho: inv or exp");
  }
  if (n_values.empty()) throw CLI::ValidationError("--samples-file: no samples");

  rectdim_orbit_report* rep = nullptr;
  check(rectdim_orbit(static_cast<int>(n_values.size()), families, n_values.data(),
                      psi_flat.data(), rho_log.data(), args.cluster_eps, &rep));
  std::string inputs = "\"samples_file\":\"" + json_escape(args.samples_file) +
                       "\",\"rho\":\"" + args.rho +
                       "\",\"cluster_eps\":" + fmt(args.cluster_eps);
  std::string outputs = "\"samples\":" + std::to_string(rectdim_orbit_samples(rep)) +
                        ",\"families\":" + std::to_string(rectdim_orbit_families(rep)) +
                        ",\"liminf_t\":" + fmt(rectdim_orbit_liminf_t(rep));
  outputs += ",\"orbit\":[";
  std::vector<double> row(families);
  for (int i = 0; i < rectdim_orbit_samples(rep); ++i) {
    check(rectdim_orbit_row(rep, i, row.data()));
    if (i) outputs += ',';
    outputs += json_array(row);
  }
  outputs += "],\"clusters\":[";
  for (int i = 0; i < rectdim_orbit_clusters(rep); ++i) {
    check(rectdim_orbit_cluster(rep, i, row.data()));
    if (i) outputs += ',';
    outputs += json_array(row);
  }
  outputs += "]";
  rectdim_orbit_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- cover-critical ----------

struct CoverArgs {
  std::string deltas, a, t, levels;
  double kappa = 0;
  double s_lo = 0, s_hi = -1, tol = 1e-6;
};

int run_cover_critical(Run& run, const CoverArgs& args) {
  const auto deltas = parse_doubles(args.deltas, "--deltas");
  const auto a = parse_doubles(args.a, "--a");
  const auto t = parse_doubles(args.t, "--t");
  const auto levels = parse_doubles(args.levels, "--levels");
  if (levels.empty()) throw CLI::ValidationError("--levels: at least one radius required");
  double s_hi = args.s_hi;
  if (s_hi < 0) {
    s_hi = 0;
    for (double dv : deltas) s_hi += dv;
  }
  double value = 0;
  check(rectdim_critical_exponent(static_cast<int>(deltas.size()), deltas.data(), args.kappa,
                                  a.data(), t.data(), static_cast<int>(levels.size()),
                                  levels.data(), args.s_lo, s_hi, args.tol, &value));
  std::string inputs = "\"deltas\":" + json_array(deltas) + ",\"kappa\":" + fmt(args.kappa) +
                       ",\"a\":" + json_array(a) + ",\"t\":" + json_array(t) +
                       ",\"levels\":" + json_array(levels) + ",\"s_lo\":" + fmt(args.s_lo) +
                       ",\"s_hi\":" + fmt(s_hi) + ",\"tol\":" + fmt(args.tol);
  std::string outputs = "\"critical_exponent\":" + fmt(value);
  return run.emit_json(inputs, outputs);
}

// ---------- oracle-boxcount ----------

struct BoxArgs {
  std::string bases, digits, et;
  int n_from = 4, n_to = 8, grid_steps = 64;
};

int run_boxcount(Run& run, const BoxArgs& args) {
  const AxesSpec axes = parse_axes(args.bases, args.digits);
  std::vector<long long> p, q;
  parse_et(args.et, axes.bases.size(), p, q);
  rectdim_boxcount_report* rep = nullptr;
  check(rectdim_boxcount(static_cast<int>(axes.bases.size()), axes.bases.data(),
                         axes.digits_flat.data(), axes.digit_counts.data(), p.data(),
                         q.data(), args.n_from, args.n_to, args.grid_steps, &rep));

  if (run.format == "csv") {
    std::vector<std::string> rows;
    for (int i = 0; i < rectdim_boxcount_rows(rep); ++i) {
      int n = 0;
      double A = 0, eps = 0, log_count = 0, cost = 0;
      check(rectdim_boxcount_row(rep, i, &n, &A, &eps, &log_count, &cost));
      rows.push_back(std::to_string(n) + "," + fmt(A) + "," + fmt(eps) + "," +
                     fmt(log_count) + "," + fmt(cost));
    }
    rectdim_boxcount_free(rep);
    return run.emit_csv("n,A,eps,log_count,cost", rows);
  }

  std::string inputs = "\"bases\":" + json_array(axes.bases) + ",\"digits\":\"" +
                       json_escape(args.digits.empty() ? "full" : args.digits) +
                       "\",\"et\":\"" + json_escape(args.et) +
                       "\",\"n_from\":" + std::to_string(args.n_from) +
                       ",\"n_to\":" + std::to_string(args.n_to) +
                       ",\"grid_steps\":" + std::to_string(args.grid_steps);
  std::string outputs = "\"value\":" + fmt(rectdim_boxcount_value(rep)) +
                        ",\"regression_estimate\":" + fmt(rectdim_boxcount_regression(rep)) +
                        ",\"last_raw\":" + fmt(rectdim_boxcount_last_raw(rep)) +
                        ",\"reference_s\":" + fmt(rectdim_boxcount_reference_s(rep));
  outputs += ",\"levels\":[";
  for (int i = 0; i < rectdim_boxcount_levels(rep); ++i) {
    int n = 0;
    double raw = 0, model_steps = 0, oracle_steps = 0;
    check(rectdim_boxcount_level(rep, i, &n, &raw, &model_steps, &oracle_steps));
    if (i) outputs += ',';
    outputs += "{\"n\":" + std::to_string(n) + ",\"raw\":" + fmt(raw) +
               ",\"model_argmin_steps\":" + fmt(model_steps) +
               ",\"oracle_argmin_steps\":" + fmt(oracle_steps) + "}";
  }
  outputs += "]";
  rectdim_boxcount_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- verify-ubiquity ----------

struct UbiquityArgs {
  std::string system = "simultaneous";
  int m = 1, n = 1, k = 1;
  std::string a;
  std::string bases, digits;
  long long M = 32;
  std::string ball;
  std::string method = "auto";
  long long samples = 10000;
  bool literal_radius = false;
};

int run_verify_ubiquity(Run& run, const UbiquityArgs& args) {
  int system = -1;
  if (args.system == "simultaneous")
    system = 0;
  else if (args.system == "linear")
    system = 1;
  else if (args.system == "shrinking")
    system = 2;
  else
    throw CLI::ValidationError("--system: simultaneous, linear or shrinking");

  std::vector<double> a = parse_doubles(args.a, "--a");
  AxesSpec axes;
  int dim = 0;
  if (system == 0) {
    if (static_cast<int>(a.size()) != args.m)
      throw CLI::ValidationError("--a: m exponents required");
    dim = args.m;
  } else if (system == 1) {
    if (static_cast<int>(a.size()) != args.m)
      throw CLI::ValidationError("--a: m exponents required");
    dim = args.m * args.n;
  } else {
    axes = parse_axes(args.bases, args.digits);
    dim = static_cast<int>(axes.bases.size());
  }

  BallSpec ball = parse_ball(args.ball);
  if (!ball.given) ball.center.assign(dim, 0.5);
  if (static_cast<int>(ball.center.size()) != dim)
    throw CLI::ValidationError("--ball: center dimension mismatch");

  int method = 1;
  if (args.method == "exact")
    method = 0;
  else if (args.method == "mc")
    method = 1;
  else if (args.method == "auto")
    method = (system == 2 || (system == 0 && args.m == 1)) ? 0 : 1;
  else
    throw CLI::ValidationError("--method: exact, mc or auto");

  rectdim_coverage_report* rep = nullptr;
  check(rectdim_ubiquity_coverage(
      system, args.m, args.n, a.empty() ? nullptr : a.data(),
      static_cast<int>(axes.bases.size()), axes.bases.empty() ? nullptr : axes.bases.data(),
      axes.digits_flat.empty() ? nullptr : axes.digits_flat.data(),
      axes.digit_counts.empty() ? nullptr : axes.digit_counts.data(), args.M,
      ball.center.data(), ball.radius, args.k, method, args.samples, run.seed, run.threads,
      args.literal_radius ? 1 : 0, &rep));

  std::string inputs = "\"system\":\"" + args.system + "\",\"m\":" + std::to_string(args.m) +
                       ",\"n\":" + std::to_string(args.n) + ",\"a\":" + json_array(a) +
                       ",\"M\":" + std::to_string(args.M) +
                       ",\"k\":" + std::to_string(args.k) + ",\"ball_center\":" +
                       json_array(ball.center) + ",\"ball_radius\":" + fmt(ball.radius) +
                       ",\"method\":\"" + (method == 0 ? "exact" : "monte_carlo") +
                       "\",\"samples\":" + std::to_string(args.samples) +
                       ",\"literal_radius\":" + (args.literal_radius ? "true" : "false");
  if (system == 2)
    inputs += ",\"bases\":" + json_array(axes.bases) + ",\"digits\":\"" +
              json_escape(args.digits.empty() ? "full" : args.digits) + "\"";
  std::string outputs =
      "\"fraction\":" + fmt(rectdim_coverage_fraction(rep)) +
      ",\"stderr\":" + fmt(rectdim_coverage_stderr(rep)) +
      ",\"level\":" + std::to_string(rectdim_coverage_level(rep)) +
      ",\"l_k\":" + fmt(rectdim_coverage_l_k(rep)) +
      ",\"u_k\":" + fmt(rectdim_coverage_u_k(rep)) + ",\"degenerate\":" +
      (rectdim_coverage_degenerate(rep) ? "true" : "false") + ",\"admissible\":" +
      (rectdim_coverage_admissible(rep) ? "true" : "false") +
      ",\"samples\":" + std::to_string(rectdim_coverage_samples(rep));
  rectdim_coverage_free(rep);
  return run.emit_json(inputs, outputs);
}

// ---------- verify-massdist ----------

struct MassArgs {
  std::string bases, digits, et, schedule;
  long long max_nodes = 0;
  double holder_s = -1, holder_eps = 0.85;
  int samples = 10000;
  std::string tree_out;
};

int run_verify_massdist(Run& run, const MassArgs& args) {
  const AxesSpec axes = parse_axes(args.bases, args.digits);
  std::vector<long long> p, q;
  parse_et(args.et, axes.bases.size(), p, q);
  const auto schedule = parse_ints(args.schedule, "--schedule");
  if (schedule.empty()) throw CLI::ValidationError("--schedule: at least one depth required");

  rectdim_mass_tree* tree = nullptr;
  check(rectdim_mass_tree_build(static_cast<int>(axes.bases.size()), axes.bases.data(),
                                axes.digits_flat.data(), axes.digit_counts.data(), p.data(),
                                q.data(), static_cast<int>(schedule.size()), schedule.data(),
                                args.max_nodes, &tree));
  rectdim_status st = rectdim_mass_tree_assign(tree);
  if (st != RECTDIM_OK) {
    std::string msg = rectdim_last_error();
    rectdim_mass_tree_free(tree);
    throw ApiError{st, msg};
  }

  std::string inputs = "\"bases\":" + json_array(axes.bases) + ",\"digits\":\"" +
                       json_escape(args.digits.empty() ? "full" : args.digits) +
                       "\",\"et\":\"" + json_escape(args.et) + "\",\"schedule\":" +
                       json_array(schedule) + ",\"holder_eps\":" + fmt(args.holder_eps) +
                       ",\"samples\":" + std::to_string(args.samples);
  std::string outputs =
      "\"nodes\":" + std::to_string(rectdim_mass_tree_nodes(tree)) +
      ",\"leaves\":" + std::to_string(rectdim_mass_tree_leaf_count(tree)) +
      ",\"conservation_error\":" + fmt(rectdim_mass_tree_conservation_error(tree)) +
      ",\"anchor_fallbacks\":" + std::to_string(rectdim_mass_tree_anchor_fallbacks(tree)) +
      ",\"geometry_ok\":" + (rectdim_mass_tree_geometry_ok(tree) ? "true" : "false") +
      ",\"leaf_radius\":" + fmt(rectdim_mass_tree_leaf_radius(tree));
  outputs += ",\"levels\":[";
  for (int i = 0; i < static_cast<int>(schedule.size()); ++i) {
    long long balls = 0;
    double rmin = 0, rmax = 0;
    check(rectdim_mass_tree_level(tree, i, &balls, &rmin, &rmax));
    if (i) outputs += ',';
    outputs += "{\"n\":" + std::to_string(schedule[i]) + ",\"balls\":" +
               std::to_string(balls) + ",\"ratio_min\":" + fmt(rmin) +
               ",\"ratio_max\":" + fmt(rmax) + "}";
  }
  outputs += "]";

  bool verified = rectdim_mass_tree_geometry_ok(tree) != 0;
  if (args.holder_s >= 0) {
    rectdim_holder_report* hrep = nullptr;
    st = rectdim_holder_test(tree, args.holder_s, args.holder_eps, args.samples, run.seed,
                             run.threads, &hrep);
    if (st != RECTDIM_OK) {
      std::string msg = rectdim_last_error();
      rectdim_mass_tree_free(tree);
      throw ApiError{st, msg};
    }
    verified = verified && rectdim_holder_pass(hrep);
    outputs += ",\"holder\":{\"s\":" + fmt(args.holder_s) +
               ",\"epsilon\":" + fmt(args.holder_eps) +
               ",\"slope\":" + fmt(rectdim_holder_slope(hrep)) + ",\"pass\":" +
               (rectdim_holder_pass(hrep) ? "true" : "false") +
               ",\"max_ratio\":" + fmt(rectdim_holder_max_ratio(hrep)) + ",\"buckets\":[";
    for (int i = 0; i < rectdim_holder_buckets(hrep); ++i) {
      double lr = 0, lv = 0;
      check(rectdim_holder_bucket(hrep, i, &lr, &lv));
      if (i) outputs += ',';
      outputs += "{\"log_r\":" + fmt(lr) + ",\"log_ratio\":" + fmt(lv) + "}";
    }
    outputs += "]}";
    rectdim_holder_free(hrep);
    inputs += ",\"holder_s\":" + fmt(args.holder_s);
  }

  if (!args.tree_out.empty()) {
    char* json = nullptr;
    st = rectdim_mass_tree_json(tree, &json);
    if (st != RECTDIM_OK) {
      std::string msg = rectdim_last_error();
      rectdim_mass_tree_free(tree);
      throw ApiError{st, msg};
    }
    std::ofstream f(args.tree_out, std::ios::binary);
    if (f) f << json;
    rectdim_string_free(json);
    outputs += ",\"tree_out\":\"" + json_escape(args.tree_out) + "\"";
  }

  rectdim_mass_tree_free(tree);
  const int rc = run.emit_json(inputs, outputs);
  if (rc) return rc;
  return verified ? 0 : exit_for(RECTDIM_VERIFICATION_FAILED);
}

// CLI11 reads config files only on the root app, so flat per-subcommand files
// are spliced into the arg list by hand: any key absent from the command line
// is appended as --key=value after the user's flags.
void splice_config_args(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return;

  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config: cannot open " + path);

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };

  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw CLI::ValidationError("--config: empty key in '" + line + "'");
    if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                            (val.front() == '\'' && val.back() == '\'')))
      val = val.substr(1, val.size() - 2);
    const std::string flag = "--" + key;
    bool on_cmdline = false;
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        on_cmdline = true;
        break;
      }
    }
    if (!on_cmdline) args.push_back(flag + "=" + val);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dimension calculator for limsup sets defined by rectangles"};
  app.require_subcommand(1);

  Run run;
  std::string config_path;

  auto add_common = [&run, &config_path](CLI::App* sub) {
    sub->add_option("--output", run.output, "output path, - for stdout");
    sub->add_option("--format", run.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", run.seed, "random seed");
    sub->add_option("--threads", run.threads, "worker threads")
        ->envname("RECTDIM_THREADS");
    sub->add_option("--config", config_path, "flat key=value config file; flags override");
  };

  DimCoreArgs dim_core;
  auto* sc_core = app.add_subcommand("dim-core", "dimensional number from raw exponents");
  sc_core->add_option("--deltas", dim_core.deltas, "per-direction regularity exponents")
      ->required();
  sc_core->add_option("--kappa", dim_core.kappa, "scaling parameter in [0,1)");
  sc_core->add_option("--a", dim_core.a, "big-side exponents")->required();
  sc_core->add_option("--t", dim_core.t, "shrinking exponents")->required();
  sc_core->add_option("--tie-policy", dim_core.tie_policy,
                      "default, strict-k1 or merge-equal");
  sc_core->add_flag("--hat", dim_core.hat, "restrict candidates to shrunk sides");
  sc_core->add_option("--sweep", dim_core.sweep, "t=lo:hi:steps (d=1)");
  add_common(sc_core);

  std::string sim_tau, sim_sweep;
  auto* sc_sim = app.add_subcommand("dim-simultaneous", "simultaneous approximation");
  sc_sim->add_option("--tau", sim_tau, "approximation exponents");
  sc_sim->add_option("--sweep", sim_sweep, "tau=lo:hi:steps (m=1)");
  add_common(sc_sim);

  int lin_m = 0, lin_n = 1;
  std::string lin_lambda;
  auto* sc_lin = app.add_subcommand("dim-linear", "systems of linear forms");
  sc_lin->add_option("--m", lin_m, "number of forms (default: length of lambda)");
  sc_lin->add_option("--n", lin_n, "number of variables")->required();
  sc_lin->add_option("--lambda", lin_lambda, "approximation exponents")->required();
  add_common(sc_lin);

  ShrinkArgs shrink;
  auto* sc_shrink = app.add_subcommand("dim-shrink", "shrinking targets on Cantor products");
  sc_shrink->add_option("--bases", shrink.bases, "integer bases per axis")->required();
  sc_shrink->add_option("--digits", shrink.digits,
                        "per-axis digit lists, e.g. full:0,2 (default full)");
  sc_shrink->add_option("--t", shrink.t, "shrinking exponents per axis");
  sc_shrink->add_option("--sweep", shrink.sweep, "t=lo:hi:steps (one axis)");
  add_common(sc_shrink);

  MultArgs mult;
  auto* sc_mult = app.add_subcommand("dim-mult", "multiplicative approximation");
  sc_mult->add_option("--log-a", mult.log_a, "log of the first expansion factor");
  sc_mult->add_option("--delta1", mult.delta1, "first axis regularity");
  sc_mult->add_option("--log-b", mult.log_b, "log of the second expansion factor");
  sc_mult->add_option("--delta2", mult.delta2, "second axis regularity");
  sc_mult->add_option("--base-a", mult.base_a, "integer base shorthand for axis a");
  sc_mult->add_option("--digits-a", mult.digits_a, "digit list for axis a");
  sc_mult->add_option("--base-b", mult.base_b, "integer base shorthand for axis b");
  sc_mult->add_option("--digits-b", mult.digits_b, "digit list for axis b");
  auto* opt_t = sc_mult->add_option("--t", mult.t, "total product exponent");
  auto* opt_t1 = sc_mult->add_option("--t1", mult.t1, "pair exponent on axis a");
  auto* opt_t2 = sc_mult->add_option("--t2", mult.t2, "pair exponent on axis b");
  sc_mult->add_option("--sweep", mult.sweep, "t2=lo:hi:steps (needs --t)");
  add_common(sc_mult);

  OrbitArgs orbit;
  auto* sc_orbit = app.add_subcommand("orbit", "exponent orbit of a sample family");
  sc_orbit->add_option("--samples-file", orbit.samples_file, "lines: n psi_1 ... psi_F")
      ->required();
  sc_orbit->add_option("--rho", orbit.rho, "scale map: inv (1/n) or exp (e^-n)");
  sc_orbit->add_option("--cluster-eps", orbit.cluster_eps, "cluster grid width");
  add_common(sc_orbit);

  CoverArgs cover;
  auto* sc_cover = app.add_subcommand("cover-critical", "critical exponent by bisection");
  sc_cover->add_option("--deltas", cover.deltas, "per-direction regularity exponents")
      ->required();
  sc_cover->add_option("--kappa", cover.kappa, "scaling parameter in [0,1)");
  sc_cover->add_option("--a", cover.a, "big-side exponents")->required();
  sc_cover->add_option("--t", cover.t, "shrinking exponents")->required();
  sc_cover->add_option("--levels", cover.levels, "level scales r, descending")->required();
  sc_cover->add_option("--s-lo", cover.s_lo, "bracket lower end");
  sc_cover->add_option("--s-hi", cover.s_hi, "bracket upper end (default: sum of deltas)");
  sc_cover->add_option("--tol", cover.tol, "bisection tolerance");
  add_common(sc_cover);

  BoxArgs box;
  auto* sc_box = app.add_subcommand("oracle-boxcount", "exact box-counting oracle");
  sc_box->add_option("--bases", box.bases, "integer bases per axis")->required();
  sc_box->add_option("--digits", box.digits, "per-axis digit lists (default full)");
  sc_box->add_option("--et", box.et, "per-axis e^t ratios, e.g. 2/1:1/1")->required();
  sc_box->add_option("--n-from", box.n_from, "first level");
  sc_box->add_option("--n-to", box.n_to, "last level");
  sc_box->add_option("--grid-steps", box.grid_steps, "radius grid resolution");
  add_common(sc_box);

  UbiquityArgs ubi;
  auto* sc_ubi = app.add_subcommand("verify-ubiquity", "coverage fraction of a level union");
  sc_ubi->add_option("--system", ubi.system, "simultaneous, linear or shrinking");
  sc_ubi->add_option("--m", ubi.m, "number of coordinates / forms");
  sc_ubi->add_option("--n", ubi.n, "number of variables (linear forms)");
  sc_ubi->add_option("--a", ubi.a, "ubiquity exponents");
  sc_ubi->add_option("--bases", ubi.bases, "shrinking: integer bases per axis");
  sc_ubi->add_option("--digits", ubi.digits, "shrinking: per-axis digit lists");
  sc_ubi->add_option("--M", ubi.M, "level geometry constant");
  sc_ubi->add_option("--k", ubi.k, "level index");
  sc_ubi->add_option("--ball", ubi.ball, "test ball c1,...:r (default unit cube ball)");
  sc_ubi->add_option("--method", ubi.method, "exact, mc or auto");
  sc_ubi->add_option("--samples", ubi.samples, "Monte Carlo samples");
  sc_ubi->add_flag("--literal-radius", ubi.literal_radius,
                   "drop the M inflation of neighborhood radii");
  add_common(sc_ubi);

  MassArgs mass;
  auto* sc_mass = app.add_subcommand("verify-massdist", "mass distribution tree checks");
  sc_mass->add_option("--bases", mass.bases, "integer bases per axis")->required();
  sc_mass->add_option("--digits", mass.digits, "per-axis digit lists (default full)");
  sc_mass->add_option("--et", mass.et, "per-axis e^t ratios, e.g. 2/1:1/1")->required();
  sc_mass->add_option("--schedule", mass.schedule, "cylinder depths per level")->required();
  sc_mass->add_option("--max-nodes", mass.max_nodes, "node budget (0: default)");
  sc_mass->add_option("--holder-s", mass.holder_s, "run the scaling test at this s");
  sc_mass->add_option("--holder-eps", mass.holder_eps, "slope tolerance");
  sc_mass->add_option("--samples", mass.samples, "scaling test samples");
  sc_mass->add_option("--tree-out", mass.tree_out, "write the tree as JSON to this path");
  add_common(sc_mass);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    splice_config_args(args);
  } catch (const CLI::ValidationError& e) {
    return run.emit_error(RECTDIM_INVALID_ARGUMENT, e.what());
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  mult.t_set = opt_t->count() > 0;
  mult.t1_set = opt_t1->count() > 0;
  mult.t2_set = opt_t2->count() > 0;

  try {
    if (sc_core->parsed()) {
      run.command = "dim-core";
      return run_dim_core(run, dim_core);
    }
    if (sc_sim->parsed()) {
      run.command = "dim-simultaneous";
      if (sim_tau.empty() && sim_sweep.empty())
        throw CLI::ValidationError("--tau is required");
      return run_dim_simultaneous(run, sim_tau, sim_sweep);
    }
    if (sc_lin->parsed()) {
      run.command = "dim-linear";
      return run_dim_linear(run, lin_m, lin_n, lin_lambda);
    }
    if (sc_shrink->parsed()) {
      run.command = "dim-shrink";
      if (shrink.t.empty() && shrink.sweep.empty())
        throw CLI::ValidationError("--t is required");
      return run_dim_shrink(run, shrink);
    }
    if (sc_mult->parsed()) {
      run.command = "dim-mult";
      return run_dim_mult(run, mult);
    }
    if (sc_orbit->parsed()) {
      run.command = "orbit";
      return run_orbit(run, orbit);
    }
    if (sc_cover->parsed()) {
      run.command = "cover-critical";
      return run_cover_critical(run, cover);
    }
    if (sc_box->parsed()) {
      run.command = "oracle-boxcount";
      return run_boxcount(run, box);
    }
    if (sc_ubi->parsed()) {
      run.command = "verify-ubiquity";
      return run_verify_ubiquity(run, ubi);
    }
    if (sc_mass->parsed()) {
      run.command = "verify-massdist";
      return run_verify_massdist(run, mass);
    }
  } catch (const CLI::ValidationError& e) {
    return run.emit_error(RECTDIM_INVALID_ARGUMENT, e.what());
  } catch (const ApiError& e) {
    return run.emit_error(e.st, e.message);
  } catch (const std::exception& e) {
    return run.emit_error(RECTDIM_INTERNAL_ERROR, e.what());
  }
  return 2;
}
