// Copyright 2026 The pass-clustering Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pass/report.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pass/centroids.hpp"

namespace pass {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

double share(double part, double total) { return total > 0.0 ? part / total : 0.0; }

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

// Column order of the CSV and table reports.
std::vector<std::pair<std::string, std::string>> row_fields(const RunSpec& spec,
                                                            const RunOutcome& out) {
  const PhaseTimes& p = out.phase_times;
  return {
      {"dataset", out.dataset},
      {"method", spec.method},
      {"scenario", spec.scenario()},
      {"k", std::to_string(spec.config.k)},
      {"seed", std::to_string(spec.config.seed)},
      {"status", out.status},
      {"sse", fmt_opt(out.sse)},
      {"violations", out.ml_violations && out.cl_violations
                         ? std::to_string(*out.ml_violations + *out.cl_violations)
                         : ""},
      {"ml_violations", fmt_opt(out.ml_violations)},
      {"cl_violations", fmt_opt(out.cl_violations)},
      {"iterations", fmt_opt(out.iterations)},
      {"stabilized_at", fmt_opt(out.stabilized_at)},
      {"wall_time", fmt(out.wall_time)},
      {"share_selection", fmt(share(p.selection, p.total))},
      {"share_ilp", fmt(share(p.ilp, p.total))},
      {"share_centroids", fmt(share(p.centroids, p.total))},
      {"share_other", fmt(share(p.other(), p.total))},
      {"max_binaries", std::to_string(out.max_binaries)},
      {"ari", fmt_opt(out.ari)},
      {"ami", fmt_opt(out.ami)},
      {"purity", fmt_opt(out.purity)},
  };
}

void fill_evaluation(RunOutcome& out, const Evaluation& ev) {
  out.sse = ev.sse;
  out.ml_violations = ev.ml_violations;
  out.cl_violations = ev.cl_violations;
  out.ari = ev.ari;
  out.ami = ev.ami;
  out.purity = ev.purity;
}

}  // namespace

std::string RunSpec::scenario() const {
  if (constraints_path) return "file";
  if (sample_ml > 0 && sample_cl > 0) return "Both";
  if (sample_ml > 0) return "ML";
  if (sample_cl > 0) return "CL";
  return "none";
}

void RunSpec::validate() const {
  if (data_path.empty()) throw InputError("no dataset given");
  if (constraints_path && sampled()) {
    throw InputError("give either a constraints file or sampling quotas, not both");
  }
  if (method != "pass-ca" && method != "pass-ig" && method != "cop" &&
      method != "qaoa-refine") {
    throw InputError("unknown method '" + method + "'");
  }
  config.validate();
}

RunOutcome run_benchmark(const RunSpec& spec) {
  spec.validate();
  if (spec.jobs > 0) omp_set_num_threads(static_cast<int>(spec.jobs));

  RunOutcome out;
  out.dataset = base_name(spec.data_path);
  const Dataset data = load_dataset(spec.data_path, CsvOptions{spec.header});
  std::optional<std::vector<int>> truth;
  if (spec.truth_path) {
    truth = load_labels(*spec.truth_path);
    if (truth->size() != data.size()) {
      throw InputError("truth labels have " + std::to_string(truth->size()) +
                       " rows, dataset has " + std::to_string(data.size()));
    }
  }
  ConstraintSet constraints;
  if (spec.constraints_path) {
    constraints = load_constraints(*spec.constraints_path);
  } else if (spec.sampled()) {
    constraints = sample_constraints(data.size(), truth, spec.sample_ml,
                                     spec.sample_cl, spec.config.seed);
  }
  constraints.validate(data.size());
  const std::vector<int>* truth_ptr = truth ? &*truth : nullptr;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (spec.method == "cop") {
      CopOptions co;
      co.restarts = spec.cop_restarts;
      const auto st = cop_kmeans(data, constraints, spec.config.k,
                                 spec.config.seed, co);
      if (!st) {
        out.status = "no solution found";
        out.message = "no feasible COP-k-means run in " +
                      std::to_string(co.restarts) + " restarts";
        out.exit_code = kExitNoSolution;
      } else {
        fill_evaluation(out, evaluate(st->labels, data, constraints, st->model,
                                      truth_ptr));
        out.labels = st->labels.labels;
      }
    } else if (spec.method == "qaoa-refine") {
      PassConfig cfg = spec.config;
      const QaoaRefineResult r = qaoa_refine(data, constraints, cfg, spec.qaoa);
      fill_evaluation(out, evaluate(r.labels, data, constraints, r.centroids,
                                    truth_ptr));
      out.iterations = r.base.iterations;
      out.stabilized_at = r.base.stabilized_at;
      out.max_binaries = r.base.max_binaries;
      out.phase_times = r.base.phase_times;
      out.phase_times.post += r.qaoa_seconds;
      out.phase_times.total += r.qaoa_seconds;
      out.trace = r.base.trace;
      out.qaoa_rounds = r.rounds;
      out.labels = r.labels.labels;
      out.qubo = r.first_qubo;
    } else {
      PassConfig cfg = spec.config;
      cfg.selector = spec.method == "pass-ca" ? SelectorKind::ConstraintAware
                                              : SelectorKind::InfoGeometric;
      const PassResult r = run_pass(data, constraints, cfg);
      fill_evaluation(out, evaluate(r.labels, data, constraints, r.centroids,
                                    truth_ptr));
      out.iterations = r.iterations;
      out.stabilized_at = r.stabilized_at;
      out.max_binaries = r.max_binaries;
      out.phase_times = r.phase_times;
      out.trace = r.trace;
      out.labels = r.labels.labels;
    }
  } catch (const InfeasibleError& e) {
    out.status = "infeasible";
    out.message = e.what();
    out.exit_code = kExitInfeasible;
  }
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string format_json(const RunSpec& spec, const RunOutcome& out) {
  const PassConfig& c = spec.config;
  Json js;
  js["dataset"] = spec.data_path;
  js["constraints"] = opt(spec.constraints_path);
  js["sample_ml"] = spec.sample_ml;
  js["sample_cl"] = spec.sample_cl;
  js["truth"] = opt(spec.truth_path);
  js["scenario"] = spec.scenario();
  js["method"] = spec.method;
  js["k"] = c.k;
  js["selector_p"] = c.percentile;
  js["alpha"] = c.alpha;
  js["beta"] = c.beta;
  js["temperature"] = c.temperature;
  js["cand_width"] = c.candidate_width;
  js["max_iters"] = c.max_iters;
  js["sse_rel_tol"] = c.sse_rel_tol;
  js["solver"] = c.solver == SolverKind::Exact ? "exact" : "local";
  js["time_limit"] = c.time_limit;
  js["seed"] = c.seed;

  const PhaseTimes& p = out.phase_times;
  Json jr;
  jr["status"] = out.status;
  jr["message"] = out.message;
  jr["sse"] = opt(out.sse);
  jr["violations"] = out.ml_violations && out.cl_violations
                         ? Json(*out.ml_violations + *out.cl_violations)
                         : Json(nullptr);
  jr["ml_violations"] = opt(out.ml_violations);
  jr["cl_violations"] = opt(out.cl_violations);
  jr["iterations"] = opt(out.iterations);
  jr["stabilized_at"] = opt(out.stabilized_at);
  jr["max_binaries"] = out.max_binaries;
  jr["ari"] = opt(out.ari);
  jr["ami"] = opt(out.ami);
  jr["purity"] = opt(out.purity);
  jr["wall_time"] = out.wall_time;
  jr["phase_times"] = {{"collapse", p.collapse},   {"init", p.init},
                       {"selection", p.selection}, {"ilp", p.ilp},
                       {"centroids", p.centroids}, {"post", p.post},
                       {"other", p.other()},       {"total", p.total}};
  jr["shares"] = {{"selection", share(p.selection, p.total)},
                  {"ilp", share(p.ilp, p.total)},
                  {"centroids", share(p.centroids, p.total)},
                  {"other", share(p.other(), p.total)}};
  Json trace = Json::array();
  for (std::size_t t = 0; t < out.trace.size(); ++t) {
    const IterationTrace& tr = out.trace[t];
    trace.push_back({{"iter", t + 1},
                     {"sse", tr.sse},
                     {"subset_size", tr.subset_size},
                     {"violations", tr.violations},
                     {"binaries", tr.binaries},
                     {"objective", tr.objective},
                     {"status", to_string(tr.status)},
                     {"reseeded", tr.reseeded}});
  }
  jr["trace"] = std::move(trace);
  Json rounds = Json::array();
  for (const QaoaRefineRound& r : out.qaoa_rounds) {
    rounds.push_back({{"subset_size", r.subset_size},
                      {"n_vars", r.n_vars},
                      {"lambda", r.lambda},
                      {"warm_objective", r.warm_objective},
                      {"objective", r.objective},
                      {"expected_energy", r.expected_energy},
                      {"accepted", r.accepted}});
  }
  jr["qaoa_rounds"] = std::move(rounds);

  Json root;
  root["spec"] = std::move(js);
  root["result"] = std::move(jr);
  root["env"] = {{"version", kVersion}, {"seed", c.seed}};
  return root.dump(2) + "\n";
}

std::string csv_header() {
  std::string h;
  for (const auto& [name, value] : row_fields(RunSpec{}, RunOutcome{})) {
    if (!h.empty()) h += ',';
    h += name;
  }
  return h + "\n";
}

std::string format_csv_row(const RunSpec& spec, const RunOutcome& out) {
  std::string row;
  bool first = true;
  for (const auto& [name, value] : row_fields(spec, out)) {
    if (!first) row += ',';
    first = false;
    if (value.find_first_of(",\" ") != std::string::npos) {
      row += '"';
      for (char ch : value) {
        if (ch == '"') row += '"';
        row += ch;
      }
      row += '"';
    } else {
      row += value;
    }
  }
  return row + "\n";
}

std::string format_table(const RunSpec& spec, const RunOutcome& out) {
  const auto fields = row_fields(spec, out);
  std::size_t width = 0;
  for (const auto& f : fields) width = std::max(width, f.first.size());
  std::ostringstream os;
  for (const auto& [name, value] : fields) {
    os << name << std::string(width - name.size() + 2, ' ')
       << (value.empty() ? "-" : value) << '\n';
  }
  return os.str();
}

std::string format_trace_csv(const RunOutcome& out) {
  std::ostringstream os;
  os << "iter,sse,subset_size,violations,binaries,objective,status,reseeded\n";
  for (std::size_t t = 0; t < out.trace.size(); ++t) {
    const IterationTrace& tr = out.trace[t];
    os << t + 1 << ',' << fmt(tr.sse) << ',' << tr.subset_size << ','
       << tr.violations << ',' << tr.binaries << ',' << fmt(tr.objective) << ','
       << to_string(tr.status) << ',' << tr.reseeded << '\n';
  }
  return os.str();
}

void write_outputs(const RunSpec& spec, const RunOutcome& out) {
  std::string text;
  switch (spec.report) {
    case ReportFormat::Json: text = format_json(spec, out); break;
    case ReportFormat::Csv: text = csv_header() + format_csv_row(spec, out); break;
    case ReportFormat::Table: text = format_table(spec, out); break;
  }
  if (spec.out_path) {
    std::ofstream f(*spec.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write report to " + *spec.out_path);
    f << text;
  } else {
    std::cout << text;
  }
  if (spec.trace_path) {
    std::ofstream f(*spec.trace_path, std::ios::binary);
    if (!f) throw InputError("cannot write trace to " + *spec.trace_path);
    f << format_trace_csv(out);
  }
  if (spec.qubo_path) {
    std::ofstream f(*spec.qubo_path, std::ios::binary);
    if (!f) throw InputError("cannot write QUBO to " + *spec.qubo_path);
    f << out.qubo;
  }
}

std::pair<Dataset, std::vector<int>> make_blobs(std::size_t n, std::size_t k,
                                                std::size_t d, double sigma,
                                                std::uint64_t seed) {
  if (n == 0 || k == 0 || d == 0) throw InputError("blobs need n, k, d >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> centres(k * d);
  for (auto& c : centres) c = box(rng);
  std::vector<double> values(n * d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t g = i % k;
    labels[i] = static_cast<int>(g);
    for (std::size_t j = 0; j < d; ++j) {
      values[i * d + j] = centres[g * d + j] + noise(rng);
    }
  }
  return {Dataset(n, d, std::move(values)), std::move(labels)};
}

std::pair<double, double> loglog_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) throw InputError("log-log fit needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return {slope, r2};
}

SweepReport scaling_sweep(const SweepOptions& opts) {
  SweepReport rep;
  for (const std::size_t n : opts.sizes) {
    const auto [data, truth] =
        make_blobs(n, opts.k, opts.d, opts.sigma, derive_seed(opts.config.seed, n));
    const auto n_ml = static_cast<std::size_t>(opts.ml_fraction * static_cast<double>(n));
    const auto n_cl = static_cast<std::size_t>(opts.cl_fraction * static_cast<double>(n));
    const ConstraintSet cs = sample_constraints(n, truth, n_ml, n_cl, opts.config.seed);
    std::vector<double> times;
    PassResult last;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, opts.repeats); ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      last = run_pass(data, cs, opts.config);
      times.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    rep.sizes.push_back(n);
    rep.runtimes.push_back(times[times.size() / 2]);
    rep.max_binaries.push_back(last.max_binaries);
    rep.iterations.push_back(last.iterations);
  }
  if (rep.sizes.size() >= 2) {
    std::vector<double> x(rep.sizes.begin(), rep.sizes.end());
    const auto [slope, r2] = loglog_fit(x, rep.runtimes);
    rep.slope = slope;
    rep.r2 = r2;
  }
  return rep;
}

std::string format_sweep_json(const SweepReport& rep) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < rep.sizes.size(); ++i) {
    rows.push_back({{"n", rep.sizes[i]},
                    {"runtime", rep.runtimes[i]},
                    {"max_binaries", rep.max_binaries[i]},
                    {"iterations", rep.iterations[i]}});
  }
  Json root;
  root["rows"] = std::move(rows);
  root["slope"] = opt(rep.slope);
  root["r2"] = opt(rep.r2);
  root["env"] = {{"version", kVersion}};
  return root.dump(2) + "\n";
}

}  // namespace pass
