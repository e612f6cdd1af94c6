// Copyright 2026 The qcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "qcoh/bounds.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/majorize.hpp"
#include "qcoh/mapping.hpp"
#include "qcoh/monotones.hpp"
#include "qcoh/selftest.hpp"
#include "qcoh/transform.hpp"
#include "state_file.hpp"

namespace qcoh::cli {

using nlohmann::json;

namespace {

Tolerances tolerances(const GlobalOptions &g) { return {g.tol, g.tol, g.tol, g.tol}; }

RoofOptions roof_options(const RoofFlags &r, const GlobalOptions &g) {
  RoofOptions o;
  o.ensemble_size = r.ensemble_size;
  o.restarts = g.restarts;
  o.max_iters = r.max_iters;
  o.tol = r.sweep_tol;
  o.seed = g.seed;
  o.threads = g.threads;
  return o;
}

json roof_diagnostics(const RoofEstimate &e, const RoofOptions &o) {
  return {{"converged", e.converged},     {"iterations", e.iterations},
          {"restarts", e.restarts},       {"best_restart", e.best_restart},
          {"ensemble_members", e.ensemble.size()}, {"seed", o.seed}};
}

void require_converged(const RoofEstimate &e, const RoofOptions &o) {
  if (!e.converged)
    throw ConvergenceError("convex roof did not converge within " + std::to_string(o.max_iters) +
                               " sweeps",
                           0.0, e.value);
}

json analytic_entry(double closed, double numeric) {
  return {{"closed_form", closed}, {"numeric", numeric}, {"gap", std::abs(closed - numeric)}};
}

json sorted_json(const ProbVector &p) { return p.sorted_desc(p.size()); }

std::string joined_args(const std::string &name, std::initializer_list<std::string> parts) {
  std::string s = name;
  for (const auto &p : parts) s += '\0' + p;
  return s;
}

}  // namespace

CommandResult cmd_measure(const MeasureArgs &a, const GlobalOptions &g) {
  std::string raw;
  const auto st = load_state_file(a.file, tolerances(g), raw);
  CommandResult out;
  Report &r = out.report;
  r.command = "measure";
  r.input_digest = fnv1a64(raw);

  if (a.kind != "coherence" && a.kind != "entanglement")
    throw ValidationError("parameter", "--kind must be coherence or entanglement");
  const bool ent = a.kind == "entanglement";
  if (ent && !st.dims)
    throw ValidationError("dims", "entanglement needs a state file with 'dims'");
  const std::size_t gc_dim = ent ? std::min(st.dims->b, st.dims->a) : st.dim();
  const Functional f = Functional::parse(a.f, gc_dim);

  auto &res = r.results;
  res["functional"] = f.name();
  res["kind"] = a.kind;
  double value = 0.0;
  if (st.pure) {
    value = ent ? e_f_pure(f, *st.bipartite_pure()) : c_f_pure(f, *st.pure);
    res["method"] = "pure";
  } else {
    const auto opts = roof_options(a.roof, g);
    const auto kind = ent ? RoofKind::entanglement(*st.dims) : RoofKind::coherence();
    const auto est = convex_roof(f, st.density, kind, opts);
    require_converged(est, opts);
    value = est.value;
    res["method"] = "convex_roof";
    r.diagnostics["roof"] = roof_diagnostics(est, opts);
  }
  res["value"] = value;
  const double l1 = c_l1(st.density);
  res["c_l1"] = l1;
  std::optional<double> neg;
  if (st.dims) res["negativity"] = *(neg = negativity(st.density, *st.dims));

  std::optional<RobustnessSolution> rob;
  if (a.robustness) {
    rob = robustness_coherence(st.density, {.tol = g.solver_tol});
    res["c_r"] = rob->value;
    res["c_r_lower_bound"] = rob->lower_bound;
    r.diagnostics["robustness"] = {{"cuts", rob->cuts},
                                   {"rounds", rob->rounds},
                                   {"residual_min_eig", rob->residual_min_eig},
                                   {"tol", g.solver_tol}};
  }

  json analytic = json::object();
  const bool gc = f.kind() == FunctionalKind::GeneralizedConcurrence;
  if (const auto p = match_symmetric(st.density)) {
    const auto fam = symmetric_family(st.dim(), *p);
    analytic["family"] = "symmetric";
    analytic["p"] = *p;
    analytic["c_l1"] = analytic_entry(fam.c_l1, l1);
    if (rob) analytic["c_r"] = analytic_entry(fam.c_r, rob->value);
    if (!ent && gc && f.dimension() == st.dim()) analytic["value"] = analytic_entry(fam.c_gc, value);
  }
  if (st.dims && st.dims->a == st.dims->b) {
    if (const auto fid = match_isotropic(st.density, *st.dims)) {
      const auto fam = isotropic_family(st.dims->a, *fid);
      analytic["family"] = "isotropic";
      analytic["fidelity"] = *fid;
      analytic["negativity"] = analytic_entry(fam.negativity, *neg);
      if (ent && gc) analytic["value"] = analytic_entry(fam.e_gc, value);
    }
  }
  if (!analytic.empty()) res["analytic"] = analytic;
  r.diagnostics["validation_tol"] = g.tol;
  return out;
}

namespace {

json kraus_json(const KrausSet &k, const PureState &psi, const PureState &phi) {
  json ops = json::array();
  for (std::size_t i = 0; i < k.size(); ++i)
    ops.push_back({{"index", i},
                   {"class", to_string(classify_kraus(k.operators()[i]))},
                   {"matrix", matrix_to_json(k.operators()[i])}});
  json branches = json::array();
  double total = 0.0, min_fid = 1.0;
  for (const auto &o : apply_selective(psi, k)) {
    const double fid = std::norm(inner(o.state.amplitudes(), phi.amplitudes()));
    branches.push_back({{"index", o.index}, {"probability", o.probability}, {"fidelity", fid}});
    total += o.probability;
    min_fid = std::min(min_fid, fid);
  }
  return {{"class", to_string(k.kraus_class())},
          {"input_dim", k.input_dim()},
          {"output_dim", k.output_dim()},
          {"operators", ops},
          {"verification",
           {{"completeness_residual", k.completeness_residual()},
            {"total_probability", total},
            {"min_fidelity", min_fid},
            {"branches", branches}}}};
}

// Σ_{j≥m} of both sorted coherence vectors and their ratio, m = 1..n.
json tail_ratios(const PureState &psi, const PureState &phi) {
  const std::size_t n = std::max(psi.dim(), phi.dim());
  const auto x = coherence_vector(psi).sorted_desc(n);
  const auto y = coherence_vector(phi).sorted_desc(n);
  json rows = json::array();
  double tx = 0.0, ty = 0.0;
  std::vector<json> rev;
  for (std::size_t m = n; m-- > 0;) {
    tx += x[m];
    ty += y[m];
    json row = {{"m", m + 1}, {"source_tail", tx}, {"target_tail", ty}};
    row["ratio"] = ty > 0.0 ? json(tx / ty) : json(nullptr);
    rev.push_back(std::move(row));
  }
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) rows.push_back(*it);
  return rows;
}

PureState require_pure(const LoadedState &st, const std::string &which) {
  if (!st.pure) throw ValidationError("kind", which + " must be a pure-state file");
  return *st.pure;
}

}  // namespace

CommandResult cmd_transform(const TransformArgs &a, const GlobalOptions &g) {
  std::string raw_src, raw_tgt;
  const auto src = load_state_file(a.source, tolerances(g), raw_src);
  const auto tgt = load_state_file(a.target, tolerances(g), raw_tgt);
  const PureState psi = require_pure(src, "source");
  const PureState phi = require_pure(tgt, "target");
  CommandResult out;
  Report &r = out.report;
  r.command = "transform";
  r.input_digest = fnv1a64(raw_src + '\0' + raw_tgt);
  auto &res = r.results;
  res["mu_source"] = sorted_json(coherence_vector(psi));

  if (tgt.dims) {
    const auto target = *tgt.bipartite_pure();
    if (a.synthesize)
      throw ValidationError("parameter", "--synthesize needs a single-system target");
    const auto check = conversion_criterion_check(psi, target);
    const auto prob = max_prob_entangled(psi, target);
    res["target_kind"] = "bipartite";
    res["lambda_target"] = sorted_json(schmidt_coefficients(target));
    res["necessary_holds"] = check.necessary_holds;
    res["schmidt_form_target"] = check.schmidt_form_target;
    res["feasible"] = check.iff_verdict ? json(*check.iff_verdict) : json(nullptr);
    res["probability"] = prob.upper_bound;
    res["probability_exact"] = prob.exact;
    return out;
  }

  const bool feasible = can_transform(psi, phi);
  res["target_kind"] = "coherent";
  res["mu_target"] = sorted_json(coherence_vector(phi));
  res["feasible"] = feasible;
  res["majorization_slack"] = majorization_slack(coherence_vector(psi), coherence_vector(phi));
  res["probability"] = max_prob_coherent(psi, phi);
  res["probability_exact"] = true;
  if (a.prob) res["tail_ratios"] = tail_ratios(psi, phi);
  if (a.synthesize) {
    if (feasible) {
      res["synthesis"] = kraus_json(synthesize_io(psi, phi), psi, phi);
    } else {
      res["synthesis"] = nullptr;
      r.diagnostics["synthesis"] = "target is not reachable with probability one";
    }
  }
  return out;
}

CommandResult cmd_certify(const CertifyArgs &a, const GlobalOptions &g) {
  std::string raw;
  const auto st = load_state_file(a.file, tolerances(g), raw);
  CommandResult out;
  Report &r = out.report;
  r.command = "certify";
  r.input_digest = fnv1a64(raw);

  std::string measure = a.measure;
  if (measure.empty()) measure = st.dims && st.dims->a == st.dims->b ? "e_gc" : "c_gc";
  CertifyOptions opts;
  opts.robustness.tol = g.solver_tol;
  opts.with_roof = a.roof;
  opts.roof = roof_options(a.roof_flags, g);
  opts.meet_tol = a.meet_tol;

  BoundCertificate cert;
  if (measure == "c_gc") {
    cert = certify_cgc_lower(st.density, opts);
  } else if (measure == "e_gc") {
    if (!st.dims) throw ValidationError("dims", "e_gc needs a state file with 'dims'");
    cert = certify_egc_lower(st.density, *st.dims, opts);
  } else {
    throw ValidationError("parameter", "--measure must be c_gc or e_gc");
  }
  auto &res = r.results;
  res["measure"] = cert.measure;
  res["lower_bound"] = cert.lower_bound;
  json witnesses = json::object();
  for (const auto &[name, v] : cert.witnesses) witnesses[name] = v;
  res["witnesses"] = witnesses;
  res["dimension"] = cert.dimension;
  res["tight"] = cert.tight;
  res["family"] = cert.family ? json(*cert.family) : json(nullptr);
  if (cert.closed_form) {
    res["closed_form"] = *cert.closed_form;
    res["closed_form_gap"] = std::abs(*cert.closed_form - cert.lower_bound);
  }
  if (cert.upper_estimate) {
    res["upper_estimate"] = *cert.upper_estimate;
    res["upper_gap"] = *cert.upper_estimate - cert.lower_bound;
  }
  r.diagnostics["solver_tol"] = g.solver_tol;
  r.diagnostics["meet_tol"] = a.meet_tol;
  if (a.roof) r.diagnostics["roof"] = {{"restarts", g.restarts}, {"seed", g.seed}};
  return out;
}

namespace {

std::vector<double> parse_sweep(const std::string &sweep, double lo, double hi) {
  std::size_t steps = 11;
  if (!sweep.empty()) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = sweep.find(':', start)) != std::string::npos; start = pos + 1)
      parts.push_back(sweep.substr(start, pos - start));
    parts.push_back(sweep.substr(start));
    try {
      std::size_t used = 0;
      auto num = [&](const std::string &s) {
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
      };
      if (parts.size() == 1) {
        lo = hi = num(parts[0]);
        steps = 1;
      } else if (parts.size() <= 3) {
        lo = num(parts[0]);
        hi = num(parts[1]);
        if (parts.size() == 3) {
          const double s = num(parts[2]);
          if (s < 1.0 || s != std::floor(s)) throw std::invalid_argument(parts[2]);
          steps = static_cast<std::size_t>(s);
        }
      } else {
        throw std::invalid_argument(sweep);
      }
    } catch (const std::exception &) {
      throw ValidationError("parameter", "--sweep expects lo:hi[:steps] or a single value, got '" +
                                             sweep + "'");
    }
  }
  if (!(lo <= hi)) throw ValidationError("parameter", "--sweep needs lo <= hi");
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k)
    grid[k] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (steps - 1.0);
  return grid;
}

// Rows are independent; each worker takes the next index.
std::vector<std::vector<double>> parallel_rows(
    std::size_t n, unsigned threads, const std::function<std::vector<double>(std::size_t)> &row) {
  std::vector<std::vector<double>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        rows[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace

CommandResult cmd_family(const FamilyArgs &a, const GlobalOptions &g) {
  if (a.d < 2) throw ValidationError("parameter", "--d must be at least 2");
  CommandResult out;
  Report &r = out.report;
  r.command = "family";
  r.input_digest = fnv1a64(joined_args(a.family, {std::to_string(a.d), a.sweep}));
  const double dd = static_cast<double>(a.d);

  RoofOptions roof_opts = roof_options({}, g);
  roof_opts.threads = 1;
  std::vector<std::string> columns;
  std::function<std::vector<double>(double)> row;
  CertifyOptions cert_opts;
  cert_opts.robustness.tol = g.solver_tol;

  if (a.family == "symmetric") {
    columns = {"p",         "fidelity",  "c_l1_closed", "c_l1_numeric",   "c_l1_gap",
               "c_r_closed", "c_r_numeric", "c_r_gap",  "c_gc_closed", "c_gc_certified",
               "c_gc_gap"};
    row = [&](double p) {
      const auto fam = symmetric_family(a.d, p);
      const double l1 = c_l1(fam.state);
      const double cr = robustness_coherence(fam.state, cert_opts.robustness).value;
      const double cert = certify_cgc_lower(fam.state, cert_opts).lower_bound;
      std::vector<double> v = {p,
                               fam.fidelity,
                               fam.c_l1,
                               l1,
                               std::abs(l1 - fam.c_l1),
                               fam.c_r,
                               cr,
                               std::abs(cr - fam.c_r),
                               fam.c_gc,
                               cert,
                               std::abs(cert - fam.c_gc)};
      if (a.roof) {
        const double est =
            convex_roof(Functional::gc(a.d), fam.state, RoofKind::coherence(), roof_opts).value;
        v.push_back(est);
        v.push_back(est - fam.c_gc);
      }
      return v;
    };
    if (a.roof) columns.insert(columns.end(), {"c_gc_roof", "c_gc_roof_gap"});
  } else if (a.family == "isotropic") {
    columns = {"fidelity",   "negativity_closed", "negativity_numeric", "negativity_gap",
               "e_r_closed", "e_gc_closed",       "e_gc_certified",     "e_gc_gap"};
    row = [&](double fid) {
      const auto fam = isotropic_family(a.d, fid);
      const double n = negativity(fam.state, {a.d, a.d});
      const double cert = certify_egc_lower(fam.state, {a.d, a.d}, cert_opts).lower_bound;
      std::vector<double> v = {fid,     fam.negativity, n,        std::abs(n - fam.negativity),
                               fam.e_r, fam.e_gc,       cert,     std::abs(cert - fam.e_gc)};
      if (a.roof) {
        const double est = convex_roof(Functional::gc(a.d), fam.state,
                                       RoofKind::entanglement({a.d, a.d}), roof_opts)
                               .value;
        v.push_back(est);
        v.push_back(est - fam.e_gc);
      }
      return v;
    };
    if (a.roof) columns.insert(columns.end(), {"e_gc_roof", "e_gc_roof_gap"});
  } else {
    throw ValidationError("parameter", "--family must be symmetric or isotropic");
  }

  const bool sym = a.family == "symmetric";
  const auto grid = parse_sweep(a.sweep, sym ? 0.0 : 1.0 / (dd * dd), 1.0);
  const auto rows = parallel_rows(grid.size(), g.threads, [&](std::size_t i) { return row(grid[i]); });

  auto &res = r.results;
  res["family"] = a.family;
  res["d"] = a.d;
  res["parameter"] = sym ? "p" : "fidelity";
  res["columns"] = columns;
  res["rows"] = rows;
  json max_gap = json::object();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (!columns[c].ends_with("_gap")) continue;
    double m = 0.0;
    for (const auto &rw : rows) m = std::max(m, std::abs(rw[c]));
    max_gap[columns[c]] = m;
  }
  r.diagnostics["max_gap"] = max_gap;
  r.diagnostics["solver_tol"] = g.solver_tol;
  if (a.roof) r.diagnostics["roof"] = {{"restarts", g.restarts}, {"seed", g.seed}};
  return out;
}

CommandResult cmd_selftest(const SelftestArgs &a, const GlobalOptions &g) {
  auto rep = run_selftest({.seed = g.seed, .trials = a.trials, .quick = a.quick});
  // User fixtures join the validation suite: each must be rejected.
  auto &validation = rep.suites.back();
  for (const auto &path : a.fixtures) {
    ++validation.trials;
    std::string raw, raised = "none";
    std::optional<LoadedState> accepted;
    try {
      accepted = load_state_file(path, tolerances(g), raw);
    } catch (const ValidationError &e) {
      raised = e.invariant();
    }
    validation.raised.emplace_back("file:" + path, raised);
    if (accepted) {
      ++validation.failures;
      validation.worst_margin = -1.0;
      if (!validation.counterexample) {
        const auto &rho = accepted->density;
        validation.counterexample =
            Counterexample{"density", {rho.dim()},
                           ComplexVector(rho.matrix().data().begin(), rho.matrix().data().end()),
                           "fixture " + path + " passed validation"};
      }
    }
  }
  CommandResult out;
  Report &r = out.report;
  r.command = "selftest";
  r.input_digest = fnv1a64(joined_args("selftest", {std::to_string(g.seed),
                                                    std::to_string(a.trials),
                                                    a.quick ? "quick" : "full"}));
  json suites = json::array();
  json failing = json::array();
  for (const auto &s : rep.suites) {
    json js = {{"name", s.name},
               {"trials", s.trials},
               {"failures", s.failures},
               {"passed", s.passed()},
               {"worst_margin", s.worst_margin}};
    if (!s.raised.empty()) {
      json raised = json::object();
      for (const auto &[fixture, invariant] : s.raised) raised[fixture] = invariant;
      js["raised"] = raised;
    }
    if (s.counterexample) {
      const auto &ce = *s.counterexample;
      json cj = ce.kind == "fixture" ? json::object() : state_to_json(ce.kind, ce.dims, ce.data);
      cj["note"] = ce.note;
      js["counterexample"] = cj;
      failing.push_back({{"suite", s.name}, {"counterexample", cj}});
    }
    suites.push_back(std::move(js));
  }
  r.results["passed"] = rep.passed();
  r.results["trials"] = rep.total_trials();
  r.results["failures"] = rep.total_failures();
  r.results["suites"] = suites;
  r.diagnostics["seed"] = g.seed;
  r.diagnostics["quick"] = a.quick;
  if (!rep.passed()) {
    out.exit_code = 1;
    out.error = {{"type", "invariant"},
                 {"code", 1},
                 {"message", std::to_string(rep.total_failures()) + " invariant violations"},
                 {"failing", failing}};
  }
  return out;
}

}  // namespace qcoh::cli
