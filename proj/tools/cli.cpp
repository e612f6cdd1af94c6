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
#include "cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "qcoh/errors.hpp"

namespace qcoh::cli {

namespace {

using nlohmann::json;

void emit_error(std::ostream &err, json e) { err << json{{"error", std::move(e)}}.dump() << "\n"; }

void add_roof_flags(CLI::App *cmd, RoofFlags &r) {
  cmd->add_option("--ensemble-size", r.ensemble_size, "ensemble size (0: rank squared)");
  cmd->add_option("--max-iters", r.max_iters, "sweeps per restart")->capture_default_str();
  cmd->add_option("--sweep-tol", r.sweep_tol, "improvement per sweep that counts as converged")
      ->capture_default_str();
}

void write_report(const CommandResult &res, const std::string &out_arg, std::ostream &out) {
  const auto target = parse_out(out_arg);
  const std::string text =
      target.format == Format::Csv ? render_csv(res.report) : render_json(res.report);
  if (!target.path) {
    out << text;
    return;
  }
  std::ofstream f(*target.path, std::ios::binary);
  if (!f) throw ValidationError("file", "cannot write '" + *target.path + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Coherence and entanglement measures, transformations and bounds", "qcoh"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string out_arg;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "state validation tolerance")->capture_default_str();
  app.add_option("--solver-tol", g.solver_tol, "robustness solver gap")->capture_default_str();
  app.add_option("--restarts", g.restarts, "convex roof restarts")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0: auto)")->capture_default_str();
  app.add_option("--out", out_arg, "json, csv, or an output path (.csv or .json)");

  MeasureArgs measure;
  auto *m = app.add_subcommand("measure", "pure-state value or convex roof of a state file");
  m->add_option("state", measure.file, "state file")->required();
  m->add_option("--f", measure.f, "shannon | geom | gc[:d] | renyi:a | tail:m")
      ->capture_default_str();
  m->add_option("--kind", measure.kind, "coherence | entanglement")->capture_default_str();
  m->add_flag("--robustness", measure.robustness, "also solve for the robustness of coherence");
  add_roof_flags(m, measure.roof);

  TransformArgs transform;
  auto *t = app.add_subcommand("transform", "incoherent conversion between pure states");
  t->add_option("source", transform.source, "source state file")->required();
  t->add_option("target", transform.target, "target state file")->required();
  t->add_flag("--synthesize", transform.synthesize, "build and verify the Kraus operators");
  t->add_flag("--prob", transform.prob, "list the tail ratios behind the probability");

  CertifyArgs certify;
  auto *c = app.add_subcommand("certify", "certified lower bound on c_gc or e_gc");
  c->add_option("state", certify.file, "state file")->required();
  c->add_option("--measure", certify.measure, "c_gc | e_gc");
  c->add_flag("--roof", certify.roof, "also estimate the convex roof from above");
  c->add_option("--meet-tol", certify.meet_tol, "bound/roof distance counted as tight")
      ->capture_default_str();
  add_roof_flags(c, certify.roof_flags);

  FamilyArgs family;
  auto *f = app.add_subcommand("family", "closed forms against numerics along a family");
  f->add_option("--family", family.family, "symmetric | isotropic")->required();
  f->add_option("--d", family.d, "local dimension")->capture_default_str();
  f->add_option("--sweep", family.sweep, "lo:hi[:steps] or a single value");
  f->add_flag("--roof", family.roof, "add convex roof estimates (slow)");

  SelftestArgs selftest;
  auto *s = app.add_subcommand("selftest", "randomized invariant suites");
  s->add_option("--trials", selftest.trials, "trials per suite")->capture_default_str();
  s->add_flag("--quick", selftest.quick, "smaller dimensions and a tenth of the trials");
  s->add_option("--fixture", selftest.fixtures, "corrupted state file the validation suite must reject");

  std::vector<const char *> argv{"qcoh"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    emit_error(err, {{"type", "usage"}, {"code", kExitValidation}, {"message", e.what()}});
    return kExitValidation;
  }

  try {
    CommandResult res;
    if (m->parsed()) res = cmd_measure(measure, g);
    else if (t->parsed()) res = cmd_transform(transform, g);
    else if (c->parsed()) res = cmd_certify(certify, g);
    else if (f->parsed()) res = cmd_family(family, g);
    else res = cmd_selftest(selftest, g);
    res.report.args = args;
    res.report.timestamp = utc_timestamp();
    write_report(res, out_arg, out);
    if (res.exit_code != kExitOk) emit_error(err, res.error);
    return res.exit_code;
  } catch (const ValidationError &e) {
    emit_error(err, {{"type", "validation"},
                     {"code", kExitValidation},
                     {"invariant", e.invariant()},
                     {"message", e.what()}});
    return kExitValidation;
  } catch (const NotMajorizedError &e) {
    emit_error(err, {{"type", "not_majorized"}, {"code", kExitValidation}, {"message", e.what()}});
    return kExitValidation;
  } catch (const ConvergenceError &e) {
    emit_error(err, {{"type", "convergence"},
                     {"code", kExitConvergence},
                     {"message", e.what()},
                     {"lower", e.lower()},
                     {"upper", e.upper()}});
    return kExitConvergence;
  } catch (const std::exception &e) {
    emit_error(err, {{"type", "internal"}, {"code", kExitInvariant}, {"message", e.what()}});
    return kExitInvariant;
  }
}

}  // namespace qcoh::cli
