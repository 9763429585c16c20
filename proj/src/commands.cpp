// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/commands.hpp"

#include "lyapinf/error.hpp"
#include "lyapinf/informativity.hpp"
#include "lyapinf/lyapcore.hpp"
#include "lyapinf/oracle.hpp"
#include "lyapinf/solver.hpp"
#include "lyapinf/sysmodel.hpp"
#include "lyapinf/trajgen.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace lyapinf {

namespace {

// Decisions on finite-difference data use a loosened rank tolerance.
constexpr double kApproximateRankFactor = 100.0;
// Oracle retry policy: a NotInformative verdict the oracle cannot refute with
// k samples is retried once with kRetryFactor * k samples.
constexpr int kRetryFactor = 4;

struct Tolerances {
  double rank_tol = kDefaultRankTol;
  double gap_tol = kDefaultGapTol;
  double agree_tol = kDefaultAgreeTol;
  double effective_rank_tol = kDefaultRankTol;
  std::uint64_t seed = 0;
};

// Everything shared by check, solve and verify up to the informativity verdict.
struct Pipeline {
  Tolerances tol;
  std::optional<Dataset> dataset;
  std::optional<Matrix> truth;
  AssumptionReport assumption;
  std::optional<AffineMatrixSet> set;
  InformativityVerdict verdict;
  std::optional<InformativityVerdict> cross_check;
  std::vector<std::string> warnings;
};

std::string format_matrix(const Matrix& m, const std::string& indent = "  ") {
  std::ostringstream out;
  out << std::setprecision(12);
  for (Index r = 0; r < m.rows(); ++r) {
    out << indent << "[";
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ", ";
      out << std::setw(16) << m(r, c);
    }
    out << " ]\n";
  }
  return out.str();
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

json witness_to_json(const Witness& w) {
  return json{{"A1", matrix_to_json(w.a1)},
              {"A2", matrix_to_json(w.a2)},
              {"P1", matrix_to_json(w.p1)},
              {"P2", matrix_to_json(w.p2)},
              {"distance", w.distance}};
}

std::string witness_text(const Witness& w) {
  std::ostringstream out;
  out << "witness pair (solutions " << format_number(w.distance) << " apart):\n"
      << " A1 =\n" << format_matrix(w.a1) << " P1 =\n" << format_matrix(w.p1)
      << " A2 =\n" << format_matrix(w.a2) << " P2 =\n" << format_matrix(w.p2);
  return out.str();
}

int exit_for(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::Informative: return kExitInformative;
    case VerdictTag::NotInformative: return kExitNotInformative;
    case VerdictTag::AssumptionViolated: return kExitAssumptionViolated;
  }
  return kExitInputError;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Assumption: return kExitAssumptionViolated;
    case ErrorKind::NotInformative: return kExitNotInformative;
    case ErrorKind::Integrity: return kExitIntegrityFailure;
    default: return kExitInputError;
  }
}

Tolerances resolve_tolerances(const ProblemInstance& inst, const CommandOptions& opts) {
  Tolerances t;
  t.rank_tol = opts.rank_tol.value_or(inst.tolerances.rank_tol.value_or(kDefaultRankTol));
  t.gap_tol = opts.gap_tol.value_or(inst.tolerances.gap_tol.value_or(kDefaultGapTol));
  t.agree_tol =
      opts.agree_tol.value_or(inst.tolerances.agree_tol.value_or(kDefaultAgreeTol));
  t.seed = opts.seed.value_or(inst.seed.value_or(0));
  for (double v : {t.rank_tol, t.gap_tol, t.agree_tol}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("tolerances must be positive and finite");
    }
  }
  t.effective_rank_tol = t.rank_tol;
  return t;
}

json tolerances_json(const Tolerances& t) {
  return json{{"rank_tol", t.rank_tol},
              {"gap_tol", t.gap_tol},
              {"agree_tol", t.agree_tol},
              {"effective_rank_tol", t.effective_rank_tol}};
}

json verdict_json(const InformativityVerdict& v) {
  json out{{"verdict", to_string(v.tag)},
           {"residual", v.residual},
           {"threshold", v.threshold},
           {"certificate", v.certificate}};
  if (v.solution) out["solution"] = matrix_to_json(*v.solution);
  return out;
}

// Builds the dataset, checks the prior against the truth when known, forms
// the candidate set and runs both informativity checkers.
Pipeline run_pipeline(const ProblemInstance& inst, const CommandOptions& opts) {
  Pipeline p;
  p.tol = resolve_tolerances(inst, opts);

  if (inst.generator) {
    const TrajectoryGenerator& g = *inst.generator;
    p.dataset = simulate_trajectory(g.a, g.x0, g.times);
    p.truth = g.a;
  } else {
    p.dataset = *inst.dataset;
  }
  if (!p.dataset->has_derivatives()) {
    p.dataset = estimate_derivatives(*p.dataset, inst.scheme);
    p.warnings.push_back("derivatives estimated by finite differences");
  }
  if (p.dataset->approximate()) {
    p.tol.effective_rank_tol = kApproximateRankFactor * p.tol.rank_tol;
  }
  if (p.dataset->states().isZero(0.0)) {
    p.warnings.push_back("all state samples are zero; the data carry no information");
  }

  p.assumption = validate_prior_assumption(inst.prior, p.truth);
  p.set = consistent_set(*p.dataset, inst.prior, p.tol.effective_rank_tol);
  if (!p.set) {
    p.verdict.tag = VerdictTag::AssumptionViolated;
    p.verdict.certificate =
        "the data and the prior knowledge contradict each other (empty candidate set)";
    return p;
  }

  DecisionOptions d;
  d.rank_tol = p.tol.effective_rank_tol;
  d.gap_tol = p.tol.gap_tol;
  d.seed = p.tol.seed;
  p.verdict = decide_informativity(*p.set, inst.q, d);
  if (p.verdict.tag != VerdictTag::AssumptionViolated) {
    p.cross_check =
        check_informativity_subspace(*p.set, inst.q, d.rank_tol, d.gap_tol);
    if (p.cross_check->tag != p.verdict.tag) {
      p.warnings.push_back(std::string("the kernel-set cross-check returned ") +
                           to_string(p.cross_check->tag));
    }
  }
  return p;
}

json base_report(const std::string& command, const std::string& source,
                 const ProblemInstance& inst, const Pipeline& p) {
  json r;
  r["command"] = command;
  r["instance"] = source;
  r["n"] = inst.n;
  r["seed"] = p.tol.seed;
  r["tolerances"] = tolerances_json(p.tol);
  json data{{"samples", p.dataset->size()},
            {"source", inst.generator ? "generator" : "inline"},
            {"derivatives", p.dataset->approximate() ? "approximate" : "exact"}};
  if (p.dataset->approximate()) data["truncation_estimate"] = p.dataset->truncation_estimate();
  r["data"] = std::move(data);
  r["prior"] = json{{"type", inst.prior.type_name()}};
  r["assumption"] =
      json{{"status", to_string(p.assumption.status)}, {"reason", p.assumption.reason}};
  r["candidate_set_dimension"] =
      p.set ? json(p.set->dimension()) : json(nullptr);
  r["checker"] = verdict_json(p.verdict);
  r["cross_check"] = p.cross_check ? json(to_string(p.cross_check->tag)) : json(nullptr);
  r["verdict"] = to_string(p.verdict.tag);
  r["warnings"] = p.warnings;
  return r;
}

std::string base_text(const std::string& command, const Pipeline& p) {
  std::ostringstream out;
  out << command << ": " << to_string(p.verdict.tag) << "\n";
  for (const std::string& w : p.warnings) out << "warning: " << w << "\n";
  out << "assumption: " << to_string(p.assumption.status) << " (" << p.assumption.reason
      << ")\n";
  if (p.set) out << "candidate set dimension: " << p.set->dimension() << "\n";
  out << "certificate: " << p.verdict.certificate << "\n";
  return out.str();
}

CommandResult error_result(const std::string& command, const std::string& source,
                           int code, const std::string& kind, const std::string& message) {
  CommandResult res;
  res.exit_code = code;
  res.report = json{{"command", command},
                    {"instance", source},
                    {"exit_code", code},
                    {"error", json{{"kind", kind}, {"message", message}}}};
  res.text = command + ": error (" + kind + "): " + message + "\n";
  return res;
}

template <typename Body>
CommandResult guarded(const std::string& command, const std::string& source, Body body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_result(command, source, exit_for(e.kind()), to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return error_result(command, source, kExitInputError, "internal", e.what());
  }
}

void finish(CommandResult& res) { res.report["exit_code"] = res.exit_code; }

// Looks for a witness pair; NotInformative verdicts get one when the oracle
// can separate two members within the retry budget.
std::optional<OracleResult> oracle_with_retry(const Pipeline& p, const ProblemInstance& inst,
                                              int samples, bool expect_witness,
                                              int* samples_used) {
  int k = samples;
  OracleResult o = brute_force_informative(*p.set, inst.prior, inst.q, k, p.tol.seed,
                                           p.tol.agree_tol, p.tol.gap_tol);
  if (expect_witness && o.agree) {
    k = samples * kRetryFactor;
    o = brute_force_informative(*p.set, inst.prior, inst.q, k, p.tol.seed,
                                p.tol.agree_tol, p.tol.gap_tol);
  }
  if (samples_used != nullptr) *samples_used = k;
  return o;
}

void require_samples(int samples) {
  if (samples < 2) throw InputError("--samples must be at least 2");
}

}  // namespace

CommandResult run_check(const ProblemInstance& inst, const CommandOptions& opts,
                        const std::string& source) {
  return guarded("check", source, [&] {
    require_samples(opts.samples);
    Pipeline p = run_pipeline(inst, opts);
    CommandResult res;
    res.exit_code = exit_for(p.verdict.tag);
    res.report = base_report("check", source, inst, p);
    std::string text = base_text("check", p);

    if (p.verdict.tag == VerdictTag::Informative) {
      res.report["solution"] = matrix_to_json(*p.verdict.solution);
      text += "P* =\n" + format_matrix(*p.verdict.solution);
    } else if (p.verdict.tag == VerdictTag::NotInformative) {
      res.report["solution"] = nullptr;
      try {
        int used = 0;
        const auto o = oracle_with_retry(p, inst, opts.samples, true, &used);
        if (o->witness) {
          res.report["witness"] = witness_to_json(*o->witness);
          text += witness_text(*o->witness);
        } else {
          res.report["witness"] = nullptr;
          text += "no witness pair found among " + std::to_string(used) + " samples\n";
        }
      } catch (const DegenerateSetError& e) {
        res.report["witness"] = nullptr;
        text += std::string("no witness pair: ") + e.what() + "\n";
      }
    }
    res.text = std::move(text);
    finish(res);
    return res;
  });
}

CommandResult run_solve(const ProblemInstance& inst, const CommandOptions& opts,
                        const std::string& source) {
  return guarded("solve", source, [&] {
    Pipeline p = run_pipeline(inst, opts);
    CommandResult res;
    res.report = base_report("solve", source, inst, p);
    std::string text = base_text("solve", p);
    if (p.verdict.tag != VerdictTag::Informative) {
      res.exit_code = exit_for(p.verdict.tag);
      res.report["solution"] = nullptr;
      res.text = text + "no solution: the instance is not informative for Q\n";
      finish(res);
      return res;
    }

    PhiOptions phi;
    phi.rank_tol = p.tol.effective_rank_tol;
    phi.gap_tol = p.tol.gap_tol;
    phi.seed = p.tol.seed;

    Matrix solution;
    if (opts.member) {
      solution = compute_phi_with_member(*p.set, *opts.member, inst.q, phi);
      res.report["method"] = "member";
      res.report["member"] = matrix_to_json(*opts.member);
      text += "evaluated at the supplied member\n";
    } else if (opts.reduced) {
      const SubspaceActionPrior* prior = inst.prior.subspace_action();
      if (prior == nullptr) {
        throw InputError("--reduced requires a subspace_action prior");
      }
      Matrix stacked(inst.n, p.dataset->size() + static_cast<std::size_t>(prior->y0.cols()));
      stacked << p.dataset->states(), prior->y0;
      const Matrix z = column_space_basis(stacked, p.tol.effective_rank_tol);
      const Matrix a0 =
          pick_member_in_An(*p.set, p.tol.gap_tol, p.tol.seed, phi.max_attempts);
      const ReducedSolution red =
          compute_phi_reduced(a0, z, inst.q, p.tol.effective_rank_tol);
      const Matrix full = compute_phi(*p.set, inst.q, phi);
      const double gap = (red.p - full).norm();
      res.report["method"] = "reduced";
      res.report["reduced"] = json{{"r", z.cols()},
                                   {"unknowns", red.unknowns},
                                   {"Z", matrix_to_json(z)},
                                   {"W", matrix_to_json(red.w)},
                                   {"residual", red.residual},
                                   {"difference_from_full", gap}};
      text += "reduced solve: r = " + std::to_string(z.cols()) + ", " +
              std::to_string(red.unknowns) + " unknowns\nZ =\n" + format_matrix(z) +
              "W* =\n" + format_matrix(red.w);
      if (gap > p.tol.agree_tol * (1.0 + full.norm())) {
        throw IntegrityError("reduced and full solutions differ by " + format_number(gap));
      }
      solution = red.p;
    } else {
      solution = compute_phi(*p.set, inst.q, phi);
      res.report["method"] = "member_pick";
    }
    res.exit_code = kExitInformative;
    res.report["solution"] = matrix_to_json(solution);
    text += "P* =\n" + format_matrix(solution);
    res.text = std::move(text);
    finish(res);
    return res;
  });
}

CommandResult run_verify(const ProblemInstance& inst, const CommandOptions& opts,
                         const std::string& source) {
  return guarded("verify", source, [&] {
    require_samples(opts.samples);
    Pipeline p = run_pipeline(inst, opts);
    CommandResult res;
    res.report = base_report("verify", source, inst, p);
    std::string text = base_text("verify", p);

    auto finish_with = [&](int code, const std::string& agreement, const std::string& why) {
      res.exit_code = code;
      res.report["agreement"] = agreement;
      res.report["reason"] = why;
      res.text = text + "agreement: " + agreement + " (" + why + ")\n";
      finish(res);
      return res;
    };

    if (p.verdict.tag == VerdictTag::AssumptionViolated) {
      return finish_with(kExitAssumptionViolated, "vacuous",
                         "no member with a unique Lyapunov solution; nothing to compare");
    }

    const bool informative = p.verdict.tag == VerdictTag::Informative;
    int used = 0;
    std::optional<OracleResult> oracle;
    try {
      oracle = oracle_with_retry(p, inst, opts.samples, !informative, &used);
    } catch (const DegenerateSetError& e) {
      res.report["oracle"] = json{{"error", e.what()}};
      return finish_with(kExitIntegrityFailure, "disagree",
                         std::string("oracle could not sample the candidate set: ") + e.what());
    }

    const VerdictTag oracle_tag =
        oracle->agree ? VerdictTag::Informative : VerdictTag::NotInformative;
    json oj{{"verdict", to_string(oracle_tag)},
            {"samples", used},
            {"solved", oracle->samples},
            {"max_distance", oracle->max_distance}};
    if (oracle->solution) oj["solution"] = matrix_to_json(*oracle->solution);
    if (oracle->witness) {
      oj["witness"] = witness_to_json(*oracle->witness);
      text += witness_text(*oracle->witness);
    }
    res.report["oracle"] = std::move(oj);
    text += std::string("oracle: ") + to_string(oracle_tag) + " from " +
            std::to_string(oracle->samples) + " samples (max spread " +
            format_number(oracle->max_distance) + ")\n";

    if (oracle_tag != p.verdict.tag) {
      return finish_with(kExitIntegrityFailure, "disagree",
                         std::string("checker says ") + to_string(p.verdict.tag) +
                             ", oracle says " + to_string(oracle_tag));
    }
    if (informative) {
      const double gap = (*p.verdict.solution - *oracle->solution).norm();
      res.report["solution_difference"] = gap;
      res.report["solution"] = matrix_to_json(*p.verdict.solution);
      text += "P* =\n" + format_matrix(*p.verdict.solution);
      if (gap > p.tol.agree_tol * (1.0 + inst.q.norm())) {
        return finish_with(kExitIntegrityFailure, "disagree",
                           "checker and oracle solutions differ by " + format_number(gap));
      }
    }
    return finish_with(kExitInformative, "agree",
                       std::string("both report ") + to_string(p.verdict.tag));
  });
}

namespace {

template <typename Run>
CommandResult run_file(const std::string& command, const std::string& path,
                       const CommandOptions& opts, Run run) {
  std::optional<ProblemInstance> inst;
  CommandResult failure = guarded(command, path, [&] {
    inst = load_instance(path);
    return CommandResult{kExitInformative, json(), "", {}};
  });
  if (!inst) return failure;
  return run(*inst, opts, path);
}

}  // namespace

CommandResult run_check_file(const std::string& path, const CommandOptions& opts) {
  return run_file("check", path, opts, run_check);
}

CommandResult run_solve_file(const std::string& path, const CommandOptions& opts) {
  return run_file("solve", path, opts, run_solve);
}

CommandResult run_verify_file(const std::string& path, const CommandOptions& opts) {
  return run_file("verify", path, opts, run_verify);
}

CommandResult run_simulate_text(const std::string& spec_text, const std::string& source) {
  return guarded("simulate", source, [&] {
    json doc;
    try {
      doc = json::parse(spec_text);
    } catch (const json::parse_error& e) {
      throw InputError(source + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw InputError(source + ": expected a JSON object");

    const bool bare = !doc.contains("generator");
    const json gen = bare ? doc : doc.at("generator");
    for (const char* key : {"A", "x0", "times"}) {
      if (!gen.contains(key)) {
        throw InputError(source + ": system spec is missing '" + key + "'");
      }
    }
    const Matrix a = matrix_from_json(gen.at("A"));
    require_square(a, "A");
    const Index n = a.rows();
    if (doc.contains("n") && doc.at("n") != n) {
      throw InputError(source + ": 'n' does not match the size of A");
    }
    const json& xj = gen.at("x0");
    if (!xj.is_array() || static_cast<Index>(xj.size()) != n) {
      throw InputError(source + ": x0 must have " + std::to_string(n) + " entries");
    }
    Vector x0(n);
    for (Index i = 0; i < n; ++i) {
      const json& v = xj[static_cast<std::size_t>(i)];
      if (!v.is_number()) throw InputError(source + ": x0 entries must be numbers");
      x0(i) = v.get<double>();
    }
    const json& tj = gen.at("times");
    if (!tj.is_array() || tj.empty()) {
      throw InputError(source + ": times must be a non-empty array");
    }
    std::vector<double> times;
    for (const json& v : tj) {
      if (!v.is_number()) throw InputError(source + ": times must be numbers");
      times.push_back(v.get<double>());
    }

    const Dataset ds = simulate_trajectory(a, x0, times);
    json out = bare ? json::object() : doc;
    out.erase("generator");
    out["n"] = n;
    out["dataset"] = dataset_to_json(ds);

    CommandResult res;
    res.exit_code = kExitInformative;
    res.report = std::move(out);
    if (x0.isZero(0.0)) {
      res.warnings.push_back("x0 = 0; the simulated data carry no information");
    }
    for (const std::string& w : res.warnings) res.text += "warning: " + w + "\n";
    res.text += res.report.dump(2) + "\n";
    return res;
  });
}

CommandResult run_simulate(const std::string& spec_path, const std::string& out_path) {
  CommandResult res = guarded("simulate", spec_path, [&] {
    return run_simulate_text(read_text_file(spec_path), spec_path);
  });
  if (res.exit_code != kExitInformative || out_path.empty()) return res;
  return guarded("simulate", spec_path, [&] {
    write_text_file(out_path, res.report.dump(2) + "\n");
    CommandResult done = res;
    done.text.clear();
    for (const std::string& w : done.warnings) done.text += "warning: " + w + "\n";
    done.text += "wrote " + out_path + "\n";
    return done;
  });
}

}  // namespace lyapinf
