// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/lyapinf.h"

#include "lyapinf/commands.hpp"
#include "lyapinf/error.hpp"
#include "lyapinf/instance.hpp"
#include "lyapinf/lyapcore.hpp"

#include <new>
#include <string>

struct lyapinf_instance {
  lyapinf::ProblemInstance value;
  std::string source;
};

struct lyapinf_report {
  lyapinf::CommandResult result;
  std::string verdict;
  std::string json_cache;
};

namespace {

thread_local std::string g_last_error;

lyapinf_status status_for(lyapinf::ErrorKind kind) {
  using lyapinf::ErrorKind;
  switch (kind) {
    case ErrorKind::Dimension:
    case ErrorKind::Input:
    case ErrorKind::CorruptData:
      return LYAPINF_ERR_INPUT;
    case ErrorKind::Numerical:
      return LYAPINF_ERR_NUMERICAL;
    case ErrorKind::Io:
      return LYAPINF_ERR_IO;
    default:
      return LYAPINF_ERR_PRECONDITION;
  }
}

template <typename Body>
lyapinf_status guarded(Body body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const lyapinf::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LYAPINF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LYAPINF_ERR_INTERNAL;
  }
}

lyapinf_status fail(lyapinf_status status, const char* message) {
  g_last_error = message;
  return status;
}

lyapinf::CommandOptions to_options(const lyapinf_options* o) {
  lyapinf::CommandOptions out;
  if (o == nullptr) return out;
  if (o->rank_tol > 0.0) out.rank_tol = o->rank_tol;
  if (o->gap_tol > 0.0) out.gap_tol = o->gap_tol;
  if (o->agree_tol > 0.0) out.agree_tol = o->agree_tol;
  if (o->has_seed != 0) out.seed = o->seed;
  if (o->samples > 0) out.samples = o->samples;
  out.reduced = o->reduced != 0;
  return out;
}

lyapinf::Matrix from_row_major(const double* data, size_t rows, size_t cols) {
  lyapinf::Matrix m(static_cast<lyapinf::Index>(rows), static_cast<lyapinf::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      m(static_cast<lyapinf::Index>(r), static_cast<lyapinf::Index>(c)) = data[r * cols + c];
    }
  }
  return m;
}

void to_row_major(const lyapinf::Matrix& m, double* out) {
  for (lyapinf::Index r = 0; r < m.rows(); ++r) {
    for (lyapinf::Index c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
  }
}

lyapinf_report* make_report(lyapinf::CommandResult result) {
  auto* report = new lyapinf_report{std::move(result), "", ""};
  const auto& j = report->result.report;
  if (j.contains("verdict") && j.at("verdict").is_string()) {
    report->verdict = j.at("verdict").get<std::string>();
  }
  if (report->result.exit_code != 0 && j.contains("error")) {
    g_last_error = j.at("error").value("message", "");
  }
  return report;
}

}  // namespace

extern "C" {

void lyapinf_options_default(lyapinf_options* options) {
  if (options == nullptr) return;
  *options = lyapinf_options{};
  options->samples = 32;
}

const char* lyapinf_last_error(void) { return g_last_error.c_str(); }

const char* lyapinf_status_string(lyapinf_status status) {
  switch (status) {
    case LYAPINF_OK: return "ok";
    case LYAPINF_ERR_INPUT: return "input error";
    case LYAPINF_ERR_NUMERICAL: return "numerical error";
    case LYAPINF_ERR_PRECONDITION: return "precondition violated";
    case LYAPINF_ERR_IO: return "i/o error";
    case LYAPINF_ERR_NO_SOLUTION: return "no solution";
    case LYAPINF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

lyapinf_status lyapinf_instance_load_file(const char* path, lyapinf_instance** out) {
  if (path == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lyapinf_instance{lyapinf::load_instance(path), path};
    return LYAPINF_OK;
  });
}

lyapinf_status lyapinf_instance_parse(const char* json_text, const char* source_name,
                                      lyapinf_instance** out) {
  if (json_text == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  *out = nullptr;
  const std::string source = source_name != nullptr ? source_name : "<instance>";
  return guarded([&] {
    *out = new lyapinf_instance{lyapinf::parse_instance(json_text, source), source};
    return LYAPINF_OK;
  });
}

void lyapinf_instance_free(lyapinf_instance* instance) { delete instance; }

size_t lyapinf_instance_dim(const lyapinf_instance* instance) {
  return instance == nullptr ? 0 : static_cast<size_t>(instance->value.n);
}

lyapinf_status lyapinf_check(const lyapinf_instance* instance, const lyapinf_options* options,
                             lyapinf_report** out) {
  if (instance == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = make_report(lyapinf::run_check(instance->value, to_options(options),
                                          instance->source));
    return LYAPINF_OK;
  });
}

lyapinf_status lyapinf_solve(const lyapinf_instance* instance, const lyapinf_options* options,
                             const double* member, lyapinf_report** out) {
  if (instance == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  return guarded([&] {
    lyapinf::CommandOptions opts = to_options(options);
    if (member != nullptr) {
      const auto n = static_cast<size_t>(instance->value.n);
      opts.member = from_row_major(member, n, n);
    }
    *out = make_report(lyapinf::run_solve(instance->value, opts, instance->source));
    return LYAPINF_OK;
  });
}

lyapinf_status lyapinf_verify(const lyapinf_instance* instance, const lyapinf_options* options,
                              lyapinf_report** out) {
  if (instance == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = make_report(lyapinf::run_verify(instance->value, to_options(options),
                                           instance->source));
    return LYAPINF_OK;
  });
}

lyapinf_status lyapinf_simulate(const char* spec_path, const char* out_path,
                                lyapinf_report** out) {
  if (spec_path == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = make_report(lyapinf::run_simulate(spec_path, out_path != nullptr ? out_path : ""));
    return LYAPINF_OK;
  });
}

int lyapinf_report_exit_code(const lyapinf_report* report) {
  return report == nullptr ? LYAPINF_EXIT_INPUT_ERROR : report->result.exit_code;
}

const char* lyapinf_report_verdict(const lyapinf_report* report) {
  return report == nullptr ? "" : report->verdict.c_str();
}

const char* lyapinf_report_text(const lyapinf_report* report) {
  return report == nullptr ? "" : report->result.text.c_str();
}

const char* lyapinf_report_json(lyapinf_report* report, int indent) {
  if (report == nullptr) return "";
  report->json_cache = report->result.report.dump(indent < 0 ? -1 : indent);
  return report->json_cache.c_str();
}

lyapinf_status lyapinf_report_solution(const lyapinf_report* report, double* out, size_t n) {
  if (report == nullptr || out == nullptr) return fail(LYAPINF_ERR_INPUT, "null argument");
  return guarded([&] {
    const auto& j = report->result.report;
    if (!j.contains("solution") || j.at("solution").is_null()) {
      return fail(LYAPINF_ERR_NO_SOLUTION, "report carries no solution");
    }
    const lyapinf::Matrix p = lyapinf::matrix_from_json(j.at("solution"));
    if (static_cast<size_t>(p.rows()) != n || static_cast<size_t>(p.cols()) != n) {
      return fail(LYAPINF_ERR_INPUT, "solution size does not match n");
    }
    to_row_major(p, out);
    return LYAPINF_OK;
  });
}

void lyapinf_report_free(lyapinf_report* report) { delete report; }

lyapinf_status lyapinf_solve_lyapunov(const double* a, const double* q, size_t n,
                                      double gap_tol, double* p_out) {
  if (a == nullptr || q == nullptr || p_out == nullptr || n == 0) {
    return fail(LYAPINF_ERR_INPUT, "null argument or zero dimension");
  }
  return guarded([&] {
    const double tol = gap_tol > 0.0 ? gap_tol : lyapinf::kDefaultGapTol;
    to_row_major(lyapinf::solve_lyapunov(from_row_major(a, n, n), from_row_major(q, n, n), tol),
                 p_out);
    return LYAPINF_OK;
  });
}

lyapinf_status lyapinf_spectral_gap(const double* a, size_t n, double* gap_out) {
  if (a == nullptr || gap_out == nullptr || n == 0) {
    return fail(LYAPINF_ERR_INPUT, "null argument or zero dimension");
  }
  return guarded([&] {
    *gap_out = lyapinf::spectral_gap(from_row_major(a, n, n)).min_pair_sum;
    return LYAPINF_OK;
  });
}

}  // extern "C"
