// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/instance.hpp"

#include "lyapinf/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace lyapinf {

namespace {

// Line bookkeeping for characters pulled by the JSON lexer.
struct LineState {
  int line = 1;
  int last_token_line = 1;

  void consume(char c) {
    if (c == '\n') {
      ++line;
    } else if (c != ' ' && c != '\t' && c != '\r') {
      last_token_line = line;
    }
  }
};

class CountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, LineState* state) : p_(p), state_(state) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    if (state_ != nullptr) state_->consume(*p_);
    ++p_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
  bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

 private:
  const char* p_ = nullptr;
  LineState* state_ = nullptr;
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Parses the document while recording the source line of every JSON pointer.
class LineMappedDocument {
 public:
  LineMappedDocument(std::string_view text, std::string source)
      : source_(std::move(source)) {
    LineState state;
    CountingIterator first(text.data(), &state);
    CountingIterator last(text.data() + text.size(), nullptr);

    struct Frame {
      bool is_array;
      std::size_t index;
      std::string key;
      std::string pointer;
    };
    std::vector<Frame> stack;
    auto child_pointer = [&]() -> std::string {
      if (stack.empty()) return "";
      const Frame& top = stack.back();
      return top.pointer + "/" +
             (top.is_array ? std::to_string(top.index) : escape_token(top.key));
    };
    auto advance_parent = [&] {
      if (!stack.empty() && stack.back().is_array) ++stack.back().index;
    };

    auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
      switch (event) {
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
          std::string ptr = child_pointer();
          lines_.emplace(ptr, state.last_token_line);
          stack.push_back(
              Frame{event == json::parse_event_t::array_start, 0, "", std::move(ptr)});
          break;
        }
        case json::parse_event_t::key:
          stack.back().key = parsed.get<std::string>();
          lines_[child_pointer()] = state.last_token_line;
          break;
        case json::parse_event_t::value:
          lines_.emplace(child_pointer(), state.last_token_line);
          advance_parent();
          break;
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
          stack.pop_back();
          advance_parent();
          break;
      }
      return true;
    };

    try {
      doc_ = json::parse(first, last, callback);
    } catch (const json::parse_error& e) {
      std::ostringstream msg;
      msg << source_ << ":" << line_of_offset(text, e.byte) << ": malformed JSON: "
          << e.what();
      throw InputError(msg.str());
    }
  }

  const json& doc() const { return doc_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::ostringstream msg;
    msg << source_ << ":" << line_of(pointer) << ": " << (pointer.empty() ? "/" : pointer)
        << ": " << message;
    throw InputError(msg.str());
  }

 private:
  static int line_of_offset(std::string_view text, std::size_t byte) {
    const std::size_t end = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + end, '\n'));
  }

  int line_of(std::string pointer) const {
    for (;;) {
      if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.erase(pointer.rfind('/'));
    }
  }

  std::string source_;
  json doc_;
  std::map<std::string, int> lines_;
};

// Schema helpers bound to one document.
class Reader {
 public:
  explicit Reader(const LineMappedDocument& doc) : doc_(doc) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    doc_.fail(ptr, msg);
  }

  void require_object(const json& j, const std::string& ptr,
                      const std::set<std::string>& allowed) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (const auto& item : j.items()) {
      if (allowed.count(item.key()) == 0) {
        fail(ptr + "/" + escape_token(item.key()), "unknown key '" + item.key() + "'");
      }
    }
  }

  const json& member(const json& j, const std::string& ptr, const std::string& key) const {
    if (!j.contains(key)) fail(ptr, "missing required key '" + key + "'");
    return j.at(key);
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "expected a finite number");
    return v;
  }

  double positive(const json& j, const std::string& ptr) const {
    const double v = number(j, ptr);
    if (!(v > 0.0)) fail(ptr, "expected a positive number");
    return v;
  }

  Vector vector(const json& j, const std::string& ptr, Index expected) const {
    if (!j.is_array()) fail(ptr, "expected an array of numbers");
    if (static_cast<Index>(j.size()) != expected) {
      fail(ptr, "expected " + std::to_string(expected) + " entries, got " +
                    std::to_string(j.size()));
    }
    Vector v(expected);
    for (Index i = 0; i < expected; ++i) {
      v(i) = number(j[static_cast<std::size_t>(i)], ptr + "/" + std::to_string(i));
    }
    return v;
  }

  // Row-major nested array. expected_cols < 0 accepts any consistent width.
  Matrix matrix(const json& j, const std::string& ptr, Index expected_rows,
                Index expected_cols) const {
    if (!j.is_array()) fail(ptr, "expected a matrix as an array of rows");
    if (static_cast<Index>(j.size()) != expected_rows) {
      fail(ptr, "expected " + std::to_string(expected_rows) + " rows, got " +
                    std::to_string(j.size()));
    }
    Index cols = expected_cols;
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string rp = ptr + "/" + std::to_string(r);
      if (!j[r].is_array()) fail(rp, "expected a row array");
      if (cols < 0) cols = static_cast<Index>(j[r].size());
      if (static_cast<Index>(j[r].size()) != cols) {
        fail(rp, "expected " + std::to_string(cols) + " columns, got " +
                     std::to_string(j[r].size()));
      }
    }
    Matrix m(expected_rows, std::max<Index>(cols, 0));
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) {
        m(r, c) = number(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                         ptr + "/" + std::to_string(r) + "/" + std::to_string(c));
      }
    }
    return m;
  }

  std::vector<double> times(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array of sample times");
    if (j.empty()) fail(ptr, "at least one sample time is required");
    std::vector<double> t;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string ip = ptr + "/" + std::to_string(i);
      t.push_back(number(j[i], ip));
      if (t.back() < 0.0) fail(ip, "sample times must be non-negative");
      if (i > 0 && !(t[i] > t[i - 1])) fail(ip, "sample times must be strictly increasing");
    }
    return t;
  }

 private:
  const LineMappedDocument& doc_;
};

Interval parse_interval(const Reader& rd, const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) {
    rd.fail(ptr, "expected a [lower, upper] pair (null for an infinite end)");
  }
  Interval b;
  if (!j[0].is_null()) b.lower = rd.number(j[0], ptr + "/0");
  if (!j[1].is_null()) b.upper = rd.number(j[1], ptr + "/1");
  if (!(b.lower < b.upper)) rd.fail(ptr, "bound interval must be nonempty");
  return b;
}

PriorKnowledge make_prior(const Reader& rd, Index n, PriorKnowledge::Variant value) {
  try {
    return PriorKnowledge(n, std::move(value));
  } catch (const InputError& e) {
    rd.fail("/prior", e.what());
  }
}

PriorKnowledge parse_prior(const Reader& rd, const json& j, Index n) {
  const std::string ptr = "/prior";
  if (!j.is_object()) rd.fail(ptr, "expected an object");
  const json& type = rd.member(j, ptr, "type");
  if (!type.is_string()) rd.fail(ptr + "/type", "expected a string");
  const std::string t = type.get<std::string>();

  if (t == "bounded_affine") {
    rd.require_object(j, ptr, {"type", "base", "directions", "bounds"});
    BoundedAffinePrior prior;
    prior.base = rd.matrix(rd.member(j, ptr, "base"), ptr + "/base", n, n);
    const json& dirs = rd.member(j, ptr, "directions");
    if (!dirs.is_array()) rd.fail(ptr + "/directions", "expected an array of matrices");
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      prior.directions.push_back(
          rd.matrix(dirs[i], ptr + "/directions/" + std::to_string(i), n, n));
    }
    if (j.contains("bounds")) {
      const json& bounds = j.at("bounds");
      if (!bounds.is_array() || bounds.size() != dirs.size()) {
        rd.fail(ptr + "/bounds", "expected one [lower, upper] pair per direction");
      }
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        prior.bounds.push_back(
            parse_interval(rd, bounds[i], ptr + "/bounds/" + std::to_string(i)));
      }
    } else {
      prior.bounds.assign(dirs.size(), Interval{});
    }
    return make_prior(rd, n, std::move(prior));
  }
  if (t == "subspace_action") {
    rd.require_object(j, ptr, {"type", "Y0", "G"});
    SubspaceActionPrior prior;
    prior.y0 = rd.matrix(rd.member(j, ptr, "Y0"), ptr + "/Y0", n, -1);
    prior.g = rd.matrix(rd.member(j, ptr, "G"), ptr + "/G", n, prior.y0.cols());
    return make_prior(rd, n, std::move(prior));
  }
  if (t == "unconstrained") {
    rd.require_object(j, ptr, {"type"});
    return PriorKnowledge::unconstrained(n);
  }
  rd.fail(ptr + "/type",
          "unknown prior type '" + t +
              "' (expected bounded_affine, subspace_action or unconstrained)");
}

DifferenceScheme parse_scheme(const Reader& rd, const json& j, const std::string& ptr) {
  if (!j.is_string()) rd.fail(ptr, "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "central") return DifferenceScheme::Central;
  if (s == "forward_backward_ends") return DifferenceScheme::ForwardBackwardEnds;
  rd.fail(ptr, "unknown derivative scheme '" + s +
                   "' (expected central or forward_backward_ends)");
}

Dataset parse_dataset(const Reader& rd, const json& j, Index n, DifferenceScheme& scheme) {
  const std::string ptr = "/dataset";
  rd.require_object(j, ptr, {"samples", "derivative_scheme", "derivatives",
                             "truncation_estimate"});
  if (j.contains("derivative_scheme")) {
    scheme = parse_scheme(rd, j.at("derivative_scheme"), ptr + "/derivative_scheme");
  }
  DerivativeSource source = DerivativeSource::Exact;
  if (j.contains("derivatives")) {
    const json& d = j.at("derivatives");
    if (d == "approximate") {
      source = DerivativeSource::Approximate;
    } else if (d != "exact") {
      rd.fail(ptr + "/derivatives", "expected \"exact\" or \"approximate\"");
    }
  }
  double truncation = 0.0;
  if (j.contains("truncation_estimate")) {
    truncation = rd.number(j.at("truncation_estimate"), ptr + "/truncation_estimate");
  }

  const json& samples = rd.member(j, ptr, "samples");
  if (!samples.is_array()) rd.fail(ptr + "/samples", "expected an array of samples");
  if (samples.empty()) rd.fail(ptr + "/samples", "at least one sample is required");
  std::vector<Sample> out;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::string sp = ptr + "/samples/" + std::to_string(k);
    const json& s = samples[k];
    rd.require_object(s, sp, {"t", "x", "dx"});
    Sample sample;
    sample.t = rd.number(rd.member(s, sp, "t"), sp + "/t");
    if (sample.t < 0.0) rd.fail(sp + "/t", "sample times must be non-negative");
    if (k > 0 && !(sample.t > out.back().t)) {
      rd.fail(sp + "/t", "sample times must be strictly increasing");
    }
    sample.x = rd.vector(rd.member(s, sp, "x"), sp + "/x", n);
    if (s.contains("dx")) sample.dx = rd.vector(s.at("dx"), sp + "/dx", n);
    if (k > 0 && sample.dx.has_value() != out.front().dx.has_value()) {
      rd.fail(sp, "derivatives must be given for all samples or for none");
    }
    out.push_back(std::move(sample));
  }
  try {
    return Dataset(n, std::move(out), source, truncation);
  } catch (const InputError& e) {
    rd.fail(ptr, e.what());
  }
}

TrajectoryGenerator parse_generator(const Reader& rd, const json& j, Index n) {
  const std::string ptr = "/generator";
  rd.require_object(j, ptr, {"A", "x0", "times"});
  TrajectoryGenerator g;
  g.a = rd.matrix(rd.member(j, ptr, "A"), ptr + "/A", n, n);
  g.x0 = rd.vector(rd.member(j, ptr, "x0"), ptr + "/x0", n);
  g.times = rd.times(rd.member(j, ptr, "times"), ptr + "/times");
  return g;
}

ToleranceOverrides parse_tolerances(const Reader& rd, const json& j) {
  const std::string ptr = "/tolerances";
  rd.require_object(j, ptr, {"rank_tol", "gap_tol", "agree_tol"});
  ToleranceOverrides t;
  if (j.contains("rank_tol")) t.rank_tol = rd.positive(j.at("rank_tol"), ptr + "/rank_tol");
  if (j.contains("gap_tol")) t.gap_tol = rd.positive(j.at("gap_tol"), ptr + "/gap_tol");
  if (j.contains("agree_tol")) {
    t.agree_tol = rd.positive(j.at("agree_tol"), ptr + "/agree_tol");
  }
  return t;
}

}  // namespace

ProblemInstance parse_instance(std::string_view text, const std::string& source) {
  const LineMappedDocument doc(text, source);
  const Reader rd(doc);
  const json& j = doc.doc();
  rd.require_object(j, "", {"n", "Q", "dataset", "generator", "prior", "tolerances",
                            "seed", "description"});

  ProblemInstance inst;
  const json& n = rd.member(j, "", "n");
  if (!n.is_number_integer() || n.get<long long>() <= 0) {
    rd.fail("/n", "expected a positive integer");
  }
  inst.n = static_cast<Index>(n.get<long long>());
  inst.q = rd.matrix(rd.member(j, "", "Q"), "/Q", inst.n, inst.n);

  const bool has_dataset = j.contains("dataset");
  const bool has_generator = j.contains("generator");
  if (has_dataset == has_generator) {
    rd.fail("", "exactly one of 'dataset' or 'generator' is required");
  }
  if (has_generator) {
    inst.generator = parse_generator(rd, j.at("generator"), inst.n);
  } else {
    inst.dataset = parse_dataset(rd, j.at("dataset"), inst.n, inst.scheme);
  }

  inst.prior = parse_prior(rd, rd.member(j, "", "prior"), inst.n);
  if (j.contains("tolerances")) inst.tolerances = parse_tolerances(rd, j.at("tolerances"));
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      rd.fail("/seed", "expected a non-negative integer");
    }
    inst.seed = s.get<std::uint64_t>();
  }
  if (j.contains("description") && !j.at("description").is_string()) {
    rd.fail("/description", "expected a string");
  }
  return inst;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path), path.string());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json dataset_to_json(const Dataset& ds) {
  json out;
  out["derivatives"] = ds.approximate() ? "approximate" : "exact";
  if (ds.approximate()) out["truncation_estimate"] = ds.truncation_estimate();
  json samples = json::array();
  for (const Sample& s : ds.samples()) {
    json item;
    item["t"] = s.t;
    item["x"] = vector_to_json(s.x);
    if (s.dx) item["dx"] = vector_to_json(*s.dx);
    samples.push_back(std::move(item));
  }
  out["samples"] = std::move(samples);
  if (!ds.has_derivatives()) out.erase("derivatives");
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InputError("matrix rows must be arrays of equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InputError("matrix entries must be numbers");
      m(static_cast<Index>(r), static_cast<Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace lyapinf
