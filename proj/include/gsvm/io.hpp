#pragma once

// Dataset parsing (streaming, bounded memory), the native grouped
// constraint format, and model serialization.
//
// Data files are line oriented, UTF-8, '#' starts a comment line.
// Labeled lines follow the libsvm convention "label idx:val idx:val ..."
// with 1-based strictly increasing feature indices (shifted to 0-based in
// memory). Grouped lines are "group_id margin idx:val ..."; consecutive
// lines sharing a group_id form one slack group. Optional header comments
// "# format: binary", "# dim: 123", "# k: 5" may precede the data.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsvm/core.hpp"
#include "gsvm/extensions.hpp"
#include "gsvm/online.hpp"
#include "gsvm/reductions.hpp"

namespace gsvm::io {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  long line_no;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Binary, Multiclass, Regression, Grouped };

inline std::string format_name(Format f) {
  switch (f) {
    case Format::Binary: return "binary";
    case Format::Multiclass: return "multiclass";
    case Format::Regression: return "regression";
    case Format::Grouped: return "grouped";
  }
  return "?";
}

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "binary") return Format::Binary;
  if (s == "multiclass") return Format::Multiclass;
  if (s == "regression") return Format::Regression;
  if (s == "grouped") return Format::Grouped;
  return std::nullopt;
}

struct DatasetHeader {
  std::optional<Format> format;
  std::optional<std::size_t> dim;  // raw feature dimension
  std::optional<int> k;            // multiclass class count
};

// --------------------------------------------------------------------------
// Low-level token parsing. std::from_chars keeps this locale-independent.

namespace detail {

inline std::string_view strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

inline void skip_ws(std::string_view s, std::size_t& p) {
  while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
}

inline double parse_double(std::string_view s, std::size_t& p, long line) {
  skip_ws(s, p);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data() + p, s.data() + s.size(), v);
  if (ec != std::errc() || ptr == s.data() + p) throw ParseError("malformed number", line);
  p = static_cast<std::size_t>(ptr - s.data());
  return v;
}

inline long parse_long(std::string_view s, std::size_t& p, long line) {
  skip_ws(s, p);
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + p, s.data() + s.size(), v);
  if (ec != std::errc() || ptr == s.data() + p) throw ParseError("malformed integer", line);
  p = static_cast<std::size_t>(ptr - s.data());
  return v;
}

/// "idx:val idx:val ...": 1-based strictly increasing indices, shifted to
/// 0-based; entries with value exactly zero are dropped.
inline SparseVec parse_features(std::string_view s, std::size_t& p, long line) {
  std::vector<SparseEntry> entries;
  long prev = 0;
  for (;;) {
    skip_ws(s, p);
    if (p >= s.size()) break;
    const long idx = parse_long(s, p, line);
    if (idx < 1) throw ParseError("feature index must be >= 1", line);
    if (idx <= prev) throw ParseError("feature indices not strictly increasing", line);
    if (p >= s.size() || s[p] != ':') throw ParseError("expected ':' after feature index", line);
    ++p;
    const double val = parse_double(s, p, line);
    if (!std::isfinite(val)) throw ParseError("non-finite feature value", line);
    if (val != 0.0) entries.push_back({static_cast<std::int32_t>(idx - 1), val});
    prev = idx;
  }
  return SparseVec(std::move(entries));
}

inline std::string fmt_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

// --------------------------------------------------------------------------
// Line parsers.

/// "label idx:val ..." -> LabeledExample. The label domain depends on
/// the format: +-1, an integer class >= 1, or any finite real.
inline reductions::LabeledExample parse_labeled_line(std::string_view line, Format fmt,
                                                     long line_no) {
  std::size_t p = 0;
  reductions::LabeledExample ex;
  const double label = detail::parse_double(line, p, line_no);
  switch (fmt) {
    case Format::Binary:
      if (label != 1.0 && label != -1.0)
        throw ParseError("binary label must be +1 or -1", line_no);
      break;
    case Format::Multiclass:
      if (label != static_cast<double>(static_cast<int>(label)) || label < 1.0)
        throw ParseError("multiclass label must be an integer >= 1", line_no);
      break;
    case Format::Regression:
      if (!std::isfinite(label)) throw ParseError("regression target must be finite", line_no);
      break;
    case Format::Grouped:
      throw ParseError("grouped lines are not labeled examples", line_no);
  }
  ex.label = label;
  ex.features = detail::parse_features(line, p, line_no);
  return ex;
}

/// "group_id margin idx:val ..." -> Constraint (group = the on-disk id;
/// the caller assigns local indices within each run of equal ids).
inline Constraint parse_grouped_line(std::string_view line, long line_no) {
  std::size_t p = 0;
  const long gid = detail::parse_long(line, p, line_no);
  if (gid < 0 || gid > std::numeric_limits<int>::max())
    throw ParseError("group id out of range", line_no);
  const double margin = detail::parse_double(line, p, line_no);
  if (!std::isfinite(margin)) throw ParseError("margin must be finite", line_no);
  SparseVec x = detail::parse_features(line, p, line_no);
  return make_constraint(static_cast<int>(gid), 0, std::move(x), margin);
}

inline std::string serialize_constraint(const Constraint& c) {
  std::string out = std::to_string(c.group) + ' ' + detail::fmt_double(c.l);
  for (const SparseEntry& e : c.x.entries())
    out += ' ' + std::to_string(e.index + 1) + ':' + detail::fmt_double(e.value);
  return out;
}

// --------------------------------------------------------------------------
// Whole-file readers.

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open " + path);
  }

  void rewind() {
    in_.clear();
    in_.seekg(0);
    if (!in_) throw IoError("cannot seek in " + path_);
    line_no_ = 0;
  }

  /// Next non-comment, non-blank line; nullopt at end of file.
  std::optional<std::string_view> next() {
    while (std::getline(in_, buf_)) {
      ++line_no_;
      const std::string_view s = detail::strip(buf_);
      if (s.empty() || s.front() == '#') continue;
      return s;
    }
    if (in_.bad()) throw IoError("read error in " + path_ + " near line " + std::to_string(line_no_));
    return std::nullopt;
  }

  long line_no() const { return line_no_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::string buf_;
  long line_no_ = 0;
};

/// Reads "# key: value" comment lines at the top of a file.
inline DatasetHeader read_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  DatasetHeader h;
  std::string buf;
  long line_no = 0;
  while (std::getline(in, buf)) {
    ++line_no;
    const std::string_view s = detail::strip(buf);
    if (s.empty()) continue;
    if (s.front() != '#') break;
    std::string_view body = detail::strip(s.substr(1));
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string_view key = detail::strip(body.substr(0, colon));
    const std::string_view val = detail::strip(body.substr(colon + 1));
    if (key == "format") {
      auto f = parse_format(val);
      if (!f) throw ParseError("unknown format '" + std::string(val) + "'", line_no);
      h.format = f;
    } else if (key == "dim") {
      std::size_t p = 0;
      h.dim = static_cast<std::size_t>(detail::parse_long(val, p, line_no));
    } else if (key == "k") {
      std::size_t p = 0;
      h.k = static_cast<int>(detail::parse_long(val, p, line_no));
    }
  }
  return h;
}

/// Loads a grouped constraint file. Runs of equal group ids become slack
/// groups with local indices 0,1,...; a group id that reappears after a
/// different id is rejected.
inline std::vector<Constraint> read_grouped_file(const std::string& path) {
  LineReader reader(path);
  std::vector<Constraint> out;
  std::vector<int> finished;
  int current = -1, local = 0;
  while (auto line = reader.next()) {
    Constraint c = parse_grouped_line(*line, reader.line_no());
    if (c.group != current) {
      for (int g : finished)
        if (g == c.group)
          throw ParseError("group " + std::to_string(c.group) + " reappears after other groups",
                           reader.line_no());
      if (current >= 0) finished.push_back(current);
      current = c.group;
      local = 0;
    }
    c.local = local++;
    out.push_back(std::move(c));
  }
  return out;
}

inline void write_grouped_file(const std::string& path, std::span<const Constraint> cons) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const Constraint& c : cons) out << serialize_constraint(c) << '\n';
  if (!out) throw IoError("write error in " + path);
}

// --------------------------------------------------------------------------
// Streaming example source backed by a file. Construction makes one cheap
// pre-scan pass (O(longest line) memory) to infer the raw dimension, the
// class count, and the line count; iteration then re-reads the file per
// pass, so memory stays bounded regardless of file size.

class FileSource final : public online::ExampleSource {
 public:
  /// `forced_raw_dim` pins the raw feature dimension (e.g. to a model's);
  /// data exceeding it is rejected with the expected/found sizes.
  FileSource(const std::string& path, Format fmt, reductions::FamilyParams params = {},
             std::optional<std::size_t> forced_raw_dim = std::nullopt)
      : path_(path), fmt_(fmt), params_(std::move(params)), reader_(path) {
    prescan();
    if (forced_raw_dim) {
      if (raw_dim_ > *forced_raw_dim)
        throw IoError("dimension mismatch: expected " + std::to_string(*forced_raw_dim) +
                      " features, found " + std::to_string(raw_dim_) + " in " + path);
      raw_dim_ = *forced_raw_dim;
    }
    switch (fmt_) {
      case Format::Binary:
        params_.family = reductions::Family::Binary;
        break;
      case Format::Multiclass:
        params_.family = reductions::Family::Multiclass;
        if (params_.k < 2) params_.k = std::max(2, max_label_);
        if (max_label_ > params_.k)
          throw ParseError("label " + std::to_string(max_label_) + " exceeds k=" +
                               std::to_string(params_.k),
                           max_label_line_);
        break;
      case Format::Regression:
        params_.family = reductions::Family::Regression;
        break;
      case Format::Grouped:
        break;
    }
    reset();
  }

  void reset() override {
    reader_.rewind();
    ordinal_ = -1;
    pending_second_ = false;
    run_.clear();
    next_run_.reset();
    run_group_ = -1;
    finished_.clear();
  }

  bool advance() override {
    switch (fmt_) {
      case Format::Regression:
        if (ordinal_ >= 0 && !pending_second_) {
          pending_second_ = true;  // second singleton group of the pair
          return true;
        }
        pending_second_ = false;
        [[fallthrough]];
      case Format::Binary:
      case Format::Multiclass: {
        auto line = reader_.next();
        if (!line) return false;
        ex_ = parse_labeled_line(*line, fmt_, reader_.line_no());
        check_dim(ex_.features, reader_.line_no());
        ++ordinal_;
        return true;
      }
      case Format::Grouped:
        return advance_group();
    }
    return false;
  }

  int group() const override {
    switch (fmt_) {
      case Format::Binary:
      case Format::Multiclass:
        return static_cast<int>(ordinal_);
      case Format::Regression:
        return static_cast<int>(2 * ordinal_ + (pending_second_ ? 1 : 0));
      case Format::Grouped:
        return run_group_;
    }
    return -1;
  }

  std::optional<online::Offender> worst_offender(std::span<const double> w) const override {
    switch (fmt_) {
      case Format::Binary: {
        Constraint c =
            reductions::reduce_binary(ex_, group(), params_.c, params_.v, raw_dim_);
        const double g = c.l - dot(c.x, w);
        return online::Offender{std::move(c), g};
      }
      case Format::Multiclass:
        return reductions::multiclass_worst_offender(ex_, group(), params_.k, params_.loss,
                                                     raw_dim_, w);
      case Format::Regression: {
        Constraint c = regression_constraint();
        const double g = c.l - dot(c.x, w);
        return online::Offender{std::move(c), g};
      }
      case Format::Grouped: {
        const Constraint* best = nullptr;
        double best_g = 0.0;
        for (const Constraint& c : run_) {
          const double g = c.l - dot(c.x, w);
          if (!best || g > best_g) {
            best = &c;
            best_g = g;
          }
        }
        if (!best) return std::nullopt;
        return online::Offender{*best, best_g};
      }
    }
    return std::nullopt;
  }

  bool enumerate(std::vector<Constraint>& out) const override {
    switch (fmt_) {
      case Format::Binary:
        out.push_back(reductions::reduce_binary(ex_, group(), params_.c, params_.v, raw_dim_));
        return true;
      case Format::Multiclass: {
        auto cons =
            reductions::reduce_multiclass(ex_, group(), params_.k, params_.loss, raw_dim_);
        out.insert(out.end(), std::make_move_iterator(cons.begin()),
                   std::make_move_iterator(cons.end()));
        return true;
      }
      case Format::Regression:
        out.push_back(regression_constraint());
        return true;
      case Format::Grouped:
        out.insert(out.end(), run_.begin(), run_.end());
        return true;
    }
    return false;
  }

  std::size_t dim() const override {
    switch (fmt_) {
      case Format::Binary:
        return raw_dim_ + 1;
      case Format::Multiclass:
        return raw_dim_ * static_cast<std::size_t>(params_.k);
      case Format::Regression:
      case Format::Grouped:
        return raw_dim_;
    }
    return 0;
  }

  std::size_t raw_dim() const { return raw_dim_; }
  int k() const { return params_.k; }
  long example_lines() const { return lines_; }
  const reductions::FamilyParams& params() const { return params_; }

 private:
  void prescan() {
    LineReader scan(path_);
    while (auto line = scan.next()) {
      ++lines_;
      if (fmt_ == Format::Grouped) {
        Constraint c = parse_grouped_line(*line, scan.line_no());
        raw_dim_ = std::max(raw_dim_, static_cast<std::size_t>(c.x.max_index() + 1));
      } else {
        reductions::LabeledExample ex = parse_labeled_line(*line, fmt_, scan.line_no());
        raw_dim_ = std::max(raw_dim_, static_cast<std::size_t>(ex.features.max_index() + 1));
        if (fmt_ == Format::Multiclass && ex.label_int() > max_label_) {
          max_label_ = ex.label_int();
          max_label_line_ = scan.line_no();
        }
      }
    }
    if (raw_dim_ == 0) raw_dim_ = 1;  // empty files still need a dimension
  }

  void check_dim(const SparseVec& x, long line) const {
    if (x.max_index() >= static_cast<std::int32_t>(raw_dim_))
      throw ParseError("feature index exceeds pre-scanned dimension", line);
  }

  Constraint regression_constraint() const {
    auto [lo, hi] =
        reductions::reduce_regression(ex_, static_cast<int>(ordinal_), params_.epsilon);
    return pending_second_ ? std::move(hi) : std::move(lo);
  }

  bool advance_group() {
    run_.clear();
    if (next_run_) {
      run_.push_back(std::move(*next_run_));
      next_run_.reset();
    } else {
      auto line = reader_.next();
      if (!line) return false;
      run_.push_back(parse_grouped_line(*line, reader_.line_no()));
      check_dim(run_.back().x, reader_.line_no());
    }
    run_group_ = run_.front().group;
    for (int g : finished_)
      if (g == run_group_)
        throw ParseError("group " + std::to_string(run_group_) + " reappears after other groups",
                         reader_.line_no());
    finished_.push_back(run_group_);
    run_.front().local = 0;
    int local = 1;
    while (auto line = reader_.next()) {
      Constraint c = parse_grouped_line(*line, reader_.line_no());
      check_dim(c.x, reader_.line_no());
      if (c.group != run_group_) {
        next_run_ = std::move(c);
        break;
      }
      c.local = local++;
      run_.push_back(std::move(c));
    }
    return true;
  }

  std::string path_;
  Format fmt_;
  reductions::FamilyParams params_;
  LineReader reader_;
  std::size_t raw_dim_ = 0;
  int max_label_ = 0;
  long max_label_line_ = 0;
  long lines_ = 0;

  reductions::LabeledExample ex_;
  long ordinal_ = -1;
  bool pending_second_ = false;
  std::vector<Constraint> run_;
  std::optional<Constraint> next_run_;
  int run_group_ = -1;
  std::vector<int> finished_;
};

/// Streaming source over `path`; bounded memory independent of file size.
inline std::unique_ptr<online::ExampleSource> stream_examples(const std::string& path, Format fmt,
                                                              reductions::FamilyParams params = {}) {
  return std::make_unique<FileSource>(path, fmt, std::move(params));
}

// --------------------------------------------------------------------------
// Model files: versioned text, canonical field order, shortest
// round-tripping number format, and a trailing terminator so truncation is
// detected. Weight and prior indices are 1-based on disk.

struct ModelFile {
  std::string family;  // binary | multiclass | regression | grouped | structural
  std::size_t dim = 0;
  std::size_t raw_dim = 0;
  int k = 0;
  double c = 1.0;
  double v = 1.0;
  double epsilon = 0.0;
  std::string oracle;  // structural only
  std::vector<std::int32_t> nonneg;
  std::optional<RegularizerSpec> prior;
  std::optional<double> lb;  // training lower bound, needed by verify
  std::vector<double> weights;  // dense, length dim
};

inline void save_model(const ModelFile& m, const std::string& path) {
  if (m.weights.size() != m.dim) throw std::invalid_argument("save_model: weight size mismatch");
  for (double w : m.weights)
    if (!std::isfinite(w)) throw std::invalid_argument("save_model: non-finite weight");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "gsvm model 1\n";
  out << "family " << m.family << '\n';
  out << "dim " << m.dim << '\n';
  out << "rawdim " << m.raw_dim << '\n';
  out << "k " << m.k << '\n';
  out << "c " << detail::fmt_double(m.c) << '\n';
  out << "v " << detail::fmt_double(m.v) << '\n';
  out << "epsilon " << detail::fmt_double(m.epsilon) << '\n';
  if (!m.oracle.empty()) out << "oracle " << m.oracle << '\n';
  if (!m.nonneg.empty()) {
    out << "nonneg";
    for (std::int32_t i : m.nonneg) out << ' ' << i + 1;
    out << '\n';
  }
  if (m.prior) {
    if (m.prior->dim() != m.dim) throw std::invalid_argument("save_model: prior size mismatch");
    out << "prior_w0";
    for (std::size_t i = 0; i < m.dim; ++i)
      if (m.prior->w0[i] != 0.0) out << ' ' << i + 1 << ':' << detail::fmt_double(m.prior->w0[i]);
    out << '\n';
    out << "prior_rdiag";
    for (std::size_t i = 0; i < m.dim; ++i)
      if (m.prior->r_diag[i] != 1.0)
        out << ' ' << i + 1 << ':' << detail::fmt_double(m.prior->r_diag[i]);
    out << '\n';
  }
  if (m.lb) out << "lb " << detail::fmt_double(*m.lb) << '\n';
  out << "weights";
  for (std::size_t i = 0; i < m.dim; ++i)
    if (m.weights[i] != 0.0) out << ' ' << i + 1 << ':' << detail::fmt_double(m.weights[i]);
  out << '\n';
  out << "end\n";
  if (!out) throw IoError("write error in " + path);
}

inline ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  long line_no = 0;
  const auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };
  if (!next_line() || detail::strip(line) != "gsvm model 1")
    throw ParseError("unsupported model version (expected 'gsvm model 1')", 1);

  ModelFile m;
  bool has_weights = false, has_end = false;
  std::optional<std::vector<std::pair<std::int32_t, double>>> prior_w0, prior_rd;
  while (next_line()) {
    const std::string_view s = detail::strip(line);
    if (s.empty()) continue;
    if (s == "end") {
      has_end = true;
      break;
    }
    const std::size_t sp = s.find(' ');
    const std::string_view key = s.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view() : s.substr(sp + 1);

    const auto parse_pairs = [&](std::string_view body) {
      std::vector<std::pair<std::int32_t, double>> out;
      std::size_t p = 0;
      while (true) {
        detail::skip_ws(body, p);
        if (p >= body.size()) break;
        const long idx = detail::parse_long(body, p, line_no);
        if (idx < 1) throw ParseError("model index must be >= 1", line_no);
        if (p >= body.size() || body[p] != ':') throw ParseError("expected ':'", line_no);
        ++p;
        out.emplace_back(static_cast<std::int32_t>(idx - 1), detail::parse_double(body, p, line_no));
      }
      return out;
    };

    std::size_t p = 0;
    if (key == "family") m.family = std::string(detail::strip(rest));
    else if (key == "dim") m.dim = static_cast<std::size_t>(detail::parse_long(rest, p, line_no));
    else if (key == "rawdim") m.raw_dim = static_cast<std::size_t>(detail::parse_long(rest, p, line_no));
    else if (key == "k") m.k = static_cast<int>(detail::parse_long(rest, p, line_no));
    else if (key == "c") m.c = detail::parse_double(rest, p, line_no);
    else if (key == "v") m.v = detail::parse_double(rest, p, line_no);
    else if (key == "epsilon") m.epsilon = detail::parse_double(rest, p, line_no);
    else if (key == "oracle") m.oracle = std::string(detail::strip(rest));
    else if (key == "nonneg") {
      while (true) {
        detail::skip_ws(rest, p);
        if (p >= rest.size()) break;
        const long idx = detail::parse_long(rest, p, line_no);
        if (idx < 1) throw ParseError("nonneg index must be >= 1", line_no);
        m.nonneg.push_back(static_cast<std::int32_t>(idx - 1));
      }
    } else if (key == "prior_w0") prior_w0 = parse_pairs(rest);
    else if (key == "prior_rdiag") prior_rd = parse_pairs(rest);
    else if (key == "lb") m.lb = detail::parse_double(rest, p, line_no);
    else if (key == "weights") {
      m.weights.assign(m.dim, 0.0);
      for (const auto& [idx, val] : parse_pairs(rest)) {
        if (static_cast<std::size_t>(idx) >= m.dim)
          throw ParseError("weight index exceeds dim", line_no);
        m.weights[idx] = val;
      }
      has_weights = true;
    } else {
      throw ParseError("unknown model field '" + std::string(key) + "'", line_no);
    }
  }
  if (!has_end) throw ParseError("model file truncated (missing 'end')", line_no);
  if (!has_weights) throw ParseError("model file lacks weights", line_no);
  if (m.dim == 0) throw ParseError("model file lacks dim", line_no);
  if (prior_w0 || prior_rd) {
    std::vector<double> w0(m.dim, 0.0), rd(m.dim, 1.0);
    if (prior_w0)
      for (const auto& [idx, val] : *prior_w0) {
        if (static_cast<std::size_t>(idx) >= m.dim) throw ParseError("prior index exceeds dim", line_no);
        w0[idx] = val;
      }
    if (prior_rd)
      for (const auto& [idx, val] : *prior_rd) {
        if (static_cast<std::size_t>(idx) >= m.dim) throw ParseError("prior index exceeds dim", line_no);
        rd[idx] = val;
      }
    m.prior = RegularizerSpec(std::move(w0), std::move(rd));
  }
  for (std::int32_t i : m.nonneg)
    if (static_cast<std::size_t>(i) >= m.dim) throw ParseError("nonneg index exceeds dim", line_no);
  return m;
}

}  // namespace gsvm::io
