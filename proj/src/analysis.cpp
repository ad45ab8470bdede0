#include "dilhof/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <unordered_map>

#include <json.hpp>

#include "dilhof/errors.hpp"
#include "dilhof/parallel.hpp"

namespace dilhof {

double ApproxModel::operator()(double n) const {
  switch (kind) {
    case Kind::SqrtAlpha:
      return std::sqrt(alpha) * n;
    case Kind::ConstLimit:
      return std::sqrt(2 * a * n) - a / 2;
    case Kind::PowerAnsatz:
      return a * std::pow(n, p) + b;
  }
  return 0;
}

std::string ApproxModel::describe() const {
  char buf[128];
  switch (kind) {
    case Kind::SqrtAlpha:
      std::snprintf(buf, sizeof buf, "sqrt(%.17g) n", alpha);
      break;
    case Kind::ConstLimit:
      std::snprintf(buf, sizeof buf, "sqrt(2*%.17g n) - %.17g/2", a, a);
      break;
    case Kind::PowerAnsatz:
      std::snprintf(buf, sizeof buf, "%.17g n^%.17g + %.17g", a, p, b);
      break;
  }
  return buf;
}

ApproxModel parse_model(std::string_view text) {
  auto number = [](std::string_view s) -> double {
    if (s == "gamma2") return (3 - std::sqrt(5.0)) / 2;
    return static_cast<double>(parse_rational(s).value());
  };
  try {
    if (text.starts_with("sqrt-alpha:")) return ApproxModel::sqrt_alpha(number(text.substr(11)));
    if (text.starts_with("const-limit:")) return ApproxModel::const_limit(number(text.substr(12)));
    if (text.starts_with("power:")) {
      std::vector<double> parts;
      std::string_view rest = text.substr(6);
      while (true) {
        const auto comma = rest.find(',');
        parts.push_back(number(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      if (parts.size() == 3) return ApproxModel::power(parts[0], parts[1], parts[2]);
    }
  } catch (const InvalidFSpec&) {
  }
  throw InvalidParameter("cannot parse model '" + std::string(text) +
                         "' (expected sqrt-alpha:X, const-limit:A or power:A,P,B)");
}

ApproximationReport approx_error(const FSpec& fspec, const ApproxModel& model, Int n_max, Int trace_stride) {
  const QTrace t = compute_q(fspec, n_max);
  if (!t.outcome.exists())
    throw Error("Q(" + to_string(fspec) + ") died at n = " + std::to_string(t.outcome.n));
  ApproximationReport r;
  r.fspec = to_string(fspec);
  r.n_max = n_max;
  r.model = model;
  r.q_at_n_max = t.q(n_max);
  r.min_signed_error = INFINITY;
  r.max_signed_error = -INFINITY;
  for (Int n = 1; n <= n_max; ++n) {
    const double e = static_cast<double>(t.q(n)) - model(static_cast<double>(n));
    r.min_signed_error = std::min(r.min_signed_error, e);
    r.max_signed_error = std::max(r.max_signed_error, e);
    if (std::fabs(e) > r.max_abs_error) {
      r.max_abs_error = std::fabs(e);
      r.max_abs_at = n;
    }
    if (trace_stride > 0 && (n - 1) % trace_stride == 0) r.error_trace.emplace_back(n, e);
  }
  return r;
}

AnsatzCheck check_const_limit_ansatz(double a, double b, double x_lo, double x_hi, int samples) {
  if (samples < 2 || !(x_lo > 1) || !(x_hi > x_lo)) throw InvalidParameter("ansatz grid needs 1 < x_lo < x_hi");
  const long double A = a, B = b, s2a = std::sqrt(2 * A);
  AnsatzCheck out;
  // Log-spaced grid. q(x) - q(x - y) is taken as sqrt(2a) y / (sqrt x + sqrt(x - y))
  // since the direct difference cancels away the O(1/x) term for large x.
  const double ratio = std::log(x_hi / x_lo) / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    const long double xl = static_cast<long double>(x_lo) * std::exp(static_cast<long double>(ratio) * k);
    const long double y = s2a * std::sqrt(xl - 1) - B;
    const double r = static_cast<double>(s2a * y / (std::sqrt(xl) + std::sqrt(xl - y)) - A);
    const double x = static_cast<double>(xl);
    out.fitted_c = std::max(out.fitted_c, (std::fabs(r) - a / x) * std::pow(x, 1.5));
    out.max_sqrt_scaled = std::max(out.max_sqrt_scaled, std::fabs(r) * std::sqrt(x));
    if (k == samples - 1) out.leading_coefficient = r * x;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void scan_one_shift(const QTrace& trace, Int s, Int min_run, std::vector<SimilarityMatch>& out) {
  const Int first = trace.first_index;
  const Int last = trace.last_index() - s;
  if (s < 1 || last < first) return;
  Int lo = first;
  Int d = trace.q(first + s) - trace.q(first);
  for (Int i = first + 1; i <= last + 1; ++i) {
    const bool end = i > last;
    const Int di = end ? 0 : trace.q(i + s) - trace.q(i);
    if (end || di != d) {
      if (i - lo >= min_run) out.push_back({s, d, lo, i - 1});
      lo = i;
      d = di;
    }
  }
}

}  // namespace

std::vector<SimilarityMatch> scan_self_similarity(const QTrace& trace, const std::vector<Int>& shifts, Int min_run,
                                                  unsigned threads) {
  if (min_run < 2) throw InvalidParameter("min_run must be >= 2");
  std::vector<Int> sorted = shifts;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::vector<SimilarityMatch>> per_shift(sorted.size());
  parallel_blocks(sorted.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) scan_one_shift(trace, sorted[k], min_run, per_shift[k]);
  });
  std::vector<SimilarityMatch> out;
  for (auto& v : per_shift) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<SimilarityMatch> scan_self_similarity(const QTrace& trace, Int shift_lo, Int shift_hi, Int min_run,
                                                  unsigned threads) {
  if (shift_lo < 1 || shift_hi < shift_lo) throw InvalidParameter("shift range must satisfy 1 <= lo <= hi");
  std::vector<Int> shifts;
  for (Int s = shift_lo; s <= shift_hi; ++s) shifts.push_back(s);
  return scan_self_similarity(trace, shifts, min_run, threads);
}

std::vector<Int> propose_shifts(const QTrace& trace, Int window, Int stride, std::size_t max_candidates) {
  if (window < 1 || stride < 1) throw InvalidParameter("window and stride must be >= 1");
  const Int count = trace.computed() - 1;  // number of successive differences
  if (count < window) return {};
  std::vector<Int> diff(static_cast<std::size_t>(count));
  for (Int k = 0; k < count; ++k) diff[static_cast<std::size_t>(k)] = trace.q_values[k + 1] - trace.q_values[k];

  // Polynomial rolling hash over each window start.
  constexpr std::uint64_t base = 0x100000001b3ULL;
  std::uint64_t top = 1;
  for (Int k = 1; k < window; ++k) top *= base;
  const Int starts = count - window + 1;
  std::vector<std::uint64_t> hash(static_cast<std::size_t>(starts));
  std::uint64_t h = 0;
  for (Int k = 0; k < window; ++k) h = h * base + static_cast<std::uint64_t>(diff[k] + 0x9e37);
  hash[0] = h;
  for (Int k = 1; k < starts; ++k) {
    h = (h - top * static_cast<std::uint64_t>(diff[k - 1] + 0x9e37)) * base +
        static_cast<std::uint64_t>(diff[k + window - 1] + 0x9e37);
    hash[static_cast<std::size_t>(k)] = h;
  }

  std::unordered_map<std::uint64_t, std::vector<Int>> buckets;
  for (Int k = 0; k < starts; ++k) buckets[hash[static_cast<std::size_t>(k)]].push_back(k);

  // Long constant runs make huge buckets; only the nearest later matches of
  // each anchor are examined.
  constexpr std::size_t kBucketScan = 64;
  std::map<Int, Int> votes;
  for (Int anchor = 0; anchor < starts; anchor += stride) {
    const auto& bucket = buckets[hash[static_cast<std::size_t>(anchor)]];
    auto it = std::upper_bound(bucket.begin(), bucket.end(), anchor);
    for (std::size_t seen = 0; it != bucket.end() && seen < kBucketScan; ++it, ++seen) {
      if (!std::equal(diff.begin() + anchor, diff.begin() + anchor + window, diff.begin() + *it)) continue;
      ++votes[*it - anchor];
    }
  }
  std::vector<std::pair<Int, Int>> ranked(votes.begin(), votes.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<Int> out;
  for (std::size_t k = 0; k < ranked.size() && k < max_candidates; ++k) out.push_back(ranked[k].first);
  return out;
}

// ---------------------------------------------------------------------------

PerturbationTrace perturb_compare(const FSpec& base, Int index, Int amount, Int n_max) {
  const QTrace q = compute_q(base, n_max);
  const QTrace q1 = compute_q(FSpec::perturbed(base, index, amount), n_max);
  PerturbationTrace p;
  p.base_fspec = to_string(base);
  p.perturb_index = index;
  p.amount = amount;
  p.n_max = n_max;
  p.base_outcome = q.outcome;
  p.perturbed_outcome = q1.outcome;
  const Int common = std::min(q.computed(), q1.computed());
  p.diff.resize(static_cast<std::size_t>(common));
  for (Int n = 1; n <= common; ++n) p.diff[static_cast<std::size_t>(n - 1)] = q.q(n) - q1.q(n);

  Int lo = 0;
  for (Int n = 1; n <= common + 1; ++n) {
    const bool zero = n <= common && p.at(n) == 0;
    if (zero && lo == 0) lo = n;
    if (!zero && lo != 0) {
      p.zero_regions.emplace_back(lo, n - 1);
      lo = 0;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

namespace {

std::string format_cell(double v, bool integer) {
  if (integer) return std::to_string(static_cast<Int>(v));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const DataTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c], table.integer_column[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const DataTable& table, const std::string& schema) {
  nlohmann::ordered_json doc;
  doc["schema"] = schema;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (table.integer_column[c])
        r.push_back(static_cast<Int>(row[c]));
      else
        r.push_back(row[c]);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump() << '\n';
}

FigureKind parse_figure_kind(std::string_view name) {
  if (name == "fig2") return FigureKind::Detrended;
  if (name == "ascon") return FigureKind::ConstLimit;
  if (name == "fig3") return FigureKind::Perturbation;
  throw InvalidParameter("unknown figure '" + std::string(name) + "' (expected fig2, ascon or fig3)");
}

DataTable figure_data(FigureKind kind, Int n_max, bool full_resolution) {
  const FSpec half = FSpec::floor_rational(1, 2);
  DataTable t;
  const auto stride_for = [&](Int rows) -> Int {
    if (full_resolution) return 1;
    return std::max<Int>(1, (rows + static_cast<Int>(kMaxExportRows) - 1) / static_cast<Int>(kMaxExportRows));
  };
  switch (kind) {
    case FigureKind::Detrended: {
      if (n_max == 0) n_max = 160000;
      const QTrace q = compute_q(half, n_max);
      t.columns = {"n", "detrended"};
      t.integer_column = {true, false};
      const Int stride = stride_for(q.computed());
      for (Int n = 1; n <= q.computed(); n += stride)
        t.rows.push_back({static_cast<double>(n), static_cast<double>(q.q(n)) - n / std::numbers::sqrt2});
      break;
    }
    case FigureKind::ConstLimit: {
      if (n_max == 0) n_max = 100000;
      const QTrace q = compute_q(FSpec::const_limit(fkind::ConstLimitForm::Sqrt, {5, 1}), n_max);
      const ApproxModel s = ApproxModel::const_limit(4);
      t.columns = {"n", "q", "model"};
      t.integer_column = {true, true, false};
      const Int stride = stride_for(q.computed());
      for (Int n = 1; n <= q.computed(); n += stride)
        t.rows.push_back({static_cast<double>(n), static_cast<double>(q.q(n)), s(static_cast<double>(n))});
      break;
    }
    case FigureKind::Perturbation: {
      if (n_max == 0) n_max = Int{1} << 19;
      const PerturbationTrace p = perturb_compare(half, 16, 1, n_max);
      t.columns = {"log2n", "diff"};
      t.integer_column = {false, true};
      const auto rows = static_cast<Int>(p.diff.size());
      const Int stride = stride_for(rows);
      for (Int n = 1; n <= rows; n += stride)
        t.rows.push_back({std::log2(static_cast<double>(n)), static_cast<double>(p.at(n))});
      break;
    }
  }
  return t;
}

void export_figure_data(FigureKind kind, const std::string& out_path, bool json, Int n_max, bool full_resolution) {
  const DataTable table = figure_data(kind, n_max, full_resolution);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  if (json)
    write_json(out, table, "dilhof.figure/1");
  else
    write_csv(out, table);
  if (!out) throw IoError("write to '" + out_path + "' failed");
}

}  // namespace dilhof
