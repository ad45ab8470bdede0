#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dilhof/engine.hpp"
#include "dilhof/fspec.hpp"

namespace dilhof {

// ---------------------------------------------------------------------------
// Asymptotic approximations

/// Real-valued approximation to q(n), evaluated in double precision.
struct ApproxModel {
  enum class Kind {
    SqrtAlpha,    ///< sqrt(alpha) n, for f = floor(alpha n)
    ConstLimit,   ///< sqrt(2 a n) - a / 2, for f tending to the constant a
    PowerAnsatz,  ///< a n^p + b
  };
  Kind kind = Kind::SqrtAlpha;
  double alpha = 0;
  double a = 0;
  double p = 0;
  double b = 0;

  static ApproxModel sqrt_alpha(double alpha) { return {Kind::SqrtAlpha, alpha, 0, 0, 0}; }
  static ApproxModel const_limit(double a) { return {Kind::ConstLimit, 0, a, 0, 0}; }
  static ApproxModel power(double a, double p, double b) { return {Kind::PowerAnsatz, 0, a, p, b}; }

  double operator()(double n) const;
  std::string describe() const;
};

/// "sqrt-alpha:1/2", "sqrt-alpha:gamma2", "const-limit:4", "power:1,3/4,1/2".
ApproxModel parse_model(std::string_view text);

struct ApproximationReport {
  std::string fspec;
  Int n_max = 0;
  ApproxModel model;
  double max_abs_error = 0;
  Int max_abs_at = 0;
  double min_signed_error = 0;
  double max_signed_error = 0;
  Int q_at_n_max = 0;
  std::vector<std::pair<Int, double>> error_trace;  ///< (n, q(n) - model(n)) every `trace_stride` points
};

/// Error statistics of q(n) - model(n) over 1 <= n <= n_max. Throws when
/// Q(fspec) dies before n_max. trace_stride 0 keeps no trace.
ApproximationReport approx_error(const FSpec& fspec, const ApproxModel& model, Int n_max, Int trace_stride = 0);

/// Real-valued check of the square-root ansatz q(x) = sqrt(2 a x) - b for
/// f tending to a: the residual r(x) = q(x) - q(x - q(x-1)) - a.
struct AnsatzCheck {
  double fitted_c = 0;            ///< max over the grid of (|r(x)| - a/x) x^{3/2}, floored at 0
  double max_sqrt_scaled = 0;     ///< max |r(x)| sqrt(x); bounded away from 0 unless b = a/2
  double leading_coefficient = 0; ///< r(x) x at the largest grid point; tends to -a/2 when b = a/2
};

AnsatzCheck check_const_limit_ansatz(double a, double b, double x_lo, double x_hi, int samples);

// ---------------------------------------------------------------------------
// Self-similarity

/// q(i + shift) - q(i) = delta for every i in [lo, hi], and the interval
/// cannot be extended on either side.
struct SimilarityMatch {
  Int shift = 0;
  Int delta = 0;
  Int lo = 0;
  Int hi = 0;

  Int length() const { return hi - lo + 1; }
  bool contains(Int a, Int b) const { return lo <= a && b <= hi; }
  friend bool operator==(const SimilarityMatch&, const SimilarityMatch&) = default;
};

inline constexpr Int kDefaultMinRun = 1000;

/// All maximal constant-difference runs of length >= min_run, for each
/// shift, ordered by (shift, lo). Shifts are scanned on `threads` workers.
std::vector<SimilarityMatch> scan_self_similarity(const QTrace& trace, const std::vector<Int>& shifts,
                                                  Int min_run = kDefaultMinRun, unsigned threads = 1);

/// Every shift in [shift_lo, shift_hi].
std::vector<SimilarityMatch> scan_self_similarity(const QTrace& trace, Int shift_lo, Int shift_hi,
                                                  Int min_run = kDefaultMinRun, unsigned threads = 1);

/// Discovery mode: proposes shifts by matching windows of `window` successive
/// differences of q. Anchors are taken every `stride` indices; a shift is
/// proposed when an anchor's window reappears later. Returns at most
/// max_candidates shifts, most frequently proposed first.
std::vector<Int> propose_shifts(const QTrace& trace, Int window = 64, Int stride = 97, std::size_t max_candidates = 32);

// ---------------------------------------------------------------------------
// Perturbation

struct PerturbationTrace {
  std::string base_fspec;
  Int perturb_index = 0;
  Int amount = 0;
  Int n_max = 0;
  ExistenceOutcome base_outcome;
  ExistenceOutcome perturbed_outcome;  ///< death here is reported, not thrown
  std::vector<Int> diff;               ///< q(n) - q1(n) for n = 1..diff.size()
  std::vector<std::pair<Int, Int>> zero_regions;  ///< maximal [lo, hi] where diff is 0

  Int at(Int n) const { return diff[static_cast<std::size_t>(n - 1)]; }
};

/// q = Q(base), q1 = Q(base + amount delta(n - index)).
PerturbationTrace perturb_compare(const FSpec& base, Int index, Int amount, Int n_max);

// ---------------------------------------------------------------------------
// Figure data

/// Column-oriented numeric table; integer columns print without a decimal point.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<bool> integer_column;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const DataTable& table);
/// {"schema": ..., "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const DataTable& table, const std::string& schema);

enum class FigureKind {
  Detrended,      ///< q - n/sqrt(2) for f = floor(n/2); columns n,detrended
  ConstLimit,     ///< q and sqrt(8n) - 2 for f = floor(5 - 5/sqrt n); columns n,q,model
  Perturbation,   ///< q - q1 versus log2 n; columns log2n,diff
};

FigureKind parse_figure_kind(std::string_view name);  ///< "fig2", "ascon", "fig3"

inline constexpr std::size_t kMaxExportRows = 1'000'000;

/// Builds the figure's data. n_max 0 selects the figure's own range
/// (160000, 100000, 2^19). Unless full_resolution, every k-th row is kept
/// with k chosen so the table stays under kMaxExportRows.
DataTable figure_data(FigureKind kind, Int n_max = 0, bool full_resolution = false);

/// Writes figure_data to out_path as CSV (or JSON when json is set).
void export_figure_data(FigureKind kind, const std::string& out_path, bool json = false, Int n_max = 0,
                        bool full_resolution = false);

}  // namespace dilhof
