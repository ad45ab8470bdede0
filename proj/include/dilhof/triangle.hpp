#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilhof/intmath.hpp"

namespace dilhof {

/// Cell (i, n) holds every value q(n) reached by some slow f (f(1) = 0,
/// differences in {0, 1}) with f(n) = i, for 0 <= i <= n - 1.
///
/// Values are at most n <= 24, so a cell is stored as a bitmask with bit v
/// set when v is attained. Alongside each cell the table records which
/// f(n-1) values led into it.
class TriangleTable {
 public:
  explicit TriangleTable(Int n_max);

  Int n_max() const { return n_max_; }

  /// Sorted attained values of T_{i,n}.
  std::vector<Int> cell(Int i, Int n) const;
  std::uint32_t cell_mask(Int i, Int n) const { return values_[offset(i, n)]; }
  /// Bit j set when some contributing f has f(n-1) = j. Zero on row 1.
  std::uint32_t predecessor_mask(Int i, Int n) const { return preds_[offset(i, n)]; }

  void record(Int i, Int n, Int value, Int predecessor);
  void merge(const TriangleTable& other);

  friend bool operator==(const TriangleTable&, const TriangleTable&) = default;

 private:
  std::size_t offset(Int i, Int n) const;

  Int n_max_;
  std::vector<std::uint32_t> values_;
  std::vector<std::uint32_t> preds_;
};

inline constexpr Int kMaxTriangleRows = 24;

/// Exhaustive construction over every slow f of length n_max. Each member of
/// F_n is a prefix of members of F_{n_max}, so a single depth-first walk
/// of the 0/1 difference tree fills every row. The top bits of the walk are
/// split into contiguous blocks run on `threads` workers and merged by union.
TriangleTable build_triangle(Int n_max, unsigned threads = 1, Int cap = kMaxTriangleRows);

/// Closed-form superset: {1} for i = 0, {i+1, ..., n} otherwise.
struct USet {
  Int i = 0;
  Int n = 1;

  Int lo() const { return i == 0 ? 1 : i + 1; }
  Int hi() const { return i == 0 ? 1 : n; }
  Int size() const { return hi() - lo() + 1; }
  bool contains(Int v) const { return v >= lo() && v <= hi(); }
  std::vector<Int> values() const;
};

USet u_set(Int i, Int n);

struct CellRef {
  Int i = 0;
  Int n = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct ContainmentReport {
  std::vector<CellRef> violations;       ///< T not a subset of U
  std::vector<CellRef> strict;           ///< T a proper subset of U
  std::vector<Int> rows_not_bounded;     ///< rows whose union is not inside {1:n}
  std::vector<Int> rows_not_full;        ///< rows whose union is not all of {1:n}
  std::vector<Int> t1_mismatch;          ///< rows where T_{1,n} != {2 : w(n)}
  std::vector<CellRef> bad_predecessors; ///< f(n-1) outside {i-1, i}

  bool ok() const {
    return violations.empty() && rows_not_bounded.empty() && t1_mismatch.empty() && bad_predecessors.empty();
  }
};

ContainmentReport check_containment(const TriangleTable& table);

struct MinReport {
  std::vector<CellRef> wrong_minimum;  ///< min T_{i,n} != i + 1
  std::vector<CellRef> wrong_witness;  ///< (0,...,0,1,2,...,i) does not give q(n) = i + 1
  bool ok() const { return wrong_minimum.empty() && wrong_witness.empty(); }
};

MinReport check_min(const TriangleTable& table);

/// The slow f of length n with n - i leading zeros followed by 1, 2, ..., i.
std::vector<Int> min_witness(Int i, Int n);

/// "{k}" or "{k:l}" for intervals, "{a,b,c}" otherwise.
std::string format_set(const std::vector<Int>& values);

/// Triangular text layout, one centred row per n, cells separated by four spaces.
std::string render_triangle_text(const TriangleTable& table);

/// {"schema": ..., "n_max": N, "cells": [{"n":4,"i":1,"values":[2,3]}, ...]}
std::string render_triangle_json(const TriangleTable& table);

}  // namespace dilhof
