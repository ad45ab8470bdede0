#include "dilhof/triangle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include <json.hpp>

#include "dilhof/engine.hpp"
#include "dilhof/errors.hpp"
#include "dilhof/parallel.hpp"

namespace dilhof {

TriangleTable::TriangleTable(Int n_max) : n_max_(n_max) {
  if (n_max < 1 || n_max > 31) throw InvalidParameter("triangle rows must be in [1, 31]");
  const auto cells = static_cast<std::size_t>(n_max * (n_max + 1) / 2);
  values_.assign(cells, 0);
  preds_.assign(cells, 0);
}

std::size_t TriangleTable::offset(Int i, Int n) const {
  if (n < 1 || n > n_max_ || i < 0 || i > n - 1)
    throw IndexError("no triangle cell (i=" + std::to_string(i) + ", n=" + std::to_string(n) + ")");
  return static_cast<std::size_t>(n * (n - 1) / 2 + i);
}

std::vector<Int> TriangleTable::cell(Int i, Int n) const {
  std::vector<Int> out;
  for (std::uint32_t m = cell_mask(i, n); m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

void TriangleTable::record(Int i, Int n, Int value, Int predecessor) {
  const std::size_t at = offset(i, n);
  values_[at] |= std::uint32_t{1} << value;
  if (n > 1) preds_[at] |= std::uint32_t{1} << predecessor;
}

void TriangleTable::merge(const TriangleTable& other) {
  if (other.n_max_ != n_max_) throw InvalidParameter("cannot merge triangles of different sizes");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    values_[k] |= other.values_[k];
    preds_[k] |= other.preds_[k];
  }
}

namespace {

// Depth-first walk over slow f, with q maintained incrementally. Arrays are
// 1-based; depth is the index of the last assigned term.
struct Walker {
  TriangleTable& table;
  Int n_max;
  std::array<Int, 32> f{};
  std::array<Int, 32> q{};

  void record(Int n) { table.record(f[n], n, q[n], n > 1 ? f[n - 1] : 0); }

  void descend(Int depth) {
    if (depth == n_max) return;
    const Int n = depth + 1;
    for (Int bit = 0; bit <= 1; ++bit) {
      f[n] = f[depth] + bit;
      q[n] = q[n - q[depth]] + f[n];
      record(n);
      descend(n);
    }
  }
};

}  // namespace

TriangleTable build_triangle(Int n_max, unsigned threads, Int cap) {
  if (n_max < 1) throw InvalidParameter("triangle needs n_max >= 1");
  if (n_max > cap || n_max > kMaxTriangleRows)
    throw CapExceeded("triangle enumeration is capped at " + std::to_string(std::min(cap, kMaxTriangleRows)) + " rows");

  // Fix the first `split` differences per work item.
  Int split = 0;
  while (split < n_max - 1 && (Int{1} << split) < static_cast<Int>(threads) * 8) ++split;
  const std::size_t items = std::size_t{1} << split;
  const unsigned workers = std::max(1U, threads);

  std::vector<TriangleTable> partial(workers, TriangleTable(n_max));
  parallel_blocks(items, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    Walker walker{partial[w], n_max};
    walker.f[1] = 0;
    walker.q[1] = 1;
    walker.record(1);
    for (std::size_t prefix = begin; prefix < end; ++prefix) {
      for (Int j = 1; j <= split; ++j) {
        const Int n = j + 1;
        walker.f[n] = walker.f[j] + static_cast<Int>((prefix >> (split - j)) & 1U);
        walker.q[n] = walker.q[n - walker.q[j]] + walker.f[n];
        walker.record(n);
      }
      walker.descend(split + 1);
    }
  });

  TriangleTable result(n_max);
  for (const auto& p : partial) result.merge(p);
  return result;
}

std::vector<Int> USet::values() const {
  std::vector<Int> out;
  for (Int v = lo(); v <= hi(); ++v) out.push_back(v);
  return out;
}

USet u_set(Int i, Int n) {
  if (n < 1 || i < 0 || i > n - 1)
    throw IndexError("U_{i,n} needs 0 <= i <= n-1 (i=" + std::to_string(i) + ", n=" + std::to_string(n) + ")");
  return {i, n};
}

ContainmentReport check_containment(const TriangleTable& table) {
  ContainmentReport report;
  for (Int n = 1; n <= table.n_max(); ++n) {
    std::uint32_t row_union = 0;
    for (Int i = 0; i < n; ++i) {
      const auto values = table.cell(i, n);
      const USet u = u_set(i, n);
      const bool inside =
          !values.empty() && std::all_of(values.begin(), values.end(), [&](Int v) { return u.contains(v); });
      if (!inside)
        report.violations.push_back({i, n});
      else if (static_cast<Int>(values.size()) < u.size())
        report.strict.push_back({i, n});
      row_union |= table.cell_mask(i, n);

      if (n > 1) {
        // Slow f can only reach f(n) = i from f(n-1) in {i-1, i}.
        std::uint32_t allowed = std::uint32_t{1} << i;
        if (i > 0) allowed |= std::uint32_t{1} << (i - 1);
        const std::uint32_t preds = table.predecessor_mask(i, n);
        if (preds == 0 || (preds & ~allowed) != 0) report.bad_predecessors.push_back({i, n});
      }
    }
    const std::uint32_t full = ((std::uint32_t{1} << n) - 1) << 1;  // bits 1..n
    if ((row_union & ~full) != 0) report.rows_not_bounded.push_back(n);
    if (row_union != full) report.rows_not_full.push_back(n);

    if (n >= 2) {
      std::vector<Int> expected;
      for (Int v = 2; v <= floor_half_plus_sqrt_2n(n); ++v) expected.push_back(v);
      if (table.cell(1, n) != expected) report.t1_mismatch.push_back(n);
    }
  }
  return report;
}

std::vector<Int> min_witness(Int i, Int n) {
  if (n < 1 || i < 0 || i > n - 1) throw IndexError("witness needs 0 <= i <= n-1");
  std::vector<Int> f(static_cast<std::size_t>(n), 0);
  for (Int k = 1; k <= i; ++k) f[static_cast<std::size_t>(n - i - 1 + k)] = k;
  return f;
}

MinReport check_min(const TriangleTable& table) {
  MinReport report;
  for (Int n = 1; n <= table.n_max(); ++n) {
    for (Int i = 0; i < n; ++i) {
      const auto values = table.cell(i, n);
      if (values.empty() || values.front() != i + 1) report.wrong_minimum.push_back({i, n});
      const auto witness = min_witness(i, n);
      const QTrace trace = compute_q(std::span<const Int>(witness));
      if (!trace.outcome.exists() || trace.q(n) != i + 1) report.wrong_witness.push_back({i, n});
    }
  }
  return report;
}

std::string format_set(const std::vector<Int>& values) {
  if (values.empty()) return "{}";
  const bool interval = values.back() - values.front() + 1 == static_cast<Int>(values.size());
  if (values.size() == 1) return "{" + std::to_string(values.front()) + "}";
  if (interval) return "{" + std::to_string(values.front()) + ":" + std::to_string(values.back()) + "}";
  std::string s = "{";
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? "," : "") + std::to_string(values[k]);
  return s + "}";
}

std::string render_triangle_text(const TriangleTable& table) {
  std::vector<std::string> rows;
  std::size_t width = 0;
  for (Int n = 1; n <= table.n_max(); ++n) {
    std::string row;
    for (Int i = 0; i < n; ++i) row += (i ? "    " : "") + format_set(table.cell(i, n));
    width = std::max(width, row.size());
    rows.push_back(std::move(row));
  }
  const std::size_t label = std::to_string(table.n_max()).size();
  std::ostringstream out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string n = std::to_string(k + 1);
    out << std::string(label - n.size(), ' ') << n << "  " << std::string((width - rows[k].size()) / 2, ' ')
        << rows[k] << '\n';
  }
  return out.str();
}

std::string render_triangle_json(const TriangleTable& table) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (Int n = 1; n <= table.n_max(); ++n)
    for (Int i = 0; i < n; ++i) cells.push_back({{"n", n}, {"i", i}, {"values", table.cell(i, n)}});
  nlohmann::ordered_json doc;
  doc["schema"] = "dilhof.triangle/1";
  doc["n_max"] = table.n_max();
  doc["cells"] = std::move(cells);
  return doc.dump() + "\n";
}

}  // namespace dilhof
