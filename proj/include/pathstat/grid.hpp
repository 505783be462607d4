#pragma once

// Finite families of interval patterns. A PatternGrid partitions each
// coordinate of R^k into open cells separated by finite cut points; the cut
// points themselves belong to no cell ("boundary hits").

#include <cstddef>
#include <span>
#include <vector>

#include "pathstat/pathcore.hpp"

namespace pathstat {

class PatternGrid {
 public:
  /// cuts[j] holds the strictly increasing finite cut points of coordinate j.
  explicit PatternGrid(std::vector<std::vector<double>> cuts);

  /// Same level-1 cuts on each of k coordinates.
  static PatternGrid product(const std::vector<double>& cuts, std::size_t k);

  std::size_t order() const noexcept { return cuts_.size(); }
  std::size_t cells_along(std::size_t j) const noexcept { return cuts_[j].size() + 1; }
  std::size_t cell_count() const noexcept { return cell_count_; }
  const std::vector<double>& cuts(std::size_t j) const noexcept { return cuts_[j]; }

  /// Cells are numbered lexicographically, coordinate 0 most significant.
  IntervalPattern cell(std::size_t index) const;

  /// Cell index of x along coordinate j, or -1 when x is a cut point.
  long label(std::size_t j, double x) const noexcept;

  /// Grid made of the first `k` coordinates.
  PatternGrid leading(std::size_t k) const;

  bool operator==(const PatternGrid& other) const { return cuts_ == other.cuts_; }

 private:
  std::vector<std::vector<double>> cuts_;
  std::size_t cell_count_ = 1;
};

/// All occurrence sets of a grid computed in one pass. Indices of cell c are
/// indices[offsets[c] .. offsets[c+1]).
struct CellOccurrences {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> indices;
  std::size_t horizon = 0;               // L - k + 1
  std::vector<std::size_t> hit_windows;  // start indices touching a cut point

  std::span<const std::size_t> cell(std::size_t c) const {
    return std::span<const std::size_t>(indices).subspan(offsets[c], offsets[c + 1] - offsets[c]);
  }
  std::size_t count_below(std::size_t c, std::size_t n) const;
  std::size_t hits_below(std::size_t n) const;
};

CellOccurrences cell_occurrences(const Path& path, const PatternGrid& grid);

/// Path-adaptive cut points near the q/g empirical quantiles. Cuts are placed
/// midway between neighbouring distinct values, so they never coincide with
/// a sample value; values closer than 1e-12 of the path scale count as tied.
/// Fewer than g-1 cuts come back when the path has fewer distinct levels.
std::vector<double> quantile_cuts(const Path& path, std::size_t g);

/// Cuts separating the maximum (minimum) from the rest of the path when the
/// gap exceeds gap_factor times the interquartile range. Empty otherwise.
std::vector<double> isolation_cuts(const Path& path, double gap_factor);

/// Level-1 cut sets; each member induces product grids for every order k.
struct GridFamily {
  std::vector<std::vector<double>> cut_sets;

  void add(std::vector<double> cuts);  // ignores duplicates
  std::size_t size() const noexcept { return cut_sets.size(); }
};

/// Quantile grids with g, g/2, ..., 2 cells plus isolation cuts when present.
GridFamily default_grid_family(const Path& path, std::size_t g, double isolation_gap);

}  // namespace pathstat
