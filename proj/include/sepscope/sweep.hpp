#pragma once

// (p1, p2) grid sweeps of R̃_2..R̃_4 over the four-qubit noise family, with
// contour-bin labels and a reproducible CSV writer.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sepscope/bounds_mixed.hpp"
#include "sepscope/states_zoo.hpp"

namespace sepscope {

enum class ColorBin { Red, DarkPurple, BrightPurple, Blue, Ash, Overflow };

/// red: value <= 1e-12; then (0,.25], (.25,.5], (.5,.75], (.75,1]; > 1 is
/// overflow.
ColorBin color_bin(double value) noexcept;
const char* to_string(ColorBin bin) noexcept;

struct SweepRow {
  int i;  // p1 index
  int j;  // p2 index
  double p1;
  double p2;
  NoiseCoords coords;
  std::array<std::optional<double>, 3> rm;  // R̃_2, R̃_3, R̃_4
};

struct SweepGrid {
  int p1_steps;
  int p2_steps;
  std::vector<SweepRow> rows;  // p1 outer, p2 inner
};

struct SweepOptions {
  int p1_steps = 101;
  int p2_steps = 101;
  std::vector<int> ms{2, 3, 4};
  BoundOptions bound{};
  bool use_symmetry = true;  // Vierergruppe orbit reduction
  unsigned threads = 0;      // 0: hardware concurrency
};

/// Grid values p1 = i/(p1_steps-1), p2 = j/(p2_steps-1); only points with
/// p1 + p2 <= 1 are kept.
SweepGrid run_sweep(const SweepOptions& opts);

/// Evaluates R̃_m for every m in `ms` at one point (m outside 2..4 ignored).
std::array<std::optional<double>, 3> sweep_point(const BBOParams& p, const std::vector<int>& ms,
                                                 const BoundOptions& bound, bool use_symmetry);

/// 12 significant digits, locale independent.
std::string format_number(double v);

/// Header `p1,p2,q,r,R2,R3,R4,bin2,bin3,bin4`; r = "inf" when p1 = 0;
/// uncomputed columns are left empty.
void write_csv(const SweepGrid& grid, std::ostream& out);

/// SEPSCOPE_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace sepscope
