#include "sepscope/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <thread>

#include "sepscope/error.hpp"
#include "sepscope/partitions.hpp"

namespace sepscope {

ColorBin color_bin(double value) noexcept {
  if (value <= 1e-12) return ColorBin::Red;
  if (value <= 0.25) return ColorBin::DarkPurple;
  if (value <= 0.5) return ColorBin::BrightPurple;
  if (value <= 0.75) return ColorBin::Blue;
  if (value <= 1.0) return ColorBin::Ash;
  return ColorBin::Overflow;
}

const char* to_string(ColorBin bin) noexcept {
  switch (bin) {
    case ColorBin::Red: return "red";
    case ColorBin::DarkPurple: return "dark-purple";
    case ColorBin::BrightPurple: return "bright-purple";
    case ColorBin::Blue: return "blue";
    case ColorBin::Ash: return "ash";
    case ColorBin::Overflow: return "overflow";
  }
  return "unknown";
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  std::string s(buf, ptr);
  if (s == "-0") s = "0";
  return s;
}

unsigned default_threads() {
  if (const char* env = std::getenv("SEPSCOPE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return unsigned(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::array<std::optional<double>, 3> sweep_point(const BBOParams& p, const std::vector<int>& ms,
                                                 const BoundOptions& bound, bool use_symmetry) {
  static const std::vector<SitePermutation> group = vierergruppe();
  const DensityMatrix rho = bbo_state(p);
  BlockBoundCache cache;
  std::array<std::optional<double>, 3> out;
  for (int m : ms) {
    if (m < 2 || m > 4) continue;
    const auto report = use_symmetry ? rm_bound(rho, m, bound, group, &cache)
                                     : rm_bound(rho, m, bound, std::nullopt, &cache);
    out[std::size_t(m - 2)] = report.rm_tilde;
  }
  return out;
}

SweepGrid run_sweep(const SweepOptions& opts) {
  if (opts.p1_steps < 2 || opts.p2_steps < 2) {
    throw Error(Errc::InvalidRange, "sweep needs at least 2 steps per axis");
  }
  SweepGrid grid{opts.p1_steps, opts.p2_steps, {}};
  const long long a = opts.p1_steps - 1;
  const long long b = opts.p2_steps - 1;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      // p1 + p2 <= 1  <=>  i*b + j*a <= a*b, decided in integers
      if (i * b + j * a > a * b) continue;
      const double p1 = double(i) / double(a);
      const double p2 = double(j) / double(b);
      NoiseCoords c{double(a * b - i * b - j * a) / double(a * b), std::nullopt};
      if (i > 0) c.r = double(j * a) / double(i * b);
      grid.rows.push_back({i, j, p1, p2, c, {}});
    }
  }

  const unsigned threads = opts.threads ? opts.threads : default_threads();
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t k = next++; k < grid.rows.size(); k = next++) {
        auto& row = grid.rows[k];
        row.rm = sweep_point({row.p1, row.p2}, opts.ms, opts.bound, opts.use_symmetry);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = grid.rows.size();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return grid;
}

void write_csv(const SweepGrid& grid, std::ostream& out) {
  out << "p1,p2,q,r,R2,R3,R4,bin2,bin3,bin4\n";
  for (const auto& row : grid.rows) {
    out << format_number(row.p1) << ',' << format_number(row.p2) << ','
        << format_number(row.coords.q) << ','
        << (row.coords.r ? format_number(*row.coords.r) : std::string("inf"));
    for (const auto& v : row.rm) out << ',' << (v ? format_number(*v) : std::string());
    for (const auto& v : row.rm) out << ',' << (v ? to_string(color_bin(*v)) : "");
    out << '\n';
  }
}

}  // namespace sepscope
