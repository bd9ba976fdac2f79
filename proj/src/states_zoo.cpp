#include "sepscope/states_zoo.hpp"

#include <charconv>
#include <cmath>

#include "sepscope/error.hpp"

namespace sepscope {

PureState ghz(int n, int d) {
  if (n < 2) throw Error(Errc::InvalidRange, "GHZ needs n >= 2");
  if (d != 2) throw Error(Errc::InvalidRange, "GHZ is defined for qubits only");
  SystemShape shape(n, d);
  ComplexVector v = ComplexVector::Zero(Eigen::Index(shape.dim()));
  v[0] = v[Eigen::Index(shape.dim() - 1)] = 1.0 / std::sqrt(2.0);
  return PureState(shape, std::move(v));
}

PureState phi_plus() { return ghz(2); }

DensityMatrix bell_pair_projector(int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw Error(Errc::SiteOutOfRange, "Bell pair on sites (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") of " + std::to_string(n));
  }
  return phi_plus().projector();
}

PureState w_state(int n) {
  if (n < 2) throw Error(Errc::InvalidRange, "W state needs n >= 2");
  SystemShape shape(n, 2);
  ComplexVector v = ComplexVector::Zero(Eigen::Index(shape.dim()));
  for (int site = 1; site <= n; ++site) v[Eigen::Index(shape.stride(site))] = 1.0;
  return PureState::normalized(shape, std::move(v));
}

PureState product_state(const std::string& digits, int d) {
  if (digits.empty()) throw Error(Errc::InvalidRange, "empty product label");
  std::vector<int> levels;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad digit '" + std::string(1, c) + "'");
    levels.push_back(c - '0');
  }
  SystemShape shape(int(levels.size()), d);
  ComplexVector v = ComplexVector::Zero(Eigen::Index(shape.dim()));
  v[Eigen::Index(shape.flat_index(levels))] = 1.0;
  return PureState(shape, std::move(v));
}

DensityMatrix werner(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error(Errc::InvalidWeights, "Werner weight outside [0,1]");
  const SystemShape shape(2, 2);
  ComplexMatrix m = w * phi_plus().projector().matrix() +
                    (1.0 - w) / 4.0 * ComplexMatrix::Identity(4, 4);
  return validate_density(m, shape);
}

DensityMatrix isotropic_mix(const DensityMatrix& rho, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(Errc::InvalidWeights, "noise degree outside [0,1]");
  const auto dim = Eigen::Index(rho.dim());
  ComplexMatrix m = (1.0 - q) * rho.matrix() + q / double(dim) * ComplexMatrix::Identity(dim, dim);
  return assume_density(std::move(m), rho.shape());
}

DensityMatrix bbo_state(const BBOParams& p) {
  if (!(p.p1 >= 0.0 && p.p2 >= 0.0 && p.p1 + p.p2 <= 1.0 + 1e-12)) {
    throw Error(Errc::InvalidWeights, "need p1, p2 >= 0 and p1 + p2 <= 1");
  }
  const SystemShape shape(4, 2);
  const ComplexMatrix bell = phi_plus().projector().matrix();
  const double noise = std::max(0.0, 1.0 - p.p1 - p.p2);
  ComplexMatrix m = p.p1 * kron(bell, bell) + p.p2 * ghz(4).projector().matrix() +
                    noise / 16.0 * ComplexMatrix::Identity(16, 16);
  return validate_density(m, shape);
}

NoiseCoords coords(const BBOParams& p) {
  NoiseCoords c{1.0 - p.p1 - p.p2, std::nullopt};
  if (p.p1 > 0.0) c.r = p.p2 / p.p1;
  return c;
}

BBOParams from_coords(const NoiseCoords& c) {
  const double signal = 1.0 - c.q;
  if (!c.r) return {0.0, signal};
  return {signal / (1.0 + *c.r), signal * *c.r / (1.0 + *c.r)};
}

DensityMatrix as_density(const BuiltState& s) {
  if (const auto* psi = std::get_if<PureState>(&s)) return psi->projector();
  return std::get<DensityMatrix>(s);
}

namespace {

double parse_number(const std::string& text, const std::string& spec) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw Error(Errc::ParseError, "bad number '" + text + "' in '" + spec + "'");
  }
  return v;
}

int parse_count(const std::string& text, const std::string& spec) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::ParseError, "bad count '" + text + "' in '" + spec + "'");
  }
  return v;
}

}  // namespace

BuiltState parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(Errc::ParseError, "expected kind:args in '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (kind == "ghz") return ghz(parse_count(args, spec));
    if (kind == "w") return w_state(parse_count(args, spec));
    if (kind == "product") return product_state(args);
    if (kind == "werner") return werner(parse_number(args, spec));
    if (kind == "bbo") {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw Error(Errc::ParseError, "bbo needs p1,p2");
      return bbo_state({parse_number(args.substr(0, comma), spec),
                        parse_number(args.substr(comma + 1), spec)});
    }
    if (kind == "mix") {
      const auto last = args.rfind(':');
      if (last == std::string::npos) throw Error(Errc::ParseError, "mix needs <state>:q");
      const BuiltState inner = parse_state_spec(args.substr(0, last));
      return isotropic_mix(as_density(inner), parse_number(args.substr(last + 1), spec));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, std::string(e.what()) + " (in '" + spec + "')");
  }
  throw Error(Errc::ParseError, "unknown state kind '" + kind + "'");
}

}  // namespace sepscope
