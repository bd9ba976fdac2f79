#include "sepscope/json_io.hpp"

#include <charconv>
#include <cmath>

#include "sepscope/error.hpp"

namespace sepscope {

namespace {

Json number(double v, bool exact) {
  if (!exact) return v;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

double read_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
  }
  throw Error(Errc::ParseError, "expected a number, got " + j.dump());
}

SystemShape read_shape(const Json& j) {
  if (!j.contains("n") || !j.contains("d")) throw Error(Errc::ParseError, "state JSON needs n and d");
  return SystemShape(j.at("n").get<int>(), j.at("d").get<int>());
}

std::vector<double> read_array(const Json& j, const char* key, std::size_t expected) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(Errc::ParseError, std::string("missing array '") + key + "'");
  }
  const auto& arr = j.at(key);
  if (arr.size() != expected) {
    throw Error(Errc::DimensionMismatch, std::string("'") + key + "' has " +
                                             std::to_string(arr.size()) + " entries, expected " +
                                             std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) out.push_back(read_number(v));
  return out;
}

}  // namespace

Json to_json(const DensityMatrix& rho, bool exact) {
  Json re = Json::array(), im = Json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(number(m(r, c).real(), exact));
      im.push_back(number(m(r, c).imag(), exact));
    }
  }
  return {{"kind", "density"}, {"n", rho.shape().n()}, {"d", rho.shape().d()},
          {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const PureState& psi, bool exact) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(number(psi.amplitudes()[i].real(), exact));
    im.push_back(number(psi.amplitudes()[i].imag(), exact));
  }
  return {{"kind", "pure"}, {"n", psi.shape().n()}, {"d", psi.shape().d()},
          {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
  const SystemShape shape = read_shape(j);
  if (j.value("kind", std::string("density")) == "pure") return pure_from_json(j).projector();
  const std::size_t dim = shape.dim();
  const auto re = read_array(j, "re", dim * dim);
  const auto im = read_array(j, "im", dim * dim);
  const auto side = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(side, side);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(Eigen::Index(r), Eigen::Index(c)) = Complex(re[r * dim + c], im[r * dim + c]);
    }
  }
  return validate_density(m, shape);
}

PureState pure_from_json(const Json& j) {
  const SystemShape shape = read_shape(j);
  const auto re = read_array(j, "re", shape.dim());
  const auto im = read_array(j, "im", shape.dim());
  ComplexVector v(static_cast<Eigen::Index>(shape.dim()));
  for (std::size_t i = 0; i < shape.dim(); ++i) v[Eigen::Index(i)] = Complex(re[i], im[i]);
  return PureState(shape, std::move(v));
}

Json to_json(const SiteSet& s) { return s.members(); }

Json to_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& b : p.blocks()) out.push_back(to_json(b));
  return out;
}

Partition partition_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "partition must be an array of blocks");
  std::vector<SiteSet> blocks;
  int n = 0;
  for (const auto& b : j) {
    const auto sites = b.get<std::vector<int>>();
    for (int s : sites) n = std::max(n, s);
    blocks.emplace_back(sites);
  }
  return Partition(n, std::move(blocks));
}

Json to_json(const SitePermutation& p) { return p.images(); }

SitePermutation permutation_from_json(const Json& j) {
  return SitePermutation(j.get<std::vector<int>>());
}

Json to_json(const OrbitTable& t) {
  Json out = Json::array();
  for (const auto& e : t.entries) {
    Json members = Json::array();
    for (const auto& m : e.members) members.push_back(to_json(m));
    out.push_back({{"representative", to_json(e.representative)},
                   {"multiplicity", e.multiplicity},
                   {"members", std::move(members)}});
  }
  return out;
}

Json to_json(const PureReport& r) {
  Json parts = Json::array();
  for (const auto& p : r.per_partition) {
    parts.push_back({{"partition", to_json(p.partition)},
                     {"xi", p.xi},
                     {"per_block_eta", p.block_eta}});
  }
  return {{"m", r.m}, {"Rm", r.rm}, {"per_partition", std::move(parts)}};
}

Json to_json(const BoundReport& r) {
  Json parts = Json::array();
  for (const auto& p : r.per_partition) {
    Json blocks = Json::array();
    for (const auto& b : p.per_block) {
      blocks.push_back({{"block", to_json(b.block)}, {"eta_bound", b.eta}});
    }
    parts.push_back({{"partition", to_json(p.partition)},
                     {"multiplicity", p.multiplicity},
                     {"block_sum", p.block_sum},
                     {"per_block", std::move(blocks)}});
  }
  Json out = {{"m", r.m},
              {"variant", to_string(r.variant)},
              {"rm_tilde", r.rm_tilde},
              {"per_partition", std::move(parts)}};
  out["symmetry_used"] = r.symmetry_used ? to_json(*r.symmetry_used) : Json(nullptr);
  return out;
}

Json to_json(const ChainReport& r) {
  Json deltas = Json::array();
  for (const auto& d : r.per_delta) {
    deltas.push_back({{"delta", to_json(d.delta)},
                      {"lambda_sq", d.lambda_sq},
                      {"roof_upper", d.roof_upper},
                      {"margin", d.margin}});
  }
  return {{"gamma", to_json(r.gamma)},
          {"variant", to_string(r.variant)},
          {"per_delta", std::move(deltas)},
          {"lambda_sq_sum", r.lambda_sq_sum},
          {"sampled_eta", r.sampled_eta},
          {"sum_margin", r.sum_margin},
          {"ok", r.ok}};
}

}  // namespace sepscope
