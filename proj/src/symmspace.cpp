#include "cpheat/symmspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>

#include "cpheat/specfun.hpp"

namespace cpheat {

namespace {

struct CatalogEntry {
  RankOneSpace space;
  std::vector<std::string> aliases;
};

std::map<std::string, std::string> parse_pairs(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "catalog token without '=': " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

double field(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) fail(ErrorCode::InvalidArgument, "catalog entry lacks " + key);
  return std::stod(it->second);
}

// Numerical checks of an entry: the beta-flip identity and the growth of the
// Plancherel density.
void check_entry_numerics(const RankOneSpace& s) {
  const JacobiParams p = s.jacobi();
  const JacobiParams flipped{p.alpha, -p.beta};
  for (double r : {0.4, 1.3, 3.0}) {
    const Complex a = jacobi_phi(p, 0.7, r);
    const Complex b = std::pow(std::cosh(r), -2.0 * p.beta) * jacobi_phi(flipped, 0.7, r);
    if (std::abs(a - b) > 1e-9 * std::abs(a))
      fail(ErrorCode::InvalidArgument, "catalog entry " + s.name + " fails the beta-flip identity");
  }
  const double e = 2.0 * p.alpha + 1.0;
  const double g10 = plancherel_density(p, 10.0) / std::pow(11.0, e);
  const double g100 = plancherel_density(p, 100.0) / std::pow(101.0, e);
  if (!(g10 > 0.0) || g100 / g10 > 10.0 || g10 / g100 > 10.0)
    fail(ErrorCode::InvalidArgument, "catalog entry " + s.name + " has unexpected Plancherel growth");
}

std::vector<CatalogEntry> load_catalog() {
  std::vector<CatalogEntry> out;
  std::istringstream in(preset_catalog_text());
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto kv = parse_pairs(line);
    const auto name = kv.find("name");
    if (name == kv.end()) fail(ErrorCode::InvalidArgument, "catalog entry without a name");
    CatalogEntry e;
    e.space.name = name->second;
    e.space.m_gamma = static_cast<int>(field(kv, "m_gamma"));
    e.space.m_2gamma = static_cast<int>(field(kv, "m_2gamma"));
    e.space.alpha = field(kv, "alpha");
    e.space.beta = field(kv, "beta");
    e.space.rho0 = field(kv, "rho0");
    e.space.dim_X = static_cast<int>(field(kv, "dim_X"));
    e.space.V = static_cast<int>(field(kv, "V"));
    e.space.validate();
    check_entry_numerics(e.space);
    if (const auto a = kv.find("aliases"); a != kv.end()) {
      std::istringstream as(a->second);
      std::string alias;
      while (std::getline(as, alias, ',')) e.aliases.push_back(alias);
    }
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = load_catalog();
  return table;
}

}  // namespace

void RankOneSpace::validate() const {
  if (m_gamma < 1 || m_2gamma < 0) fail(ErrorCode::InvalidArgument, name + ": bad multiplicities");
  const double a = 0.5 * (m_gamma + m_2gamma - 1);
  const double b = 0.5 * (m_2gamma - 1);
  if (std::abs(alpha - a) > 1e-12 || std::abs(beta - b) > 1e-12)
    fail(ErrorCode::InvalidArgument, name + ": alpha, beta disagree with the multiplicities");
  if (std::abs(rho0 - (alpha + beta + 1.0)) > 1e-12 || std::abs(rho0 - 0.5 * (m_gamma + 2 * m_2gamma)) > 1e-12)
    fail(ErrorCode::InvalidArgument, name + ": rho0 inconsistent");
  if (V != m_gamma + m_2gamma || dim_X != V + 1)
    fail(ErrorCode::InvalidArgument, name + ": V or dim_X inconsistent");
  jacobi().validate();
}

RankOneSpace make_space(const std::string& name, int m_gamma, int m_2gamma) {
  RankOneSpace s;
  s.name = name;
  s.m_gamma = m_gamma;
  s.m_2gamma = m_2gamma;
  s.alpha = 0.5 * (m_gamma + m_2gamma - 1);
  s.beta = 0.5 * (m_2gamma - 1);
  s.rho0 = s.alpha + s.beta + 1.0;
  s.V = m_gamma + m_2gamma;
  s.dim_X = s.V + 1;
  s.validate();
  return s;
}

const std::vector<RankOneSpace>& catalog() {
  static const std::vector<RankOneSpace> spaces = [] {
    std::vector<RankOneSpace> v;
    for (const auto& e : entries()) v.push_back(e.space);
    return v;
  }();
  return spaces;
}

RankOneSpace preset(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.space.name == name) return e.space;
    if (std::find(e.aliases.begin(), e.aliases.end(), name) != e.aliases.end()) return e.space;
  }
  static const std::regex family_form(R"(Hn_(real|complex|quaternionic)\((\d+)\))");
  static const std::regex short_form(R"(H(\d+)_(real|complex|quaternionic))");
  std::smatch m;
  std::string family;
  int n = 0;
  if (std::regex_match(name, m, family_form)) {
    family = m[1];
    n = std::stoi(m[2]);
  } else if (std::regex_match(name, m, short_form)) {
    family = m[2];
    n = std::stoi(m[1]);
  } else {
    fail(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
  }
  if (n < 2 || n > 64) fail(ErrorCode::UnknownPreset, "preset index out of range in '" + name + "'");
  const std::string canonical = "H" + std::to_string(n) + "_" + family;
  for (const auto& e : entries())
    if (e.space.name == canonical) return e.space;
  if (family == "real") return make_space(canonical, n - 1, 0);
  if (family == "complex") return make_space(canonical, 2 * (n - 1), 1);
  return make_space(canonical, 4 * (n - 1), 3);
}

std::vector<KType> ktypes_below(const RankOneSpace& space, double m) {
  std::vector<KType> out;
  if (!(m >= 0.0)) fail(ErrorCode::InvalidArgument, "ktypes_below needs m >= 0");
  for (int p = 0; p < m; ++p) {
    for (int q = -p; q <= p; ++q) {
      const KType d{p, q};
      if (!d.valid()) continue;
      if (space.real_hyperbolic() && q != 0) continue;
      out.push_back(d);
    }
  }
  return out;
}

KType tilde_delta(KType delta) { return {delta.p, std::abs(delta.q)}; }

Complex kostant_q(const RankOneSpace& space, KType delta, Complex lambda) {
  if (!delta.valid()) fail(ErrorCode::InvalidArgument, "invalid K-type");
  const Complex il = Complex(0.0, 1.0) * lambda;
  return pochhammer(0.5 * (space.alpha + space.beta + 1.0 + il), (delta.p + delta.q) / 2) *
         pochhammer(0.5 * (space.alpha - space.beta + 1.0 + il), (delta.p - delta.q) / 2);
}

Complex eisenstein_phi1(const RankOneSpace& space, KType delta, Complex lambda, double r) {
  if (!delta.valid()) fail(ErrorCode::InvalidArgument, "invalid K-type");
  const Complex scale = kostant_q(space, delta, lambda) / pochhammer(space.alpha + 1.0, delta.p);
  return scale * jacobi_assoc_phi(space.jacobi(), delta.p, delta.q, lambda, r);
}

double log_xi_function(const RankOneSpace& space, double r) {
  const ScaledComplex v = jacobi_phi_scaled(space.jacobi(), 0.0, r);
  return std::log(std::abs(v.mantissa.real())) + v.log_scale;
}

double xi_function(const RankOneSpace& space, double r) { return std::exp(log_xi_function(space, r)); }

Complex h3_poisson_integral(int l, Complex lambda, double r) {
  if (l < 0) fail(ErrorCode::InvalidArgument, "Legendre degree must be >= 0");
  const double x = std::tanh(0.5 * r);
  const Complex s = Complex(0.0, 1.0) * lambda + 1.0;
  auto legendre = [l](double c) {
    double p0 = 1.0, p1 = c;
    if (l == 0) return p0;
    for (int k = 1; k < l; ++k) {
      const double p2 = ((2.0 * k + 1.0) * c * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  auto integrand = [&](double th) -> Complex {
    const double c = std::cos(th);
    const double P = (1.0 - x * x) / (1.0 + x * x - 2.0 * x * c);
    return std::exp(s * std::log(P)) * legendre(c) * 0.5 * std::sin(th);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-13;
  return integrate(integrand, 0.0, M_PI, spec).value;
}

}  // namespace cpheat
