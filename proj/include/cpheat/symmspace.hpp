#pragma once

#include <string>
#include <vector>

#include "cpheat/jacobi.hpp"

namespace cpheat {

struct RankOneSpace {
  std::string name;
  int m_gamma = 2;
  int m_2gamma = 0;
  double alpha = 0.5;
  double beta = -0.5;
  double rho0 = 1.0;
  int dim_X = 3;
  int V = 2;

  JacobiParams jacobi() const { return {alpha, beta}; }
  bool real_hyperbolic() const { return m_2gamma == 0; }
  // Checks the multiplicity formulas and Jacobi validity; throws InvalidArgument.
  void validate() const;
};

// Builds an entry from the multiplicities.
RankOneSpace make_space(const std::string& name, int m_gamma, int m_2gamma);

// Accepts catalog names and aliases (H3, H3_real, SL2C, OH2, ...) and the
// family forms Hn_real(n), Hn_complex(n), Hn_quaternionic(n). Throws UnknownPreset.
RankOneSpace preset(const std::string& name);

// Entries of the shipped catalog, in file order. Each entry is checked once on first use.
const std::vector<RankOneSpace>& catalog();

// Raw text of the shipped catalog (data/presets.txt).
const char* preset_catalog_text();

struct KType {
  int p = 0;
  int q = 0;

  bool valid() const { return p >= 0 && std::abs(q) <= p && (p + q) % 2 == 0; }
  bool trivial() const { return p == 0 && q == 0; }
  friend bool operator==(const KType&, const KType&) = default;
};

// All admissible K-types with p < m, ordered by (p, q).
std::vector<KType> ktypes_below(const RankOneSpace& space, double m);

KType tilde_delta(KType delta);

// Q_delta(lambda) = ((rho + i lambda)/2)_{(p+q)/2} ((alpha - beta + 1 + i lambda)/2)_{(p-q)/2}
Complex kostant_q(const RankOneSpace& space, KType delta, Complex lambda);

// Q_delta(lambda) (alpha+1)_p^{-1} (sinh r)^p (cosh r)^q phi_lambda^{(alpha+p, beta+q)}(r)
Complex eisenstein_phi1(const RankOneSpace& space, KType delta, Complex lambda, double r);

// Xi(a_r) = phi_0(r)
double xi_function(const RankOneSpace& space, double r);
double log_xi_function(const RankOneSpace& space, double r);

// Sphere integral of P(x,b)^{i lambda + 1} P_l(cos theta) over the boundary of the
// ball model of H^3, |x| = tanh(r/2), normalized so the total sphere measure is 1.
// Here P is the Poisson kernel and P_l a Legendre polynomial.
Complex h3_poisson_integral(int l, Complex lambda, double r);

}  // namespace cpheat
