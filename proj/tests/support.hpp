#pragma once

#include <climits>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "quartred/pipeline.hpp"

namespace qtest {

using namespace quartred;

inline std::string data_path(const std::string& name) { return std::string(QUARTRED_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline JobSpec load_job(const std::string& name) { return parse_job(slurp(data_path(name))); }

// valuation that treats a zero-at-precision value as its precision
inline int val_or_prec(const Padic& a) { return a.is_zero() ? a.precision() : a.valuation(); }

// Q^2 + pi^s G0 - scale * F(M y), coefficientwise; recomputed from scratch
inline int identity_valuation(const RationalPoly& F, const ToggleModel& T, const FieldContext& K) {
  PadicForm L = substitute(embed(F, K), T.M);
  auto q2 = monomials_of_degree(2);
  Padic ps = K.pi_power(T.s);
  int worst = INT_MAX;
  for (const auto& m : monomials_of_degree(4)) {
    Padic c = K.zero();
    for (const auto& a : q2)
      for (const auto& b : q2)
        if (a[0] + b[0] == m[0] && a[1] + b[1] == m[1] && a[2] + b[2] == m[2])
          c = c + T.Q.coeff(a) * T.Q.coeff(b);
    c = c + ps * T.G0.coeff(m) - T.scale * L.coeff(m);
    worst = std::min(worst, val_or_prec(c));
  }
  return worst;
}

// points on y^2 = f(x, z) in P(1, 4, 1) by enumerating every y
inline long brute_point_count(const BinaryForm& f) {
  const FiniteField& F = *f.c[0].field();
  std::uint64_t q = F.order().get_ui();
  auto nsq = [&](const Fq& v) {
    long n = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
      Fq y = F.element(i);
      if (y * y == v) ++n;
    }
    return n;
  };
  long total = nsq(f.c.back());  // z = 0, x = 1
  for (std::uint64_t i = 0; i < q; ++i) total += nsq(f.eval(F.element(i), F.one()));
  return total;
}

// degree-8 binary form with 8 distinct roots on P^1
inline bool octic_has_distinct_roots(const BinaryForm& f) {
  if (f.degree() != 8) return false;
  const Fq& zero = f.c[0].field()->zero();
  FqPoly g(f.c, zero);
  int at_inf = 8 - g.degree();
  if (at_inf > 1 || g.is_zero()) return false;
  std::vector<Fq> d;
  for (int k = 1; k <= g.degree(); ++k) d.push_back(g[k] * zero.field()->from_int(k));
  FqPoly dg(d, zero);
  if (dg.is_zero()) return false;
  return poly_gcd(g, dg).degree() == 0;
}

inline Matrix<mpq_class> random_unimodular(std::mt19937_64& rng, int steps) {
  Matrix<mpq_class> A = identity_matrix(3, mpq_class(1));
  std::uniform_int_distribution<int> idx(0, 2), sgn(0, 1);
  for (int k = 0; k < steps; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = sgn(rng) ? 1 : -1;
    for (int r = 0; r < 3; ++r) A[r][j] += c * A[r][i];
  }
  return A;
}

}  // namespace qtest
