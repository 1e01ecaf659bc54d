#include "doctest.h"
#include "support.hpp"

using namespace quartred;
using namespace qtest;

namespace {

FqForm form(const FiniteField& F, const std::vector<std::pair<Mono, long>>& terms) {
  FqForm f(3, F.zero());
  for (const auto& [m, c] : terms) f.add_term(m, F.from_int(c));
  return f;
}

Fq eval3(const FqForm& f, const std::array<Fq, 3>& x) {
  const Fq& z = f.zero();
  Fq acc = zero_like(z);
  for (const auto& [m, c] : f.terms()) {
    Fq t = c;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < m[i]; ++k) t = t * x[i];
    acc = acc + t;
  }
  return acc;
}

std::vector<Fq> pmul(const std::vector<Fq>& a, const std::vector<Fq>& b) {
  std::vector<Fq> r(a.size() + b.size() - 1, zero_like(a[0]));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// f(a x + b z, c x + d z), expanded by hand
BinaryForm moebius(const BinaryForm& f, const Fq& a, const Fq& b, const Fq& c, const Fq& d) {
  int n = f.degree();
  const Fq& z = zero_like(a);
  std::vector<Fq> acc(n + 1, z);
  for (int k = 0; k <= n; ++k) {
    std::vector<Fq> t{f.c[k]};
    for (int i = 0; i < k; ++i) t = pmul(t, {b, a});
    for (int i = 0; i < n - k; ++i) t = pmul(t, {d, c});
    for (int i = 0; i <= n; ++i) acc[i] = acc[i] + t[i];
  }
  return BinaryForm{acc};
}

BinaryForm random_octic(const FiniteField& F, std::mt19937_64& rng) {
  BinaryForm f;
  for (int k = 0; k <= 8; ++k) f.c.push_back(F.random(rng));
  return f;
}

void check_parametrization(const FqForm& Q) {
  const FiniteField& F = *Q.zero().field();
  auto par = parametrize_conic(Q);
  CHECK(eval3(Q, par.base).is_zero());
  std::vector<std::array<Fq, 3>> seen;
  std::uint64_t q = F.order().get_ui();
  auto add = [&](const Fq& s, const Fq& t) {
    std::array<Fq, 3> x{par.phi[0].eval(s, t), par.phi[1].eval(s, t), par.phi[2].eval(s, t)};
    CHECK(eval3(Q, x).is_zero());
    bool nz = !x[0].is_zero() || !x[1].is_zero() || !x[2].is_zero();
    CHECK(nz);
    // projective distinctness: no proportional earlier point
    for (const auto& y : seen) {
      bool prop = (x[0] * y[1] - x[1] * y[0]).is_zero() && (x[0] * y[2] - x[2] * y[0]).is_zero() &&
                  (x[1] * y[2] - x[2] * y[1]).is_zero();
      CHECK_FALSE(prop);
    }
    seen.push_back(x);
  };
  add(F.one(), F.zero());
  for (std::uint64_t i = 0; i < q; ++i) add(F.element(i), F.one());
  CHECK(seen.size() == q + 1);
}

}  // namespace

TEST_CASE("conic parametrizations over F_7") {
  auto F7 = FiniteField::prime(7);
  check_parametrization(form(*F7, {{{1, 0, 1}, 1}, {{0, 2, 0}, -1}}));
  check_parametrization(form(*F7, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}}));
  check_parametrization(form(*F7, {{{2, 0, 0}, 3}, {{1, 1, 0}, 1}, {{0, 1, 1}, 1}, {{0, 0, 2}, 2}}));
  CHECK_THROWS(parametrize_conic(form(*F7, {{{2, 0, 0}, 1}})));
}

TEST_CASE("conic over F_25") {
  auto F = std::make_shared<FiniteField>(5, FiniteField::find_irreducible(5, 2));
  check_parametrization(form(*F, {{{2, 0, 0}, 1}, {{0, 2, 0}, 2}, {{0, 0, 2}, 3}}));
}

TEST_CASE("good check agrees with the octic") {
  auto F7 = FiniteField::prime(7);
  FqForm Q = form(*F7, {{{1, 0, 1}, 1}, {{0, 2, 0}, -1}});
  FqForm G = form(*F7, {{{4, 0, 0}, 1}, {{0, 0, 4}, 1}});
  auto g = check_good(Q, G);
  CHECK(g.nondegenerate);
  auto H = hyperelliptic_reduction(Q, G, parametrize_conic(Q));
  CHECK(octic_has_distinct_roots(H.f) == g.ok);
  CHECK(octic_equivalent(H.f, binary_form(*F7, {1, 0, 0, 0, 0, 0, 0, 0, 1})).equivalent);
  // tangency: G = x2^4 meets the conic in two points of multiplicity 4
  auto bad = check_good(Q, form(*F7, {{{0, 4, 0}, 1}}));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.transverse);

  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    FqForm R(3, F7->zero());
    for (const auto& m : monomials_of_degree(4)) R.add_term(m, F7->random(rng));
    auto c = check_good(Q, R);
    bool distinct = false;
    try {
      distinct = octic_has_distinct_roots(hyperelliptic_reduction(Q, R, parametrize_conic(Q)).f);
    } catch (const Error&) {
    }
    CHECK(c.ok == distinct);
  }
}

TEST_CASE("octic equivalence") {
  auto F13 = FiniteField::prime(13);
  BinaryForm a = binary_form(*F13, {1, 0, 0, 0, 0, 0, 0, 0, 1});
  BinaryForm b = binary_form(*F13, {-1, 0, 0, 0, 0, 0, 0, 1, 0});
  CHECK(octic_equivalent(a, a).equivalent);
  CHECK(octic_equivalent(b, b).equivalent);
  CHECK_FALSE(octic_equivalent(a, b).equivalent);
  CHECK_FALSE(octic_equivalent(b, a).equivalent);

  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 6) {
    BinaryForm f = random_octic(*F13, rng);
    if (!octic_has_distinct_roots(f)) continue;
    Fq A = F13->random(rng), B = F13->random(rng), C = F13->random(rng), D = F13->random(rng);
    if ((A * D - B * C).is_zero()) continue;
    BinaryForm g = moebius(f, A, B, C, D);
    for (auto& x : g.c) x = x * F13->from_int(3);
    CHECK(octic_equivalent(f, g).equivalent);
    CHECK(octic_equivalent(g, f).equivalent);
    ++tested;
  }
}

TEST_CASE("point counts against enumeration") {
  std::mt19937_64 rng(3);
  std::vector<std::shared_ptr<const FiniteField>> fields{
      FiniteField::prime(7), FiniteField::prime(13),
      std::make_shared<FiniteField>(5, FiniteField::find_irreducible(5, 2))};
  for (const auto& F : fields) {
    int done = 0;
    while (done < 8) {
      BinaryForm f = random_octic(*F, rng);
      if (!octic_has_distinct_roots(f)) continue;
      CHECK(point_count(f) == brute_point_count(f));
      ++done;
    }
  }
}

TEST_CASE("binary squarefree") {
  auto F7 = FiniteField::prime(7);
  CHECK(binary_squarefree(binary_form(*F7, {1, 0, 0, 0, 0, 0, 0, 0, 1})));
  CHECK(binary_squarefree(binary_form(*FiniteField::prime(13), {0, 1, 0, 0, 0, 0, 0, 0, 1})));
  // x^7 + z^7 = (x + z)^7 in characteristic 7
  CHECK_FALSE(binary_squarefree(binary_form(*F7, {0, 1, 0, 0, 0, 0, 0, 0, 1})));
  CHECK_FALSE(binary_squarefree(binary_form(*F7, {0, 0, 1, 0, 0, 0, 0, 0, 1})));
  CHECK_FALSE(binary_squarefree(binary_form(*F7, {1, 0, 0, 0, 0, 0, 0, 1, 0})));
  CHECK_FALSE(binary_squarefree(binary_form(*F7, {1, 2, 1, 0, 0, 0, 0, 0, 0})));
}
