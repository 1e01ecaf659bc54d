#include "doctest.h"
#include "support.hpp"

using namespace quartred;

TEST_CASE("inverse of 2 in Z_7 modulo 343") {
  auto K = make_field(7, std::vector<long>{0, 1}, {{-7}, {1}}, 3);
  Padic h = K->from_int(2).inverse();
  CHECK((h - K->from_int(172)).is_zero());
  CHECK((h * K->from_int(2) - K->one()).is_zero());
}

TEST_CASE("square root of 2 in Z_7") {
  auto K = make_field(7, std::vector<long>{0, 1}, {{-7}, {1}}, 3);
  auto r = padic_sqrt(K->from_int(2));
  REQUIRE(r.root);
  bool a = (*r.root - K->from_int(108)).is_zero();
  bool b = (*r.root - K->from_int(235)).is_zero();
  CHECK((a || b));
  CHECK(padic_sqrt(K->from_int(3)).failure == SqrtFailure::NonResidue);
  CHECK(padic_sqrt(K->from_int(14)).failure == SqrtFailure::OddValuation);
}

TEST_CASE("valuations in a ramified tower") {
  auto K = make_field(7, std::vector<long>{1, 0, 1}, {{-7}, {0}, {0}, {1}}, 12);
  CHECK(K->e() == 3);
  CHECK(K->d() == 2);
  CHECK(K->from_int(7).valuation() == 3);
  CHECK(K->pi().valuation() == 1);
  Padic t = K->pi() * K->pi() * K->pi();
  CHECK((t - K->from_int(7)).is_zero());
  CHECK(K->from_rational(mpq_class(1, 49)).valuation() == -6);
}

TEST_CASE("residue roots") {
  auto F7 = FiniteField::prime(7);
  // x^2 - 2 = (x - 3)(x - 4) mod 7
  auto rs = residue_roots(fq_poly(*F7, {-2, 0, 1}));
  std::vector<long> got;
  for (auto& [r, m] : rs) got.push_back(r.coeffs()[0]);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<long>{3, 4});
  CHECK(residue_roots(fq_poly(*F7, {1, 0, 1})).empty());
}

TEST_CASE("hensel lift of a cube root of 6 in Z_7") {
  auto K = make_field(7, std::vector<long>{0, 1}, {{-7}, {1}}, 10);
  // x^3 - 6 has the simple residue root 3 (27 = 6 mod 7)
  PadicPoly f({K->from_int(-6), K->zero(), K->zero(), K->one()}, K->zero());
  Padic r = hensel_root(f, K->residue_field().from_int(3));
  CHECK(f.eval(r).is_zero());
  CHECK(r.reduce() == K->residue_field().from_int(3));
}

TEST_CASE("roots over an unramified quadratic extension") {
  auto K = make_field(7, std::vector<long>{1, 0, 1}, {{-7}, {1}}, 8);
  // x^2 + 1 splits once -1 has a square root
  PadicPoly f({K->one(), K->zero(), K->one()}, K->zero());
  auto rep = roots_in_field(f);
  REQUIRE(rep.roots.size() == 2);
  for (const auto& r : rep.roots) CHECK(f.eval(r).is_zero());
}

TEST_CASE("p-adic resultant") {
  auto K = make_field(7, std::vector<long>{0, 1}, {{-7}, {1}}, 10);
  PadicPoly f({K->from_int(-2), K->zero(), K->one()}, K->zero());
  PadicPoly g({K->from_int(-3), K->one()}, K->zero());
  CHECK((resultant(f, g) - K->from_int(7)).is_zero());
  CHECK(resultant(f, g).valuation() == 1);
}

TEST_CASE("determinant with valuation pivoting") {
  auto K = make_field(5, std::vector<long>{0, 1}, {{-5}, {1}}, 12);
  PadicMatrix A{{K->from_int(5), K->from_int(1)}, {K->from_int(1), K->from_int(25)}};
  CHECK((det_padic(A) - K->from_int(124)).is_zero());
}
