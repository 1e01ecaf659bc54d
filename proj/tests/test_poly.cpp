#include "doctest.h"
#include "support.hpp"

using namespace quartred;

namespace {

RationalPoly P(const std::string& s) { return parse_polynomial(s); }

}  // namespace

TEST_CASE("exact resultant of x^2 - 2 and x - 3") {
  UPoly<mpq_class> f({-2, 0, 1}, mpq_class(0));
  UPoly<mpq_class> g({-3, 1}, mpq_class(0));
  CHECK(resultant_exact(f, g) == 7);
  CHECK(resultant_exact(g, f) == 7);
}

TEST_CASE("parse and format round trip") {
  RationalPoly F = P("x1^3*x2 + x2^3*x3 + x3^3*x1");
  CHECK(F.total_degree() == 4);
  CHECK(F.size() == 3);
  CHECK(parse_polynomial(format_polynomial(F)).terms() == F.terms());
  CHECK(P("x^4 - 1/2*y*z^3").coeff({0, 1, 3}) == mpq_class(-1, 2));
}

TEST_CASE("Macaulay resultant of coordinate cubes") {
  CHECK(macaulay_resultant_cubics(P("x1^3"), P("x2^3"), P("x3^3")) == 1);
  // common zero (1:1:1)
  CHECK(macaulay_resultant_cubics(P("x1^3 - x2^3"), P("x2^3 - x3^3"), P("x1^2*x2 - x3^3")) == 0);
}

TEST_CASE("discriminant of a quartic") {
  CHECK(discriminant_quartic(P("x1^4")) == 0);
  CHECK(discriminant_quartic(P("x1^2*x2^2 + x3^4")) == 0);
  RationalPoly F = P("x1^4 + x2^4 + x3^4 + x1*x2*x3^2");
  mpq_class d = discriminant_quartic(F);
  CHECK(d != 0);
  // weight: det(A)^36 under F(A x), degree 27 in the coefficients
  Matrix<mpq_class> A = identity_matrix(3, mpq_class(1));
  A[0][0] = 2;
  mpz_class w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, 36);
  CHECK(discriminant_quartic(substitute(F, A)) == d * mpq_class(w));
  mpz_ui_pow_ui(w.get_mpz_t(), 3, 27);
  CHECK(discriminant_quartic(F.scaled(mpq_class(3))) == d * mpq_class(w));
  // invariance under a unimodular change of variables
  Matrix<mpq_class> U = identity_matrix(3, mpq_class(1));
  U[0][1] = 1;
  U[2][0] = -1;
  CHECK(discriminant_quartic(substitute(F, U)) == d);
}

TEST_CASE("restriction to a line") {
  RationalPoly F = P("x1^4 + x2^4 + x3^4");
  RationalPoly r = restrict_to_line(F, {mpq_class(0), mpq_class(0), mpq_class(1)});
  CHECK(r.nvars() == 2);
  CHECK(r.coeff({4, 0, 0}) == 1);
  CHECK(r.coeff({0, 4, 0}) == 1);
  CHECK(r.size() == 2);
  // x3 = -x1 - x2 on the Klein quartic
  RationalPoly K = P("x1^3*x2 + x2^3*x3 + x3^3*x1");
  RationalPoly s = restrict_to_line(K, {mpq_class(1), mpq_class(1), mpq_class(1)});
  RationalPoly expect = parse_polynomial("x1^3*x2 + x2^3*(-x1 - x2) + (-x1 - x2)^3*x1", 2);
  CHECK(s.terms() == expect.terms());
}

TEST_CASE("restriction to a bitangent is a square") {
  // x3 = 0 meets x1^2 x2^2 + x3^4 + x3 x1^3 + x3 x2^3 in x1^2 x2^2, a square
  RationalPoly F = P("x1^2*x2^2 + x3^4 + x3*x1^3 + x3*x2^3");
  RationalPoly r = restrict_to_line(F, {mpq_class(0), mpq_class(0), mpq_class(1)});
  CHECK(r.coeff({2, 2, 0}) == 1);
  CHECK(r.size() == 1);
}
