#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quartred/discriminant.hpp"

namespace quartred {

using Point3 = std::array<Padic, 3>;

struct Bitangent {
  // a*x1 + b*x2 + c*x3 = 0, integral with a unit coefficient equal to 1 (the first of
  // minimal valuation)
  Point3 line;
  // points spanning the line; F(s*A + t*B) = c * q(s,t)^2 with
  // q = q[0] s^2 + q[1] s t + q[2] t^2 primitive
  Point3 A, B;
  std::array<Padic, 3> q;
  // contact points, present when q splits over K (equal for a hyperflex)
  std::optional<Point3> P, Q;
  bool hyperflex = false;
  int chart = 1;
  // valuation of the square-completion remainder relative to the restricted quartic's content
  int residual = 0;
};

struct BitangentSet {
  std::vector<Bitangent> lines;
  bool complete = false;
  // degrees of residue-field factors of the part of the bitangent polynomial not split over K
  std::vector<int> residual_degrees;
  int unresolved = 0;
  // coordinates in which the elimination ran: F(T x)
  Matrix<mpq_class> transform;
  int seed = 0;
  std::vector<std::string> notes;
};

// Binary quartic obtained by solving the line's equation for one variable (the last
// nonzero one) and substituting.  Variables of the result: the two remaining ones, in order.
RationalPoly restrict_to_line(const RationalPoly& F, const std::array<mpq_class, 3>& line);
// Pivot on the coefficient of least valuation (the last one among ties).
PadicForm restrict_to_line(const PadicForm& F, const Point3& line);

struct SquareSystem {
  // polynomials in (a, b); common zeros <-> lines x_j = a x_{j+1} + b x_{j+2} meeting C
  // in a perfect square (with c4 != 0)
  RationalPoly S1, S2;
  // c_k(a, b): coefficient of the k-th power of the affine parameter
  std::array<RationalPoly, 5> c;
};

// chart in {1, 2, 3}
SquareSystem perfect_square_system(const RationalPoly& F, int chart);

BitangentSet solve_bitangents(const RationalPoly& F, const ContextPtr& K, int guard);

// Contact data of a line; throws Error(Degenerate, "not a bitangent") when the restricted
// quartic is not a square up to precision N - guard.
Bitangent contact_points(const PadicForm& F, const Point3& line, int guard);

// scale so that the first coefficient of minimal valuation is 1
Point3 normalize_line(const Point3& line);
bool same_line(const Point3& a, const Point3& b, int guard);

}  // namespace quartred
