#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quartred/riemann.hpp"

namespace quartred {

// Binary form of degree n over F_q: c[k] is the coefficient of x^k z^(n-k).
struct BinaryForm {
  std::vector<Fq> c;
  int degree() const { return int(c.size()) - 1; }
  Fq eval(const Fq& x, const Fq& z) const;
  bool is_zero() const;
};

BinaryForm binary_form(const FiniteField& F, const std::vector<long>& coeffs);

struct ReducedModel {
  FqForm Q, G;
};

// Throws Error(Precision) when a coefficient of Q or G0 is not integral.
ReducedModel reduce_model(const ToggleModel& T);

// Symmetric matrix with Q(x) = x^T S x (p odd).
std::array<std::array<Fq, 3>, 3> conic_matrix(const FqForm& Q);

struct ConicParametrization {
  std::array<Fq, 3> base;  // a point R on the conic
  // x_i = phi[i](s, t), quadratic binary forms
  std::array<BinaryForm, 3> phi;
};

// Throws Error(Degenerate) when Q is degenerate.
ConicParametrization parametrize_conic(const FqForm& Q);

struct GoodCheck {
  bool ok = false;
  bool nondegenerate = false;
  bool transverse = false;
  std::string failure;
  Fq conic_det;
  int octic_degree_in_x = -1;  // degree of the dehomogenized octic, < 8 means a root at infinity
};

GoodCheck check_good(const FqForm& Q, const FqForm& G);

struct HyperellipticModel {
  BinaryForm f;  // y^2 = f(x, z)
  ConicParametrization phi;
  FqForm Q, G;
};

// Throws Error(Internal) when the octic is not squarefree.
HyperellipticModel hyperelliptic_reduction(const FqForm& Q, const FqForm& G, const ConicParametrization& phi);

// Squarefree of degree n as a binary form: at most one root at infinity.
bool binary_squarefree(const BinaryForm& f);

struct OcticComparison {
  bool equivalent = false;
  int extension_degree = 1;  // degree over the base field where the roots were split
  int candidates = 0;        // Moebius maps tested
  std::optional<std::array<Fq, 4>> map;  // (a, b, c, d) over the splitting field, when found
};

// y^2 = f and y^2 = g isomorphic over the algebraic closure.  Both octics live over the same
// field.  Throws Error(ExtensionTooSmall) when the splitting degree exceeds max_degree.
OcticComparison octic_equivalent(const BinaryForm& f, const BinaryForm& g, int max_degree = 24);

// Points of y^2 = f(x, z) in P(1, 4, 1) over F_q.  Asserts the Weil bound for genus 3.
long point_count(const BinaryForm& f);

BinaryForm map_form(const BinaryForm& f, const FieldEmbedding& e);

std::string format_binary_form(const BinaryForm& f, const std::string& x = "x", const std::string& z = "z");

}  // namespace quartred
