#pragma once

// Capped absolute precision arithmetic in K = Q_p(tau)(pi), tau a root of an
// unramified polynomial of degree d and pi a root of an Eisenstein polynomial
// of degree e over Z_p[tau].  Elements are stored as pi^val * unit with the
// unit known modulo pi^(prec - val); prec never exceeds the context cap N.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quartred/finite_field.hpp"
#include "quartred/poly.hpp"

namespace quartred {

class Padic;
class FieldContext;
using ContextPtr = std::shared_ptr<const FieldContext>;

// Element of W = Z_p[tau] as d integer coefficients.
using WVec = std::vector<mpz_class>;
// Integral element as e*d integers, index j*d + i for tau^i pi^j.
using Raw = std::vector<mpz_class>;

class FieldContext {
 public:
  long p() const { return p_; }
  int d() const { return d_; }
  int e() const { return e_; }
  int precision() const { return N_; }
  const std::vector<mpz_class>& unram_poly() const { return unram_; }
  const std::vector<WVec>& eis_poly() const { return eis_; }
  const FiniteField& residue_field() const { return *residue_; }
  std::shared_ptr<const FiniteField> residue_field_ptr() const { return residue_; }

  Padic zero() const;
  Padic zero(int prec) const;
  Padic one() const;
  Padic from_int(const mpz_class& n) const;
  Padic from_int(long n) const;
  Padic from_rational(const mpq_class& q) const;
  Padic tau() const;
  Padic pi() const;
  // sum_j (sum_i w[j][i] tau^i) pi^j known modulo pi^prec (prec <= N)
  Padic from_coeffs(const std::vector<std::vector<mpz_class>>& w, int prec = -1) const;
  Padic lift(const Fq& a) const;
  Padic pi_power(int k) const;

  std::string describe() const;

  // internals shared with Padic
  int digits_for(int r) const { return r <= 0 ? 0 : (r + e_ - 1) / e_; }
  const mpz_class& ppow(int k) const { return ppow_[k]; }
  Raw raw_mul(const Raw& a, const Raw& b, int r) const;
  void raw_canonical(Raw& a, int r) const;
  int raw_valuation(const Raw& a, int r) const;
  void raw_div_pi(Raw& a, int r) const;
  Raw raw_inverse(const Raw& u, int r) const;
  Padic make(int base, Raw raw, int r) const;

 private:
  friend ContextPtr make_field(long, std::vector<mpz_class>, std::vector<WVec>, int);
  friend class Padic;
  FieldContext() = default;
  void init();
  WVec w_mul(const WVec& a, const WVec& b, const mpz_class& m) const;
  void tau_reduce(std::vector<mpz_class>& t, const mpz_class& m) const;

  long p_ = 0;
  int d_ = 1, e_ = 1, N_ = 1, M_ = 1;
  std::vector<mpz_class> unram_;
  std::vector<WVec> eis_;
  std::shared_ptr<const FiniteField> residue_;
  std::vector<mpz_class> ppow_;
  std::vector<WVec> tau_red_;  // tau^(d+k)
  std::vector<Raw> pi_red_;    // pi^(e+k)
  Raw p_over_pi_;
  std::vector<Raw> pi_pow_;    // pi^k, k < N
};

// unram: monic integer polynomial of degree d, low to high.  eis: polynomial of
// degree e whose coefficients lie in Z[tau] (given as integer vectors in the
// tau basis); it is normalized to be monic.
ContextPtr make_field(long p, std::vector<mpz_class> unram, std::vector<WVec> eis, int precision);
ContextPtr make_field(long p, const std::vector<long>& unram,
                      const std::vector<std::vector<long>>& eis, int precision);

class Padic {
 public:
  Padic() = default;

  const FieldContext* context() const { return ctx_; }
  // for zero-at-precision elements this equals precision()
  int valuation() const { return val_; }
  int precision() const { return prec_; }
  int relative_precision() const { return prec_ - val_; }
  bool is_zero() const { return unit_.empty(); }
  // zero at own precision, or valuation at least N - guard
  bool is_negligible(int guard) const;
  const Raw& unit() const { return unit_; }

  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const { return *this * o.inverse(); }
  Padic operator-() const;
  Padic inverse() const;
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  // multiply by pi^k exactly
  Padic shift(int k) const;
  Padic with_precision(int prec) const;
  Padic unit_part() const;

  // reduction modulo pi, element must be integral
  Fq reduce() const;

  // coefficients w[j][i] of tau^i pi^j for an integral element, canonical mod pi^prec
  std::vector<std::vector<mpz_class>> absolute_coeffs(int prec = -1) const;
  // base p digits of each coefficient of the unit part
  std::vector<std::vector<std::vector<long>>> digit_vectors() const;
  static Padic from_digit_vectors(const FieldContext& K, int val, int prec,
                                  const std::vector<std::vector<std::vector<long>>>& digits);

  // e.g. "(9*tau+3) + 2*pi + O(pi^14)"
  std::string to_string(int prec = -1) const;

  bool equals(const Padic& o) const { return (*this - o).is_zero(); }

 private:
  friend class FieldContext;
  const FieldContext* ctx_ = nullptr;
  int val_ = 0;
  int prec_ = 0;
  Raw unit_;
};

inline bool is_zero(const Padic& a) { return a.is_zero(); }
inline Padic zero_like(const Padic& a) { return a.context()->zero(); }
inline Padic one_like(const Padic& a) { return a.context()->one(); }
inline Padic from_int_like(const Padic& a, long n) { return a.context()->from_int(n); }
inline Padic inverse(const Padic& a) { return a.inverse(); }
inline Padic divexact(const Padic& a, const Padic& b) { return a / b; }

using PadicPoly = UPoly<Padic>;
using PadicMatrix = Matrix<Padic>;

// ---------------------------------------------------------------------------
// Square roots and Hensel lifting.

enum class SqrtFailure { None, OddValuation, NonResidue, Zero };

struct SqrtResult {
  std::optional<Padic> root;
  SqrtFailure failure = SqrtFailure::None;
};

SqrtResult padic_sqrt(const Padic& a);

// Newton lift of a simple residue root of f (strong Hensel fallback).
Padic hensel_root(const PadicPoly& f, const Fq& r0);

struct RootReport {
  std::vector<Padic> roots;
  // clusters that could not be separated at the available precision:
  // (approximate centre, number of roots counted with multiplicity)
  std::vector<std::pair<Padic, int>> unresolved;
  // number of roots with multiplicity whose residue lies outside the residue field
  int missing = 0;
  // irreducible factor degrees of the reduction of the unresolved part
  std::vector<int> residue_factor_degrees;
};

// Roots of f lying in K, found by residue scan, Hensel lifting and
// recursive refinement of clusters.  Roots of negative valuation included.
RootReport roots_in_field(const PadicPoly& f);

// minimum coefficient valuation (content) of a polynomial
int content_valuation(const PadicPoly& f);
PadicPoly reduce_content(const PadicPoly& f);
FqPoly reduce_poly(const PadicPoly& f);

// ---------------------------------------------------------------------------
// Linear algebra with valuation pivoting.

Padic det_padic(PadicMatrix A);
std::vector<Padic> solve_padic(PadicMatrix A, std::vector<Padic> b);
PadicMatrix inverse_padic(const PadicMatrix& A);
Padic resultant(const PadicPoly& f, const PadicPoly& g);

// ---------------------------------------------------------------------------
// Context upgrades.

struct ContextUpgrade {
  ContextPtr target;
  int pi_scale = 1;        // pi maps to pi'^pi_scale
  std::optional<Padic> tau_image;  // image of tau, absent when unchanged
  std::string description;
  Padic operator()(const Padic& a) const;
};

// adjoin pi' with pi'^2 = pi
ContextUpgrade ramified_quadratic(const FieldContext& K);
// double the unramified degree
ContextUpgrade unramified_quadratic(const FieldContext& K);
// same tower at a different precision cap
ContextUpgrade change_precision(const FieldContext& K, int N);

}  // namespace quartred
