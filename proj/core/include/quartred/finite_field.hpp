#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quartred/poly.hpp"

namespace quartred {

class FiniteField;

// Element of F_p[t]/(m(t)), coefficients in [0, p).
class Fq {
 public:
  Fq() = default;
  Fq(const FiniteField* F, std::vector<long> c) : F_(F), c_(std::move(c)) {}

  const FiniteField* field() const { return F_; }
  const std::vector<long>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const;
  Fq operator/(const Fq& o) const { return *this * o.inverse(); }
  Fq inverse() const;
  Fq pow(const mpz_class& e) const;

  bool operator==(const Fq& o) const { return c_ == o.c_; }
  bool operator!=(const Fq& o) const { return c_ != o.c_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  const FiniteField* F_ = nullptr;
  std::vector<long> c_;
};

inline bool is_zero(const Fq& a) { return a.is_zero(); }
Fq zero_like(const Fq& a);
Fq one_like(const Fq& a);
Fq from_int_like(const Fq& a, long n);
inline Fq inverse(const Fq& a) { return a.inverse(); }
inline Fq divexact(const Fq& a, const Fq& b) { return a / b; }

// Total order used to pick canonical square roots and to sort root lists:
// compare coefficient vectors from the top degree down.
bool canonical_less(const Fq& a, const Fq& b);

class FiniteField {
 public:
  // modulus given low to high; normalized to monic; must be irreducible mod p
  FiniteField(long p, std::vector<long> modulus);

  static std::shared_ptr<const FiniteField> prime(long p);
  // the first irreducible polynomial of degree n in a fixed enumeration
  static std::vector<long> find_irreducible(long p, int n);
  static bool is_irreducible(long p, const std::vector<long>& f);

  long p() const { return p_; }
  int degree() const { return n_; }
  const mpz_class& order() const { return q_; }
  const std::vector<long>& modulus() const { return mod_; }

  Fq zero() const { return Fq(this, std::vector<long>(n_, 0)); }
  Fq one() const;
  Fq from_int(long a) const;
  Fq from_coeffs(std::vector<long> c) const;
  // the class of t
  Fq gen() const;

  // enumeration, only meaningful for q < 2^63
  Fq element(std::uint64_t index) const;
  std::uint64_t index_of(const Fq& a) const;
  bool small() const { return q_ < mpz_class("1000000000000000"); }

  bool is_square(const Fq& a) const;
  // canonical root (smaller under canonical_less) or absent
  std::optional<Fq> sqrt(const Fq& a) const;
  Fq random(std::mt19937_64& rng) const;
  // quadratic character: 0, 1 or -1
  int legendre(const Fq& a) const;

  std::string describe() const;

  // internal arithmetic helpers
  long reduce(long long a) const {
    long r = long(a % p_);
    return r < 0 ? r + p_ : r;
  }

 private:
  friend class Fq;
  long p_;
  int n_;
  mpz_class q_;
  std::vector<long> mod_;
  mutable std::optional<Fq> nonresidue_;
};

using FqPoly = UPoly<Fq>;

FqPoly fq_poly(const FiniteField& F, const std::vector<long>& coeffs);

// Roots with multiplicity, sorted by canonical_less.
std::vector<std::pair<Fq, int>> residue_roots(const FqPoly& f);

// Degrees of the irreducible factors of a squarefree polynomial.
std::vector<int> factor_degrees(const FqPoly& f);

bool is_squarefree(const FqPoly& f);

// Field homomorphism F_{p^a} -> F_{p^b} given by the image of the generator.
struct FieldEmbedding {
  const FiniteField* source = nullptr;
  const FiniteField* target = nullptr;
  Fq gen_image;
  Fq operator()(const Fq& a) const;
};

FieldEmbedding find_embedding(const FiniteField& src, const FiniteField& dst);

struct FieldExtension {
  std::shared_ptr<const FiniteField> field;
  FieldEmbedding embedding;
};

// A degree-k extension of F together with the inclusion map.
FieldExtension extend_field(const FiniteField& F, int k);

}  // namespace quartred
