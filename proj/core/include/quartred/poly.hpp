#pragma once

// Dense univariate and small multivariate polynomials over an arbitrary
// coefficient ring T.  T is mpq_class, Fq, Padic, or UPoly of one of these.
// Generic code only relies on the free functions is_zero, zero_like,
// one_like, from_int_like, divexact (and inverse for fields).

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "quartred/error.hpp"

namespace quartred {

inline bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
inline mpq_class zero_like(const mpq_class&) { return mpq_class(0); }
inline mpq_class one_like(const mpq_class&) { return mpq_class(1); }
inline mpq_class from_int_like(const mpq_class&, long n) { return mpq_class(n); }
inline mpq_class inverse(const mpq_class& a) { return mpq_class(1) / a; }
inline mpq_class divexact(const mpq_class& a, const mpq_class& b) { return a / b; }

namespace detail {
// unqualified call so that argument-dependent lookup sees every ring type
template <class T>
bool zero_test(const T& a) { return is_zero(a); }
}  // namespace detail

template <class T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const T& zero) : zero_(zero) {}
  UPoly(std::vector<T> c, const T& zero) : c_(std::move(c)), zero_(zero) { trim(); }

  static UPoly constant(const T& a) {
    UPoly r(zero_like(a));
    r.set(0, a);
    return r;
  }
  static UPoly monomial(const T& a, int k) {
    UPoly r(zero_like(a));
    r.set(k, a);
    return r;
  }
  // x - a
  static UPoly linear_root(const T& a) {
    return UPoly({-a, one_like(a)}, zero_like(a));
  }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const T& operator[](int i) const {
    return (i >= 0 && i < int(c_.size())) ? c_[i] : zero_;
  }
  const T& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& zero() const { return zero_; }

  void set(int i, const T& v) {
    if (i >= int(c_.size())) {
      if (detail::zero_test(v)) return;
      c_.resize(i + 1, zero_);
    }
    c_[i] = v;
    trim();
  }

  void trim() {
    while (!c_.empty() && detail::zero_test(c_.back())) c_.pop_back();
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return UPoly(a.zero_);
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::zero_test(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r), a.zero_);
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  UPoly scaled(const T& s) const {
    std::vector<T> r = c_;
    for (auto& x : r) x = x * s;
    return UPoly(std::move(r), zero_);
  }

  T eval(const T& x) const {
    if (c_.empty()) return zero_;
    T acc = c_.back();
    for (int i = int(c_.size()) - 2; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(zero_);
    std::vector<T> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * from_int_like(zero_, long(i)));
    return UPoly(std::move(r), zero_);
  }

  // f(a + b*x)
  UPoly compose_linear(const T& a, const T& b) const {
    UPoly lin({a, b}, zero_);
    UPoly r(zero_);
    for (int i = degree(); i >= 0; --i) r = r * lin + constant_or_zero(c_[i]);
    return r;
  }

  // x^n f(1/x)
  UPoly reversed(int n) const {
    std::vector<T> r(n + 1, zero_);
    for (int i = 0; i <= n && i < int(c_.size()); ++i) r[n - i] = c_[i];
    return UPoly(std::move(r), zero_);
  }

  template <class F>
  auto map(F&& f) const -> UPoly<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    std::vector<U> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(f(x));
    return UPoly<U>(std::move(r), f(zero_));
  }

 private:
  UPoly constant_or_zero(const T& a) const {
    UPoly r(zero_);
    r.set(0, a);
    return r;
  }

  std::vector<T> c_;
  T zero_{};
};

template <class T>
bool is_zero(const UPoly<T>& a) { return a.is_zero(); }
template <class T>
UPoly<T> zero_like(const UPoly<T>& a) { return UPoly<T>(a.zero()); }
template <class T>
UPoly<T> one_like(const UPoly<T>& a) { return UPoly<T>::constant(one_like(a.zero())); }
template <class T>
UPoly<T> from_int_like(const UPoly<T>& a, long n) {
  return UPoly<T>::constant(from_int_like(a.zero(), n));
}

// Division with remainder; the leading coefficient of g must be invertible.
template <class T>
std::pair<UPoly<T>, UPoly<T>> divrem(const UPoly<T>& f, const UPoly<T>& g) {
  if (g.is_zero()) throw Error(ErrorKind::Degenerate, "poly", "division by zero polynomial");
  UPoly<T> q(f.zero()), r = f;
  T li = inverse(g.lead());
  int dg = g.degree();
  while (!r.is_zero() && r.degree() >= dg) {
    int k = r.degree() - dg;
    T c = r.lead() * li;
    q.set(k, c);
    std::vector<T> sub(k + dg + 1, f.zero());
    for (int i = 0; i <= dg; ++i) sub[k + i] = g[i] * c;
    int before = r.degree();
    r -= UPoly<T>(std::move(sub), f.zero());
    // inexact coefficient types may leave a tiny leading term
    if (!r.is_zero() && r.degree() >= before) {
      std::vector<T> cs = r.coeffs();
      cs.pop_back();
      r = UPoly<T>(std::move(cs), f.zero());
    }
  }
  return {q, r};
}

// Exact quotient over an integral domain (Bareiss helper).
template <class T>
UPoly<T> divexact(const UPoly<T>& f, const UPoly<T>& g) {
  if (g.is_zero()) throw Error(ErrorKind::Degenerate, "poly", "exact division by zero polynomial");
  UPoly<T> q(f.zero()), r = f;
  int dg = g.degree();
  while (!r.is_zero()) {
    if (r.degree() < dg) throw Error(ErrorKind::Internal, "poly", "inexact polynomial division");
    int k = r.degree() - dg;
    T c = divexact(r.lead(), g.lead());
    q.set(k, c);
    r -= UPoly<T>::monomial(c, k) * g;
  }
  return q;
}

template <class T>
UPoly<T> make_monic(const UPoly<T>& f) {
  if (f.is_zero()) return f;
  return f.scaled(inverse(f.lead()));
}

template <class T>
UPoly<T> poly_gcd(UPoly<T> a, UPoly<T> b) {
  while (!b.is_zero()) {
    UPoly<T> r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

template <class T>
UPoly<T> mulmod(const UPoly<T>& a, const UPoly<T>& b, const UPoly<T>& m) {
  return divrem(a * b, m).second;
}

template <class T>
UPoly<T> powmod(UPoly<T> base, mpz_class e, const UPoly<T>& m) {
  UPoly<T> r = divrem(UPoly<T>::constant(one_like(m.zero())), m).second;
  base = divrem(base, m).second;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, m);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Matrices as row vectors.

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free determinant over an exact integral domain.
template <class T>
T det_bareiss(Matrix<T> A) {
  int n = int(A.size());
  if (n == 0) throw Error(ErrorKind::Input, "linalg", "empty matrix");
  T prev = one_like(A[0][0]);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(A[k][k])) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!is_zero(A[i][k])) { piv = i; break; }
      if (piv < 0) return zero_like(A[0][0]);
      std::swap(A[k], A[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        T num = A[i][j] * A[k][k] - A[i][k] * A[k][j];
        A[i][j] = divexact(num, prev);
      }
    }
    prev = A[k][k];
  }
  T d = A[n - 1][n - 1];
  return sign < 0 ? T(-d) : d;
}

// Gaussian elimination over an exact field: rank, and solution of A x = b.
template <class T>
int rank_exact(Matrix<T> A) {
  int rows = int(A.size());
  if (rows == 0) return 0;
  int cols = int(A[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(A[i][c])) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    T inv = inverse(A[r][c]);
    for (int i = r + 1; i < rows; ++i) {
      if (is_zero(A[i][c])) continue;
      T f = A[i][c] * inv;
      for (int j = c; j < cols; ++j) A[i][j] = A[i][j] - f * A[r][j];
    }
    ++r;
  }
  return r;
}

template <class T>
std::vector<T> solve_exact(Matrix<T> A, std::vector<T> b) {
  int n = int(A.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(A[i][c])) { piv = i; break; }
    if (piv < 0) throw Error(ErrorKind::Degenerate, "linalg", "singular system");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    T inv = inverse(A[c][c]);
    for (int i = 0; i < n; ++i) {
      if (i == c || is_zero(A[i][c])) continue;
      T f = A[i][c] * inv;
      for (int j = c; j < n; ++j) A[i][j] = A[i][j] - f * A[c][j];
      b[i] = b[i] - f * b[c];
    }
  }
  for (int i = 0; i < n; ++i) b[i] = b[i] * inverse(A[i][i]);
  return b;
}

// ---------------------------------------------------------------------------
// Polynomials in up to three variables.

using Mono = std::array<int, 3>;

inline int mono_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

// All exponent vectors of total degree d in n variables, in descending lex order.
inline std::vector<Mono> monomials_of_degree(int d, int n = 3) {
  std::vector<Mono> out;
  if (n == 1) {
    out.push_back({d, 0, 0});
  } else if (n == 2) {
    for (int a = d; a >= 0; --a) out.push_back({a, d - a, 0});
  } else {
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

template <class T>
class MultiPoly {
 public:
  using TermMap = std::map<Mono, T, std::greater<Mono>>;

  MultiPoly() = default;
  MultiPoly(int nvars, const T& zero) : nvars_(nvars), zero_(zero) {}

  static MultiPoly variable(int i, int nvars, const T& one) {
    MultiPoly r(nvars, zero_like(one));
    Mono m{0, 0, 0};
    m[i] = 1;
    r.add_term(m, one);
    return r;
  }
  static MultiPoly constant(int nvars, const T& c) {
    MultiPoly r(nvars, zero_like(c));
    r.add_term({0, 0, 0}, c);
    return r;
  }
  // sum_j coeffs[j] * x_j
  static MultiPoly linear_form(const std::vector<T>& coeffs) {
    MultiPoly r(int(coeffs.size()), zero_like(coeffs[0]));
    for (size_t j = 0; j < coeffs.size(); ++j) {
      Mono m{0, 0, 0};
      m[j] = 1;
      r.add_term(m, coeffs[j]);
    }
    return r;
  }

  int nvars() const { return nvars_; }
  const T& zero() const { return zero_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  const T& coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_ : it->second;
  }
  void set(const Mono& m, const T& c) {
    if (detail::zero_test(c)) terms_.erase(m);
    else terms_[m] = c;
  }
  void add_term(const Mono& m, const T& c) {
    if (detail::zero_test(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (detail::zero_test(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }
  bool is_homogeneous(int d) const {
    for (const auto& [m, c] : terms_)
      if (mono_degree(m) != d) return false;
    return true;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, T(-c));
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars_, a.zero_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, T(-c));
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(std::max(a.nvars_, b.nvars_), a.zero_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
    return r;
  }
  MultiPoly scaled(const T& s) const {
    MultiPoly r(nvars_, zero_);
    for (const auto& [m, c] : terms_) r.set(m, c * s);
    return r;
  }

  T eval(const std::vector<T>& x) const {
    T acc = zero_;
    for (const auto& [m, c] : terms_) {
      T t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m[i]; ++k) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  MultiPoly partial(int i) const {
    MultiPoly r(nvars_, zero_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Mono mm = m;
      mm[i] -= 1;
      r.add_term(mm, c * from_int_like(zero_, m[i]));
    }
    return r;
  }

  template <class F>
  auto map(F&& f) const -> MultiPoly<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    MultiPoly<U> r(nvars_, f(zero_));
    for (const auto& [m, c] : terms_) r.set(m, f(c));
    return r;
  }

 private:
  int nvars_ = 3;
  TermMap terms_;
  T zero_{};
};

// P(L_1, ..., L_n) where each L_i is a polynomial (typically linear forms).
template <class T>
MultiPoly<T> compose(const MultiPoly<T>& P, const std::vector<MultiPoly<T>>& L) {
  int n = P.nvars();
  int deg = std::max(0, P.total_degree());
  std::vector<std::vector<MultiPoly<T>>> pw(n);
  for (int i = 0; i < n; ++i) {
    pw[i].push_back(MultiPoly<T>::constant(L[i].nvars(), one_like(P.zero())));
    for (int k = 1; k <= deg; ++k) pw[i].push_back(pw[i].back() * L[i]);
  }
  MultiPoly<T> r(L.empty() ? n : L[0].nvars(), P.zero());
  for (const auto& [m, c] : P.terms()) {
    MultiPoly<T> t = MultiPoly<T>::constant(r.nvars(), c);
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) t = t * pw[i][m[i]];
    r += t;
  }
  return r;
}

// F(M x): variable x_i is replaced by sum_j M[i][j] x_j.
template <class T>
MultiPoly<T> substitute(const MultiPoly<T>& F, const Matrix<T>& M) {
  std::vector<MultiPoly<T>> L;
  for (const auto& row : M) L.push_back(MultiPoly<T>::linear_form(row));
  return compose(F, L);
}

template <class T>
Matrix<T> identity_matrix(int n, const T& one) {
  Matrix<T> I(n, std::vector<T>(n, zero_like(one)));
  for (int i = 0; i < n; ++i) I[i][i] = one;
  return I;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& A, const Matrix<T>& B) {
  size_t n = A.size(), m = B[0].size(), k = B.size();
  Matrix<T> C(n, std::vector<T>(m, zero_like(A[0][0])));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      T acc = zero_like(A[0][0]);
      for (size_t t = 0; t < k; ++t) acc = acc + A[i][t] * B[t][j];
      C[i][j] = acc;
    }
  return C;
}

// row vector times matrix
template <class T>
std::vector<T> vecmat(const std::vector<T>& v, const Matrix<T>& A) {
  std::vector<T> r(A[0].size(), zero_like(v[0]));
  for (size_t j = 0; j < A[0].size(); ++j) {
    T acc = zero_like(v[0]);
    for (size_t i = 0; i < v.size(); ++i) acc = acc + v[i] * A[i][j];
    r[j] = acc;
  }
  return r;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& A, const std::vector<T>& v) {
  std::vector<T> r(A.size(), zero_like(v[0]));
  for (size_t i = 0; i < A.size(); ++i) {
    T acc = zero_like(v[0]);
    for (size_t j = 0; j < v.size(); ++j) acc = acc + A[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& A) {
  Matrix<T> B(A[0].size(), std::vector<T>(A.size(), A[0][0]));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) B[j][i] = A[i][j];
  return B;
}

// Sylvester matrix of f (rows first) and g; the resultant is its determinant,
// so res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a).
template <class T>
Matrix<T> sylvester_matrix(const UPoly<T>& f, const UPoly<T>& g) {
  int m = f.degree(), n = g.degree();
  int sz = m + n;
  Matrix<T> S(sz, std::vector<T>(sz, f.zero()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) S[i][i + k] = f[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) S[n + i][i + k] = g[n - k];
  return S;
}

// Resultant over an exact domain.
template <class T>
T resultant_exact(const UPoly<T>& f, const UPoly<T>& g) {
  if (f.is_zero() || g.is_zero()) return zero_like(f.zero());
  if (f.degree() == 0 && g.degree() == 0) return one_like(f.zero());
  if (f.degree() == 0) {
    T r = one_like(f.zero());
    for (int i = 0; i < g.degree(); ++i) r = r * f.lead();
    return r;
  }
  if (g.degree() == 0) {
    T r = one_like(f.zero());
    for (int i = 0; i < f.degree(); ++i) r = r * g.lead();
    return r;
  }
  return det_bareiss(sylvester_matrix(f, g));
}

}  // namespace quartred
