#include "quartred/discriminant.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace quartred {

namespace {

// Row/column layout of the degree-7 Macaulay matrix for three cubics with
// the variable order perm.
struct MacaulayLayout {
  std::vector<Mono> cols;
  std::vector<int> owner;      // which polynomial divides each monomial
  std::vector<int> extraneous; // indices of monomials divisible by two cubes
};

MacaulayLayout layout(const std::array<int, 3>& perm) {
  MacaulayLayout L;
  L.cols = monomials_of_degree(7);
  for (size_t c = 0; c < L.cols.size(); ++c) {
    const Mono& m = L.cols[c];
    int own = -1, cubes = 0;
    for (int k = 0; k < 3; ++k) {
      int v = perm[k];
      if (m[v] >= 3) {
        ++cubes;
        if (own < 0) own = v;
      }
    }
    L.owner.push_back(own);
    if (cubes >= 2) L.extraneous.push_back(int(c));
  }
  return L;
}

template <class T>
std::pair<Matrix<T>, Matrix<T>> macaulay_matrices(const std::array<const MultiPoly<T>*, 3>& f,
                                                  const std::array<int, 3>& perm, const T& zero) {
  MacaulayLayout L = layout(perm);
  int n = int(L.cols.size());
  std::map<Mono, int> index;
  for (int c = 0; c < n; ++c) index[L.cols[c]] = c;
  Matrix<T> M(n, std::vector<T>(n, zero));
  for (int r = 0; r < n; ++r) {
    Mono shift = L.cols[r];
    int own = L.owner[r];
    shift[own] -= 3;
    for (const auto& [m, c] : f[own]->terms()) {
      Mono t{m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]};
      M[r][index.at(t)] = c;
    }
  }
  int k = int(L.extraneous.size());
  Matrix<T> E(k, std::vector<T>(k, zero));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) E[i][j] = M[L.extraneous[i]][L.extraneous[j]];
  return {M, E};
}

const std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};

}  // namespace

mpq_class macaulay_resultant_cubics(const RationalPoly& f1, const RationalPoly& f2,
                                    const RationalPoly& f3) {
  for (const auto* f : {&f1, &f2, &f3})
    if (!f->is_homogeneous(3)) throw Error(ErrorKind::Input, "discriminant", "expected ternary cubics");
  for (const auto& perm : kPerms) {
    auto [M, E] = macaulay_matrices<mpq_class>({&f1, &f2, &f3}, perm, mpq_class(0));
    mpq_class e = det_bareiss(E);
    if (sgn(e) == 0) continue;
    return det_bareiss(M) / e;
  }
  throw Error(ErrorKind::Degenerate, "discriminant", "every Macaulay minor vanishes");
}

mpq_class discriminant_quartic(const RationalPoly& F) {
  if (!F.is_homogeneous(4) || F.is_zero())
    throw Error(ErrorKind::Input, "discriminant", "expected a ternary quartic form");
  RationalPoly d0 = F.partial(0), d1 = F.partial(1), d2 = F.partial(2);
  for (const auto& perm : kPerms) {
    auto [M, E] = macaulay_matrices<mpq_class>({&d0, &d1, &d2}, perm, mpq_class(0));
    mpq_class e = det_bareiss(E);
    if (sgn(e) == 0) continue;
    return det_bareiss(M) / e;
  }
  // unimodular changes of variables leave the value unchanged (weight 36)
  const std::vector<Matrix<mpq_class>> shears{
      {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
      {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}},
      {{1, 2, 3}, {0, 1, 5}, {0, 0, 1}},
      {{1, 2, 3}, {1, 3, 5}, {2, 5, 9}},
      {{2, 3, 1}, {1, 2, 1}, {4, 7, 3}},
  };
  for (const auto& S : shears) {
    RationalPoly G = substitute(F, S);
    RationalPoly e0 = G.partial(0), e1 = G.partial(1), e2 = G.partial(2);
    auto [M, E] = macaulay_matrices<mpq_class>({&e0, &e1, &e2}, kPerms[0], mpq_class(0));
    mpq_class e = det_bareiss(E);
    if (sgn(e) == 0) continue;
    return det_bareiss(M) / e;
  }
  // several generic frames all degenerate: only happens for singular forms
  return mpq_class(0);
}

Padic discriminant_quartic(const PadicForm& F) {
  if (!F.is_homogeneous(4) || F.is_zero())
    throw Error(ErrorKind::Input, "discriminant", "expected a ternary quartic form");
  PadicForm d0 = F.partial(0), d1 = F.partial(1), d2 = F.partial(2);
  const Padic zero = F.zero();
  Padic best_minor = zero;
  Padic best = zero;
  bool found = false;
  for (const auto& perm : kPerms) {
    auto [M, E] = macaulay_matrices<Padic>({&d0, &d1, &d2}, perm, zero);
    Padic e = det_padic(E);
    if (e.is_zero()) continue;
    if (!found || e.valuation() < best_minor.valuation()) {
      best_minor = e;
      best = det_padic(M) / e;
      found = true;
    }
    if (e.valuation() == 0) break;
  }
  if (!found) throw Error(ErrorKind::Degenerate, "discriminant", "every Macaulay minor vanishes at precision");
  return best;
}

// ---------------------------------------------------------------------------

int rational_valuation(const mpq_class& q, long p) {
  if (sgn(q) == 0) throw Error(ErrorKind::Input, "valuation", "valuation of zero");
  int v = 0;
  mpz_class n = q.get_num(), d = q.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
    d /= p;
    --v;
  }
  return v;
}

namespace {

class Parser {
 public:
  Parser(const std::string& t, int nvars) : text_(t), nvars_(nvars) {}

  RationalPoly run() {
    skip();
    if (i_ == text_.size()) return RationalPoly(nvars_, mpq_class(0));
    RationalPoly r = expr();
    skip();
    if (i_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Input, "parse", why + " at position " + std::to_string(i_) + " in '" + text_ + "'");
  }
  void skip() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < text_.size() && text_[i_] == c;
  }
  bool digit() {
    skip();
    return i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]));
  }
  mpz_class integer() {
    skip();
    size_t s = i_;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
    if (s == i_) fail("expected a number");
    return mpz_class(text_.substr(s, i_ - s));
  }

  RationalPoly expr() {
    int sign = 1;
    while (peek('+') || peek('-')) {
      if (text_[i_] == '-') sign = -sign;
      ++i_;
    }
    RationalPoly r = term();
    if (sign < 0) r = -r;
    while (peek('+') || peek('-')) {
      bool minus = text_[i_] == '-';
      ++i_;
      RationalPoly t = term();
      r = minus ? r - t : r + t;
    }
    return r;
  }

  bool starts_factor() {
    skip();
    if (i_ >= text_.size()) return false;
    char c = text_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y' || c == 'z';
  }

  RationalPoly term() {
    RationalPoly r = power();
    while (true) {
      if (peek('*')) {
        ++i_;
        r = r * power();
      } else if (peek('/')) {
        ++i_;
        mpz_class d = integer();
        if (d == 0) fail("division by zero");
        r = r.scaled(mpq_class(1, 1) / mpq_class(d));
      } else if (starts_factor()) {
        r = r * power();
      } else {
        return r;
      }
    }
  }

  RationalPoly power() {
    RationalPoly b = atom();
    if (peek('^')) {
      ++i_;
      long e = integer().get_si();
      RationalPoly r = RationalPoly::constant(nvars_, mpq_class(1));
      for (long k = 0; k < e; ++k) r = r * b;
      return r;
    }
    return b;
  }

  RationalPoly atom() {
    skip();
    if (i_ >= text_.size()) fail("unexpected end of input");
    char c = text_[i_];
    if (c == '(') {
      ++i_;
      RationalPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RationalPoly::constant(nvars_, mpq_class(integer()));
    if (c == 'x' || c == 'y' || c == 'z') {
      ++i_;
      int var = c == 'y' ? 1 : c == 'z' ? 2 : 0;
      if (c == 'x' && i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
        var = int(integer().get_si()) - 1;
      if (var < 0 || var >= nvars_) fail("unknown variable");
      return RationalPoly::variable(var, nvars_, mpq_class(1));
    }
    fail("unexpected character");
  }

  const std::string& text_;
  int nvars_;
  size_t i_ = 0;
};

}  // namespace

RationalPoly parse_polynomial(const std::string& text, int nvars) { return Parser(text, nvars).run(); }

PadicForm embed(const RationalPoly& F, const FieldContext& K) {
  PadicForm G(F.nvars(), K.zero());
  for (const auto& [m, c] : F.terms()) G.set(m, K.from_rational(c));
  return G;
}

namespace {

std::string mono_string(const Mono& m, int nvars) {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < nvars; ++k) {
    if (!m[k]) continue;
    if (!first) os << "*";
    first = false;
    os << "x" << (k + 1);
    if (m[k] > 1) os << "^" << m[k];
  }
  return os.str();
}

template <class T, class Fmt>
std::string format_generic(const MultiPoly<T>& F, Fmt&& fmt) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : F.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string ms = mono_string(m, F.nvars());
    os << "(" << fmt(c) << ")";
    if (!ms.empty()) os << "*" << ms;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string format_polynomial(const RationalPoly& F) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : F.terms()) {
    std::string ms = mono_string(m, F.nvars());
    mpq_class a = abs(c);
    if (first) os << (sgn(c) < 0 ? "-" : "");
    else os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    if (ms.empty()) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << ms;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string format_polynomial(const PadicForm& F, int prec) {
  return format_generic(F, [prec](const Padic& c) { return c.to_string(prec); });
}

std::string format_polynomial(const FqForm& F) {
  return format_generic(F, [](const Fq& c) { return c.to_string("tau"); });
}

}  // namespace quartred
