#include <algorithm>
#include <climits>
#include <cmath>

#include "quartred/padic.hpp"

namespace quartred {

namespace {

Fq reduce_lenient(const Padic& c) {
  if (c.is_zero()) return c.context()->residue_field().zero();
  return c.reduce();
}

int newton_steps(const FieldContext& K) {
  int s = 4;
  for (int n = 1; n < 2 * K.precision(); n *= 2) ++s;
  return s;
}

}  // namespace

int content_valuation(const PadicPoly& f) {
  int v = INT_MAX;
  for (const auto& c : f.coeffs())
    if (!c.is_zero()) v = std::min(v, c.valuation());
  return v;
}

PadicPoly reduce_content(const PadicPoly& f) {
  int v = content_valuation(f);
  if (v == INT_MAX || v == 0) return f;
  std::vector<Padic> c;
  for (const auto& x : f.coeffs()) c.push_back(x.shift(-v));
  return PadicPoly(std::move(c), f.zero());
}

FqPoly reduce_poly(const PadicPoly& f) {
  const FiniteField& F = f.zero().context()->residue_field();
  std::vector<Fq> c;
  for (const auto& x : f.coeffs()) c.push_back(reduce_lenient(x));
  return FqPoly(std::move(c), F.zero());
}

SqrtResult padic_sqrt(const Padic& a) {
  SqrtResult res;
  if (a.is_zero()) {
    res.failure = SqrtFailure::Zero;
    return res;
  }
  if (a.valuation() % 2 != 0) {
    res.failure = SqrtFailure::OddValuation;
    return res;
  }
  const FieldContext& K = *a.context();
  Padic u = a.unit_part();
  auto sb = K.residue_field().sqrt(u.reduce());
  if (!sb) {
    res.failure = SqrtFailure::NonResidue;
    return res;
  }
  Padic half = K.from_int(2).inverse();
  Padic x = K.lift(*sb);
  for (int it = 0; it < newton_steps(K); ++it) {
    Padic nx = (x + u / x) * half;
    bool done = (nx - x).is_zero();
    x = nx;
    if (done) break;
  }
  x = x.with_precision(u.precision());
  res.root = x.shift(a.valuation() / 2);
  return res;
}

Padic hensel_root(const PadicPoly& f, const Fq& r0) {
  if (f.is_zero()) throw Error(ErrorKind::Input, "hensel", "zero polynomial");
  const FieldContext& K = *f.zero().context();
  PadicPoly g = reduce_content(f);
  FqPoly gb = reduce_poly(g);
  if (!gb.eval(r0).is_zero()) throw Error(ErrorKind::Input, "hensel", "not a root modulo pi");
  PadicPoly dg = g.derivative();
  Padic x = K.lift(r0);
  Padic d = dg.eval(x);
  int kappa = d.valuation();
  if (kappa > 0) {
    Padic fx = g.eval(x);
    if (!(fx.valuation() > 2 * kappa))
      throw HenselObstruction(kappa, "residue root is not simple: v(f'(r0)) = " + std::to_string(kappa));
  }
  for (int it = 0; it < newton_steps(K); ++it) {
    Padic fx = g.eval(x);
    if (fx.is_zero()) break;
    d = dg.eval(x);
    if (d.is_zero()) throw HenselObstruction(d.precision(), "derivative vanished during Newton iteration");
    Padic dx = fx / d;
    x = x - dx;
    if (dx.is_zero()) break;
  }
  return x;
}

namespace {

void polish(const PadicPoly& g, const PadicPoly& dg, Padic& x, int steps) {
  for (int it = 0; it < steps; ++it) {
    Padic fx = g.eval(x);
    if (fx.is_zero()) return;
    Padic d = dg.eval(x);
    if (d.is_zero()) return;
    if (!(fx.valuation() > 2 * d.valuation())) return;
    Padic dx = fx / d;
    Padic nx = x - dx;
    if (nx.precision() < x.precision() && it > 0) return;
    x = nx;
    if (dx.is_zero()) return;
  }
}

void root_search(const PadicPoly& g, const Padic& offset, const Padic& scale, bool only_zero,
                 RootReport& rep) {
  const FieldContext& K = *g.zero().context();
  // scale = pi^k: deeper refinement cannot separate anything
  const bool exhausted = scale.valuation() >= K.precision();
  FqPoly gb = reduce_poly(g);
  if (gb.degree() <= 0) return;
  for (const auto& [r, m] : residue_roots(gb)) {
    if (only_zero && !r.is_zero()) continue;
    if (m == 1) {
      Padic y = hensel_root(g, r);
      rep.roots.push_back(offset + scale * y);
      continue;
    }
    Padic rt = K.lift(r);
    Padic centre = offset + scale * rt;
    if (exhausted) {
      rep.unresolved.emplace_back(centre, m);
      continue;
    }
    PadicPoly h = g.compose_linear(rt, K.pi());
    if (h.is_zero() || content_valuation(h) == INT_MAX) {
      rep.unresolved.emplace_back(centre, m);
      continue;
    }
    h = reduce_content(h);
    bool usable = false;
    for (const auto& c : h.coeffs())
      if (!c.is_zero() && c.valuation() == 0 && c.precision() > 0) usable = true;
    if (!usable || h.degree() < 1) {
      rep.unresolved.emplace_back(centre, m);
      continue;
    }
    RootReport sub;
    root_search(h, centre, scale * K.pi(), false, sub);
    int got = int(sub.roots.size());
    for (const auto& u : sub.unresolved) got += u.second;
    rep.roots.insert(rep.roots.end(), sub.roots.begin(), sub.roots.end());
    rep.unresolved.insert(rep.unresolved.end(), sub.unresolved.begin(), sub.unresolved.end());
    rep.missing += m - got;
  }
}

}  // namespace

RootReport roots_in_field(const PadicPoly& f) {
  RootReport rep;
  if (f.is_zero() || f.degree() < 1) return rep;
  const FieldContext& K = *f.zero().context();
  PadicPoly g = reduce_content(f);
  PadicPoly dg = g.derivative();
  int n = g.degree();
  FqPoly gb = reduce_poly(g);

  root_search(g, K.zero(), K.one(), false, rep);
  for (auto& x : rep.roots) polish(g, dg, x, newton_steps(K));

  int at_infinity = n - gb.degree();
  if (at_infinity > 0) {
    PadicPoly h = reduce_content(g.reversed(n));
    RootReport neg;
    root_search(h, K.zero(), K.one(), true, neg);
    PadicPoly dh = h.derivative();
    for (auto& y : neg.roots) {
      polish(h, dh, y, newton_steps(K));
      if (y.is_zero() || y.valuation() <= 0) continue;
      rep.roots.push_back(y.inverse());
    }
    for (auto& u : neg.unresolved) rep.unresolved.push_back(u);
    rep.missing += neg.missing;
  }

  // residue roots outside F_q
  FqPoly rest = gb;
  int in_field = 0;
  for (const auto& [r, m] : residue_roots(gb)) {
    in_field += m;
    for (int k = 0; k < m; ++k) rest = divrem(rest, FqPoly::linear_root(r)).first;
  }
  rep.missing += gb.degree() - in_field;
  if (rest.degree() > 0) {
    FqPoly sq = rest;
    FqPoly d = rest.derivative();
    if (!d.is_zero()) sq = divrem(rest, poly_gcd(rest, d)).first;
    rep.residue_factor_degrees = factor_degrees(sq);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// linear algebra

Padic det_padic(PadicMatrix A) {
  int n = int(A.size());
  if (n == 0) throw Error(ErrorKind::Input, "linalg", "empty matrix");
  const FieldContext& K = *A[0][0].context();
  Padic det = K.one();
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = INT_MAX;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j)
        if (!A[i][j].is_zero() && A[i][j].valuation() < bv) {
          bv = A[i][j].valuation();
          bi = i;
          bj = j;
        }
    if (bi < 0) {
      // every remaining entry vanishes at its precision
      Padic z = A[k][k];
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (A[i][j].precision() < z.precision()) z = A[i][j];
      return det * z;
    }
    if (bi != k) {
      std::swap(A[bi], A[k]);
      sign = -sign;
    }
    if (bj != k) {
      for (int i = 0; i < n; ++i) std::swap(A[i][bj], A[i][k]);
      sign = -sign;
    }
    det = det * A[k][k];
    Padic inv = A[k][k].inverse();
    for (int i = k + 1; i < n; ++i) {
      if (A[i][k].is_zero()) continue;
      Padic f = A[i][k] * inv;
      for (int j = k + 1; j < n; ++j) A[i][j] = A[i][j] - f * A[k][j];
    }
  }
  return sign < 0 ? -det : det;
}

std::vector<Padic> solve_padic(PadicMatrix A, std::vector<Padic> b) {
  int n = int(A.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1, bv = INT_MAX;
    for (int i = c; i < n; ++i)
      if (!A[i][c].is_zero() && A[i][c].valuation() < bv) {
        bv = A[i][c].valuation();
        piv = i;
      }
    if (piv < 0) throw Error(ErrorKind::Degenerate, "linalg", "singular system at working precision");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    Padic inv = A[c][c].inverse();
    for (int i = c + 1; i < n; ++i) {
      if (A[i][c].is_zero()) continue;
      Padic f = A[i][c] * inv;
      for (int j = c + 1; j < n; ++j) A[i][j] = A[i][j] - f * A[c][j];
      b[i] = b[i] - f * b[c];
    }
  }
  std::vector<Padic> x(n, A[0][0]);
  for (int i = n - 1; i >= 0; --i) {
    Padic s = b[i];
    for (int j = i + 1; j < n; ++j) s = s - A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

PadicMatrix inverse_padic(const PadicMatrix& A) {
  int n = int(A.size());
  const FieldContext& K = *A[0][0].context();
  PadicMatrix inv(n, std::vector<Padic>(n, K.zero()));
  for (int c = 0; c < n; ++c) {
    std::vector<Padic> e(n, K.zero());
    e[c] = K.one();
    auto x = solve_padic(A, e);
    for (int i = 0; i < n; ++i) inv[i][c] = x[i];
  }
  return inv;
}

Padic resultant(const PadicPoly& f, const PadicPoly& g) {
  if (f.is_zero() || g.is_zero())
    throw Error(ErrorKind::Precision, "resultant", "unstable elimination: zero polynomial at precision");
  if (f.lead().is_zero() || g.lead().is_zero())
    throw Error(ErrorKind::Precision, "resultant", "unstable elimination: leading coefficient vanishes at precision");
  const FieldContext& K = *f.zero().context();
  if (f.degree() == 0 || g.degree() == 0) {
    Padic r = K.one();
    if (f.degree() == 0)
      for (int i = 0; i < g.degree(); ++i) r *= f.lead();
    else
      for (int i = 0; i < f.degree(); ++i) r *= g.lead();
    return r;
  }
  return det_padic(sylvester_matrix(f, g));
}

}  // namespace quartred
