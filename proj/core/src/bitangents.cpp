#include "quartred/bitangents.hpp"

#include <algorithm>
#include <climits>
#include <random>

namespace quartred {

namespace {

using QPoly = UPoly<mpq_class>;
using BPoly = UPoly<QPoly>;  // polynomial in b over Q[a]

// unimodular integer matrix; seed 0 is a fixed choice
Matrix<mpq_class> generic_transform(int seed) {
  std::mt19937 rng(0x71c3u + 7919u * unsigned(seed));
  std::uniform_int_distribution<int> dist(-3, 3);
  Matrix<mpq_class> U = identity_matrix(3, mpq_class(1)), L = U;
  U[0][1] = seed == 0 ? 2 : dist(rng);
  U[0][2] = seed == 0 ? -1 : dist(rng);
  U[1][2] = seed == 0 ? 3 : dist(rng);
  L[1][0] = seed == 0 ? 1 : dist(rng);
  L[2][0] = seed == 0 ? -2 : dist(rng);
  L[2][1] = seed == 0 ? 1 : dist(rng);
  return matmul(U, L);
}

Matrix<mpq_class> inverse_exact(const Matrix<mpq_class>& M) {
  int n = int(M.size());
  Matrix<mpq_class> inv(n, std::vector<mpq_class>(n));
  for (int c = 0; c < n; ++c) {
    std::vector<mpq_class> e(n, mpq_class(0));
    e[c] = 1;
    auto x = solve_exact(M, e);
    for (int i = 0; i < n; ++i) inv[i][c] = x[i];
  }
  return inv;
}

BPoly as_b_poly(const RationalPoly& S) {
  std::vector<QPoly> coeffs;
  QPoly zero(mpq_class(0));
  for (const auto& [m, c] : S.terms()) {
    int kb = m[1], ka = m[0];
    if (int(coeffs.size()) <= kb) coeffs.resize(kb + 1, zero);
    QPoly t = coeffs[kb];
    t.set(ka, t[ka] + c);
    coeffs[kb] = t;
  }
  return BPoly(std::move(coeffs), zero);
}

QPoly as_a_poly(const RationalPoly& S) {
  QPoly r(mpq_class(0));
  for (const auto& [m, c] : S.terms()) {
    if (m[1] != 0) throw Error(ErrorKind::Internal, "bitangents", "expected a polynomial in a only");
    r.set(m[0], r[m[0]] + c);
  }
  return r;
}

// coefficients (s1, s0) of the first subresultant of f (deg 3) and g (deg 4) in b
std::pair<QPoly, QPoly> first_subresultant(const BPoly& f, const BPoly& g) {
  const int m = 3, n = 4, j = 1;
  const int cols = m + n - j;  // powers b^5 .. b^0
  QPoly zero(mpq_class(0));
  Matrix<QPoly> rows;
  for (int k = n - j - 1; k >= 0; --k) {
    std::vector<QPoly> r(cols, zero);
    for (int i = 0; i <= m; ++i) r[cols - 1 - (i + k)] = f[i];
    rows.push_back(r);
  }
  for (int k = m - j - 1; k >= 0; --k) {
    std::vector<QPoly> r(cols, zero);
    for (int i = 0; i <= n; ++i) r[cols - 1 - (i + k)] = g[i];
    rows.push_back(r);
  }
  auto minor = [&](int last_col) {
    Matrix<QPoly> M;
    for (const auto& r : rows) {
      std::vector<QPoly> row(r.begin(), r.begin() + (cols - 2));
      row.push_back(r[last_col]);
      M.push_back(row);
    }
    return det_bareiss(M);
  };
  return {minor(cols - 2), minor(cols - 1)};
}

bool divides(const QPoly& d, const QPoly& f, QPoly& quot) {
  auto [q, r] = divrem(f, d);
  if (!r.is_zero()) return false;
  quot = q;
  return true;
}

QPoly primitive_integer(const QPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.get_den());
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, mpz_class(c * l));
  QPoly r(mpq_class(0));
  for (int i = 0; i <= f.degree(); ++i) r.set(i, mpq_class(f[i] * l / g));
  if (sgn(r.lead()) < 0) r = -r;
  return r;
}

Padic eval_q(const QPoly& f, const Padic& x) {
  const FieldContext& K = *x.context();
  Padic acc = K.zero();
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + K.from_rational(f[i]);
  return acc;
}

int pivot_index(const Point3& v) {
  int k = -1, best = INT_MAX;
  for (int i = 0; i < 3; ++i)
    if (!v[i].is_zero() && v[i].valuation() < best) {
      best = v[i].valuation();
      k = i;
    }
  return k;
}

// binary form g(s,t) = sum g[k] s^k t^(deg-k) as a 2-variable polynomial
std::vector<Padic> binary_coeffs(const PadicForm& g, int deg) {
  std::vector<Padic> out(deg + 1, g.zero());
  for (const auto& [m, c] : g.terms()) {
    if (m[0] + m[1] != deg) throw Error(ErrorKind::Internal, "bitangents", "binary form of unexpected degree");
    out[m[0]] = c;
  }
  return out;
}

PadicForm binary_form(const std::vector<Padic>& c) {
  int deg = int(c.size()) - 1;
  PadicForm g(2, c[0].context()->zero());
  for (int k = 0; k <= deg; ++k) g.set({k, deg - k, 0}, c[k]);
  return g;
}

// g((s,t) -> (m00 s + m01 t, m10 s + m11 t))
std::vector<Padic> binary_substitute(const std::vector<Padic>& g, const std::array<Padic, 4>& m) {
  const Padic zero = g[0].context()->zero();
  PadicForm s(2, zero), t(2, zero);
  s.set({1, 0, 0}, m[0]);
  s.set({0, 1, 0}, m[1]);
  t.set({1, 0, 0}, m[2]);
  t.set({0, 1, 0}, m[3]);
  return binary_coeffs(compose(binary_form(g), {s, t}), int(g.size()) - 1);
}

Point3 combine(const Padic& s, const Point3& A, const Padic& t, const Point3& B) {
  return {s * A[0] + t * B[0], s * A[1] + t * B[1], s * A[2] + t * B[2]};
}

}  // namespace

Point3 normalize_line(const Point3& line) {
  int k = pivot_index(line);
  if (k < 0) throw Error(ErrorKind::Precision, "bitangents", "line vanishes at working precision");
  Padic inv = line[k].inverse();
  Point3 r{line[0] * inv, line[1] * inv, line[2] * inv};
  const FieldContext& K = *line[0].context();
  r[k] = K.one();
  return r;
}

bool same_line(const Point3& a, const Point3& b, int guard) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_negligible(guard)) return false;
  return true;
}

RationalPoly restrict_to_line(const RationalPoly& F, const std::array<mpq_class, 3>& line) {
  int k = -1;
  for (int i = 0; i < 3; ++i)
    if (sgn(line[i]) != 0) k = i;
  if (k < 0) throw Error(ErrorKind::Input, "restrict", "zero line");
  std::vector<RationalPoly> L(3, RationalPoly(2, mpq_class(0)));
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    L[i] = RationalPoly::variable(slot, 2, mpq_class(1));
    L[k].add_term({slot == 0 ? 1 : 0, slot == 1 ? 1 : 0, 0}, -line[i] / line[k]);
    ++slot;
  }
  return compose(F, L);
}

PadicForm restrict_to_line(const PadicForm& F, const Point3& line) {
  int k = -1, best = INT_MAX;
  for (int i = 0; i < 3; ++i)
    if (!line[i].is_zero() && line[i].valuation() <= best) {
      best = line[i].valuation();
      k = i;
    }
  if (k < 0) throw Error(ErrorKind::Input, "restrict", "zero line");
  const Padic zero = F.zero();
  const Padic one = zero.context()->one();
  Padic inv = line[k].inverse();
  std::vector<PadicForm> L(3, PadicForm(2, zero));
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    L[i] = PadicForm::variable(slot, 2, one);
    L[k].add_term({slot == 0 ? 1 : 0, slot == 1 ? 1 : 0, 0}, -(line[i] * inv));
    ++slot;
  }
  return compose(F, L);
}

SquareSystem perfect_square_system(const RationalPoly& F, int chart) {
  if (chart < 1 || chart > 3) throw Error(ErrorKind::Input, "bitangents", "chart must be 1, 2 or 3");
  if (!F.is_homogeneous(4)) throw Error(ErrorKind::Input, "bitangents", "expected a ternary quartic");
  int j = chart - 1, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
  // variables (u, a, b): x_j = a u + b, x_{j+1} = u, x_{j+2} = 1
  std::vector<RationalPoly> L(3, RationalPoly(3, mpq_class(0)));
  L[j].add_term({1, 1, 0}, 1);
  L[j].add_term({0, 0, 1}, 1);
  L[j1] = RationalPoly::variable(0, 3, mpq_class(1));
  L[j2] = RationalPoly::constant(3, mpq_class(1));
  RationalPoly P = compose(F, L);
  SquareSystem sys;
  for (auto& c : sys.c) c = RationalPoly(2, mpq_class(0));
  for (const auto& [m, c] : P.terms()) sys.c[m[0]].add_term({m[1], m[2], 0}, c);
  const auto& c = sys.c;
  auto k = [](long n) { return RationalPoly::constant(2, mpq_class(n)); };
  sys.S1 = c[3] * c[3] * c[3] - k(4) * c[2] * c[3] * c[4] + k(8) * c[1] * c[4] * c[4];
  RationalPoly w = k(4) * c[2] * c[4] - c[3] * c[3];
  sys.S2 = w * w - k(64) * c[0] * c[4] * c[4] * c[4];
  return sys;
}

Bitangent contact_points(const PadicForm& F, const Point3& line_in, int guard) {
  Bitangent bt;
  bt.line = normalize_line(line_in);
  const FieldContext& K = *F.zero().context();
  const Padic zero = K.zero(), one = K.one();
  int k = pivot_index(bt.line);
  int i = (k + 1) % 3, j = (k + 2) % 3;
  if (i > j) std::swap(i, j);
  Point3 A{zero, zero, zero}, B{zero, zero, zero};
  A[i] = one;
  A[k] = -bt.line[i];
  B[j] = one;
  B[k] = -bt.line[j];
  bt.A = A;
  bt.B = B;

  std::vector<PadicForm> L;
  for (int m = 0; m < 3; ++m) {
    PadicForm f(2, zero);
    f.set({1, 0, 0}, A[m]);
    f.set({0, 1, 0}, B[m]);
    L.push_back(f);
  }
  std::vector<Padic> g = binary_coeffs(compose(F, L), 4);
  int cv = INT_MAX;
  for (const auto& c : g)
    if (!c.is_zero()) cv = std::min(cv, c.valuation());
  if (cv == INT_MAX) throw Error(ErrorKind::Degenerate, "bitangents", "line is a component of the curve at precision");

  // a substitution making the s^4 coefficient a unit multiple of the content
  const FiniteField& k0 = K.residue_field();
  std::array<Padic, 4> sub{one, zero, zero, one}, back{one, zero, zero, one};
  bool found = false;
  std::vector<Padic> gt;
  for (long idx = -1; idx < long(std::min<mpz_class>(k0.order(), 64).get_si()) && !found; ++idx) {
    if (idx < 0) {
      sub = {one, zero, zero, one};
    } else {
      Padic lam = K.lift(k0.element(idx));
      if (idx == 0) {
        sub = {zero, one, one, zero};  // swap s and t
      } else {
        sub = {one, zero, lam, one};
      }
    }
    gt = binary_substitute(g, sub);
    if (!gt[4].is_zero() && gt[4].valuation() == cv) found = true;
  }
  if (!found) throw Error(ErrorKind::ExtensionTooSmall, "bitangents", "restricted quartic vanishes on every residue point");
  // inverse of sub (determinant is +-1)
  Padic det = sub[0] * sub[3] - sub[1] * sub[2];
  Padic dinv = det.inverse();
  back = {sub[3] * dinv, -sub[1] * dinv, -sub[2] * dinv, sub[0] * dinv};

  Padic linv = gt[4].inverse();
  std::vector<Padic> h;
  for (const auto& c : gt) h.push_back(c * linv);
  Padic half = K.from_int(2).inverse();
  Padic f = h[3] * half;
  Padic hh = (h[2] - f * f) * half;
  Padic r1 = h[1] - K.from_int(2) * f * hh;
  Padic r0 = h[0] - hh * hh;
  int res = INT_MAX;
  for (const auto* r : {&r1, &r0}) res = std::min(res, r->valuation());
  bt.residual = res;
  if (!r1.is_negligible(guard + cv) || !r0.is_negligible(guard + cv))
    throw Error(ErrorKind::Degenerate, "bitangents",
                "not a bitangent: square remainder has valuation " + std::to_string(res));

  std::vector<Padic> qt{hh, f, one};  // coefficients of t^2, st, s^2 -> indexed by power of s
  std::vector<Padic> q = binary_substitute(qt, back);
  // q[k] multiplies s^k t^(2-k); store as (s^2, st, t^2)
  std::array<Padic, 3> qq{q[2], q[1], q[0]};
  int qk = -1, qv = INT_MAX;
  for (int m = 0; m < 3; ++m)
    if (!qq[m].is_zero() && qq[m].valuation() < qv) {
      qv = qq[m].valuation();
      qk = m;
    }
  Padic qinv = qq[qk].inverse();
  for (auto& c : qq) c = c * qinv;
  qq[qk] = one;
  bt.q = qq;

  Padic disc = qq[1] * qq[1] - K.from_int(4) * qq[0] * qq[2];
  if (disc.is_negligible(guard)) {
    bt.hyperflex = true;
    Point3 P = qq[0].valuation() <= qq[2].valuation() ? combine(-qq[1], A, K.from_int(2) * qq[0], B)
                                                      : combine(K.from_int(2) * qq[2], A, -qq[1], B);
    bt.P = normalize_line(P);
    bt.Q = bt.P;
  } else if (auto r = padic_sqrt(disc).root) {
    Padic wp = -qq[1] + *r, wm = -qq[1] - *r;
    Padic w = (wm.is_zero() || (!wp.is_zero() && wp.valuation() <= wm.valuation())) ? wp : wm;
    bt.P = normalize_line(combine(w, A, K.from_int(2) * qq[0], B));
    bt.Q = normalize_line(combine(K.from_int(2) * qq[2], A, w, B));
  }
  return bt;
}

BitangentSet solve_bitangents(const RationalPoly& F, const ContextPtr& Kp, int guard) {
  if (!F.is_homogeneous(4) || F.is_zero())
    throw Error(ErrorKind::Input, "bitangents", "expected a ternary quartic");
  if (sgn(discriminant_quartic(F)) == 0)
    throw Error(ErrorKind::Input, "bitangents", "singular quartic", "check the input form");
  const FieldContext& K = *Kp;
  BitangentSet out;

  QPoly Bpoly(mpq_class(0)), s1(mpq_class(0)), s0(mpq_class(0));
  BPoly S1b, S2b;
  bool ok = false;
  for (int seed = 0; seed < 12 && !ok; ++seed) {
    Matrix<mpq_class> T = generic_transform(seed);
    RationalPoly G = substitute(F, T);
    SquareSystem sys = perfect_square_system(G, 1);
    S1b = as_b_poly(sys.S1);
    S2b = as_b_poly(sys.S2);
    if (S1b.degree() != 3 || S2b.degree() != 4) continue;
    QPoly c4 = as_a_poly(sys.c[4]);
    QPoly R = resultant_exact(S1b, S2b);
    if (R.is_zero() || c4.is_zero()) continue;
    QPoly quot(mpq_class(0));
    while (c4.degree() > 0 && divides(c4, R, quot)) R = quot;
    if (R.degree() != 28) {
      out.notes.push_back("seed " + std::to_string(seed) + ": eliminant of degree " + std::to_string(R.degree()));
      continue;
    }
    if (poly_gcd(R, R.derivative()).degree() > 0 || poly_gcd(R, c4).degree() > 0) {
      out.notes.push_back("seed " + std::to_string(seed) + ": eliminant not squarefree");
      continue;
    }
    std::tie(s1, s0) = first_subresultant(S1b, S2b);
    Bpoly = primitive_integer(R);
    out.transform = T;
    out.seed = seed;
    ok = true;
  }
  if (!ok) throw Error(ErrorKind::Degenerate, "bitangents", "no generic coordinate system found");

  Matrix<mpq_class> Tinv = inverse_exact(out.transform);
  PadicForm FK = embed(F, K);
  PadicPoly BK = Bpoly.map([&](const mpq_class& c) { return K.from_rational(c); });
  RootReport rep = roots_in_field(BK);
  out.residual_degrees = rep.residue_factor_degrees;
  for (const auto& u : rep.unresolved) out.unresolved += u.second;
  if (!rep.unresolved.empty())
    out.notes.push_back(std::to_string(out.unresolved) + " slopes unresolved at working precision");
  if (rep.missing > 0) out.notes.push_back(std::to_string(rep.missing) + " slopes not in K");

  int dups = 0;
  for (const Padic& a : rep.roots) {
    // the line is (w0, -w1, -w2) up to scale with w = (1, a, b), or (y, 1, b y) for y = 1/a
    // when a is not integral
    bool big = !a.is_zero() && a.valuation() < 0;
    Padic y = big ? a.inverse() : K.zero();
    auto ev = [&](const QPoly& f) { return big ? eval_q(f.reversed(f.degree()), y) : eval_q(f, a); };
    Padic den = ev(s1);
    std::vector<std::array<Padic, 3>> cands;
    if (!den.is_negligible(guard)) {
      Padic num = ev(s0);
      if (big) {
        // b y = -s0(a) y / s1(a) = -y^(1 + deg s1 - deg s0) rev s0 / rev s1
        Padic by = -(num / den);
        for (int k = 0; k < 1 + s1.degree() - s0.degree(); ++k) by = by * y;
        for (int k = 0; k > 1 + s1.degree() - s0.degree(); --k) by = by / y;
        cands.push_back({y, K.one(), by});
      } else {
        cands.push_back({K.one(), a, -(num / den)});
      }
    } else {
      // fall back to the cubic S1(a, b)
      std::vector<Padic> cf, cg;
      for (int i = 0; i <= S1b.degree(); ++i) cf.push_back(eval_q(S1b[i], a));
      for (int i = 0; i <= S2b.degree(); ++i) cg.push_back(eval_q(S2b[i], a));
      Padic best_b = K.zero();
      int bv = INT_MIN;
      auto roots = roots_in_field(PadicPoly(cf, K.zero())).roots;
      for (const auto& b : roots) {
        Padic v = PadicPoly(cg, K.zero()).eval(b);
        int vv = v.is_zero() ? INT_MAX : v.valuation();
        if (vv > bv) {
          bv = vv;
          best_b = b;
        }
      }
      if (roots.empty()) {
        out.notes.push_back("slope without a companion intercept");
        continue;
      }
      cands.push_back({K.one(), a, best_b});
    }
    for (const auto& w : cands) {
      // w0 x1 - w1 x2 - w2 x3 in transformed coordinates, pulled back through T^-1
      std::array<Padic, 3> lg{w[0], -w[1], -w[2]};
      Point3 lf{K.zero(), K.zero(), K.zero()};
      for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r)
          if (sgn(Tinv[r][c]) != 0) lf[c] = lf[c] + lg[r] * K.from_rational(Tinv[r][c]);
      try {
        Bitangent bt = contact_points(FK, lf, guard);
        bt.chart = 1;
        bool dup = false;
        for (const auto& o : out.lines)
          if (same_line(o.line, bt.line, guard)) dup = true;
        if (dup) ++dups;
        else out.lines.push_back(std::move(bt));
      } catch (const Error& e) {
        out.notes.push_back(std::string("rejected candidate: ") + e.what());
      }
    }
  }

  if (dups)
    out.notes.push_back(std::to_string(dups) + " slope(s) gave a line already found at working precision");

  // deterministic order
  int cmp_prec = K.precision() - guard;
  for (const auto& bt : out.lines)
    for (const auto& c : bt.line) cmp_prec = std::min(cmp_prec, c.precision());
  cmp_prec = std::max(cmp_prec, 1);
  auto key = [&](const Bitangent& bt) {
    std::vector<mpz_class> kv;
    kv.push_back(pivot_index(bt.line));
    for (const auto& c : bt.line)
      for (const auto& row : c.absolute_coeffs(cmp_prec))
        for (const auto& x : row) kv.push_back(x);
    return kv;
  };
  std::vector<std::pair<std::vector<mpz_class>, size_t>> keys;
  for (size_t i = 0; i < out.lines.size(); ++i) keys.emplace_back(key(out.lines[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<Bitangent> sorted;
  for (const auto& kv : keys) sorted.push_back(out.lines[kv.second]);
  out.lines = std::move(sorted);
  out.complete = out.lines.size() == 28;
  if (!out.complete) {
    std::string degs;
    for (int d : out.residual_degrees) degs += (degs.empty() ? "" : ",") + std::to_string(d);
    out.notes.push_back("found " + std::to_string(out.lines.size()) +
                        " bitangents over K; residue factor degrees of the rest: [" + degs + "]");
  }
  return out;
}

}  // namespace quartred
