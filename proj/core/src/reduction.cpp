#include "quartred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quartred {

Fq BinaryForm::eval(const Fq& x, const Fq& z) const {
  Fq acc = zero_like(x);
  int n = degree();
  // Horner in x with z powers carried along
  std::vector<Fq> zp{one_like(x)};
  for (int k = 1; k <= n; ++k) zp.push_back(zp.back() * z);
  Fq xp = one_like(x);
  for (int k = 0; k <= n; ++k) {
    acc = acc + c[k] * xp * zp[n - k];
    xp = xp * x;
  }
  return acc;
}

bool BinaryForm::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Fq& a) { return a.is_zero(); });
}

BinaryForm binary_form(const FiniteField& F, const std::vector<long>& coeffs) {
  BinaryForm f;
  for (long a : coeffs) f.c.push_back(F.from_int(a));
  return f;
}

BinaryForm map_form(const BinaryForm& f, const FieldEmbedding& e) {
  BinaryForm g;
  for (const auto& a : f.c) g.c.push_back(e(a));
  return g;
}

namespace {

BinaryForm bf_mul(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r;
  r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c[0]));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  return r;
}

BinaryForm bf_add(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r = a;
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  return r;
}

BinaryForm bf_scale(const BinaryForm& a, const Fq& s) {
  BinaryForm r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}

BinaryForm bf_constant(const Fq& a) { return BinaryForm{{a}}; }

// G(phi) for a ternary form G
BinaryForm pull_back(const FqForm& G, const std::array<BinaryForm, 3>& phi, const Fq& zero) {
  int deg = std::max(0, G.total_degree());
  int n = deg * (phi[0].degree());
  BinaryForm acc;
  acc.c.assign(n + 1, zero);
  std::array<std::vector<BinaryForm>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(bf_constant(one_like(zero)));
    for (int k = 1; k <= deg; ++k) pw[i].push_back(bf_mul(pw[i].back(), phi[i]));
  }
  for (const auto& [m, c] : G.terms()) {
    BinaryForm t = bf_constant(c);
    for (int i = 0; i < 3; ++i) t = bf_mul(t, pw[i][m[i]]);
    acc = bf_add(acc, t);
  }
  return acc;
}

FqPoly dehomogenize(const BinaryForm& f) {
  return FqPoly(f.c, zero_like(f.c[0]));
}

using P1 = std::array<Fq, 2>;

std::vector<P1> octic_roots(const BinaryForm& f, int& missing) {
  std::vector<P1> out;
  FqPoly g = dehomogenize(f);
  int in_field = 0;
  for (const auto& [r, m] : residue_roots(g)) {
    out.push_back({r, one_like(r)});
    in_field += m;
  }
  int at_inf = f.degree() - g.degree();
  if (at_inf > 0) out.push_back({one_like(f.c[0]), zero_like(f.c[0])});
  missing = g.degree() - in_field;
  return out;
}

using M2 = std::array<Fq, 4>;  // (a b; c d)

M2 frame_matrix(const P1& p0, const P1& p1, const P1& p2) {
  // columns alpha p0, beta p1 with alpha p0 + beta p1 = p2
  Fq det = p0[0] * p1[1] - p0[1] * p1[0];
  Fq alpha = (p2[0] * p1[1] - p2[1] * p1[0]) / det;
  Fq beta = (p0[0] * p2[1] - p0[1] * p2[0]) / det;
  return {alpha * p0[0], beta * p1[0], alpha * p0[1], beta * p1[1]};
}

M2 mat_mul(const M2& A, const M2& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2],
          A[2] * B[1] + A[3] * B[3]};
}

M2 mat_adj(const M2& A) { return {A[3], -A[1], -A[2], A[0]}; }

P1 mobius_apply(const M2& A, const P1& x) { return {A[0] * x[0] + A[1] * x[1], A[2] * x[0] + A[3] * x[1]}; }

bool same_point(const P1& a, const P1& b) { return (a[0] * b[1] - a[1] * b[0]).is_zero(); }

}  // namespace

ReducedModel reduce_model(const ToggleModel& T) {
  const FieldContext& K = *T.Q.zero().context();
  const FiniteField& k = K.residue_field();
  auto red = [&](const Padic& c) -> Fq {
    if (c.is_zero()) return k.zero();
    if (c.valuation() < 0)
      throw Error(ErrorKind::Precision, "reduction", "toggle model has a non-integral coefficient",
                  "raise the working precision");
    return c.reduce();
  };
  ReducedModel r{T.Q.map(red), T.G0.map(red)};
  return r;
}

std::array<std::array<Fq, 3>, 3> conic_matrix(const FqForm& Q) {
  const Fq zero = Q.zero();
  const Fq half = from_int_like(zero, 2).inverse();
  std::array<std::array<Fq, 3>, 3> S;
  for (auto& row : S) row.fill(zero);
  for (const auto& [m, c] : Q.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < m[i]; ++k) idx.push_back(i);
    if (idx.size() != 2) throw Error(ErrorKind::Input, "reduction", "conic is not a quadratic form");
    if (idx[0] == idx[1]) {
      S[idx[0]][idx[0]] = c;
    } else {
      S[idx[0]][idx[1]] = c * half;
      S[idx[1]][idx[0]] = c * half;
    }
  }
  return S;
}

namespace {

Fq det3(const std::array<std::array<Fq, 3>, 3>& S) {
  return S[0][0] * (S[1][1] * S[2][2] - S[1][2] * S[2][1]) - S[0][1] * (S[1][0] * S[2][2] - S[1][2] * S[2][0]) +
         S[0][2] * (S[1][0] * S[2][1] - S[1][1] * S[2][0]);
}

Fq quad(const std::array<std::array<Fq, 3>, 3>& S, const std::array<Fq, 3>& x, const std::array<Fq, 3>& y) {
  Fq acc = zero_like(x[0]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc = acc + x[i] * S[i][j] * y[j];
  return acc;
}

std::optional<std::array<Fq, 3>> conic_point(const std::array<std::array<Fq, 3>, 3>& S, const FiniteField& F) {
  const Fq zero = F.zero(), one = F.one();
  auto on = [&](const std::array<Fq, 3>& x) { return quad(S, x, x).is_zero(); };
  if (on({one, zero, zero})) return std::array<Fq, 3>{one, zero, zero};
  // (a, 1, 0)
  {
    // S00 a^2 + 2 S01 a + S11
    Fq A = S[0][0], B = S[0][1] + S[0][1], C = S[1][1];
    FqPoly g({C, B, A}, zero);
    if (g.is_zero()) return std::array<Fq, 3>{zero, one, zero};
    auto rs = residue_roots(g);
    if (!rs.empty()) return std::array<Fq, 3>{rs.front().first, one, zero};
  }
  // (a, b, 1): for each a the condition is quadratic in b
  std::uint64_t q = F.small() ? F.order().get_ui() : 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    Fq a = F.element(i);
    Fq A = S[1][1];
    Fq B = (S[0][1] * a + S[1][2]) * from_int_like(a, 2);
    Fq C = S[0][0] * a * a + S[0][2] * a * from_int_like(a, 2) + S[2][2];
    FqPoly g({C, B, A}, zero);
    if (g.is_zero()) return std::array<Fq, 3>{a, zero, one};
    if (g.degree() < 1) continue;
    auto rs = residue_roots(g);
    if (!rs.empty()) return std::array<Fq, 3>{a, rs.front().first, one};
  }
  return std::nullopt;
}

}  // namespace

ConicParametrization parametrize_conic(const FqForm& Q) {
  auto S = conic_matrix(Q);
  if (det3(S).is_zero()) throw Error(ErrorKind::Degenerate, "reduction", "degenerate conic");
  const FiniteField& F = *Q.zero().field();
  auto R = conic_point(S, F);
  // a non-degenerate conic over a finite field always has a rational point
  if (!R) throw Error(ErrorKind::Internal, "reduction", "no point found on a non-degenerate conic");
  ConicParametrization P;
  P.base = *R;
  // complement of R: two unit vectors not containing R's pivot
  int piv = 0;
  while ((*R)[piv].is_zero()) ++piv;
  std::array<std::array<Fq, 3>, 2> E;
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == piv) continue;
    std::array<Fq, 3> e{F.zero(), F.zero(), F.zero()};
    e[i] = F.one();
    E[n++] = e;
  }
  // D(s,t) = s E0 + t E1,  X = Q(D) R - 2 B(R, D) D
  // as binary forms with c[k] the coefficient of s^k t^(2-k)
  Fq q00 = quad(S, E[1], E[1]), q01 = quad(S, E[0], E[1]), q11 = quad(S, E[0], E[0]);
  BinaryForm QD{{q00, q01 + q01, q11}};
  BinaryForm BR{{quad(S, *R, E[1]), quad(S, *R, E[0])}};
  for (int i = 0; i < 3; ++i) {
    BinaryForm D{{E[1][i], E[0][i]}};
    BinaryForm term = bf_scale(bf_mul(BR, D), from_int_like(F.zero(), -2));
    P.phi[i] = bf_add(bf_scale(QD, (*R)[i]), term);
  }
  return P;
}

bool binary_squarefree(const BinaryForm& f) {
  if (f.is_zero()) return false;
  FqPoly g = dehomogenize(f);
  if (f.degree() - g.degree() > 1) return false;
  return is_squarefree(g);
}

GoodCheck check_good(const FqForm& Q, const FqForm& G) {
  GoodCheck g;
  auto S = conic_matrix(Q);
  g.conic_det = det3(S);
  g.nondegenerate = !g.conic_det.is_zero();
  if (!g.nondegenerate) {
    g.failure = "degenerate conic";
    return g;
  }
  auto P = parametrize_conic(Q);
  BinaryForm f = pull_back(G, P.phi, Q.zero());
  if (f.is_zero()) {
    g.failure = "quartic vanishes on the conic";
    return g;
  }
  g.octic_degree_in_x = dehomogenize(f).degree();
  g.transverse = binary_squarefree(f);
  if (!g.transverse) {
    g.failure = "non-transverse intersection: fewer than 8 distinct points";
    return g;
  }
  g.ok = true;
  return g;
}

HyperellipticModel hyperelliptic_reduction(const FqForm& Q, const FqForm& G, const ConicParametrization& phi) {
  HyperellipticModel h;
  h.Q = Q;
  h.G = G;
  h.phi = phi;
  h.f = pull_back(G, phi.phi, Q.zero());
  if (h.f.degree() != 8) throw Error(ErrorKind::Internal, "reduction", "pull-back is not an octic");
  if (!binary_squarefree(h.f)) throw Error(ErrorKind::Internal, "reduction", "octic is not squarefree");
  return h;
}

OcticComparison octic_equivalent(const BinaryForm& f, const BinaryForm& g, int max_degree) {
  OcticComparison out;
  if (!binary_squarefree(f) || !binary_squarefree(g) || f.degree() != g.degree())
    throw Error(ErrorKind::Input, "octic", "octics must be squarefree of equal degree");
  const FiniteField& F = *f.c[0].field();
  auto degs = [&](const BinaryForm& h) {
    FqPoly p = dehomogenize(h);
    std::vector<int> d = factor_degrees(make_monic(p));
    return d;
  };
  int k = 1;
  for (int d : degs(f)) k = std::lcm(k, d);
  for (int d : degs(g)) k = std::lcm(k, d);
  if (k > max_degree)
    throw Error(ErrorKind::ExtensionTooSmall, "octic",
                "roots split only over an extension of degree " + std::to_string(k),
                "allow a larger splitting field");
  out.extension_degree = k;
  BinaryForm fe = f, ge = g;
  FieldExtension ext;
  if (k > 1) {
    ext = extend_field(F, k);
    fe = map_form(f, ext.embedding);
    ge = map_form(g, ext.embedding);
  }
  int mf = 0, mg = 0;
  auto rf = octic_roots(fe, mf);
  auto rg = octic_roots(ge, mg);
  if (mf || mg || rf.size() != rg.size() || rf.size() < 3)
    throw Error(ErrorKind::Internal, "octic", "roots did not split over the computed extension");
  M2 Af = frame_matrix(rf[0], rf[1], rf[2]);
  M2 Af_inv = mat_adj(Af);
  size_t n = rg.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        ++out.candidates;
        M2 T = mat_mul(frame_matrix(rg[a], rg[b], rg[c]), Af_inv);
        bool ok = true;
        std::vector<bool> used(n, false);
        for (const auto& r : rf) {
          P1 im = mobius_apply(T, r);
          bool hit = false;
          for (size_t t = 0; t < n; ++t)
            if (!used[t] && same_point(im, rg[t])) {
              used[t] = hit = true;
              break;
            }
          if (!hit) {
            ok = false;
            break;
          }
        }
        if (ok) {
          out.equivalent = true;
          out.map = T;
          return out;
        }
      }
    }
  return out;
}

long point_count(const BinaryForm& f) {
  const FiniteField& F = *f.c[0].field();
  if (!F.small()) throw Error(ErrorKind::Input, "point-count", "field too large to enumerate");
  std::uint64_t q = F.order().get_ui();
  long n = 0;
  const Fq one = F.one();
  for (std::uint64_t i = 0; i < q; ++i) n += 1 + F.legendre(f.eval(F.element(i), one));
  n += 1 + F.legendre(f.c.back());
  int g = (f.degree() - 1) / 2;
  double bound = 2.0 * g * std::sqrt(double(q));
  if (std::abs(double(n) - double(q + 1)) > bound + 1e-9)
    throw Error(ErrorKind::Internal, "point-count", "Weil bound violated: " + std::to_string(n) + " points");
  return n;
}

std::string format_binary_form(const BinaryForm& f, const std::string& x, const std::string& z) {
  std::string s;
  int n = f.degree();
  for (int k = n; k >= 0; --k) {
    const Fq& c = f.c[k];
    if (c.is_zero()) continue;
    std::string mono;
    if (k > 0) mono += x + (k > 1 ? "^" + std::to_string(k) : "");
    if (n - k > 0) mono += (mono.empty() ? "" : "*") + z + (n - k > 1 ? "^" + std::to_string(n - k) : "");
    std::string cs = c.to_string();
    bool compound = cs.find('+') != std::string::npos;
    if (!s.empty()) s += " + ";
    if (mono.empty())
      s += cs;
    else if (c.is_one())
      s += mono;
    else
      s += (compound ? "(" + cs + ")" : cs) + "*" + mono;
  }
  return s.empty() ? "0" : s;
}

}  // namespace quartred
