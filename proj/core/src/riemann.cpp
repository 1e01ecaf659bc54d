#include "quartred/riemann.hpp"

#include <algorithm>
#include <climits>

namespace quartred {

namespace {

int min_val(const Row3& r) {
  int v = INT_MAX;
  for (const auto& c : r)
    if (!c.is_zero()) v = std::min(v, c.valuation());
  return v;
}

int form_content(const PadicForm& F) {
  int v = INT_MAX;
  for (const auto& [m, c] : F.terms())
    if (!c.is_zero()) v = std::min(v, c.valuation());
  return v;
}

Row3 row_combo(const std::array<Padic, 3>& coef, const std::array<Row3, 3>& forms, const Row3& extra) {
  Row3 r = extra;
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) r[m] = r[m] + coef[k] * forms[k][m];
  return r;
}

std::array<int, 7> permute(const std::array<int, 7>& order, const std::array<int, 3>& cols,
                           const std::array<int, 3>& rows) {
  std::array<int, 7> o = order;
  for (int j = 0; j < 3; ++j) o[j] = order[cols[j]];
  for (int i = 0; i < 3; ++i) o[4 + i] = order[4 + rows[i]];
  return o;
}

const std::array<std::array<int, 3>, 6> kPerm3{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};


}  // namespace

std::string to_string(FrameCase c) {
  switch (c) {
    case FrameCase::Case1: return "case1";
    case FrameCase::Case2: return "case2";
    case FrameCase::Case3: return "case3";
    default: return "other";
  }
}

AronholdFrame normalize_frame(const std::vector<Bitangent>& lines, const std::array<int, 7>& order) {
  std::array<Point3, 7> l;
  for (int i = 0; i < 7; ++i) l[i] = lines.at(order[i]).line;
  AronholdFrame f = normalize_frame(l);
  f.order = order;
  return f;
}

AronholdFrame normalize_frame(const std::array<Point3, 7>& l) {
  const FieldContext& K = *l[0][0].context();
  AronholdFrame f;
  PadicMatrix L(3, std::vector<Padic>(3, K.zero()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L[i][j] = l[i][j];
  if (det_padic(L).is_zero())
    throw Error(ErrorKind::Degenerate, "frame", "first three lines are concurrent at precision");
  PadicMatrix Linv = inverse_padic(L);
  std::vector<Padic> r(3, K.zero());
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[j] = r[j] + l[3][k] * Linv[k][j];
  for (int j = 0; j < 3; ++j)
    if (r[j].is_zero())
      throw Error(ErrorKind::Degenerate, "frame", "fourth line passes through a vertex of the first three");
  f.M = Linv;
  f.Minv = L;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      f.M[i][j] = Linv[i][j] / r[j];
      f.Minv[i][j] = r[i] * L[i][j];
    }
  for (int i = 0; i < 3; ++i) {
    Point3 row{K.zero(), K.zero(), K.zero()};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) row[j] = row[j] + l[4 + i][k] * f.M[k][j];
    row = normalize_line(row);
    for (int j = 0; j < 3; ++j) {
      if (row[j].is_zero())
        throw Error(ErrorKind::Degenerate, "frame", "a'_ij vanishes at precision: degenerate Aronhold frame");
      f.ap[i][j] = row[j];
    }
  }
  f.lambda = solve_lambda(f.ap);
  f.w = solve_eta(f.ap, f.lambda);
  for (int i = 0; i < 3; ++i) {
    if (f.w[i].is_zero()) throw Error(ErrorKind::Degenerate, "frame", "1/eta^2 vanishes at precision");
    auto r2 = padic_sqrt(f.w[i]);
    if (r2.root) f.eta[i] = r2.root->inverse();
    for (int j = 0; j < 3; ++j) f.val2[i][j] = 2 * f.ap[i][j].valuation() + f.w[i].valuation();
  }
  return f;
}

Row3 solve_lambda(const Mat3& ap) {
  const FieldContext& K = *ap[0][0].context();
  PadicMatrix A(3, std::vector<Padic>(3, K.zero()));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) A[j][i] = ap[i][j].inverse();
  try {
    auto x = solve_padic(A, {-K.one(), -K.one(), -K.one()});
    return {x[0], x[1], x[2]};
  } catch (const Error&) {
    throw Error(ErrorKind::Degenerate, "frame", "degenerate Aronhold frame: lambda system is singular");
  }
}

Row3 solve_eta(const Mat3& ap, const Row3& lambda) {
  const FieldContext& K = *ap[0][0].context();
  PadicMatrix A(3, std::vector<Padic>(3, K.zero()));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) A[j][i] = lambda[i] * ap[i][j];
  try {
    auto x = solve_padic(A, {-K.one(), -K.one(), -K.one()});
    return {x[0], x[1], x[2]};
  } catch (const Error&) {
    throw Error(ErrorKind::Degenerate, "frame", "degenerate Aronhold frame: eta system is singular");
  }
}

Classification classify_valuations(const std::array<std::array<int, 3>, 3>& v2) {
  Classification c;
  std::vector<std::pair<int, int>> nz;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (v2[i][j] != 0) nz.emplace_back(i, j);
  std::string mat;
  for (int i = 0; i < 3; ++i) {
    mat += i ? "; " : "";
    for (int j = 0; j < 3; ++j) {
      int v = v2[i][j];
      mat += (j ? " " : "") + (v % 2 ? std::to_string(v) + "/2" : std::to_string(v / 2));
    }
  }
  if (nz.empty()) {
    c.kase = FrameCase::Case3;
    c.explanation = "all a_ij are units";
    return c;
  }
  if (nz.size() == 2 && nz[0].second == nz[1].second) {
    auto [i1, j] = nz[0];
    int i2 = nz[1].first;
    if (v2[i1][j] == v2[i2][j]) {
      c.column = j;
      c.rows = {i1, i2};
      c.v0_2 = std::abs(v2[i1][j]);
      c.kase = v2[i1][j] > 0 ? FrameCase::Case1 : FrameCase::Case2;
      c.explanation = "two a_ij in column " + std::to_string(j + 1) + " with valuation " +
                      (v2[i1][j] > 0 ? "" : "-") + (c.v0_2 % 2 ? std::to_string(c.v0_2) + "/2" : std::to_string(c.v0_2 / 2));
      return c;
    }
  }
  c.kase = FrameCase::Other;
  c.explanation = "valuation pattern [" + mat + "] matches none of the three cases";
  return c;
}

USolution solve_u(const AronholdFrame& f) {
  const FieldContext& K = *f.ap[0][0].context();
  const Padic one = K.one();
  PadicMatrix A(3, std::vector<Padic>(3, K.zero()));
  for (int k = 0; k < 3; ++k) {
    A[0][k] = one;
    A[1][k] = f.ap[0][k].inverse();
    A[2][k] = f.ap[1][k].inverse();
  }
  USolution s;
  Padic d = det_padic(A);
  if (d.is_zero()) throw Error(ErrorKind::Degenerate, "riemann", "u-system is singular at precision");
  s.det_val2 = 2 * d.valuation() - f.w[0].valuation() - f.w[1].valuation();
  for (int m = 0; m < 3; ++m) {
    std::vector<Padic> rhs{-one, -(f.w[0] * f.ap[0][m]), -(f.w[1] * f.ap[1][m])};
    auto x = solve_padic(A, rhs);
    for (int k = 0; k < 3; ++k) s.u[k][m] = x[k];
  }
  for (int k = 0; k < 3; ++k) s.v[k] = min_val(s.u[k]);
  // third row, which the system does not use
  Row3 res{K.zero(), K.zero(), K.zero()};
  for (int m = 0; m < 3; ++m) {
    res[m] = f.w[2] * f.ap[2][m];
    for (int k = 0; k < 3; ++k) res[m] = res[m] + s.u[k][m] / f.ap[2][k];
  }
  s.row3_residual = INT_MAX;
  for (const auto& r : res) s.row3_residual = std::min(s.row3_residual, r.is_zero() ? r.precision() : r.valuation());
  return s;
}

PadicForm riemann_model(const USolution& s) {
  const Padic zero = s.u[0][0].context()->zero();
  const Padic one = zero.context()->one();
  std::array<PadicForm, 3> y, u;
  for (int k = 0; k < 3; ++k) {
    y[k] = PadicForm::variable(k, 3, one);
    u[k] = PadicForm::linear_form({s.u[k][0], s.u[k][1], s.u[k][2]});
  }
  PadicForm Q = y[0] * u[0] + y[1] * u[1] - y[2] * u[2];
  PadicForm four = PadicForm::constant(3, zero.context()->from_int(4));
  return Q * Q - four * y[0] * u[0] * y[1] * u[1];
}

Row3 table_line(const AronholdFrame& f, const USolution& s, const std::string& name) {
  const FieldContext& K = *f.ap[0][0].context();
  const Padic zero = K.zero(), one = K.one();
  auto unit = [&](int k) {
    Row3 r{zero, zero, zero};
    r[k] = one;
    return r;
  };
  auto bad = [&]() -> Row3 { throw Error(ErrorKind::Input, "riemann", "unknown bitangent label " + name); };
  if (name.size() == 1) {
    int i = name[0] - '1';
    if (i >= 0 && i < 3) return unit(i);
    if (i == 3) return {one, one, one};
    if (i >= 4 && i < 7) return f.ap[i - 4];
    return bad();
  }
  if (name.size() != 2) return bad();
  int i = name[0] - '1', j = name[1] - '1';
  if (i > j) std::swap(i, j);
  if (i < 0 || j > 6 || i == j) return bad();
  Row3 none{zero, zero, zero};
  if (j < 3) {
    int k = 3 - i - j;
    return s.u[k];
  }
  if (i < 3 && j == 3) {
    Row3 r = s.u[i];
    for (int m = 0; m < 3; ++m)
      if (m != i) r[m] = r[m] + one;
    return r;
  }
  if (i < 3) {
    // u_i / a_li + a_lj x_j + a_lk x_k, scaled by eta_l
    int l = j - 4;
    Row3 extra{zero, zero, zero};
    for (int m = 0; m < 3; ++m)
      if (m != i) extra[m] = f.w[l] * f.ap[l][m];
    std::array<Padic, 3> coef{zero, zero, zero};
    coef[i] = f.ap[l][i].inverse();
    return row_combo(coef, s.u, extra);
  }
  if (i == 3) {
    // sum_k u_k / (a_rk (1 - a_rj a_rl))
    int r = j - 4;
    std::array<Padic, 3> coef;
    for (int k = 0; k < 3; ++k) {
      int a = (k + 1) % 3, b = (k + 2) % 3;
      coef[k] = (f.ap[r][k] * (one - f.w[r] * f.ap[r][a] * f.ap[r][b])).inverse();
    }
    return row_combo(coef, s.u, none);
  }
  // pairs among 5, 6, 7: a form in x built from the remaining row
  int r = 3 - (i - 4) - (j - 4);
  Row3 out;
  for (int k = 0; k < 3; ++k) {
    int a = (k + 1) % 3, b = (k + 2) % 3;
    out[k] = (one - f.w[r] * f.ap[r][a] * f.ap[r][b]).inverse();
  }
  return out;
}

Point3 table_line_input(const AronholdFrame& f, const USolution& s, const std::string& name) {
  Row3 ly = table_line(f, s, name);
  const FieldContext& K = *ly[0].context();
  Point3 lx{K.zero(), K.zero(), K.zero()};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) lx[j] = lx[j] + ly[k] * f.Minv[k][j];
  return normalize_line(lx);
}

int match_bitangent(const std::vector<Bitangent>& lines, const Point3& l, int* score_out) {
  int best = -1, bs = INT_MIN, second = INT_MIN;
  for (size_t t = 0; t < lines.size(); ++t) {
    const Point3& m = lines[t].line;
    int sc = INT_MAX;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Padic d = l[i] * m[j] - l[j] * m[i];
        sc = std::min(sc, d.is_zero() ? d.precision() : d.valuation());
      }
    if (sc > bs) {
      second = bs;
      bs = sc;
      best = int(t);
    } else if (sc > second) {
      second = sc;
    }
  }
  if (score_out) *score_out = bs;
  if (best < 0 || bs <= second || bs <= 0) return -1;
  return best;
}

ToggleModel toggle_model(const AronholdFrame& f, const USolution& s, const PadicForm& F, int guard) {
  const FieldContext& K = *f.ap[0][0].context();
  const Padic one = K.one();
  ToggleModel T;
  T.M = f.M;
  T.v0_2 = classify_valuations(f.val2).v0_2;
  T.v1 = s.v[0];
  T.s = T.v1;
  for (int m = 0; m < 3; ++m) T.u1p[m] = s.u[0][m].shift(-T.v1);
  T.u2 = s.u[1];
  T.u3 = s.u[2];
  std::array<PadicForm, 3> y;
  for (int k = 0; k < 3; ++k) y[k] = PadicForm::variable(k, 3, one);
  PadicForm U1 = PadicForm::linear_form({s.u[0][0], s.u[0][1], s.u[0][2]});
  PadicForm U1p = PadicForm::linear_form({T.u1p[0], T.u1p[1], T.u1p[2]});
  PadicForm U2 = PadicForm::linear_form({T.u2[0], T.u2[1], T.u2[2]});
  PadicForm U3 = PadicForm::linear_form({T.u3[0], T.u3[1], T.u3[2]});
  T.Q = y[0] * U1 + y[1] * U2 - y[2] * U3;
  T.G0 = PadicForm::constant(3, K.from_int(-4)) * y[0] * U1p * y[1] * U2;
  T.q_content = form_content(T.Q);
  T.g_content = form_content(T.G0);

  PadicForm R = T.Q * T.Q + T.G0.scaled(K.pi_power(T.s));
  PadicForm FM = substitute(F, f.M);
  Mono best{0, 0, 0};
  int bv = INT_MAX;
  for (const auto& [m, c] : FM.terms())
    if (!c.is_zero() && c.valuation() < bv) {
      bv = c.valuation();
      best = m;
    }
  if (bv == INT_MAX) throw Error(ErrorKind::Precision, "toggle", "transformed quartic vanishes at precision");
  T.scale = R.coeff(best) / FM.coeff(best);
  int iv = K.precision();
  for (const auto& mono : monomials_of_degree(4)) {
    Padic c = R.coeff(mono) - FM.coeff(mono) * T.scale;
    iv = std::min(iv, c.is_zero() ? c.precision() : c.valuation());
  }
  T.identity_valuation = iv;
  (void)guard;
  return T;
}

RelabelResult relabel_aronhold(const std::vector<Bitangent>& lines, const std::array<int, 7>& start, int guard) {
  RelabelResult res;
  std::array<int, 7> order = start;
  auto lookup = [&](const AronholdFrame& fr, const std::vector<std::string>& names,
                    std::array<int, 7>& out) -> bool {
    USolution us = solve_u(fr);
    for (size_t t = 0; t < names.size(); ++t) {
      int idx = match_bitangent(lines, table_line_input(fr, us, names[t]));
      if (idx < 0) return false;
      out[t] = idx;
    }
    std::vector<int> chk(out.begin(), out.end());
    std::sort(chk.begin(), chk.end());
    return std::adjacent_find(chk.begin(), chk.end()) == chk.end();
  };

  for (int depth = 0; depth < 4; ++depth) {
    AronholdFrame fr = normalize_frame(lines, order);
    Classification cls = classify_valuations(fr.val2);
    res.trail.push_back({depth == 0 ? "initial" : "relabeled", order, cls});
    if (cls.kase == FrameCase::Other) {
      res.reason = cls.explanation;
      return res;
    }
    if (cls.kase == FrameCase::Case1) {
      std::array<int, 3> cols{cls.column, (cls.column + 1) % 3, (cls.column + 2) % 3};
      std::sort(cols.begin() + 1, cols.end());
      int mid = 3 - cls.rows[0] - cls.rows[1];
      std::array<int, 3> rows{cls.rows[0], mid, cls.rows[1]};
      order = permute(order, cols, rows);
      res.frame = normalize_frame(lines, order);
      res.cls = classify_valuations(res.frame.val2);
      if (res.cls.kase != FrameCase::Case1 || res.cls.column != 0 || res.cls.rows != std::array<int, 2>{0, 2}) {
        res.reason = "permuted frame lost the first-case pattern";
        return res;
      }
      res.trail.push_back({"permute to column 1, rows 1 and 3", order, res.cls});
      res.ok = true;
      return res;
    }
    if (depth >= 2) {
      res.reason = "no first-case frame after two relabelings (" + cls.explanation + ")";
      return res;
    }
    if (cls.kase == FrameCase::Case2) {
      std::array<int, 3> cols{cls.column, (cls.column + 1) % 3, (cls.column + 2) % 3};
      std::sort(cols.begin() + 1, cols.end());
      int mid = 3 - cls.rows[0] - cls.rows[1];
      std::array<int, 3> rows{cls.rows[0], mid, cls.rows[1]};
      std::array<int, 7> p = permute(order, cols, rows);
      AronholdFrame fp = normalize_frame(lines, p);
      std::array<int, 7> next{};
      if (!lookup(fp, {"23", "2", "3", "14", "15", "16", "17"}, next)) {
        res.reason = "second-case relabeling: table lines not found among the bitangents";
        return res;
      }
      order = next;
      res.trail.back().label = "second-case relabeling";
      continue;
    }
    // third case
    bool positive = false;
    for (int i = 0; i < 3 && !positive; ++i)
      for (int j = 0; j < 3; ++j) {
        Padic d = fr.ap[0][0].context()->one() - fr.w[i] * fr.ap[i][j] * fr.ap[i][(j + 1) % 3];
        if (d.is_zero() || d.valuation() > 0) positive = true;
      }
    if (positive) {
      bool found = false;
      for (const auto& cp : kPerm3) {
        for (const auto& rp : kPerm3) {
          std::array<int, 7> p = permute(order, cp, rp);
          std::array<int, 7> next{};
          try {
            AronholdFrame fp = normalize_frame(lines, p);
            if (!lookup(fp, {"23", "13", "12", "4", "45", "46", "47"}, next)) continue;
            AronholdFrame fn = normalize_frame(lines, next);
            if (classify_valuations(fn.val2).kase != FrameCase::Case1) continue;
          } catch (const Error&) {
            continue;
          }
          order = next;
          found = true;
          break;
        }
        if (found) break;
      }
      if (!found) {
        res.reason = "third-case relabeling with a positive 1 - a_ij a_i(j+1) produced no first-case frame";
        return res;
      }
      res.trail.back().label = "third-case relabeling (23,13,12,4,45,46,47)";
    } else {
      order = {order[4], order[5], order[6], order[3], order[0], order[1], order[2]};
      res.trail.back().label = "third-case relabeling (5,6,7,4,1,2,3)";
    }
  }
  res.reason = "relabeling did not terminate";
  return res;
}

StableScheme stable_scheme(const ToggleModel& T, int prec) {
  StableScheme sc;
  sc.s = T.s;
  sc.ramified = T.s % 2 != 0;
  const FieldContext& K = *T.Q.zero().context();
  sc.field = sc.ramified ? "K(pi'), pi'^2 = pi" : "K";
  std::string piexp = sc.ramified ? "pi'^" + std::to_string(T.s) : "pi^" + std::to_string(T.s / 2);
  if (prec < 0) prec = K.precision();
  sc.equation1 = "y^2 + (" + format_polynomial(T.G0, prec) + ") = 0";
  sc.equation2 = piexp + "*y - (" + format_polynomial(T.Q, prec) + ") = 0";
  return sc;
}

}  // namespace quartred
