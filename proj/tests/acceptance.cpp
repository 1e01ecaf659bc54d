// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance [--only 1,4] [--allow-fail 5]
// Exit status is nonzero when a criterion fails that is not listed in --allow-fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "support.hpp"

using namespace quartred;
using namespace qtest;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// ---------------------------------------------------------------- shared runs

struct CertRun {
  std::string name;
  RationalPoly F;
  Report rep;
  PipelineState st;
  double secs = 0;
};

std::map<std::string, CertRun> g_runs;

CertRun& run_named(const std::string& name, const JobSpec& job) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  CertRun r;
  r.name = name;
  r.F = job.quartic;
  auto t0 = Clock::now();
  r.rep = run_pipeline(job, &r.st);
  r.secs = since(t0);
  return g_runs.emplace(name, std::move(r)).first->second;
}

CertRun& klein_run() { return run_named("klein", load_job("klein.json")); }
CertRun& xns13_run() { return run_named("xns13", load_job("xns13.json")); }

bool certified(const CertRun& r) {
  return r.rep.verdict == "good-hyperelliptic-certificate" && r.st.toggle && r.st.hyperelliptic;
}

// target octic over the prime field, carried into the field of f
bool octic_matches(const BinaryForm& f, const std::vector<long>& target, std::string& info) {
  const FiniteField& Fq_ = *f.c[0].field();
  auto Fp = FiniteField::prime(Fq_.p());
  BinaryForm g = map_form(binary_form(*Fp, target), find_embedding(*Fp, Fq_));
  auto cmp = octic_equivalent(f, g);
  info = "octic " + format_binary_form(f) + (cmp.equivalent ? " ~ " : " !~ ") + format_binary_form(g) +
         " (split over degree " + std::to_string(cmp.extension_degree) + ")";
  return cmp.equivalent;
}

// ---------------------------------------------------------------- bitangent cache

struct Lines {
  ContextPtr K;
  BitangentSet B;
  int guard = 0;
  double secs = 0;
};

std::map<std::string, Lines> g_lines;

Lines& lines_for(const std::string& file) {
  auto it = g_lines.find(file);
  if (it != g_lines.end()) return it->second;
  JobSpec job = load_job(file);
  Lines L;
  int N = job.precision;
  int W = std::max(4 * N, 12 * int(job.eis.size() - 1));
  int g = job.guard ? *job.guard : N / 4;
  L.guard = std::max(g, g * W / N);
  L.K = make_field(job.p, job.unram, job.eis, W);
  auto t0 = Clock::now();
  L.B = solve_bitangents(job.quartic, L.K, L.guard);
  L.secs = since(t0);
  return g_lines.emplace(file, std::move(L)).first->second;
}

// ---------------------------------------------------------------- criteria

Outcome c1() {
  auto t0 = Clock::now();
  mpq_class d = discriminant_quartic(parse_polynomial("x1^3*x2 + x2^3*x3 + x3^3*x1"));
  double s = since(t0);
  int v = d == 0 ? -1 : rational_valuation(d, 7);
  return {v == 7 && s < 1.0, "v_7(disc) = " + std::to_string(v) + ", " + fmt(s)};
}

Outcome c2() {
  bool ok = true;
  std::string detail;
  for (const char* f : {"klein.json", "fermat.json"}) {
    Lines& L = lines_for(f);
    JobSpec job = load_job(f);
    PadicForm FK = embed(job.quartic, *L.K);
    int squares = 0, distinct = 1;
    for (const auto& b : L.B.lines) {
      try {
        contact_points(FK, b.line, L.guard);
        ++squares;
      } catch (const Error&) {
      }
    }
    for (size_t i = 0; i < L.B.lines.size(); ++i)
      for (size_t j = i + 1; j < L.B.lines.size(); ++j)
        if (same_line(L.B.lines[i].line, L.B.lines[j].line, L.guard)) distinct = 0;
    bool here = L.B.lines.size() == 28 && squares == 28 && distinct && L.secs < 30;
    ok = ok && here;
    detail += std::string(detail.empty() ? "" : "; ") + f + ": " + std::to_string(L.B.lines.size()) + " lines, " +
              std::to_string(squares) + " squares, " + (distinct ? "distinct" : "duplicates") + ", " + fmt(L.secs);
  }
  return {ok, detail};
}

Outcome c3() {
  bool ok = true;
  std::string detail;
  for (const char* f : {"klein.json", "fermat.json"}) {
    Lines& L = lines_for(f);
    auto t0 = Clock::now();
    long n = -1;
    if (L.B.lines.size() == 28) n = count_aronhold(SyzygyTable(L.B.lines, L.guard));
    double s = since(t0);
    ok = ok && n == 288 && s < 600;
    detail += std::string(detail.empty() ? "" : "; ") + f + ": " + std::to_string(n) + " sets, " + fmt(s);
  }
  return {ok, detail};
}

Outcome c4() {
  CertRun& r = klein_run();
  if (!certified(r)) return {false, "verdict " + r.rep.verdict};
  std::string info;
  bool eq = octic_matches(r.st.hyperelliptic->f, {1, 0, 0, 0, 14, 0, 0, 0, 1}, info);
  return {eq && r.secs < 120, info + ", " + fmt(r.secs)};
}

// reference a_ij modulo 13^2: digit pairs (constant, tau) of pi^0 .. pi^6
const long kRef[9][7][2] = {
    {{26, 38}, {101, 78}, {10, 8}, {57, 28}, {96, 4}, {27, 156}, {73, 0}},
    {{13, 77}, {75, 143}, {166, 47}, {76, 54}, {8, 32}, {137, 13}, {94, 24}},
    {{74, 56}, {154, 161}, {94, 74}, {10, 83}, {35, 29}, {67, 167}, {57, 153}},
    {{159, 150}, {110, 10}, {90, 60}, {13, 112}, {12, 110}, {69, 45}, {140, 128}},
    {{73, 17}, {64, 64}, {120, 130}, {100, 89}, {50, 36}, {106, 77}, {40, 120}},
    {{69, 100}, {93, 104}, {109, 72}, {147, 88}, {145, 156}, {26, 44}, {92, 142}},
    {{39, 129}, {32, 79}, {74, 51}, {141, 1}, {103, 6}, {39, 121}, {27, 141}},
    {{13, 77}, {45, 66}, {100, 103}, {36, 92}, {4, 155}, {97, 8}, {11, 39}},
    {{105, 33}, {8, 141}, {149, 2}, {86, 151}, {5, 124}, {126, 77}, {28, 154}}};

struct AijComparison {
  int projective = -1;  // agreement of row ratios, best over automorphisms
  int absolute = -1;    // agreement of a_ij up to row signs, best over automorphisms
};

// The table is written in a particular root of the Eisenstein polynomial and of the unramified
// generator; every choice of roots gives an automorphism of K, so all of them are tried.
// The tower itself is only known modulo 13^2, which moves pi by O(pi^8): agreement beyond
// pi^8 cannot be expected from the digits alone.
AijComparison compare_reference(const AronholdFrame& fr, const FieldContext& K, const JobSpec& job, int prec) {
  std::vector<Padic> ec;
  for (const auto& w : job.eis) ec.push_back(K.from_coeffs({w}));
  auto pis = roots_in_field(PadicPoly(ec, K.zero())).roots;
  std::vector<Padic> ucoef;
  for (const auto& c : job.unram) ucoef.push_back(K.from_int(c));
  auto taus = roots_in_field(PadicPoly(ucoef, K.zero())).roots;

  std::array<std::optional<Padic>, 3> root_w;
  for (int i = 0; i < 3; ++i) root_w[i] = padic_sqrt(fr.w[i]).root;

  auto agree = [&](const Padic& a, const Padic& b) { return std::min(prec, val_or_prec(a - b)); };
  AijComparison out;
  for (const auto& t : taus)
    for (const auto& pi : pis) {
      Padic ref[3][3];
      for (int k = 0; k < 9; ++k) {
        Padic a = K.zero(), pk = K.one();
        for (int j = 0; j < 7; ++j) {
          a = a + (K.from_int(kRef[k][j][0]) + K.from_int(kRef[k][j][1]) * t) * pk;
          pk = pk * pi;
        }
        ref[k / 3][k % 3] = a.with_precision(prec);
      }
      int proj = prec, abs = prec;
      for (int i = 0; i < 3; ++i) {
        for (int j = 1; j < 3; ++j)
          proj = std::min(proj, agree(fr.ap[i][j] / fr.ap[i][0], ref[i][j] / ref[i][0]));
        int plus = prec, minus = prec;
        for (int j = 0; j < 3; ++j) {
          if (root_w[i]) {
            Padic a = fr.ap[i][j] * *root_w[i];
            plus = std::min(plus, agree(a, ref[i][j]));
            minus = std::min(minus, agree(a, -ref[i][j]));
          } else {
            // a_ij^2 = a'_ij^2 w_i, compared without a square root
            plus = minus = std::min(plus, agree(fr.ap[i][j] * fr.ap[i][j] * fr.w[i], ref[i][j] * ref[i][j]));
          }
        }
        abs = std::min(abs, std::max(plus, minus));
      }
      out.projective = std::max(out.projective, proj);
      out.absolute = std::max(out.absolute, abs);
    }
  return out;
}

Outcome c5() {
  auto t0 = Clock::now();
  CertRun& r = xns13_run();
  std::string detail;
  bool s_ok = false, oct_ok = false, aij_ok = false;
  if (certified(r)) {
    s_ok = r.st.toggle->s == 1;
    detail = "s = " + std::to_string(r.st.toggle->s) + " (v_13(disc) = " +
             std::to_string(r.rep.discriminant_valuation.value_or(-1)) + ")";
    std::string info;
    oct_ok = octic_matches(r.st.hyperelliptic->f, {-1, 0, 0, 0, 0, 0, 0, 1, 0}, info);
    detail += "; " + info;
  } else {
    detail = "verdict " + r.rep.verdict;
  }

  JobSpec pj = load_job("xns13_pinned.json");
  CertRun& p = run_named("xns13-pinned", pj);
  if (p.st.initial_frame && p.st.K) {
    int prec = 2 * p.st.K->e();  // modulo 13^2
    auto cmp = compare_reference(*p.st.initial_frame, *p.st.K, pj, prec);
    aij_ok = cmp.absolute >= prec;
    detail += "; pinned set: row ratios agree to pi^" + std::to_string(cmp.projective) +
              ", a_ij up to row signs agree to pi^" + std::to_string(cmp.absolute) + " (need " +
              std::to_string(prec) + ")";
  } else {
    detail += "; pinned run produced no frame (" + p.rep.verdict + ")";
  }
  double s = since(t0);
  detail += "; " + fmt(s);
  return {s_ok && oct_ok && aij_ok && s < 600, detail};
}

std::vector<CertRun*> suite_runs() {
  std::vector<CertRun*> out{&klein_run(), &xns13_run()};
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 5; ++k) {
    JobSpec job = load_job(k % 2 ? "xns13.json" : "klein.json");
    auto A = random_unimodular(rng, 4);
    long units[] = {2, 3, -1, 5, -2};
    long c = units[k];
    if (c % job.p == 0) c = 1;
    job.quartic = substitute(job.quartic, A).scaled(mpq_class(c));
    job.quartic_text = format_polynomial(job.quartic);
    out.push_back(&run_named("variant-" + std::to_string(k), job));
  }
  return out;
}

Outcome c6() {
  auto runs = suite_runs();
  bool ok = certified(*runs[0]) && certified(*runs[1]);
  int good = 0;
  std::string detail;
  for (CertRun* r : runs) {
    if (!certified(*r)) {
      detail += r->name + ": " + r->rep.verdict + "; ";
      continue;
    }
    ++good;
    int need = r->rep.precision - r->rep.guard;
    int v = identity_valuation(r->F, *r->st.toggle, *r->st.K);
    ok = ok && v >= need;
    detail += r->name + ": " + std::to_string(v) + " >= " + std::to_string(need) + "; ";
  }
  detail += std::to_string(good) + "/" + std::to_string(runs.size()) + " certified";
  return {ok, detail};
}

// 2x2 and 3x3 determinants of the symmetric matrix of a ternary quadric, by hand
Fq quadric_det(const FqForm& Q) {
  const FiniteField& F = *Q.zero().field();
  Fq h = F.from_int(2).inverse();
  auto c = [&](int a, int b, int d) { return Q.coeff({a, b, d}); };
  Fq m[3][3] = {{c(2, 0, 0), c(1, 1, 0) * h, c(1, 0, 1) * h},
                {c(1, 1, 0) * h, c(0, 2, 0), c(0, 1, 1) * h},
                {c(1, 0, 1) * h, c(0, 1, 1) * h, c(0, 0, 2)}};
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Outcome c7() {
  auto runs = suite_runs();
  bool ok = true;
  int n = 0;
  std::string bad;
  for (CertRun* r : runs) {
    if (!certified(*r)) continue;
    ++n;
    const auto& T = *r->st.toggle;
    bool u_ok = r->st.u && r->st.u->v[0] >= 0 && r->st.u->v[1] >= 0 && r->st.u->v[2] >= 0;
    bool v_ok = 2 * T.v1 >= T.v0_2;
    bool det_ok = r->rep.toggle && r->rep.toggle->det_val2 == -T.v0_2;
    bool conic_ok = r->st.reduced && !quadric_det(r->st.reduced->Q).is_zero();
    bool eight_ok = octic_has_distinct_roots(r->st.hyperelliptic->f);
    bool here = u_ok && v_ok && det_ok && conic_ok && eight_ok;
    if (!here)
      bad += r->name + "(u " + std::to_string(u_ok) + " v " + std::to_string(v_ok) + " det " + std::to_string(det_ok) +
             " conic " + std::to_string(conic_ok) + " points " + std::to_string(eight_ok) + ") ";
    ok = ok && here;
  }
  ok = ok && n >= 2;
  return {ok, std::to_string(n) + " certified runs checked" + (bad.empty() ? "" : "; failing: " + bad)};
}

Outcome c8() {
  auto t0 = Clock::now();
  Report r;
  try {
    r = run_pipeline(load_job("fermat.json"));
  } catch (const std::exception& e) {
    return {false, std::string("threw: ") + e.what()};
  }
  double s = since(t0);
  bool zeros = r.frame.has_value();
  if (zeros)
    for (const auto& row : r.frame->a_val2)
      for (int v : row) zeros = zeros && v == 0;
  bool explained = false;
  for (const auto& d : r.diagnostics)
    if (d.detail.find("good quartic reduction") != std::string::npos) explained = true;
  bool ok = r.verdict == "not-certified" && zeros && explained && s < 120;
  return {ok, "verdict " + r.verdict + ", initial valuations " + (zeros ? "all zero" : "not all zero") + ", " +
                  (explained ? "explained" : "no explanation") + ", " + fmt(s)};
}

// p = 7, residue field F_49, e = 3
Padic random_integral(const FieldContext& K, std::mt19937_64& rng, bool unit) {
  std::uniform_int_distribution<long> dig(0, K.p() - 1);
  std::vector<std::vector<mpz_class>> w(8, std::vector<mpz_class>(K.d()));
  for (auto& row : w)
    for (auto& x : row) x = dig(rng);
  if (unit && w[0][0] == 0 && w[0][1] == 0) w[0][0] = 1;
  return K.from_coeffs(w);
}

Outcome c9() {
  auto t0 = Clock::now();
  const int N = 30;
  auto K = make_field(7, std::vector<long>{1, 0, 1}, {{-7}, {0}, {0}, {1}}, N);
  std::mt19937_64 rng(99);
  int hensel_bad = 0, sqrt_bad = 0, res_bad = 0, hom_bad = 0;
  PadicPoly X({K->zero(), K->one()}, K->zero());
  auto rnd_poly = [&](int deg, bool monic) {
    std::vector<Padic> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_integral(*K, rng, false));
    c.push_back(monic ? K->one() : random_integral(*K, rng, true));
    return PadicPoly(c, K->zero());
  };

  // Hensel: f = (x - A) g + pi h with g(A) a unit
  for (int it = 0; it < 1000; ++it) {
    Padic A = random_integral(*K, rng, false);
    PadicPoly g = rnd_poly(1 + it % 3, true);
    if (g.eval(A).valuation() != 0) {
      --it;
      continue;
    }
    PadicPoly f = (X - PadicPoly::constant(A)) * g + rnd_poly(2, false).scaled(K->pi());
    Padic r = hensel_root(f, A.reduce());
    if (val_or_prec(f.eval(r)) < N || !(r.reduce() == A.reduce())) ++hensel_bad;
  }

  // square roots
  const FiniteField& R = K->residue_field();
  for (int it = 0; it < 1000; ++it) {
    Padic u = random_integral(*K, rng, true);
    if (it % 2 == 0) {
      Padic x = (u * u).shift(2 * (it % 5));
      auto s = padic_sqrt(x);
      if (!s.root || !(*s.root * *s.root - x).is_zero()) ++sqrt_bad;
    } else {
      bool square = false;
      for (std::uint64_t i = 0; i < R.order().get_ui(); ++i)
        if (R.element(i) * R.element(i) == u.reduce()) square = true;
      auto s = padic_sqrt(u);
      if (square != bool(s.root)) ++sqrt_bad;
      if (s.root && !(*s.root * *s.root - u).is_zero()) ++sqrt_bad;
    }
  }

  // resultants: product over root differences, Res(f, x - a) = (-1)^deg f f(a), exact rationals
  std::uniform_int_distribution<long> small(-20, 20);
  for (int it = 0; it < 1000; ++it) {
    int m = 1 + it % 4, n = 1 + (it / 4) % 3;
    std::vector<Padic> rs, ss;
    PadicPoly f = PadicPoly::constant(K->one()), g = PadicPoly::constant(K->one());
    for (int i = 0; i < m; ++i) {
      rs.push_back(random_integral(*K, rng, false));
      f = f * (X - PadicPoly::constant(rs.back()));
    }
    for (int j = 0; j < n; ++j) {
      ss.push_back(random_integral(*K, rng, false));
      g = g * (X - PadicPoly::constant(ss.back()));
    }
    Padic prod = K->one();
    for (const auto& a : rs)
      for (const auto& b : ss) prod = prod * (a - b);
    Padic res = resultant(f, g);
    if (!(res - prod).is_zero()) ++res_bad;
    Padic a = ss[0];
    Padic direct = f.eval(a);
    if (m % 2) direct = -direct;
    if (!(resultant(f, X - PadicPoly::constant(a)) - direct).is_zero()) ++res_bad;

    UPoly<mpq_class> fq(mpq_class(0)), gq(mpq_class(0));
    for (int i = 0; i <= m; ++i) fq.set(i, i == m ? mpq_class(1) : mpq_class(small(rng)));
    for (int j = 0; j <= n; ++j) gq.set(j, mpq_class(small(rng)));
    if (gq.is_zero()) gq.set(0, mpq_class(1));
    auto emb = [&](const UPoly<mpq_class>& h) {
      std::vector<Padic> c;
      for (int i = 0; i <= h.degree(); ++i) c.push_back(K->from_rational(h[i]));
      return PadicPoly(c, K->zero());
    };
    mpq_class ex = resultant_exact(fq, gq);
    if (!(resultant(emb(fq), emb(gq)) - K->from_rational(ex)).is_zero()) ++res_bad;
  }

  // reduction map
  for (int it = 0; it < 1000; ++it) {
    Padic a = random_integral(*K, rng, false), b = random_integral(*K, rng, it % 2 == 0);
    if (!((a + b).reduce() == a.reduce() + b.reduce())) ++hom_bad;
    if (!((a * b).reduce() == a.reduce() * b.reduce())) ++hom_bad;
    if (!((a - b).reduce() == a.reduce() - b.reduce())) ++hom_bad;
    if (b.valuation() == 0 && !(b.inverse().reduce() == b.reduce().inverse())) ++hom_bad;
  }
  double s = since(t0);
  bool ok = hensel_bad + sqrt_bad + res_bad + hom_bad == 0 && s < 60;
  return {ok, "failures: hensel " + std::to_string(hensel_bad) + ", sqrt " + std::to_string(sqrt_bad) +
                  ", resultant " + std::to_string(res_bad) + ", reduction " + std::to_string(hom_bad) + "; " +
                  fmt(s)};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    if (j > i) out.insert(std::stoi(s.substr(i, j - i)));
    i = j + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, allowed;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string a = argv[i];
    if (a == "--only") only = parse_list(argv[i + 1]);
    else if (a == "--allow-fail") allowed = parse_list(argv[i + 1]);
  }
  std::vector<std::pair<const char*, std::function<Outcome()>>> crit{
      {"klein discriminant valuation", c1},   {"28 bitangents", c2},
      {"288 Aronhold sets", c3},              {"klein stable reduction at 7", c4},
      {"X_ns(13) reproduction", c5},          {"toggle identity on every certified run", c6},
      {"structural assertions on certified runs", c7}, {"fermat negative control", c8},
      {"arithmetic substrate suites", c9}};
  int unexpected = 0;
  for (size_t k = 0; k < crit.size(); ++k) {
    int id = int(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = crit[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    bool tolerated = !o.pass && allowed.count(id);
    if (!o.pass && !tolerated) ++unexpected;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << crit[k].first << ": " << o.detail
              << (tolerated ? "  (known failure)" : "") << std::endl;
  }
  return unexpected ? 1 : 0;
}
