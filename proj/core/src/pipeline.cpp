#include "quartred/pipeline.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace quartred {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Classify: return "classify";
    case Mode::Full: return "full";
    case Mode::BitangentsOnly: return "bitangents-only";
    case Mode::CountAronhold: return "count-aronhold";
  }
  return "full";
}

Mode parse_mode(const std::string& s) {
  if (s == "classify") return Mode::Classify;
  if (s == "full") return Mode::Full;
  if (s == "bitangents-only") return Mode::BitangentsOnly;
  if (s == "count-aronhold") return Mode::CountAronhold;
  throw Error(ErrorKind::Input, "job", "unknown mode '" + s + "'",
              "use classify, full, bitangents-only or count-aronhold");
}

PadicDigits to_digits(const Padic& a, int prec) {
  Padic b = prec >= 0 && prec < a.precision() ? a.with_precision(prec) : a;
  PadicDigits d;
  d.val = b.valuation();
  d.prec = b.precision();
  if (!b.is_zero()) d.digits = b.digit_vectors();
  return d;
}

Padic from_digits(const FieldContext& K, const PadicDigits& d) {
  return Padic::from_digit_vectors(K, d.val, d.prec, d.digits);
}

int exit_code(const Report& r) {
  if (r.verdict == "good-hyperelliptic-certificate") return 0;
  if (r.verdict == "not-certified") return 2;
  return 1;
}

namespace {

const char* kGood = "good-hyperelliptic-certificate";
const char* kNot = "not-certified";

// the run needs more working precision
struct Retry {
  std::string why;
};

FormRecord form_record(const PadicForm& F, int N) {
  FormRecord r;
  for (const auto& m : monomials_of_degree(F.total_degree() < 0 ? 0 : F.total_degree())) {
    const Padic& c = F.coeff(m);
    if (c.is_zero() && c.valuation() >= std::min(N, c.precision())) continue;
    r.terms.push_back({{m[0], m[1], m[2]}, to_digits(c, N)});
  }
  r.text = format_polynomial(F, N);
  return r;
}

std::string half_string(int v2) {
  return v2 % 2 ? std::to_string(v2) + "/2" : std::to_string(v2 / 2);
}

std::vector<long> fq_coeffs(const Fq& a) { return a.coeffs(); }

FieldRecord field_record(const FieldContext& K) {
  FieldRecord f;
  f.p = K.p();
  f.d = K.d();
  f.e = K.e();
  for (const auto& c : K.unram_poly()) f.unram.push_back(c.get_str());
  for (const auto& w : K.eis_poly()) {
    std::vector<std::string> s;
    for (const auto& c : w) s.push_back(c.get_str());
    f.eis.push_back(s);
  }
  f.residue = K.residue_field().describe();
  return f;
}

class Run {
 public:
  Run(const JobSpec& job, int W, int gW, Report& rep, PipelineState* st)
      : job_(job), W_(W), gW_(gW), rep_(rep), st_(st) {
    N_ = job.precision;
    g_ = job.guard ? *job.guard : N_ / 4;
  }

  void stage(const std::string& s, const std::string& status, const std::string& detail) {
    rep_.diagnostics.push_back({s, status, detail});
  }

  void go();

 private:
  void bitangents_stage();
  bool aronhold_stage();
  void frame_record(const AronholdFrame& fr, const RelabelResult& rr, const std::vector<int>& set, int tried);
  bool toggle_stage(const AronholdFrame& fr);
  void reduction_stage();

  const JobSpec& job_;
  int W_, gW_, N_ = 0, g_ = 0;
  Report& rep_;
  PipelineState* st_;
  ContextPtr K_;
  BitangentSet B_;
  SyzygyTable table_;
  PadicForm F_;
  std::optional<ToggleModel> T_;
  std::optional<ReducedModel> R_;
};

void Run::go() {
  K_ = make_field(job_.p, job_.unram, job_.eis, W_);
  F_ = embed(job_.quartic, *K_);
  if (st_) st_->K = K_;
  bitangents_stage();
  if (job_.mode == Mode::BitangentsOnly) {
    for (const auto& b : B_.lines)
      rep_.bitangents.push_back({to_digits(b.line[0], N_), to_digits(b.line[1], N_), to_digits(b.line[2], N_)});
    rep_.verdict = kNot;
    stage("stop", "ok", "bitangents-only mode ends before the Aronhold search");
    return;
  }
  table_ = SyzygyTable(B_.lines, gW_);
  rep_.syzygetic_triples = table_.syzygetic_count();
  stage("syzygy", "ok",
        std::to_string(table_.syzygetic_count()) + " syzygetic triples; largest valuation judged nonzero " +
            std::to_string(table_.max_azygetic_valuation()));
  if (job_.mode == Mode::CountAronhold) {
    long n = count_aronhold(table_);
    rep_.aronhold_count = n;
    if (n != 288) {
      stage("aronhold", "warning", "count " + std::to_string(n) + " differs from 288: zero threshold or precision trouble");
      throw Retry{"Aronhold count " + std::to_string(n)};
    }
    stage("aronhold", "ok", "288 Aronhold sets");
    rep_.verdict = kNot;
    stage("stop", "ok", "count-aronhold mode ends after the census");
    return;
  }
  if (!aronhold_stage()) return;
  reduction_stage();
}

void Run::bitangents_stage() {
  B_ = solve_bitangents(job_.quartic, K_, gW_);
  if (st_) st_->bitangents = B_;
  rep_.bitangent_count = int(B_.lines.size());
  rep_.bitangents_complete = B_.complete;
  std::string notes;
  for (const auto& n : B_.notes) notes += (notes.empty() ? "" : "; ") + n;
  if (!B_.complete) {
    if (!B_.residual_degrees.empty()) {
      std::string degs;
      for (int d : B_.residual_degrees) degs += (degs.empty() ? "" : ",") + std::to_string(d);
      throw Error(ErrorKind::ExtensionTooSmall, "bitangents",
                  "only " + std::to_string(B_.lines.size()) + " bitangents over K; residual factor degrees " + degs,
                  "enlarge the tower so that all 28 bitangents are defined");
    }
    stage("bitangents", "retry", std::to_string(B_.lines.size()) + " lines at working precision " +
                                      std::to_string(W_) + (notes.empty() ? "" : " (" + notes + ")"));
    throw Retry{"incomplete bitangent set"};
  }
  stage("bitangents", "ok", "28 bitangents, elimination seed " + std::to_string(B_.seed) + (notes.empty() ? "" : "; " + notes));
}

void Run::frame_record(const AronholdFrame& fr, const RelabelResult& rr, const std::vector<int>& set, int tried) {
  FrameRecord f;
  f.aronhold_set = set;
  f.sets_tried = tried;
  f.order = fr.order;
  f.initial_case = to_string(classify_valuations(fr.val2).kase);
  f.a_val2 = fr.val2;
  bool all_eta = true;
  std::array<std::array<PadicDigits, 3>, 3> a;
  for (int i = 0; i < 3; ++i) {
    f.inv_eta_sq[i] = to_digits(fr.w[i], N_);
    // a_ij = a'_ij sqrt(w_i)
    auto r = padic_sqrt(fr.w[i]);
    for (int j = 0; j < 3; ++j) {
      f.a_prime[i][j] = to_digits(fr.ap[i][j], N_);
      if (r.root) a[i][j] = to_digits(fr.ap[i][j] * *r.root, N_);
    }
    if (!r.root) all_eta = false;
  }
  if (all_eta) f.a = a;
  if (rr.ok) {
    f.final_order = rr.frame.order;
    f.final_case = to_string(rr.cls.kase);
    f.v0_2 = rr.cls.v0_2;
    f.final_a_val2 = rr.frame.val2;
  }
  for (const auto& t : rr.trail) f.trail.push_back({t.label, t.order, to_string(t.cls.kase), t.cls.explanation});
  rep_.frame = f;
}

bool Run::aronhold_stage() {
  std::vector<std::array<int, 7>> starts;
  if (job_.pinned_aronhold) {
    std::array<int, 7> o{};
    for (int k = 0; k < 7; ++k) {
      Point3 l;
      for (int c = 0; c < 3; ++c) l[c] = from_digits(*K_, (*job_.pinned_aronhold)[k][c]);
      int idx = match_bitangent(B_.lines, l);
      if (idx < 0)
        throw Error(ErrorKind::Input, "aronhold", "pinned line " + std::to_string(k + 1) + " matches no bitangent",
                    "check the fixture against this tower");
      o[k] = idx;
    }
    std::vector<int> s(o.begin(), o.end());
    if (!is_aronhold(table_, s))
      throw Error(ErrorKind::Input, "aronhold", "pinned lines do not form an Aronhold set at this precision");
    starts.push_back(o);
    stage("aronhold", "ok", "pinned Aronhold set");
    if (job_.pinned_signs) stage("frame", "note", "pinned row signs recorded; the frame only uses 1/eta_i^2, so they do not enter");
  } else {
    AronholdCandidate c = find_aronhold(table_);
    std::array<int, 7> first{};
    std::copy(c.indices.begin(), c.indices.end(), first.begin());
    starts.push_back(first);
    std::array<int, 7> sorted_first = first;
    std::sort(sorted_first.begin(), sorted_first.end());
    for (const auto& s : all_aronhold_sets(table_))
      if (s != sorted_first) starts.push_back(s);
    if (starts.size() != 288)
      stage("aronhold", "warning", std::to_string(starts.size()) + " Aronhold sets instead of 288");
    stage("aronhold", "ok", "depth-first search found a set; " + std::to_string(starts.size()) + " sets available");
  }

  int tried = 0;
  std::string last_reason;
  for (const auto& start : starts) {
    ++tried;
    AronholdFrame fr;
    try {
      fr = normalize_frame(B_.lines, start);
    } catch (const Error& e) {
      last_reason = e.what();
      continue;
    }
    RelabelResult rr = relabel_aronhold(B_.lines, start, gW_);
    std::vector<int> set(start.begin(), start.end());
    std::sort(set.begin(), set.end());
    bool other = false;
    for (const auto& t : rr.trail) other = other || t.cls.kase == FrameCase::Other;
    if (!rr.ok && !other) {
      last_reason = rr.reason;
      if (tried == 1 || rr.trail.empty()) frame_record(fr, rr, set, tried);
      continue;
    }
    frame_record(fr, rr, set, tried);
    if (st_) st_->initial_frame = fr;
    if (other) {
      stage("classify", "stop", "valuation pattern outside the three cases: " + rr.reason);
      rep_.verdict = kNot;
      return false;
    }
    stage("classify", "ok",
          "set " + std::to_string(tried) + ": " + to_string(classify_valuations(fr.val2).kase) +
              " relabeled to case1 with v0 = " + half_string(rr.cls.v0_2));
    if (st_) st_->frame = rr.frame;
    return toggle_stage(rr.frame);
  }
  rep_.verdict = kNot;
  stage("classify", "stop",
        "no Aronhold set reaches a positive-v0 frame after relabeling (" + std::to_string(tried) +
            " sets tried; last: " + last_reason + "); consistent with good quartic reduction");
  return false;
}

bool Run::toggle_stage(const AronholdFrame& fr) {
  USolution u = solve_u(fr);
  if (st_) st_->u = u;
  ToggleModel T = toggle_model(fr, u, F_, gW_);
  T_ = T;
  if (st_) st_->toggle = T;
  ToggleRecord t;
  t.s = T.s;
  t.v0_2 = T.v0_2;
  t.v1 = T.v1;
  t.u_val = u.v;
  t.det_val2 = u.det_val2;
  t.Q = form_record(T.Q, N_);
  t.G0 = form_record(T.G0, N_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.M[i][j] = to_digits(T.M[i][j], N_);
  t.scale = to_digits(T.scale, N_);
  t.identity_valuation = T.identity_valuation;
  rep_.toggle = t;

  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    rep_.checks.push_back({name, ok, detail});
    return ok;
  };
  bool ok = true;
  ok &= check("u-nonnegative", u.v[1] >= 0 && u.v[2] >= 0 && u.v[0] >= 0,
              "v(u1), v(u2), v(u3) = " + std::to_string(u.v[0]) + ", " + std::to_string(u.v[1]) + ", " +
                  std::to_string(u.v[2]));
  ok &= check("v1-at-least-v0", 2 * T.v1 >= T.v0_2, "v1 = " + std::to_string(T.v1) + ", v0 = " + half_string(T.v0_2));
  ok &= check("det-valuation", u.det_val2 == -T.v0_2,
              "v(det) = " + half_string(u.det_val2) + ", expected -" + half_string(T.v0_2));
  ok &= check("third-row", u.row3_residual >= N_ - g_,
              "residual valuation " + std::to_string(std::min(u.row3_residual, W_)));
  bool id_ok = T.identity_valuation >= N_ - g_;
  ok &= check("toggle-identity", id_ok,
              "v(Q^2 + pi^s G0 - c F(M y)) = " + std::to_string(T.identity_valuation) + ", need " +
                  std::to_string(N_ - g_));
  ok &= check("Q-primitive", T.q_content == 0, "content valuation " + std::to_string(T.q_content));
  ok &= check("G0-primitive", T.g_content == 0, "content valuation " + std::to_string(T.g_content));
  if (!id_ok) {
    stage("toggle", "retry", "identity holds only to valuation " + std::to_string(T.identity_valuation));
    throw Retry{"toggle identity"};
  }
  stage("toggle", ok ? "ok" : "failed", "s = " + std::to_string(T.s));
  if (!ok) {
    rep_.verdict = kNot;
    return false;
  }
  return true;
}

void Run::reduction_stage() {
  const ToggleModel& T = *T_;
  ReducedModel R = reduce_model(T);
  if (st_) st_->reduced = R;
  ReductionRecord rr;
  rr.residue_field = K_->residue_field().describe();
  rr.Qbar = format_polynomial(R.Q);
  rr.Gbar = format_polynomial(R.G);
  GoodCheck g = check_good(R.Q, R.G);
  rr.conic_det = g.conic_det.to_string("tau");
  rr.nondegenerate = g.nondegenerate;
  rr.transverse = g.transverse;
  rr.failure = g.failure;
  rep_.checks.push_back({"conic-nondegenerate", g.nondegenerate, "det = " + rr.conic_det});
  if (g.nondegenerate)
    rep_.checks.push_back({"transverse-8-points", g.transverse, g.transverse ? "octic squarefree" : g.failure});
  if (!g.ok) {
    rep_.reduction = rr;
    rep_.verdict = kNot;
    stage("reduction", "failed", "toggle model found but not good at this precision: " + g.failure);
    return;
  }
  ConicParametrization phi = parametrize_conic(R.Q);
  HyperellipticModel h = hyperelliptic_reduction(R.Q, R.G, phi);
  if (st_) st_->hyperelliptic = h;
  rr.base_point = "(" + phi.base[0].to_string("tau") + " : " + phi.base[1].to_string("tau") + " : " +
                  phi.base[2].to_string("tau") + ")";
  for (const auto& c : h.f.c) rr.octic.push_back(fq_coeffs(c));
  rr.octic_text = format_binary_form(h.f);
  stage("reduction", "ok", "good toggle model; special fiber y^2 = " + rr.octic_text);
  rep_.verdict = kGood;

  if (job_.mode == Mode::Full) {
    rr.point_count = point_count(h.f);
    StableScheme sc = stable_scheme(T, N_);
    rep_.scheme = SchemeRecord{sc.s, sc.ramified, sc.field, sc.equation1, sc.equation2};
    if (sc.ramified) rep_.extensions.push_back("stable model over K(pi'), pi'^2 = pi (s odd)");
    if (job_.expected_octic) {
      BinaryForm target = binary_form(K_->residue_field(), *job_.expected_octic);
      ComparisonRecord c;
      c.target = format_binary_form(target);
      OcticComparison oc = octic_equivalent(h.f, target);
      c.equivalent = oc.equivalent;
      c.extension_degree = oc.extension_degree;
      c.candidates = oc.candidates;
      if (oc.extension_degree > 1)
        rep_.extensions.push_back("residue field extension of degree " + std::to_string(oc.extension_degree) +
                                  " to split the ramification points");
      rep_.comparison = c;
      stage("compare", c.equivalent ? "ok" : "mismatch", "target y^2 = " + c.target);
    }
  }
  rep_.reduction = rr;
}

}  // namespace

Report run_pipeline(const JobSpec& job, PipelineState* state) {
  Report rep;
  rep.mode = to_string(job.mode);
  rep.input = job.quartic_text.empty() ? format_polynomial(job.quartic) : job.quartic_text;
  rep.precision = job.precision;
  try {
    if (job.p == 2) throw Error(ErrorKind::Input, "job", "p = 2 is not supported");
    if (job.precision <= 0) throw Error(ErrorKind::Input, "job", "precision must be positive");
    if (!job.quartic.is_homogeneous(4) || job.quartic.is_zero())
      throw Error(ErrorKind::Input, "job", "the input is not a ternary quartic form");
    int N = job.precision;
    int g = job.guard ? *job.guard : N / 4;
    if (g < 0 || g >= N) throw Error(ErrorKind::Input, "job", "guard must lie in [0, N)");
    rep.guard = g;
    {
      ContextPtr K0 = make_field(job.p, job.unram, job.eis, N);
      rep.field = field_record(*K0);
      rep.extensions.push_back("tower " + K0->describe());
    }
    mpq_class disc = discriminant_quartic(job.quartic);
    if (disc == 0) throw Error(ErrorKind::Input, "discriminant", "the quartic is singular");
    rep.discriminant_valuation = rational_valuation(disc, job.p);
    rep.diagnostics.push_back({"discriminant", "ok", "v_p(disc) = " + std::to_string(*rep.discriminant_valuation)});

    int W = job.working_precision ? *job.working_precision : std::max(4 * N, 12 * rep.field.e);
    if (W < N) throw Error(ErrorKind::Input, "job", "working precision below the requested precision");
    const int attempts = job.working_precision ? 1 : 4;
    for (int a = 0; a < attempts; ++a) {
      int gW = std::max(g, int((long(g) * W) / N));
      Report trial = rep;
      trial.working_precision = W;
      trial.working_guard = gW;
      trial.attempts.push_back(W);
      try {
        Run run(job, W, gW, trial, state);
        run.go();
        return trial;
      } catch (const Retry& r) {
        rep.attempts.push_back(W);
        rep.diagnostics = trial.diagnostics;
        rep.diagnostics.push_back({"precision", "retry", r.why + " at working precision " + std::to_string(W)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Precision && e.kind() != ErrorKind::HenselObstruction) throw;
        rep.attempts.push_back(W);
        rep.diagnostics = trial.diagnostics;
        rep.diagnostics.push_back({"precision", "retry", std::string(e.stage()) + ": " + e.what() +
                                                             " at working precision " + std::to_string(W)});
      }
      W *= 2;
    }
    throw Error(ErrorKind::Precision, "pipeline", "working precision exhausted",
                "raise the precision or set working_precision explicitly");
  } catch (const Error& e) {
    rep.verdict = "error";
    rep.error = ErrorRecord{to_string(e.kind()), e.stage(), e.what(), e.hint()};
    rep.diagnostics.push_back({e.stage(), "error", e.what()});
  } catch (const std::exception& e) {
    rep.verdict = "error";
    rep.error = ErrorRecord{"internal", "pipeline", e.what(), ""};
  }
  return rep;
}

}  // namespace quartred
