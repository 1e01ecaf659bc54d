#include <sstream>

#include "json.hpp"
#include "quartred/pipeline.hpp"

namespace nlohmann {
template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& o) {
    if (o)
      j = *o;
    else
      j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& o) {
    if (j.is_null())
      o.reset();
    else
      o = j.get<T>();
  }
};
}  // namespace nlohmann

namespace quartred {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PadicDigits, val, prec, digits)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FormTerm, mono, coeff)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FormRecord, terms, text)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckRecord, name, ok, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StageRecord, stage, status, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TrailRecord, label, order, frame_case, explanation)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FieldRecord, p, d, e, unram, eis, residue)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FrameRecord, aronhold_set, sets_tried, order, initial_case, a_val2, a_prime,
                                   inv_eta_sq, a, final_order, final_case, v0_2, final_a_val2, trail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ToggleRecord, s, v0_2, v1, u_val, det_val2, Q, G0, M, scale, identity_valuation)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SchemeRecord, s, ramified, field, equation1, equation2)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReductionRecord, residue_field, Qbar, Gbar, conic_det, nondegenerate, transverse,
                                   failure, base_point, octic, octic_text, point_count)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ComparisonRecord, target, equivalent, extension_degree, candidates)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ErrorRecord, kind, stage, message, hint)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Report, schema, verdict, mode, input, field, precision, guard, working_precision,
                                   working_guard, attempts, discriminant_valuation, bitangent_count,
                                   bitangents_complete, bitangents, aronhold_count, syzygetic_triples, frame, toggle,
                                   checks, scheme, reduction, comparison, extensions, diagnostics, error)

namespace {

mpz_class to_mpz(const json& j, const std::string& what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorKind::Input, "job", "bad integer in " + what);
    return z;
  }
  throw Error(ErrorKind::Input, "job", "expected an integer in " + what);
}

mpq_class to_mpq(const json& j, const std::string& what) {
  if (j.is_number_integer()) return mpq_class(to_mpz(j, what));
  if (j.is_string()) {
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorKind::Input, "job", "bad rational in " + what);
    q.canonicalize();
    return q;
  }
  if (j.is_array())
    throw Error(ErrorKind::Input, "job", "tower-valued coefficients are not supported in " + what,
                "give the quartic with rational coefficients");
  throw Error(ErrorKind::Input, "job", "expected a rational in " + what);
}

std::string mpq_json(const mpq_class& q) { return q.get_str(); }

}  // namespace

JobSpec parse_job(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, "job", std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.contains("schema") && j["schema"].get<int>() != 1)
      throw Error(ErrorKind::Input, "job", "unsupported schema version");
    JobSpec job;
    job.p = j.at("p").get<long>();
    if (job.p == 2) throw Error(ErrorKind::Input, "job", "p = 2 is not supported");
    const json& t = j.at("tower");
    if (t.contains("unramified"))
      for (const auto& c : t["unramified"]) job.unram.push_back(to_mpz(c, "tower.unramified"));
    else
      job.unram = {0, 1};
    for (const auto& w : t.at("eisenstein")) {
      WVec v;
      if (w.is_array())
        for (const auto& c : w) v.push_back(to_mpz(c, "tower.eisenstein"));
      else
        v.push_back(to_mpz(w, "tower.eisenstein"));
      job.eis.push_back(v);
    }
    job.precision = j.at("precision").get<int>();
    if (j.contains("guard") && !j["guard"].is_null()) job.guard = j["guard"].get<int>();
    if (j.contains("working_precision") && !j["working_precision"].is_null())
      job.working_precision = j["working_precision"].get<int>();
    if (j.contains("quartic")) {
      job.quartic_text = j["quartic"].get<std::string>();
      job.quartic = parse_polynomial(job.quartic_text);
    } else {
      const json& c = j.at("coefficients");
      auto monos = monomials_of_degree(4);
      if (!c.is_array() || c.size() != monos.size())
        throw Error(ErrorKind::Input, "job", "coefficients must list 15 entries");
      job.quartic = RationalPoly(3, mpq_class(0));
      for (size_t k = 0; k < monos.size(); ++k) job.quartic.set(monos[k], to_mpq(c[k], "coefficients"));
      job.quartic_text = format_polynomial(job.quartic);
    }
    job.mode = parse_mode(j.value("mode", std::string("full")));
    if (j.contains("fixtures")) {
      const json& f = j["fixtures"];
      if (f.contains("aronhold") && !f["aronhold"].is_null()) {
        std::array<std::array<PadicDigits, 3>, 7> a;
        if (f["aronhold"].size() != 7) throw Error(ErrorKind::Input, "job", "a pinned Aronhold set has 7 lines");
        for (int k = 0; k < 7; ++k)
          for (int c = 0; c < 3; ++c) a[k][c] = f["aronhold"][k][c].get<PadicDigits>();
        job.pinned_aronhold = a;
      }
      if (f.contains("signs") && !f["signs"].is_null()) job.pinned_signs = f["signs"].get<std::array<int, 3>>();
    }
    if (j.contains("expected_octic") && !j["expected_octic"].is_null())
      job.expected_octic = j["expected_octic"].get<std::vector<long>>();
    return job;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, "job", std::string("invalid job: ") + e.what());
  }
}

std::string emit_job(const JobSpec& job) {
  json j;
  j["schema"] = 1;
  j["p"] = job.p;
  json un = json::array(), ei = json::array();
  for (const auto& c : job.unram) un.push_back(c.get_str());
  for (const auto& w : job.eis) {
    json v = json::array();
    for (const auto& c : w) v.push_back(c.get_str());
    ei.push_back(v);
  }
  j["tower"] = {{"unramified", un}, {"eisenstein", ei}};
  j["precision"] = job.precision;
  if (job.guard) j["guard"] = *job.guard;
  if (job.working_precision) j["working_precision"] = *job.working_precision;
  json co = json::array();
  for (const auto& m : monomials_of_degree(4)) co.push_back(mpq_json(job.quartic.coeff(m)));
  j["coefficients"] = co;
  j["mode"] = to_string(job.mode);
  if (job.pinned_aronhold || job.pinned_signs) {
    json f = json::object();
    if (job.pinned_aronhold) f["aronhold"] = *job.pinned_aronhold;
    if (job.pinned_signs) f["signs"] = *job.pinned_signs;
    j["fixtures"] = f;
  }
  if (job.expected_octic) j["expected_octic"] = *job.expected_octic;
  return j.dump(2);
}

std::string emit_report_json(const Report& r) {
  json j = r;
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  try {
    return json::parse(text).get<Report>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, "report", std::string("invalid report: ") + e.what());
  }
}

namespace {

std::string half(int v2) { return v2 % 2 ? std::to_string(v2) + "/2" : std::to_string(v2 / 2); }

std::string order_text(const std::array<int, 7>& o) {
  std::string s;
  for (int k = 0; k < 7; ++k) s += (k ? " " : "") + std::to_string(o[k]);
  return s;
}

}  // namespace

std::string emit_report_text(const Report& r) {
  std::ostringstream os;
  os << "verdict: " << r.verdict << "\n";
  os << "mode: " << r.mode << "\n";
  os << "curve: " << r.input << " = 0\n";
  os << "field: p = " << r.field.p << ", d = " << r.field.d << ", e = " << r.field.e << ", residue "
     << r.field.residue << "\n";
  os << "precision: N = " << r.precision << ", guard " << r.guard << ", working precision " << r.working_precision
     << " (guard " << r.working_guard << ")";
  if (!r.attempts.empty()) {
    os << ", attempts";
    for (int a : r.attempts) os << " " << a;
  }
  os << "\n";
  if (r.discriminant_valuation) os << "v_p(disc) = " << *r.discriminant_valuation << "\n";
  os << "bitangents: " << r.bitangent_count << (r.bitangents_complete ? " (complete)" : "") << "\n";
  if (r.aronhold_count) os << "Aronhold sets: " << *r.aronhold_count << "\n";
  if (r.frame) {
    const auto& f = *r.frame;
    os << "\nAronhold frame (set " << f.sets_tried << " tried): b1..b7 = " << order_text(f.order) << ", "
       << f.initial_case << "\n";
    os << "  2 v(a_ij):";
    for (const auto& row : f.a_val2) os << " [" << row[0] << " " << row[1] << " " << row[2] << "]";
    os << "\n";
    for (const auto& t : f.trail)
      os << "  " << t.label << ": " << order_text(t.order) << " -> " << t.frame_case << " (" << t.explanation << ")\n";
    if (!f.final_case.empty())
      os << "  final frame " << order_text(f.final_order) << ", " << f.final_case << ", v0 = " << half(f.v0_2) << "\n";
  }
  if (r.toggle) {
    const auto& t = *r.toggle;
    os << "\ntoggle model Q^2 + pi^" << t.s << " G = 0 (modulo pi^" << r.precision << ")\n";
    os << "  Q = " << t.Q.text << "\n";
    os << "  G = " << t.G0.text << "\n";
    os << "  v0 = " << half(t.v0_2) << ", v1 = " << t.v1 << ", v(u) = " << t.u_val[0] << " " << t.u_val[1] << " "
       << t.u_val[2] << ", v(det) = " << half(t.det_val2) << "\n";
    os << "  identity valuation " << t.identity_valuation << "\n";
  }
  if (!r.checks.empty()) {
    os << "\nchecks:\n";
    for (const auto& c : r.checks) os << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  if (r.scheme) {
    os << "\nstable model over " << r.scheme->field << ":\n  " << r.scheme->equation1 << "\n  " << r.scheme->equation2
       << "\n";
  }
  if (r.reduction) {
    const auto& d = *r.reduction;
    os << "\nreduction over " << d.residue_field << ":\n";
    os << "  Qbar = " << d.Qbar << "\n  Gbar = " << d.Gbar << "\n";
    if (!d.failure.empty()) os << "  failure: " << d.failure << "\n";
    if (!d.octic_text.empty()) os << "  special fiber: y^2 = " << d.octic_text << "\n";
    if (d.point_count) os << "  points over the residue field: " << *d.point_count << "\n";
  }
  if (r.comparison) {
    os << "\ncomparison with y^2 = " << r.comparison->target << ": "
       << (r.comparison->equivalent ? "isomorphic" : "not isomorphic") << " (roots split in degree "
       << r.comparison->extension_degree << ", " << r.comparison->candidates << " maps tested)\n";
  }
  if (!r.extensions.empty()) {
    os << "\nextensions:\n";
    for (const auto& e : r.extensions) os << "  " << e << "\n";
  }
  if (r.error) {
    os << "\nerror (" << r.error->kind << ", " << r.error->stage << "): " << r.error->message << "\n";
    if (!r.error->hint.empty()) os << "  hint: " << r.error->hint << "\n";
  }
  if (!r.diagnostics.empty()) {
    os << "\ndiagnostics:\n";
    for (const auto& d : r.diagnostics) os << "  " << d.stage << " [" << d.status << "] " << d.detail << "\n";
  }
  return os.str();
}

}  // namespace quartred
