#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quartred/reduction.hpp"

namespace quartred {

enum class Mode { Classify, Full, BitangentsOnly, CountAronhold };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

// Serialized p-adic number: valuation, absolute precision and base-p digits of the unit
// part in the tau^i pi^j basis (digits[j][i], least significant first).
struct PadicDigits {
  int val = 0;
  int prec = 0;
  std::vector<std::vector<std::vector<long>>> digits;
  bool operator==(const PadicDigits&) const = default;
};

PadicDigits to_digits(const Padic& a, int prec = -1);
Padic from_digits(const FieldContext& K, const PadicDigits& d);

struct JobSpec {
  long p = 0;
  std::vector<mpz_class> unram;  // monic, low to high
  std::vector<WVec> eis;         // low to high, coefficients in the tau basis
  int precision = 0;             // N: results are reported modulo pi^N
  std::optional<int> guard;      // default N/4
  std::optional<int> working_precision;
  RationalPoly quartic;
  std::string quartic_text;
  Mode mode = Mode::Full;
  // reproduction hooks
  std::optional<std::array<std::array<PadicDigits, 3>, 7>> pinned_aronhold;  // ordered b1..b7
  std::optional<std::array<int, 3>> pinned_signs;
  // optional octic over the prime field (coefficient of x^k z^(8-k) at index k) to compare
  std::optional<std::vector<long>> expected_octic;
};

struct FormTerm {
  std::array<int, 3> mono{};
  PadicDigits coeff;
  bool operator==(const FormTerm&) const = default;
};

struct FormRecord {
  std::vector<FormTerm> terms;
  std::string text;
  bool operator==(const FormRecord&) const = default;
};

struct CheckRecord {
  std::string name;
  bool ok = false;
  std::string detail;
  bool operator==(const CheckRecord&) const = default;
};

struct StageRecord {
  std::string stage;
  std::string status;
  std::string detail;
  bool operator==(const StageRecord&) const = default;
};

struct TrailRecord {
  std::string label;
  std::array<int, 7> order{};
  std::string frame_case;
  std::string explanation;
  bool operator==(const TrailRecord&) const = default;
};

struct FieldRecord {
  long p = 0;
  int d = 1, e = 1;
  std::vector<std::string> unram;
  std::vector<std::vector<std::string>> eis;
  std::string residue;
  bool operator==(const FieldRecord&) const = default;
};

struct FrameRecord {
  std::vector<int> aronhold_set;  // sorted indices into the bitangent list
  int sets_tried = 0;
  // the starting frame b1..b7
  std::array<int, 7> order{};
  std::string initial_case;
  std::array<std::array<int, 3>, 3> a_val2{};  // twice the valuations of a_ij
  std::array<std::array<PadicDigits, 3>, 3> a_prime;
  std::array<PadicDigits, 3> inv_eta_sq;
  // a_ij = a'_ij / eta_i when every eta_i lies in K
  std::optional<std::array<std::array<PadicDigits, 3>, 3>> a;
  // after relabeling
  std::array<int, 7> final_order{};
  std::string final_case;
  int v0_2 = 0;
  std::array<std::array<int, 3>, 3> final_a_val2{};
  std::vector<TrailRecord> trail;
  bool operator==(const FrameRecord&) const = default;
};

struct ToggleRecord {
  int s = 0, v0_2 = 0, v1 = 0;
  std::array<int, 3> u_val{};
  int det_val2 = 0;
  FormRecord Q, G0;
  std::array<std::array<PadicDigits, 3>, 3> M;
  PadicDigits scale;
  int identity_valuation = 0;
  bool operator==(const ToggleRecord&) const = default;
};

struct SchemeRecord {
  int s = 0;
  bool ramified = false;
  std::string field, equation1, equation2;
  bool operator==(const SchemeRecord&) const = default;
};

struct ReductionRecord {
  std::string residue_field;
  std::string Qbar, Gbar;
  std::string conic_det;
  bool nondegenerate = false, transverse = false;
  std::string failure;
  std::optional<std::string> base_point;
  std::vector<std::vector<long>> octic;  // coefficient of x^k z^(8-k), in the residue tau basis
  std::string octic_text;
  std::optional<long> point_count;
  bool operator==(const ReductionRecord&) const = default;
};

struct ComparisonRecord {
  std::string target;
  bool equivalent = false;
  int extension_degree = 1;
  int candidates = 0;
  bool operator==(const ComparisonRecord&) const = default;
};

struct ErrorRecord {
  std::string kind, stage, message, hint;
  bool operator==(const ErrorRecord&) const = default;
};

struct Report {
  int schema = 1;
  std::string verdict = "error";  // good-hyperelliptic-certificate | not-certified | error
  std::string mode;
  std::string input;
  FieldRecord field;
  int precision = 0, guard = 0;
  int working_precision = 0, working_guard = 0;
  std::vector<int> attempts;
  std::optional<int> discriminant_valuation;  // p-adic valuation of the rational discriminant
  int bitangent_count = 0;
  bool bitangents_complete = false;
  std::vector<std::array<PadicDigits, 3>> bitangents;  // bitangents-only mode
  std::optional<long> aronhold_count;
  int syzygetic_triples = 0;
  std::optional<FrameRecord> frame;
  std::optional<ToggleRecord> toggle;
  std::vector<CheckRecord> checks;
  std::optional<SchemeRecord> scheme;
  std::optional<ReductionRecord> reduction;
  std::optional<ComparisonRecord> comparison;
  std::vector<std::string> extensions;
  std::vector<StageRecord> diagnostics;
  std::optional<ErrorRecord> error;
  bool operator==(const Report&) const = default;
};

// Internal state of a successful run, for tests that need the p-adic objects.
struct PipelineState {
  ContextPtr K;
  BitangentSet bitangents;
  std::optional<AronholdFrame> initial_frame, frame;
  std::optional<USolution> u;
  std::optional<ToggleModel> toggle;
  std::optional<ReducedModel> reduced;
  std::optional<HyperellipticModel> hyperelliptic;
};

Report run_pipeline(const JobSpec& job, PipelineState* state = nullptr);

int exit_code(const Report& r);

// JSON (schema 1) and text renderings
JobSpec parse_job(const std::string& json_text);
std::string emit_job(const JobSpec& job);
std::string emit_report_json(const Report& r);
Report parse_report_json(const std::string& json_text);
std::string emit_report_text(const Report& r);

}  // namespace quartred
