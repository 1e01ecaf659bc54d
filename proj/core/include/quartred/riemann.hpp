#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quartred/aronhold.hpp"

namespace quartred {

using Row3 = std::array<Padic, 3>;
using Mat3 = std::array<Row3, 3>;

// An ordered Aronhold set b1..b7 sent to x1, x2, x3, x1+x2+x3 by x = M y.
struct AronholdFrame {
  std::array<int, 7> order{};  // indices into the bitangent list
  PadicMatrix M;               // x = M y
  PadicMatrix Minv;
  Mat3 ap;                     // a'_ij, row i from b_{4+i}, each row primitive
  Row3 lambda;
  Row3 w;                      // w_i = 1/eta_i^2
  std::array<std::optional<Padic>, 3> eta;  // when the square root exists in K
  // twice the valuation of a_ij = a'_ij / eta_i
  std::array<std::array<int, 3>, 3> val2{};
};

// Throws Degenerate when three of the first four lines are concurrent.
AronholdFrame normalize_frame(const std::vector<Bitangent>& lines, const std::array<int, 7>& order);
AronholdFrame normalize_frame(const std::array<Point3, 7>& lines);

Row3 solve_lambda(const Mat3& ap);
// 1/eta_i^2
Row3 solve_eta(const Mat3& ap, const Row3& lambda);

enum class FrameCase { Case1, Case2, Case3, Other };
std::string to_string(FrameCase c);

struct Classification {
  FrameCase kase = FrameCase::Other;
  int v0_2 = 0;          // 2 v0
  int column = -1;       // 0-based
  std::array<int, 2> rows{-1, -1};
  std::string explanation;
};

Classification classify_valuations(const std::array<std::array<int, 3>, 3>& val2);

// u_k as linear forms in y (coefficient vectors), from
//   u1 + u2 + u3 = -(y1 + y2 + y3),   sum_j u_j / a_ij = -sum_j a_ij y_j  (i = 1, 2)
struct USolution {
  std::array<Row3, 3> u;
  std::array<int, 3> v{};  // valuations of the forms
  int det_val2 = 0;        // twice the valuation of det [1; 1/a_1j; 1/a_2j]
  int row3_residual = 0;   // valuation of the third-row equation's residual
};
USolution solve_u(const AronholdFrame& f);

// (y1 u1 + y2 u2 - y3 u3)^2 - 4 y1 u1 y2 u2
PadicForm riemann_model(const USolution& u);

// Named line of the bitangent table, as a form in y: "1".."7", "ij" with i<j among 1..7
Row3 table_line(const AronholdFrame& f, const USolution& u, const std::string& name);
// same line in the input coordinates
Point3 table_line_input(const AronholdFrame& f, const USolution& u, const std::string& name);

// index of the computed bitangent matching a line, or -1
int match_bitangent(const std::vector<Bitangent>& lines, const Point3& l, int* score = nullptr);

struct ToggleModel {
  PadicForm Q, G0;  // in the frame coordinates y
  int s = 0;
  Row3 u1p, u2, u3;
  int v0_2 = 0, v1 = 0;
  PadicMatrix M;    // input coordinates x = M y
  Padic scale;      // Q^2 + pi^s G0 = scale * F(M y)
  int identity_valuation = 0;  // min valuation of Q^2 + pi^s G0 - scale * F(M y)
  int q_content = 0, g_content = 0;
};

ToggleModel toggle_model(const AronholdFrame& f, const USolution& u, const PadicForm& F, int guard);

struct RelabelStep {
  std::string label;
  std::array<int, 7> order{};
  Classification cls;
};

struct RelabelResult {
  bool ok = false;
  AronholdFrame frame;
  Classification cls;
  std::vector<RelabelStep> trail;
  std::string reason;
};

// Reach a frame with v(a_11) = v(a_31) = v0 > 0 and the other a_ij units.
RelabelResult relabel_aronhold(const std::vector<Bitangent>& lines, const std::array<int, 7>& start, int guard);

struct StableScheme {
  // y^2 + G0 = 0,  pi'^s y - Q = 0 with pi'^2 = pi when s is odd
  int s = 0;
  bool ramified = false;
  std::string field;
  std::string equation1, equation2;
};
// coefficients printed modulo pi^prec (default: the context cap)
StableScheme stable_scheme(const ToggleModel& T, int prec = -1);

}  // namespace quartred
