#include "quartred/aronhold.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace quartred {

std::array<std::array<Padic, 6>, 2> tangency_rows(const Bitangent& b) {
  static const std::array<std::array<int, 2>, 6> mono{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
  std::array<std::array<Padic, 6>, 3> v;
  for (int m = 0; m < 6; ++m) {
    auto [i, j] = mono[m];
    v[0][m] = b.A[i] * b.A[j];
    v[1][m] = b.A[i] * b.B[j] + b.A[j] * b.B[i];
    v[2][m] = b.B[i] * b.B[j];
  }
  int k = 0;
  for (int l = 1; l < 3; ++l)
    if (!b.q[l].is_zero() && (b.q[k].is_zero() || b.q[l].valuation() < b.q[k].valuation())) k = l;
  std::array<std::array<Padic, 6>, 2> rows;
  int r = 0;
  for (int l = 0; l < 3; ++l) {
    if (l == k) continue;
    for (int m = 0; m < 6; ++m) rows[r][m] = v[l][m] * b.q[k] - v[k][m] * b.q[l];
    ++r;
  }
  return rows;
}

Padic syzygy_determinant(const Bitangent& b1, const Bitangent& b2, const Bitangent& b3) {
  PadicMatrix M;
  for (const auto* b : {&b1, &b2, &b3})
    for (const auto& row : tangency_rows(*b)) M.emplace_back(row.begin(), row.end());
  return det_padic(M);
}

bool is_syzygetic(const Bitangent& b1, const Bitangent& b2, const Bitangent& b3, int guard) {
  return syzygy_determinant(b1, b2, b3).is_negligible(guard);
}

SyzygyTable::SyzygyTable(const std::vector<Bitangent>& lines, int guard) : n_(int(lines.size())) {
  offset_.assign(n_ * n_, 0);
  int count = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      offset_[i * n_ + j] = count;
      count += std::max(0, n_ - j - 1);
    }
  bits_.assign(count, false);
  vals_.assign(count, INT_MAX);
  std::vector<std::array<std::array<Padic, 6>, 2>> rows;
  for (const auto& b : lines) rows.push_back(tangency_rows(b));
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        PadicMatrix M;
        for (int t : {i, j, k})
          for (const auto& row : rows[t]) M.emplace_back(row.begin(), row.end());
        Padic d = det_padic(M);
        int idx = index(i, j, k);
        bool syz = d.is_negligible(guard);
        bits_[idx] = syz;
        vals_[idx] = d.is_zero() ? INT_MAX : d.valuation();
        if (syz) ++syz_count_;
        else max_az_ = std::max(max_az_, d.valuation());
      }
}

int SyzygyTable::index(int i, int j, int k) const {
  int a[3] = {i, j, k};
  std::sort(a, a + 3);
  return offset_[a[0] * n_ + a[1]] + (a[2] - a[1] - 1);
}

bool is_aronhold(const SyzygyTable& t, const std::vector<int>& s) {
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      for (size_t c = b + 1; c < s.size(); ++c)
        if (t.syzygetic(s[a], s[b], s[c])) return false;
  return true;
}

namespace {

// extend `chosen` by elements of `cand` (all > last chosen, compatible with every pair)
void extend(const SyzygyTable& t, std::vector<int>& chosen, const std::vector<int>& cand,
            const std::function<bool(const std::vector<int>&)>& visit, bool& stop) {
  if (stop) return;
  if (chosen.size() == 7) {
    if (visit(chosen)) stop = true;
    return;
  }
  if (chosen.size() + cand.size() < 7) return;
  for (size_t a = 0; a < cand.size() && !stop; ++a) {
    int v = cand[a];
    std::vector<int> next;
    for (size_t b = a + 1; b < cand.size(); ++b) {
      int c = cand[b];
      bool ok = true;
      for (int s : chosen)
        if (t.syzygetic(s, v, c)) {
          ok = false;
          break;
        }
      if (ok) next.push_back(c);
    }
    chosen.push_back(v);
    extend(t, chosen, next, visit, stop);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<std::array<int, 7>> all_aronhold_sets(const SyzygyTable& t) {
  std::vector<std::array<int, 7>> out;
  std::vector<int> chosen, cand;
  for (int i = 0; i < t.size(); ++i) cand.push_back(i);
  bool stop = false;
  extend(t, chosen, cand,
         [&](const std::vector<int>& s) {
           std::array<int, 7> a;
           std::copy(s.begin(), s.end(), a.begin());
           out.push_back(a);
           return false;
         },
         stop);
  return out;
}

long count_aronhold(const SyzygyTable& t) { return long(all_aronhold_sets(t).size()); }

AronholdCandidate find_aronhold(const SyzygyTable& t) {
  if (t.size() != 28)
    throw Error(ErrorKind::Input, "aronhold", "need all 28 bitangents, got " + std::to_string(t.size()));
  // greedy order from the pair {0, 1}, backtracking on dead ends
  for (int first = 0; first < t.size(); ++first)
    for (int second = first + 1; second < t.size(); ++second) {
      std::vector<int> chosen{first, second}, cand;
      for (int c = 0; c < t.size(); ++c)
        if (c != first && c != second && !t.syzygetic(first, second, c)) cand.push_back(c);
      AronholdCandidate res;
      bool stop = false;
      // candidates need not exceed `second`; extend() only requires increasing order
      // within cand
      extend(t, chosen, cand,
             [&](const std::vector<int>& s) {
               res.indices = s;
               return true;
             },
             stop);
      if (stop) return res;
    }
  throw Error(ErrorKind::Precision, "aronhold", "no Aronhold set found at precision",
              "raise the working precision");
}

}  // namespace quartred
