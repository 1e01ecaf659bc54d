#include "quartred/padic.hpp"

#include <algorithm>
#include <sstream>

namespace quartred {

namespace {

int vp_mpz(const mpz_class& a, long p, int cap) {
  if (a == 0) return cap;
  mpz_class t = a;
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

void mod_inplace(mpz_class& a, const mpz_class& m) { mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()); }

[[noreturn]] void mismatch() {
  throw Error(ErrorKind::ContextMismatch, "padic", "operands belong to different fields");
}

}  // namespace

// ---------------------------------------------------------------------------
// context construction

ContextPtr make_field(long p, const std::vector<long>& unram,
                      const std::vector<std::vector<long>>& eis, int precision) {
  std::vector<mpz_class> u(unram.begin(), unram.end());
  std::vector<WVec> E;
  for (const auto& c : eis) E.emplace_back(c.begin(), c.end());
  return make_field(p, std::move(u), std::move(E), precision);
}

ContextPtr make_field(long p, std::vector<mpz_class> unram, std::vector<WVec> eis, int precision) {
  if (p == 2) throw Error(ErrorKind::Input, "field", "p = 2 is not supported");
  if (p < 3 || !mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30))
    throw Error(ErrorKind::Input, "field", "p must be an odd prime");
  if (precision < 1) throw Error(ErrorKind::Input, "field", "precision must be positive");
  while (!unram.empty() && unram.back() == 0) unram.pop_back();
  if (unram.size() < 2 || unram.back() != 1)
    throw Error(ErrorKind::Input, "field", "unramified polynomial must be monic of positive degree");
  auto K = std::shared_ptr<FieldContext>(new FieldContext());
  K->p_ = p;
  K->d_ = int(unram.size()) - 1;
  K->unram_ = std::move(unram);
  {
    std::vector<long> m;
    for (const auto& c : K->unram_) {
      mpz_class r = c;
      mod_inplace(r, mpz_class(p));
      m.push_back(r.get_si());
    }
    if (K->d_ > 1 && !FiniteField::is_irreducible(p, m))
      throw Error(ErrorKind::Input, "field", "unramified polynomial is reducible modulo p");
    K->residue_ = std::make_shared<const FiniteField>(p, m);
  }
  while (!eis.empty() && std::all_of(eis.back().begin(), eis.back().end(),
                                     [](const mpz_class& c) { return c == 0; }))
    eis.pop_back();
  if (eis.size() < 2) throw Error(ErrorKind::Input, "field", "Eisenstein polynomial must have positive degree");
  K->e_ = int(eis.size()) - 1;
  for (auto& w : eis) w.resize(K->d_, 0);
  K->eis_ = std::move(eis);
  K->N_ = precision;
  K->init();
  return K;
}

WVec FieldContext::w_mul(const WVec& a, const WVec& b, const mpz_class& m) const {
  std::vector<mpz_class> t(2 * d_ - 1);
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d_; ++j) mpz_addmul(t[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  tau_reduce(t, m);
  t.resize(d_);
  return t;
}

void FieldContext::tau_reduce(std::vector<mpz_class>& t, const mpz_class& m) const {
  for (auto& x : t) mod_inplace(x, m);
  for (int k = int(t.size()) - 1; k >= d_; --k) {
    if (t[k] == 0) continue;
    const WVec& red = tau_red_[k - d_];
    for (int i = 0; i < d_; ++i) mpz_addmul(t[i].get_mpz_t(), t[k].get_mpz_t(), red[i].get_mpz_t());
    t[k] = 0;
  }
  for (int i = 0; i < d_ && i < int(t.size()); ++i) mod_inplace(t[i], m);
}

void FieldContext::init() {
  const int Rmax = 2 * N_ + 2 * e_;
  M_ = digits_for(Rmax) + 2;
  ppow_.resize(M_ + 2);
  ppow_[0] = 1;
  for (size_t k = 1; k < ppow_.size(); ++k) ppow_[k] = ppow_[k - 1] * p_;
  const mpz_class& m = ppow_[M_];

  // tau^(d+k) reduced, k = 0 .. d-2 (and one extra for safety)
  tau_red_.clear();
  {
    WVec cur(d_);
    for (int i = 0; i < d_; ++i) {
      cur[i] = -unram_[i];
      mod_inplace(cur[i], m);
    }
    tau_red_.push_back(cur);
    for (int k = 1; k < d_; ++k) {
      WVec nxt(d_);
      for (int i = 1; i < d_; ++i) nxt[i] = cur[i - 1];
      for (int i = 0; i < d_; ++i) {
        mpz_addmul(nxt[i].get_mpz_t(), cur[d_ - 1].get_mpz_t(), tau_red_[0][i].get_mpz_t());
        mod_inplace(nxt[i], m);
      }
      tau_red_.push_back(nxt);
      cur = nxt;
    }
  }

  // normalize the Eisenstein polynomial to be monic
  {
    WVec lc = eis_[e_];
    for (auto& x : lc) mod_inplace(x, m);
    Fq lbar = residue_->zero();
    {
      std::vector<long> c;
      for (auto& x : lc) {
        mpz_class r = x;
        mod_inplace(r, mpz_class(p_));
        c.push_back(r.get_si());
      }
      lbar = residue_->from_coeffs(c);
    }
    if (lbar.is_zero()) throw Error(ErrorKind::Input, "field", "Eisenstein polynomial has non-unit leading coefficient");
    // Newton inverse of lc in W
    WVec inv(d_);
    {
      Fq li = lbar.inverse();
      for (int i = 0; i < d_; ++i) inv[i] = li.coeffs()[i];
      for (int it = 0; it < 64; ++it) {
        WVec t = w_mul(lc, inv, m);
        for (auto& x : t) x = -x;
        t[0] += 2;
        inv = w_mul(inv, t, m);
      }
    }
    for (auto& w : eis_) w = w_mul(w, inv, m);
    for (int j = 0; j < e_; ++j)
      for (int i = 0; i < d_; ++i)
        if (!mpz_divisible_ui_p(eis_[j][i].get_mpz_t(), p_))
          throw Error(ErrorKind::Input, "field", "polynomial is not Eisenstein: a lower coefficient is a unit");
    std::vector<long> eps;
    for (int i = 0; i < d_; ++i) {
      mpz_class t = eis_[0][i] / p_;
      mod_inplace(t, mpz_class(p_));
      eps.push_back(t.get_si());
    }
    if (residue_->from_coeffs(eps).is_zero())
      throw Error(ErrorKind::Input, "field", "polynomial is not Eisenstein: constant term has valuation > 1");
  }

  // pi_pow_: repeated multiplication by pi using pi^e = -sum c_j pi^j
  auto mul_pi = [&](const Raw& a) {
    Raw r(e_ * d_);
    for (int j = e_ - 1; j >= 1; --j)
      for (int i = 0; i < d_; ++i) r[j * d_ + i] = a[(j - 1) * d_ + i];
    WVec top(a.begin() + (e_ - 1) * d_, a.begin() + e_ * d_);
    bool nz = std::any_of(top.begin(), top.end(), [](const mpz_class& x) { return x != 0; });
    if (nz) {
      for (int j = 0; j < e_; ++j) {
        WVec c = w_mul(top, eis_[j], m);
        for (int i = 0; i < d_; ++i) {
          r[j * d_ + i] -= c[i];
          mod_inplace(r[j * d_ + i], m);
        }
      }
    }
    return r;
  };
  pi_pow_.clear();
  Raw one(e_ * d_);
  one[0] = 1;
  pi_pow_.push_back(one);
  for (int k = 1; k <= Rmax; ++k) pi_pow_.push_back(mul_pi(pi_pow_.back()));
  pi_red_.clear();
  for (int k = 0; k < e_; ++k) pi_red_.push_back(pi_pow_[e_ + k]);

  // p / pi = -eps^{-1} (pi^(e-1) + sum_{j>=1} c_j pi^(j-1)), eps = c_0 / p
  {
    WVec eps(d_);
    for (int i = 0; i < d_; ++i) eps[i] = eis_[0][i] / p_;
    std::vector<long> eb;
    for (int i = 0; i < d_; ++i) {
      mpz_class t = eps[i];
      mod_inplace(t, mpz_class(p_));
      eb.push_back(t.get_si());
    }
    Fq ei = residue_->from_coeffs(eb).inverse();
    WVec inv(d_);
    for (int i = 0; i < d_; ++i) inv[i] = ei.coeffs()[i];
    for (int it = 0; it < 64; ++it) {
      WVec t = w_mul(eps, inv, m);
      for (auto& x : t) x = -x;
      t[0] += 2;
      inv = w_mul(inv, t, m);
    }
    p_over_pi_.assign(e_ * d_, 0);
    for (int i = 0; i < d_; ++i) {
      p_over_pi_[(e_ - 1) * d_ + i] = -inv[i];
      mod_inplace(p_over_pi_[(e_ - 1) * d_ + i], m);
    }
    for (int j = 1; j < e_; ++j) {
      WVec c = w_mul(inv, eis_[j], m);
      for (int i = 0; i < d_; ++i) {
        p_over_pi_[(j - 1) * d_ + i] = -c[i];
        mod_inplace(p_over_pi_[(j - 1) * d_ + i], m);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// raw arithmetic on integral elements

Raw FieldContext::raw_mul(const Raw& a, const Raw& b, int r) const {
  const int k = digits_for(r);
  const mpz_class& m = ppow_[std::min(k, int(ppow_.size()) - 1)];
  const int D = 2 * d_ - 1;
  std::vector<mpz_class> T((2 * e_ - 1) * D);
  for (int j1 = 0; j1 < e_; ++j1)
    for (int i1 = 0; i1 < d_; ++i1) {
      const mpz_class& x = a[j1 * d_ + i1];
      if (x == 0) continue;
      for (int j2 = 0; j2 < e_ && j1 + j2 < 2 * e_ - 1; ++j2)
        for (int i2 = 0; i2 < d_; ++i2) {
          const mpz_class& y = b[j2 * d_ + i2];
          if (y == 0) continue;
          mpz_addmul(T[(j1 + j2) * D + i1 + i2].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
  // tau-reduce every pi-degree row
  std::vector<WVec> W(2 * e_ - 1);
  for (int j = 0; j < 2 * e_ - 1; ++j) {
    std::vector<mpz_class> row(T.begin() + j * D, T.begin() + (j + 1) * D);
    tau_reduce(row, m);
    row.resize(d_);
    W[j] = std::move(row);
  }
  // pi-reduce degrees e .. 2e-2
  std::vector<mpz_class> U(e_ * D);
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < d_; ++i) U[j * D + i] = W[j][i];
  for (int j = e_; j < 2 * e_ - 1; ++j) {
    const Raw& red = pi_red_[j - e_];
    for (int i = 0; i < d_; ++i) {
      if (W[j][i] == 0) continue;
      for (int jj = 0; jj < e_; ++jj)
        for (int ii = 0; ii < d_; ++ii) {
          const mpz_class& y = red[jj * d_ + ii];
          if (y == 0) continue;
          mpz_addmul(U[jj * D + i + ii].get_mpz_t(), W[j][i].get_mpz_t(), y.get_mpz_t());
        }
    }
  }
  Raw out(e_ * d_);
  for (int j = 0; j < e_; ++j) {
    std::vector<mpz_class> row(U.begin() + j * D, U.begin() + (j + 1) * D);
    tau_reduce(row, m);
    for (int i = 0; i < d_; ++i) out[j * d_ + i] = std::move(row[i]);
  }
  raw_canonical(out, r);
  return out;
}

void FieldContext::raw_canonical(Raw& a, int r) const {
  for (int j = 0; j < e_; ++j) {
    int k = r - j <= 0 ? 0 : (r - j + e_ - 1) / e_;
    for (int i = 0; i < d_; ++i) {
      mpz_class& x = a[j * d_ + i];
      if (k == 0) x = 0;
      else mod_inplace(x, ppow_[std::min(k, int(ppow_.size()) - 1)]);
    }
  }
}

int FieldContext::raw_valuation(const Raw& a, int r) const {
  int v = r;
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < d_; ++i) {
      const mpz_class& x = a[j * d_ + i];
      if (x == 0) continue;
      int cap = (v - j + e_ - 1) / e_;
      if (cap <= 0) continue;
      int c = e_ * vp_mpz(x, p_, cap) + j;
      v = std::min(v, c);
    }
  return v;
}

void FieldContext::raw_div_pi(Raw& a, int r) const {
  const int k = digits_for(r);
  const mpz_class& m = ppow_[std::min(k, int(ppow_.size()) - 1)];
  WVec b(d_);
  for (int i = 0; i < d_; ++i) {
    mpz_class t = a[i];
    mod_inplace(t, m);
    if (!mpz_divisible_ui_p(t.get_mpz_t(), p_))
      throw Error(ErrorKind::Internal, "padic", "division by pi of a unit");
    mpz_divexact_ui(b[i].get_mpz_t(), t.get_mpz_t(), p_);
  }
  Raw out(e_ * d_);
  for (int j = 1; j < e_; ++j)
    for (int i = 0; i < d_; ++i) out[(j - 1) * d_ + i] = a[j * d_ + i];
  bool nz = std::any_of(b.begin(), b.end(), [](const mpz_class& x) { return x != 0; });
  if (nz) {
    for (int j = 0; j < e_; ++j) {
      WVec pj(p_over_pi_.begin() + j * d_, p_over_pi_.begin() + (j + 1) * d_);
      WVec c = w_mul(b, pj, m);
      for (int i = 0; i < d_; ++i) out[j * d_ + i] += c[i];
    }
  }
  raw_canonical(out, r - 1);
  a = std::move(out);
}

Raw FieldContext::raw_inverse(const Raw& u, int r) const {
  std::vector<long> c;
  for (int i = 0; i < d_; ++i) {
    mpz_class t = u[i];
    mod_inplace(t, mpz_class(p_));
    c.push_back(t.get_si());
  }
  Fq ub = residue_->from_coeffs(c);
  if (ub.is_zero()) throw Error(ErrorKind::Internal, "padic", "inverse of a non-unit raw element");
  Fq ib = ub.inverse();
  Raw x(e_ * d_);
  for (int i = 0; i < d_; ++i) x[i] = ib.coeffs()[i];
  int cur = 1;
  while (cur < r) {
    cur = std::min(2 * cur, r);
    Raw y = raw_mul(u, x, cur);
    const mpz_class& m = ppow_[std::min(digits_for(cur), int(ppow_.size()) - 1)];
    for (auto& t : y) {
      t = -t;
      mod_inplace(t, m);
    }
    y[0] += 2;
    raw_canonical(y, cur);
    x = raw_mul(x, y, cur);
  }
  raw_canonical(x, r);
  return x;
}

Padic FieldContext::make(int base, Raw raw, int r) const {
  Padic z;
  z.ctx_ = this;
  const int Rmax = 2 * N_ + e_;
  if (base + r > N_) r = N_ - base;
  if (r > Rmax) r = Rmax;
  if (r <= 0) {
    z.val_ = z.prec_ = base + std::max(r, 0);
    if (z.prec_ > N_) z.val_ = z.prec_ = N_;
    return z;
  }
  raw_canonical(raw, r);
  int v = raw_valuation(raw, r);
  if (v >= r) {
    z.val_ = z.prec_ = base + r;
    return z;
  }
  for (int t = 0; t < v; ++t) raw_div_pi(raw, r - t);
  z.val_ = base + v;
  z.prec_ = base + r;
  z.unit_ = std::move(raw);
  return z;
}

// ---------------------------------------------------------------------------
// constructors

Padic FieldContext::zero() const { return zero(N_); }

Padic FieldContext::zero(int prec) const {
  Padic z;
  z.ctx_ = this;
  z.val_ = z.prec_ = std::min(prec, N_);
  return z;
}

Padic FieldContext::one() const { return from_int(1L); }

Padic FieldContext::from_int(long n) const { return from_int(mpz_class(n)); }

Padic FieldContext::from_int(const mpz_class& n) const {
  Raw raw(e_ * d_);
  raw[0] = n;
  mod_inplace(raw[0], ppow_[M_]);
  return make(0, std::move(raw), N_);
}

Padic FieldContext::from_rational(const mpq_class& q) const {
  Padic num = from_int(q.get_num());
  if (q.get_den() == 1) return num;
  return num * from_int(q.get_den()).inverse();
}

Padic FieldContext::tau() const {
  Raw raw(e_ * d_);
  if (d_ >= 2) raw[1] = 1;
  else raw[0] = tau_red_[0][0];
  return make(0, std::move(raw), N_);
}

Padic FieldContext::pi() const { return make(0, pi_pow_[1], N_); }

Padic FieldContext::pi_power(int k) const { return one().shift(k); }

Padic FieldContext::from_coeffs(const std::vector<std::vector<mpz_class>>& w, int prec) const {
  if (prec < 0 || prec > N_) prec = N_;
  Padic acc = zero(prec);
  Padic t = tau();
  for (size_t j = 0; j < w.size(); ++j) {
    Padic c = zero();
    Padic tp = one();
    for (size_t i = 0; i < w[j].size(); ++i) {
      if (w[j][i] != 0) c += from_int(w[j][i]) * tp;
      tp *= t;
    }
    acc += c.shift(int(j));
  }
  return acc.with_precision(prec);
}

Padic FieldContext::lift(const Fq& a) const {
  Raw raw(e_ * d_);
  for (int i = 0; i < d_; ++i) raw[i] = a.coeffs()[i];
  return make(0, std::move(raw), N_);
}

std::string FieldContext::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (d_ > 1) {
    os << "(tau: ";
    for (int i = d_; i >= 0; --i) {
      if (unram_[i] == 0) continue;
      if (i < d_) os << (unram_[i] > 0 ? "+" : "");
      if (i == 0 || unram_[i] != 1) os << unram_[i].get_str() << (i ? "*" : "");
      if (i > 0) os << "tau" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    os << "=0)";
  }
  os << ", e=" << e_ << ", N=" << N_;
  return os.str();
}

// ---------------------------------------------------------------------------
// element arithmetic

bool Padic::is_negligible(int guard) const {
  return is_zero() || val_ >= ctx_->precision() - guard;
}

Padic Padic::operator+(const Padic& o) const {
  if (ctx_ != o.ctx_) mismatch();
  const int prec = std::min(prec_, o.prec_);
  const int base = std::min(val_, o.val_);
  if (base >= prec) return ctx_->zero(prec);
  const int r = prec - base;
  const int E = ctx_->e(), D = ctx_->d();
  Raw raw(E * D);
  for (const Padic* x : {this, &o}) {
    if (x->is_zero()) continue;
    int s = x->val_ - base;
    if (s >= r) continue;
    if (s == 0) {
      for (int i = 0; i < E * D; ++i) raw[i] += x->unit_[i];
    } else {
      Raw t = ctx_->raw_mul(x->unit_, ctx_->pi_pow_[s], r);
      for (int i = 0; i < E * D; ++i) raw[i] += t[i];
    }
  }
  return ctx_->make(base, std::move(raw), r);
}

Padic Padic::operator-() const {
  Padic z = *this;
  if (is_zero()) return z;
  const mpz_class& m = ctx_->ppow(std::min(ctx_->digits_for(relative_precision()), int(ctx_->ppow_.size()) - 1));
  for (auto& x : z.unit_) {
    x = -x;
    mod_inplace(x, m);
  }
  ctx_->raw_canonical(z.unit_, relative_precision());
  return z;
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if (ctx_ != o.ctx_) mismatch();
  const int N = ctx_->precision();
  int prec = std::min({prec_ + o.val_, o.prec_ + val_, N});
  int val = val_ + o.val_;
  if (is_zero() || o.is_zero() || val >= prec) return ctx_->zero(std::min(prec, N));
  int r = prec - val;
  Padic z;
  z.ctx_ = ctx_;
  z.val_ = val;
  z.prec_ = prec;
  z.unit_ = ctx_->raw_mul(unit_, o.unit_, r);
  return z;
}

Padic Padic::inverse() const {
  if (is_zero())
    throw Error(ErrorKind::Precision, "padic",
                "division by (numerical) zero: element is O(pi^" + std::to_string(prec_) + ")",
                "raise the working precision");
  int r = relative_precision();
  Padic z;
  z.ctx_ = ctx_;
  z.val_ = -val_;
  z.prec_ = std::min(z.val_ + r, ctx_->precision());
  if (z.prec_ <= z.val_) return ctx_->zero(z.prec_);
  z.unit_ = ctx_->raw_inverse(unit_, z.prec_ - z.val_);
  return z;
}

Padic Padic::shift(int k) const {
  const int N = ctx_->precision();
  if (is_zero()) return ctx_->zero(std::min(prec_ + k, N));
  Padic z = *this;
  z.val_ += k;
  z.prec_ = std::min(prec_ + k, N);
  if (z.val_ >= z.prec_) return ctx_->zero(z.prec_);
  ctx_->raw_canonical(z.unit_, z.prec_ - z.val_);
  return z;
}

Padic Padic::with_precision(int prec) const {
  if (prec >= prec_) return *this;
  if (is_zero() || val_ >= prec) return ctx_->zero(prec);
  Padic z = *this;
  z.prec_ = prec;
  ctx_->raw_canonical(z.unit_, prec - val_);
  return z;
}

Padic Padic::unit_part() const {
  if (is_zero()) throw Error(ErrorKind::Precision, "padic", "unit part of zero");
  return shift(-val_);
}

Fq Padic::reduce() const {
  const FiniteField& F = ctx_->residue_field();
  if (prec_ <= 0) throw Error(ErrorKind::Precision, "padic", "reduction of an element known to no digits");
  if (is_zero() || val_ > 0) return F.zero();
  if (val_ < 0) throw Error(ErrorKind::Input, "padic", "reduction of a non-integral element");
  std::vector<long> c;
  for (int i = 0; i < ctx_->d(); ++i) {
    mpz_class t = unit_[i];
    mod_inplace(t, mpz_class(ctx_->p()));
    c.push_back(t.get_si());
  }
  return F.from_coeffs(c);
}

std::vector<std::vector<mpz_class>> Padic::absolute_coeffs(int prec) const {
  const int E = ctx_->e(), D = ctx_->d();
  if (prec < 0 || prec > prec_) prec = prec_;
  std::vector<std::vector<mpz_class>> w(E, std::vector<mpz_class>(D));
  if (is_zero() || val_ >= prec) return w;
  if (val_ < 0) throw Error(ErrorKind::Input, "padic", "absolute coefficients of a non-integral element");
  Raw raw = val_ == 0 ? unit_ : ctx_->raw_mul(unit_, ctx_->pi_pow_[val_], prec);
  ctx_->raw_canonical(raw, prec);
  for (int j = 0; j < E; ++j)
    for (int i = 0; i < D; ++i) w[j][i] = raw[j * D + i];
  return w;
}

std::vector<std::vector<std::vector<long>>> Padic::digit_vectors() const {
  const int E = ctx_->e(), D = ctx_->d();
  std::vector<std::vector<std::vector<long>>> out(E, std::vector<std::vector<long>>(D));
  if (is_zero()) return out;
  int r = relative_precision();
  for (int j = 0; j < E; ++j) {
    int k = r - j <= 0 ? 0 : (r - j + E - 1) / E;
    for (int i = 0; i < D; ++i) {
      mpz_class x = unit_[j * D + i];
      for (int t = 0; t < k; ++t) {
        mpz_class q, rem;
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(), ctx_->p());
        out[j][i].push_back(rem.get_si());
        x = q;
      }
    }
  }
  return out;
}

Padic Padic::from_digit_vectors(const FieldContext& K, int val, int prec,
                                const std::vector<std::vector<std::vector<long>>>& digits) {
  const int E = K.e(), D = K.d();
  if (prec <= val) return K.zero(prec);
  Raw raw(E * D);
  for (int j = 0; j < E && j < int(digits.size()); ++j)
    for (int i = 0; i < D && i < int(digits[j].size()); ++i) {
      mpz_class x = 0;
      for (size_t t = digits[j][i].size(); t-- > 0;) x = x * K.p() + digits[j][i][t];
      raw[j * D + i] = x;
    }
  return K.make(val, std::move(raw), prec - val);
}

namespace {

std::string w_string(const std::vector<mpz_class>& w) {
  std::ostringstream os;
  int terms = 0;
  for (int i = int(w.size()) - 1; i >= 0; --i) {
    if (w[i] == 0) continue;
    if (terms++) os << "+";
    if (i == 0) os << w[i].get_str();
    else {
      if (w[i] != 1) os << w[i].get_str() << "*";
      os << "tau";
      if (i > 1) os << "^" << i;
    }
  }
  if (!terms) return "0";
  std::string s = os.str();
  return terms > 1 ? "(" + s + ")" : s;
}

std::string raw_string(const std::vector<std::vector<mpz_class>>& w) {
  std::ostringstream os;
  int terms = 0;
  for (int j = int(w.size()) - 1; j >= 0; --j) {
    bool nz = std::any_of(w[j].begin(), w[j].end(), [](const mpz_class& x) { return x != 0; });
    if (!nz) continue;
    if (terms++) os << " + ";
    std::string c = w_string(w[j]);
    if (j == 0) os << c;
    else {
      if (c != "1") os << c << "*";
      os << "pi";
      if (j > 1) os << "^" << j;
    }
  }
  if (!terms) os << "0";
  return os.str();
}

}  // namespace

std::string Padic::to_string(int prec) const {
  if (prec < 0 || prec > prec_) prec = prec_;
  std::ostringstream os;
  if (is_zero() || val_ >= prec) {
    os << "O(pi^" << prec << ")";
    return os.str();
  }
  if (val_ >= 0) {
    os << raw_string(absolute_coeffs(prec));
  } else {
    Padic u = unit_part().with_precision(prec - val_);
    os << "pi^" << val_ << "*(" << raw_string(u.absolute_coeffs()) << ")";
  }
  os << " + O(pi^" << prec << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// context upgrades

Padic ContextUpgrade::operator()(const Padic& a) const {
  const FieldContext& T = *target;
  const FieldContext& S = *a.context();
  int prec = a.precision() * pi_scale;
  if (a.is_zero()) return T.zero(prec);
  Padic u = a.unit_part();
  auto w = u.absolute_coeffs();
  Padic acc = T.zero();
  Padic tp = tau_image ? *tau_image : T.tau();
  for (int j = 0; j < S.e(); ++j) {
    Padic c = T.zero();
    Padic pw = T.one();
    for (int i = 0; i < S.d(); ++i) {
      if (w[j][i] != 0) c += T.from_int(w[j][i]) * pw;
      pw *= tp;
    }
    acc += c.shift(j * pi_scale);
  }
  return acc.shift(a.valuation() * pi_scale).with_precision(prec);
}

ContextUpgrade ramified_quadratic(const FieldContext& K) {
  std::vector<WVec> eis(2 * K.e() + 1, WVec(K.d()));
  for (int j = 0; j <= K.e(); ++j) eis[2 * j] = K.eis_poly()[j];
  ContextUpgrade up;
  up.target = make_field(K.p(), K.unram_poly(), eis, 2 * K.precision());
  up.pi_scale = 2;
  up.description = "adjoined pi' with pi'^2 = pi (ramification index " + std::to_string(2 * K.e()) + ")";
  return up;
}

ContextUpgrade unramified_quadratic(const FieldContext& K) {
  int d2 = 2 * K.d();
  std::vector<long> ub = FiniteField::find_irreducible(K.p(), d2);
  std::vector<mpz_class> unram(ub.begin(), ub.end());
  int N = K.precision();
  // unramified helper field to locate tau
  ContextPtr U;
  {
    std::vector<WVec> eis{WVec(d2, 0), WVec(d2, 0)};
    eis[0][0] = -K.p();
    eis[1][0] = 1;
    U = make_field(K.p(), unram, eis, (N + K.e() - 1) / K.e() + 2);
  }
  PadicPoly f(U->zero());
  {
    std::vector<Padic> c;
    for (const auto& x : K.unram_poly()) c.push_back(U->from_int(x));
    f = PadicPoly(std::move(c), U->zero());
  }
  FqPoly fb = reduce_poly(f);
  auto rr = residue_roots(fb);
  if (rr.empty()) throw Error(ErrorKind::Internal, "field", "unramified polynomial has no root after doubling");
  Padic t = hensel_root(f, rr.front().first);
  // eis coefficients expressed in the new unramified basis
  std::vector<WVec> eis;
  for (const auto& w : K.eis_poly()) {
    Padic c = U->zero();
    Padic pw = U->one();
    for (const auto& x : w) {
      if (x != 0) c += U->from_int(x) * pw;
      pw *= t;
    }
    auto cw = c.absolute_coeffs();
    eis.push_back(cw[0]);
  }
  ContextUpgrade up;
  up.target = make_field(K.p(), unram, eis, N);
  auto tw = t.absolute_coeffs();
  up.tau_image = up.target->from_coeffs({tw[0]});
  up.pi_scale = 1;
  up.description = "doubled the unramified degree to " + std::to_string(d2);
  return up;
}

ContextUpgrade change_precision(const FieldContext& K, int N) {
  ContextUpgrade up;
  up.target = make_field(K.p(), K.unram_poly(), K.eis_poly(), N);
  up.pi_scale = 1;
  up.description = "precision cap " + std::to_string(N);
  return up;
}

}  // namespace quartred
