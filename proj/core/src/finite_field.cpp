#include "quartred/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace quartred {

namespace {

// reduce a coefficient vector of any length modulo the monic modulus
void reduce_poly(std::vector<long long>& a, const std::vector<long>& mod, long p) {
  int n = int(mod.size()) - 1;
  for (int k = int(a.size()) - 1; k >= n; --k) {
    long long c = a[k] % p;
    if (c == 0) continue;
    for (int i = 0; i < n; ++i) a[k - n + i] = (a[k - n + i] - c * mod[i]) % p;
    a[k] = 0;
  }
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> r;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      r.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) r.push_back(n);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

bool Fq::is_zero() const {
  for (long x : c_)
    if (x) return false;
  return true;
}

bool Fq::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

Fq Fq::operator+(const Fq& o) const {
  std::vector<long> r(c_.size());
  long p = F_->p_;
  for (size_t i = 0; i < r.size(); ++i) {
    long s = c_[i] + o.c_[i];
    r[i] = s >= p ? s - p : s;
  }
  return Fq(F_, std::move(r));
}

Fq Fq::operator-(const Fq& o) const {
  std::vector<long> r(c_.size());
  long p = F_->p_;
  for (size_t i = 0; i < r.size(); ++i) {
    long s = c_[i] - o.c_[i];
    r[i] = s < 0 ? s + p : s;
  }
  return Fq(F_, std::move(r));
}

Fq Fq::operator-() const {
  std::vector<long> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = c_[i] ? F_->p_ - c_[i] : 0;
  return Fq(F_, std::move(r));
}

Fq Fq::operator*(const Fq& o) const {
  int n = F_->n_;
  long p = F_->p_;
  if (n == 1) return Fq(F_, {long((long long)c_[0] * o.c_[0] % p)});
  std::vector<long long> t(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (!c_[i]) continue;
    for (int j = 0; j < n; ++j) t[i + j] = (t[i + j] + (long long)c_[i] * o.c_[j]) % p;
  }
  reduce_poly(t, F_->mod_, p);
  std::vector<long> r(n);
  for (int i = 0; i < n; ++i) r[i] = F_->reduce(t[i]);
  return Fq(F_, std::move(r));
}

Fq Fq::inverse() const {
  if (is_zero()) throw Error(ErrorKind::Degenerate, "finite-field", "inverse of zero");
  // extended Euclid in F_p[t] between c_ and the modulus
  long p = F_->p_;
  auto trimv = [](std::vector<long>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto inv_mod_p = [p](long a) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
      long q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return t < 0 ? t + p : t;
  };
  std::vector<long> r0 = F_->mod_, r1 = c_;
  trimv(r1);
  std::vector<long> s0{0}, s1{1};
  while (!(r1.size() == 1)) {
    // r0 = q r1 + rem
    std::vector<long> rem = r0, q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    long li = inv_mod_p(r1.back());
    while (rem.size() >= r1.size()) {
      size_t k = rem.size() - r1.size();
      long c = (long long)rem.back() * li % p;
      q[k] = c;
      for (size_t i = 0; i < r1.size(); ++i)
        rem[k + i] = F_->reduce(rem[k + i] - (long long)c * r1[i]);
      trimv(rem);
      if (rem.empty()) break;
    }
    // s2 = s0 - q s1
    std::vector<long> qs(q.size() + s1.size(), 0);
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j)
        qs[i + j] = F_->reduce(qs[i + j] + (long long)q[i] * s1[j]);
    std::vector<long> s2(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s2.size(); ++i)
      s2[i] = F_->reduce((i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0));
    trimv(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw Error(ErrorKind::Internal, "finite-field", "modulus not irreducible");
  }
  long li = inv_mod_p(r1[0]);
  std::vector<long long> out(std::max<size_t>(s1.size(), F_->n_), 0);
  for (size_t i = 0; i < s1.size(); ++i) out[i] = (long long)s1[i] * li % p;
  reduce_poly(out, F_->mod_, p);
  std::vector<long> res(F_->n_);
  for (int i = 0; i < F_->n_; ++i) res[i] = F_->reduce(out[i]);
  return Fq(F_, std::move(res));
}

Fq Fq::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  Fq r = F_->one(), b = *this;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * b;
  }
  return r;
}

std::string Fq::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = int(c_.size()) - 1; i >= 0; --i) {
    if (!c_[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) os << c_[i];
    else {
      if (c_[i] != 1) os << c_[i] << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

Fq zero_like(const Fq& a) { return a.field()->zero(); }
Fq one_like(const Fq& a) { return a.field()->one(); }
Fq from_int_like(const Fq& a, long n) { return a.field()->from_int(n); }

bool canonical_less(const Fq& a, const Fq& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

// ---------------------------------------------------------------------------

FiniteField::FiniteField(long p, std::vector<long> modulus) : p_(p) {
  if (p < 3) throw Error(ErrorKind::Input, "field", "p must be an odd prime");
  while (!modulus.empty() && ((modulus.back() % p) + p) % p == 0) modulus.pop_back();
  if (modulus.size() < 2) throw Error(ErrorKind::Input, "field", "modulus must have positive degree");
  n_ = int(modulus.size()) - 1;
  for (auto& c : modulus) c = ((c % p) + p) % p;
  // make monic
  long lc = modulus.back(), li = 1;
  for (long k = 1; k < p; ++k)
    if ((long long)lc * k % p == 1) { li = k; break; }
  for (auto& c : modulus) c = (long long)c * li % p;
  mod_ = std::move(modulus);
  mpz_ui_pow_ui(q_.get_mpz_t(), p, n_);
  if (n_ > 1 && !is_irreducible(p_, mod_))
    throw Error(ErrorKind::Input, "field", "polynomial is reducible modulo p");
}

std::shared_ptr<const FiniteField> FiniteField::prime(long p) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<FiniteField>(p, std::vector<long>{0, 1});
  return slot;
}

Fq FiniteField::one() const {
  std::vector<long> c(n_, 0);
  c[0] = 1;
  return Fq(this, std::move(c));
}

Fq FiniteField::from_int(long a) const {
  std::vector<long> c(n_, 0);
  c[0] = reduce(a);
  return Fq(this, std::move(c));
}

Fq FiniteField::from_coeffs(std::vector<long> c) const {
  std::vector<long long> t(c.begin(), c.end());
  if (int(t.size()) < n_) t.resize(n_, 0);
  reduce_poly(t, mod_, p_);
  std::vector<long> r(n_);
  for (int i = 0; i < n_; ++i) r[i] = reduce(t[i]);
  return Fq(this, std::move(r));
}

Fq FiniteField::gen() const { return from_coeffs({0, 1}); }

Fq FiniteField::element(std::uint64_t index) const {
  std::vector<long> c(n_);
  for (int i = 0; i < n_; ++i) {
    c[i] = long(index % std::uint64_t(p_));
    index /= std::uint64_t(p_);
  }
  return Fq(this, std::move(c));
}

std::uint64_t FiniteField::index_of(const Fq& a) const {
  std::uint64_t r = 0;
  for (int i = n_ - 1; i >= 0; --i) r = r * std::uint64_t(p_) + std::uint64_t(a.coeffs()[i]);
  return r;
}

int FiniteField::legendre(const Fq& a) const {
  if (a.is_zero()) return 0;
  return a.pow((q_ - 1) / 2).is_one() ? 1 : -1;
}

bool FiniteField::is_square(const Fq& a) const { return legendre(a) >= 0; }

Fq FiniteField::random(std::mt19937_64& rng) const {
  std::vector<long> c(n_);
  std::uniform_int_distribution<long> dist(0, p_ - 1);
  for (auto& x : c) x = dist(rng);
  return Fq(this, std::move(c));
}

std::optional<Fq> FiniteField::sqrt(const Fq& a) const {
  if (a.is_zero()) return a;
  if (legendre(a) != 1) return std::nullopt;
  // Tonelli-Shanks
  mpz_class t = q_ - 1;
  int s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t /= 2;
    ++s;
  }
  if (!nonresidue_) {
    for (std::uint64_t i = 2;; ++i) {
      Fq z = small() ? element(i) : from_coeffs({long(i % p_), long(i / p_ % p_), 1});
      if (legendre(z) == -1) {
        nonresidue_ = z;
        break;
      }
    }
  }
  Fq c = nonresidue_->pow(t);
  Fq x = a.pow((t + 1) / 2);
  Fq b = a.pow(t);
  int m = s;
  while (!b.is_one()) {
    int i = 0;
    Fq bb = b;
    while (!bb.is_one()) {
      bb = bb * bb;
      ++i;
    }
    Fq g = c;
    for (int k = 0; k < m - i - 1; ++k) g = g * g;
    x = x * g;
    c = g * g;
    b = b * c;
    m = i;
  }
  Fq y = -x;
  return canonical_less(y, x) ? y : x;
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (n_ > 1) os << "^" << n_;
  return os.str();
}

bool FiniteField::is_irreducible(long p, const std::vector<long>& f) {
  auto Fp = prime(p);
  FqPoly g = fq_poly(*Fp, f);
  int n = g.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  g = make_monic(g);
  FqPoly x = FqPoly({Fp->zero(), Fp->one()}, Fp->zero());
  // xp[k] = x^(p^k) mod g
  std::vector<FqPoly> xp{x};
  mpz_class pz(p);
  for (int k = 1; k <= n; ++k) xp.push_back(powmod(xp.back(), pz, g));
  if (!(xp[n] - x).is_zero()) return false;
  for (int r : prime_divisors(n)) {
    FqPoly h = poly_gcd(g, xp[n / r] - x);
    if (h.degree() > 0) return false;
  }
  return true;
}

std::vector<long> FiniteField::find_irreducible(long p, int n) {
  if (n == 1) return {0, 1};
  // enumerate x^n + lower terms with increasing index
  std::vector<long> c(n + 1, 0);
  c[n] = 1;
  for (std::uint64_t idx = 1;; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      c[i] = long(t % std::uint64_t(p));
      t /= std::uint64_t(p);
    }
    if (c[0] == 0) continue;
    if (is_irreducible(p, c)) return c;
  }
}

// ---------------------------------------------------------------------------

FqPoly fq_poly(const FiniteField& F, const std::vector<long>& coeffs) {
  std::vector<Fq> c;
  for (long a : coeffs) c.push_back(F.from_int(a));
  return FqPoly(std::move(c), F.zero());
}

namespace {

FqPoly x_poly(const FiniteField& F) { return FqPoly({F.zero(), F.one()}, F.zero()); }

void split_linear(const FqPoly& g, const FiniteField& F, std::mt19937_64& rng,
                  std::vector<Fq>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  mpz_class e = (F.order() - 1) / 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Fq a = F.random(rng);
    FqPoly base({a, F.one()}, F.zero());
    FqPoly h = powmod(base, e, g) - FqPoly::constant(F.one());
    FqPoly d = poly_gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, F, rng, out);
      split_linear(divrem(g, d).first, F, rng, out);
      return;
    }
  }
  throw Error(ErrorKind::Internal, "finite-field", "equal-degree splitting did not converge");
}

}  // namespace

std::vector<std::pair<Fq, int>> residue_roots(const FqPoly& f) {
  std::vector<std::pair<Fq, int>> out;
  if (f.degree() <= 0) return out;
  const FiniteField& F = *f.zero().field();
  std::vector<Fq> roots;
  if (F.small() && F.order() <= 4096) {
    std::uint64_t q = F.order().get_ui();
    for (std::uint64_t i = 0; i < q; ++i) {
      Fq a = F.element(i);
      if (f.eval(a).is_zero()) roots.push_back(a);
    }
  } else {
    FqPoly g = make_monic(f);
    FqPoly xq = powmod(x_poly(F), F.order(), g);
    FqPoly lin = poly_gcd(g, xq - x_poly(F));
    std::mt19937_64 rng(0x5eed);
    split_linear(lin, F, rng, roots);
  }
  for (const auto& r : roots) {
    int m = 0;
    FqPoly h = f;
    FqPoly lin = FqPoly::linear_root(r);
    while (true) {
      auto [q, rem] = divrem(h, lin);
      if (!rem.is_zero()) break;
      ++m;
      h = q;
    }
    out.emplace_back(r, m);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

bool is_squarefree(const FqPoly& f) {
  if (f.degree() <= 0) return true;
  FqPoly d = f.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(f, d).degree() == 0;
}

std::vector<int> factor_degrees(const FqPoly& f) {
  std::vector<int> out;
  if (f.degree() <= 0) return out;
  const FiniteField& F = *f.zero().field();
  FqPoly g = make_monic(f);
  FqPoly x = x_poly(F);
  FqPoly h = x;
  for (int k = 1; g.degree() > 0; ++k) {
    if (2 * k > g.degree()) {
      out.push_back(g.degree());
      break;
    }
    h = powmod(h, F.order(), g);
    FqPoly d = poly_gcd(g, h - x);
    if (d.degree() > 0) {
      for (int i = 0; i < d.degree() / k; ++i) out.push_back(k);
      g = divrem(g, d).first;
      h = divrem(h, g).second;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Fq FieldEmbedding::operator()(const Fq& a) const {
  if (a.field() != source) throw Error(ErrorKind::ContextMismatch, "finite-field", "embedding source mismatch");
  Fq r = target->zero(), pw = target->one();
  for (long c : a.coeffs()) {
    if (c) r = r + pw * target->from_int(c);
    pw = pw * gen_image;
  }
  return r;
}

FieldEmbedding find_embedding(const FiniteField& src, const FiniteField& dst) {
  if (src.p() != dst.p() || dst.degree() % src.degree() != 0)
    throw Error(ErrorKind::Input, "finite-field", "no embedding between these fields");
  FqPoly m(dst.zero());
  {
    std::vector<Fq> c;
    for (long a : src.modulus()) c.push_back(dst.from_int(a));
    m = FqPoly(std::move(c), dst.zero());
  }
  auto roots = residue_roots(m);
  if (roots.empty()) throw Error(ErrorKind::Internal, "finite-field", "modulus has no root in target");
  return FieldEmbedding{&src, &dst, roots.front().first};
}

FieldExtension extend_field(const FiniteField& F, int k) {
  auto big = std::make_shared<const FiniteField>(F.p(),
                                                 FiniteField::find_irreducible(F.p(), F.degree() * k));
  FieldExtension ext{big, find_embedding(F, *big)};
  return ext;
}

}  // namespace quartred
