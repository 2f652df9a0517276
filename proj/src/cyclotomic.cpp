#include "stemrank/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace stemrank {

namespace {

// Exact division of integer polynomials, used by the Phi_n recursion.
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
  std::vector<Int> rem = num;
  std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  const Int& lead = den.back();
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    Int q = rem[i] / lead;
    if (q * lead != rem[i]) throw InternalError("cyclotomic polynomial division not exact");
    quot[i - den.size() + 1] = q;
    for (size_t j = 0; j < den.size(); ++j) rem[i - den.size() + 1 + j] -= q * den[j];
  }
  for (const Int& c : rem)
    if (c != 0) throw InternalError("cyclotomic polynomial division left a remainder");
  while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
  return quot;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw SpecError("cyclotomic order must be positive");

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  std::vector<Int> result = num;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    // Recompute divisors from the cache; recursion depth is d(n).
    auto sub = cache.find(d);
    if (sub == cache.end()) {
      std::vector<Int> nd(d + 1, Int(0));
      nd[0] = -1;
      nd[d] = 1;
      std::vector<Int> r = nd;
      for (int e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        r = poly_div_exact(r, cache.at(e));
      }
      sub = cache.emplace(d, std::move(r)).first;
    }
    result = poly_div_exact(result, sub->second);
  }
  return cache.emplace(n, std::move(result)).first->second;
}

void CycNum::reduce() {
  if (n_ < 1) throw InternalError("CycNum with nonpositive conductor");
  if (static_cast<int>(c_.size()) != n_) c_.resize(n_, Rat(0));
  const std::vector<Int>& phi = cyclotomic_polynomial(n_);
  const int deg = static_cast<int>(phi.size()) - 1;
  // Phi_n is monic: subtract c * x^{i-deg} * Phi_n for each top coefficient.
  for (int i = n_ - 1; i >= deg; --i) {
    if (c_[i] == 0) continue;
    Rat c = c_[i];
    for (int j = 0; j <= deg; ++j) c_[i - deg + j] -= c * Rat(phi[j]);
  }
  for (auto& q : c_) q.canonicalize();
}

CycNum CycNum::from_rational(const Rat& q, int n) {
  std::vector<Rat> c(n, Rat(0));
  c[0] = q;
  return CycNum(n, std::move(c));
}

CycNum CycNum::zeta(int n, long k) {
  if (n < 1) throw SpecError("zeta order must be positive");
  long r = k % n;
  if (r < 0) r += n;
  std::vector<Rat> c(n, Rat(0));
  c[static_cast<size_t>(r)] = 1;
  return CycNum(n, std::move(c));
}

int CycNum::common_conductor(int a, int b) {
  long l = lcm_long(a, b);
  if (l > kMaxConductor)
    throw CapError("cyclotomic conductor " + std::to_string(l) + " exceeds bound " +
                   std::to_string(kMaxConductor));
  return static_cast<int>(l);
}

CycNum CycNum::promoted(int m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw InternalError("promotion target is not a multiple of conductor");
  int stride = m / n_;
  std::vector<Rat> c(m, Rat(0));
  for (int i = 0; i < n_; ++i) c[static_cast<size_t>(i) * stride] = c_[i];
  return CycNum(m, std::move(c));
}

CycNum CycNum::operator+(const CycNum& o) const {
  int m = common_conductor(n_, o.n_);
  CycNum a = promoted(m), b = o.promoted(m);
  for (int i = 0; i < m; ++i) a.c_[i] += b.c_[i];
  a.reduce();
  return a;
}

CycNum CycNum::operator-(const CycNum& o) const {
  int m = common_conductor(n_, o.n_);
  CycNum a = promoted(m), b = o.promoted(m);
  for (int i = 0; i < m; ++i) a.c_[i] -= b.c_[i];
  a.reduce();
  return a;
}

CycNum CycNum::operator-() const {
  CycNum a = *this;
  for (auto& q : a.c_) q = -q;
  return a;
}

CycNum CycNum::operator*(const CycNum& o) const {
  int m = common_conductor(n_, o.n_);
  CycNum a = promoted(m), b = o.promoted(m);
  std::vector<Rat> prod(2 * m, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < m; ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  // Fold exponents >= m with zeta^m = 1, then reduce mod Phi_m.
  std::vector<Rat> c(m, Rat(0));
  for (int i = 0; i < 2 * m; ++i) c[i % m] += prod[i];
  return CycNum(m, std::move(c));
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw SpecError("division by zero cyclotomic value");
  // Extended Euclid in Q[x] against Phi_n: u*a + v*Phi = 1, so a^{-1} = u(zeta).
  const std::vector<Int>& phiz = cyclotomic_polynomial(n_);
  std::vector<Rat> r0(phiz.begin(), phiz.end());
  std::vector<Rat> r1(c_.begin(), c_.end());
  while (r1.size() > 1 && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));  // coefficients of `a` in r0, r1

  auto trim = [](std::vector<Rat>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
  };
  while (!(r1.size() == 1 && r1[0] == 0)) {
    // (q, rem) = divmod(r0, r1)
    std::vector<Rat> rem = r0;
    std::vector<Rat> q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, Rat(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(r1.size()) - 1; --i) {
      if (rem[i] == 0) continue;
      Rat f = rem[i] / r1.back();
      q[i - r1.size() + 1] = f;
      for (size_t j = 0; j < r1.size(); ++j) rem[i - r1.size() + 1 + j] -= f * r1[j];
    }
    trim(rem);
    // s2 = s0 - q*s1
    std::vector<Rat> s2(std::max(s0.size(), q.size() + s1.size() - 1), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the gcd; it must be a nonzero constant since Phi_n is irreducible.
  if (r0.size() != 1 || r0[0] == 0)
    throw InternalError("cyclotomic inverse: gcd with Phi_n not constant");
  std::vector<Rat> u(n_, Rat(0));
  for (size_t i = 0; i < s0.size() && i < static_cast<size_t>(n_); ++i) u[i] = s0[i] / r0[0];
  if (s0.size() > static_cast<size_t>(n_)) throw InternalError("cyclotomic inverse overflow");
  return CycNum(n_, std::move(u));
}

CycNum CycNum::operator/(const CycNum& o) const {
  int m = common_conductor(n_, o.n_);
  return promoted(m) * o.promoted(m).inverse();
}

bool CycNum::operator==(const CycNum& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  int m = common_conductor(n_, o.n_);
  return promoted(m).c_ == o.promoted(m).c_;
}

CycNum CycNum::galois(long k) const {
  long r = k % n_;
  if (r < 0) r += n_;
  if (gcd_long(r == 0 ? n_ : r, n_) != 1)
    throw SpecError("galois exponent " + std::to_string(k) + " not coprime to " +
                    std::to_string(n_));
  std::vector<Rat> c(n_, Rat(0));
  for (int i = 0; i < n_; ++i) {
    if (c_[i] == 0) continue;
    c[static_cast<size_t>((static_cast<long>(i) * r) % n_)] += c_[i];
  }
  return CycNum(n_, std::move(c));
}

bool CycNum::is_zero() const {
  for (const Rat& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (int i = 1; i < n_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<Rat> CycNum::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

int CycNum::compare(const CycNum& o) const {
  int m = common_conductor(n_, o.n_);
  CycNum a = promoted(m), b = o.promoted(m);
  for (int i = 0; i < m; ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  const double tau = 6.283185307179586476925286766559;
  for (int i = 0; i < n_; ++i) {
    if (c_[i] == 0) continue;
    double ang = tau * i / n_;
    acc += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

std::string CycNum::str() const {
  if (is_rational()) return c_[0].get_str();
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += c_[i].get_str();
    if (i > 0) out += "*z" + std::to_string(n_) + "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace stemrank
