#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "stemrank/numeric.hpp"

namespace stemrank {

// Exact element of Q(zeta_n), stored as n rational coefficients over the
// power basis zeta^0..zeta^{n-1} and kept reduced modulo the n-th cyclotomic
// polynomial.  The reduced form is the canonical representative: equal values
// have identical coefficient lists for the same n.
class CycNum {
 public:
  CycNum() : n_(1), c_(1, Rat(0)) {}

  static CycNum from_rational(const Rat& q, int n = 1);
  static CycNum from_int(long v, int n = 1) { return from_rational(Rat(v), n); }
  // zeta_n^k
  static CycNum zeta(int n, long k = 1);

  int conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const;
  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // Ring automorphism zeta -> zeta^k, gcd(k, n) = 1.  galois(-1) is complex
  // conjugation.
  CycNum galois(long k) const;
  CycNum conj() const { return galois(-1); }
  CycNum inverse() const;

  bool is_zero() const;
  bool is_rational() const;
  bool is_real() const { return *this == conj(); }
  // The rational value if this element lies in Q, otherwise nullopt.
  std::optional<Rat> as_rational() const;

  // Embed into Q(zeta_m) for n | m (index dilation zeta_n = zeta_m^{m/n}).
  CycNum promoted(int m) const;

  // lcm of conductors, guarded by the conductor bound.
  static int common_conductor(int a, int b);

  // Deterministic total order: (conductor-promoted) lexicographic compare.
  int compare(const CycNum& o) const;

  // Numeric evaluation at zeta_n = exp(2*pi*i/n); cross-check use only.
  std::complex<double> to_complex() const;

  std::string str() const;

 private:
  CycNum(int n, std::vector<Rat> c) : n_(n), c_(std::move(c)) { reduce(); }

  void reduce();

  int n_;
  std::vector<Rat> c_;
};

// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<Int>& cyclotomic_polynomial(int n);

// Largest conductor the arithmetic will promote to before refusing.
inline constexpr int kMaxConductor = 1 << 16;

}  // namespace stemrank
