#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stemrank {

using Int = mpz_class;
using Rat = mpq_class;

// Bad user input: malformed specs, files, arguments.  CLI exit 2.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refused computation: order caps, conductor bounds, blow-up guards.  CLI exit 3.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant (non-integral average, failed cross-check, ...).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw InternalError("expected integer, got " + q.get_str());
  return q.get_num();
}

inline long to_long(const Int& z) {
  if (!z.fits_slong_p()) throw InternalError("integer does not fit in long: " + z.get_str());
  return z.get_si();
}

inline long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_long(a, b) * b;
}

// Stable content hash used for cache keys and table fingerprints.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace stemrank
