#ifndef CUBECOLOR_CORE_HPP
#define CUBECOLOR_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubecolor {

typedef std::vector<int> Vec;      // lattice point or axis-indexed ints
typedef std::int64_t coeff_t;      // chain/cochain coefficient

/* Error kinds, mapped to CLI exit codes by the front end. */

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_error : error {
  explicit dimension_error(const std::string& msg) : error(msg) {}
};

struct membership_error : error {
  explicit membership_error(const std::string& msg) : error(msg) {}
};

struct cocycle_error : error {
  explicit cocycle_error(const std::string& msg) : error(msg) {}
};

// An internal identity that must hold failed to hold; always a bug.
struct invariant_error : error {
  explicit invariant_error(const std::string& msg) : error(msg) {}
};

struct validation_error : error {
  explicit validation_error(const std::string& msg) : error(msg) {}
};

struct size_guard_error : error {
  explicit size_guard_error(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
  explicit parse_error(const std::string& msg) : error(msg) {}
};

/* Exact integer arithmetic: overflow is a hard error, never wraparound. */

inline coeff_t checked_add(coeff_t a, coeff_t b) {
  coeff_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in chain arithmetic");
  return r;
}

inline coeff_t checked_mul(coeff_t a, coeff_t b) {
  coeff_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in chain arithmetic");
  return r;
}

/// Problem size: the cube [0,n]^d with the color constraint parameter m.
struct GridSpec {
  int d = 1;  // dimension
  int n = 1;  // side length in unit cells
  int m = 0;  // a valid coloring puts at most m+1 colors on each (m+1)-face

  GridSpec() = default;
  GridSpec(int d_, int n_, int m_) : d(d_), n(n_), m(m_) { check(); }

  void check() const {
    if (d < 1) throw validation_error("grid dimension must be at least 1");
    if (n < 1) throw validation_error("grid side length must be at least 1");
    if (m < 0 || m > d - 1)
      throw validation_error("constraint parameter m must satisfy 0 <= m <= d-1");
  }

  std::int64_t vertex_count() const {
    std::int64_t c = 1;
    for (int i = 0; i < d; ++i) c = checked_mul(c, n + 1);
    return c;
  }

  // Vertex <-> linear index, first axis fastest.
  std::int64_t vertex_index(const Vec& v) const {
    std::int64_t idx = 0, stride = 1;
    for (int i = 0; i < d; ++i) {
      idx += stride * v[i];
      stride *= (n + 1);
    }
    return idx;
  }

  Vec vertex_at(std::int64_t idx) const {
    Vec v(d);
    for (int i = 0; i < d; ++i) {
      v[i] = static_cast<int>(idx % (n + 1));
      idx /= (n + 1);
    }
    return v;
  }

  bool operator==(const GridSpec& o) const { return d == o.d && n == o.n && m == o.m; }
};

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace cubecolor

#endif
