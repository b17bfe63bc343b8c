#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace p2pg {

struct NotAUnit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SourcesDoNotSpan : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Residues are kept reduced in [0, m) everywhere.
int64_t mod_reduce(int64_t x, int64_t m);
int64_t gcd64(int64_t a, int64_t b);
int64_t pow_mod(int64_t base, int64_t exp, int64_t m);
bool is_prime(int64_t n);

/// Inverse of x modulo m. Throws NotAUnit when gcd(x, m) != 1.
int64_t unit_inverse(int64_t x, int64_t m);

/// Smallest lambda in [0, p) with lambda^2 = 5 (mod p), if any.
/// Requires p an odd prime other than 5; absence is a valid result.
std::optional<int64_t> sqrt_of_five(int64_t p);

/// Smallest unit of multiplicative order exactly r modulo m, if any.
std::optional<int64_t> element_of_order(int64_t r, int64_t m);

/// Multiplicative order of a unit x modulo m.
int64_t multiplicative_order(int64_t x, int64_t m);

/// Direct product of cyclic groups Z_{m_1} x ... x Z_{m_k}.
struct AbelianSpec {
  std::vector<int64_t> moduli;  // each >= 2

  explicit AbelianSpec(std::vector<int64_t> m);
  size_t rank() const { return moduli.size(); }
  int64_t order() const;
  bool operator==(const AbelianSpec& o) const { return moduli == o.moduli; }
};

/// Element of an AbelianSpec group, componentwise reduced.
struct AbVector {
  std::shared_ptr<const AbelianSpec> spec;
  std::vector<int64_t> comps;

  AbVector() = default;
  AbVector(std::shared_ptr<const AbelianSpec> s, std::vector<int64_t> c);

  AbVector operator+(const AbVector& o) const;
  AbVector operator-(const AbVector& o) const;
  AbVector operator-() const;
  AbVector scaled(int64_t k) const;
  bool is_zero() const;
  bool operator==(const AbVector& o) const { return comps == o.comps; }
  bool operator<(const AbVector& o) const { return comps < o.comps; }

  /// Mixed-radix value with the first component most significant.
  int64_t radix_value() const;
};

using FpVec = std::vector<int64_t>;  // vector over Z_p, reduced entries

/// Dense n x n matrix over the prime field Z_p, row major.
struct FpMatrix {
  int64_t p = 0;
  int n = 0;
  std::vector<int64_t> a;

  FpMatrix() = default;
  FpMatrix(int64_t p_, int n_);
  static FpMatrix identity(int64_t p, int n);

  int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  int64_t at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  FpVec apply(const FpVec& v) const;       // column-vector convention
  FpMatrix mul(const FpMatrix& o) const;
  int64_t det() const;
  std::optional<FpMatrix> inverse() const;
  bool operator==(const FpMatrix& o) const {
    return p == o.p && n == o.n && a == o.a;
  }
};

/// Invertible M over Z_p with M * source_i = target_i for all i, when one
/// exists. Returns nullopt if the induced map breaks a linear dependency or
/// comes out singular. Throws SourcesDoNotSpan when rank(sources) < n.
std::optional<FpMatrix> solve_extension(int64_t p,
                                        const std::vector<FpVec>& sources,
                                        const std::vector<FpVec>& targets);

}  // namespace p2pg
