#include "p2pg/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace p2pg {

namespace {
constexpr int64_t kSearchLimit = 1000000;  // exhaustive-search bound, desk scale
}

int64_t mod_reduce(int64_t x, int64_t m) {
  int64_t r = x % m;
  return r < 0 ? r + m : r;
}

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
  base = mod_reduce(base, m);
  int64_t acc = 1 % m;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t unit_inverse(int64_t x, int64_t m) {
  x = mod_reduce(x, m);
  if (std::gcd(x, m) != 1)
    throw NotAUnit("unit_inverse: argument shares a factor with the modulus");
  // extended Euclid
  int64_t r0 = m, r1 = x, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    std::swap(r0 -= q * r1, r1);
    std::swap(s0 -= q * s1, s1);
  }
  return mod_reduce(s0, m);
}

std::optional<int64_t> sqrt_of_five(int64_t p) {
  if (p >= kSearchLimit)
    throw std::invalid_argument("sqrt_of_five: modulus beyond desk scale");
  int64_t five = mod_reduce(5, p);
  for (int64_t x = 0; x < p; ++x)
    if (x * x % p == five) return x;  // ascending scan returns the smaller root
  return std::nullopt;
}

int64_t multiplicative_order(int64_t x, int64_t m) {
  x = mod_reduce(x, m);
  if (std::gcd(x, m) != 1)
    throw NotAUnit("multiplicative_order: not a unit");
  int64_t acc = x % m, ord = 1;
  while (acc != 1 % m) {
    acc = acc * x % m;
    ++ord;
  }
  return ord;
}

std::optional<int64_t> element_of_order(int64_t r, int64_t m) {
  if (r < 1) throw std::invalid_argument("element_of_order: r must be >= 1");
  if (m >= kSearchLimit)
    throw std::invalid_argument("element_of_order: modulus beyond desk scale");
  if (m == 1) return std::nullopt;
  for (int64_t x = 1; x < m; ++x) {
    if (std::gcd(x, m) != 1) continue;
    if (pow_mod(x, r, m) != 1) continue;
    if (multiplicative_order(x, m) == r) return x;
  }
  return std::nullopt;
}

AbelianSpec::AbelianSpec(std::vector<int64_t> m) : moduli(std::move(m)) {
  if (moduli.empty())
    throw std::invalid_argument("AbelianSpec: needs at least one factor");
  for (int64_t mi : moduli)
    if (mi < 2) throw std::invalid_argument("AbelianSpec: every modulus must be >= 2");
}

int64_t AbelianSpec::order() const {
  int64_t o = 1;
  for (int64_t mi : moduli) o *= mi;
  return o;
}

AbVector::AbVector(std::shared_ptr<const AbelianSpec> s, std::vector<int64_t> c)
    : spec(std::move(s)), comps(std::move(c)) {
  if (!spec || comps.size() != spec->moduli.size())
    throw std::invalid_argument("AbVector: component count mismatch");
  for (size_t i = 0; i < comps.size(); ++i)
    comps[i] = mod_reduce(comps[i], spec->moduli[i]);
}

AbVector AbVector::operator+(const AbVector& o) const {
  std::vector<int64_t> c(comps.size());
  for (size_t i = 0; i < comps.size(); ++i)
    c[i] = mod_reduce(comps[i] + o.comps[i], spec->moduli[i]);
  return AbVector(spec, std::move(c));
}

AbVector AbVector::operator-(const AbVector& o) const {
  std::vector<int64_t> c(comps.size());
  for (size_t i = 0; i < comps.size(); ++i)
    c[i] = mod_reduce(comps[i] - o.comps[i], spec->moduli[i]);
  return AbVector(spec, std::move(c));
}

AbVector AbVector::operator-() const {
  std::vector<int64_t> c(comps.size());
  for (size_t i = 0; i < comps.size(); ++i)
    c[i] = mod_reduce(-comps[i], spec->moduli[i]);
  return AbVector(spec, std::move(c));
}

AbVector AbVector::scaled(int64_t k) const {
  std::vector<int64_t> c(comps.size());
  for (size_t i = 0; i < comps.size(); ++i)
    c[i] = mod_reduce(comps[i] * mod_reduce(k, spec->moduli[i]), spec->moduli[i]);
  return AbVector(spec, std::move(c));
}

bool AbVector::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](int64_t c) { return c == 0; });
}

int64_t AbVector::radix_value() const {
  int64_t v = 0;
  for (size_t i = 0; i < comps.size(); ++i) v = v * spec->moduli[i] + comps[i];
  return v;
}

FpMatrix::FpMatrix(int64_t p_, int n_)
    : p(p_), n(n_), a(static_cast<size_t>(n_) * n_, 0) {}

FpMatrix FpMatrix::identity(int64_t p, int n) {
  FpMatrix m(p, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpVec FpMatrix::apply(const FpVec& v) const {
  FpVec r(n, 0);
  for (int i = 0; i < n; ++i) {
    int64_t acc = 0;
    for (int j = 0; j < n; ++j) acc += at(i, j) * v[j] % p;
    r[i] = mod_reduce(acc, p);
  }
  return r;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  FpMatrix r(p, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int64_t aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        r.at(i, j) = mod_reduce(r.at(i, j) + aik * o.at(k, j), p);
    }
  return r;
}

int64_t FpMatrix::det() const {
  FpMatrix m = *this;
  int64_t d = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) { pivot = r; break; }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(c, j));
      d = mod_reduce(-d, p);
    }
    d = d * m.at(c, c) % p;
    int64_t inv = unit_inverse(m.at(c, c), p);
    for (int r = c + 1; r < n; ++r) {
      int64_t f = m.at(r, c) * inv % p;
      if (f == 0) continue;
      for (int j = c; j < n; ++j)
        m.at(r, j) = mod_reduce(m.at(r, j) - f * m.at(c, j), p);
    }
  }
  return mod_reduce(d, p);
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  FpMatrix m = *this;
  FpMatrix inv = identity(p, n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) { pivot = r; break; }
    if (pivot < 0) return std::nullopt;
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    int64_t f = unit_inverse(m.at(c, c), p);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) = m.at(c, j) * f % p;
      inv.at(c, j) = inv.at(c, j) * f % p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      int64_t g = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = mod_reduce(m.at(r, j) - g * m.at(c, j), p);
        inv.at(r, j) = mod_reduce(inv.at(r, j) - g * inv.at(c, j), p);
      }
    }
  }
  return inv;
}

std::optional<FpMatrix> solve_extension(int64_t p,
                                        const std::vector<FpVec>& sources,
                                        const std::vector<FpVec>& targets) {
  if (sources.empty() || sources.size() != targets.size())
    throw std::invalid_argument("solve_extension: source/target count mismatch");
  int n = static_cast<int>(sources[0].size());

  // Greedy echelon pass picks an independent source basis.
  std::vector<int> basis_idx;
  std::vector<FpVec> echelon;       // reduced rows
  std::vector<int> pivot_col;
  for (size_t i = 0; i < sources.size() && static_cast<int>(basis_idx.size()) < n; ++i) {
    FpVec v = sources[i];
    for (int64_t& c : v) c = mod_reduce(c, p);
    for (size_t r = 0; r < echelon.size(); ++r) {
      int64_t f = v[pivot_col[r]];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j)
        v[j] = mod_reduce(v[j] - f * echelon[r][j], p);
    }
    int pc = -1;
    for (int j = 0; j < n; ++j)
      if (v[j] != 0) { pc = j; break; }
    if (pc < 0) continue;
    int64_t inv = unit_inverse(v[pc], p);
    for (int j = 0; j < n; ++j) v[j] = v[j] * inv % p;
    echelon.push_back(std::move(v));
    pivot_col.push_back(pc);
    basis_idx.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(basis_idx.size()) < n)
    throw SourcesDoNotSpan("solve_extension: sources do not span the space");

  // M = T * B^{-1} on the chosen basis, columns = basis vectors.
  FpMatrix b(p, n), t(p, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      b.at(i, k) = mod_reduce(sources[basis_idx[k]][i], p);
      t.at(i, k) = mod_reduce(targets[basis_idx[k]][i], p);
    }
  auto binv = b.inverse();
  if (!binv) throw SourcesDoNotSpan("solve_extension: basis inversion failed");
  FpMatrix m = t.mul(*binv);

  if (m.det() == 0) return std::nullopt;
  for (size_t i = 0; i < sources.size(); ++i) {
    FpVec src = sources[i];
    for (int64_t& c : src) c = mod_reduce(c, p);
    FpVec got = m.apply(src);
    for (int j = 0; j < n; ++j)
      if (got[j] != mod_reduce(targets[i][j], p)) return std::nullopt;
  }
  return m;
}

}  // namespace p2pg
