#include <algorithm>
#include <functional>

#include "modp.hpp"
#include "qpw/errors.hpp"
#include "qpw/series_lab.hpp"

namespace qpw {

namespace {

using modp::Field;
using modp::u64;

// Primes below 2^62 in decreasing order, found by Miller-Rabin.
u64 nth_prime(std::size_t n) {
  static std::vector<u64> primes;
  while (primes.size() <= n) {
    u64 c = primes.empty() ? (u64(1) << 62) - 1 : primes.back() - 2;
    mpz_class z;
    while (true) {
      mpz_set_ui(z.get_mpz_t(), 0);
      mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &c);
      if (mpz_probab_prime_p(z.get_mpz_t(), 30) != 0) break;
      c -= 2;
    }
    primes.push_back(c);
  }
  return primes[n];
}

Integer to_integer(u64 v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &v);
  return z;
}

// Rational number with numerator and denominator below sqrt(m / 2) congruent
// to a modulo m, if one exists.
std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (abs(t1) > bound || t1 == 0) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  if (gcd(Integer(q.get_den()), m) != 1) return std::nullopt;
  return q;
}

// Row-reduced echelon form modulo p; returns the pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<u64>>& A, std::size_t cols, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < A.size(); ++c) {
    std::size_t sel = row;
    while (sel < A.size() && A[sel][c] == 0) ++sel;
    if (sel == A.size()) continue;
    std::swap(A[row], A[sel]);
    const u64 inv = f.inv(A[row][c]);
    for (auto& v : A[row]) v = f.mul(v, inv);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][c] == 0) continue;
      const u64 factor = A[r][c];
      for (std::size_t k = c; k < cols; ++k) A[r][k] = f.sub(A[r][k], f.mul(factor, A[row][k]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Kernel vector of an integer matrix with the first free column set to 1 and
// the other free columns set to 0, computed by CRT over word-size primes and
// checked by `accept` after each stable rational reconstruction. The rows are
// produced per prime by `build`.
using Builder = std::function<std::vector<std::vector<u64>>(const Field&)>;
using Acceptor = std::function<bool(const std::vector<Integer>&)>;

std::optional<std::vector<Integer>> modular_kernel_vector(std::size_t cols, const Builder& build,
                                                          const Acceptor& accept) {
  constexpr std::size_t kMaxPrimes = 400;
  std::vector<std::size_t> best_pivots;
  bool have = false;
  std::vector<Integer> residues(cols);
  Integer modulus = 1;
  std::optional<std::vector<Rational>> previous;
  for (std::size_t pi = 0; pi < kMaxPrimes; ++pi) {
    const Field f{nth_prime(pi)};
    auto A = build(f);
    const auto pivots = rref(A, cols, f);
    if (pivots.size() == cols) return std::nullopt;  // trivial kernel modulo p, hence over Q
    // higher rank, or equal rank with earlier pivots, marks the lucky primes
    if (have && (pivots.size() < best_pivots.size() ||
                 (pivots.size() == best_pivots.size() && pivots > best_pivots))) {
      continue;
    }
    if (!have || pivots != best_pivots) {
      best_pivots = pivots;
      have = true;
      modulus = 1;
      std::fill(residues.begin(), residues.end(), Integer(0));
      previous.reset();
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<u64> v(cols, 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(A[r][free_col]);
    // CRT step: x = residue + modulus * ((v - residue) / modulus mod p)
    const Integer P = to_integer(f.p);
    const u64 minv = f.inv(modp::reduce(modulus, f.p));
    for (std::size_t c = 0; c < cols; ++c) {
      const u64 d = f.mul(f.sub(v[c], modp::reduce(residues[c], f.p)), minv);
      residues[c] += modulus * to_integer(d);
    }
    modulus *= P;
    std::vector<Rational> rec;
    rec.reserve(cols);
    bool ok = true;
    for (std::size_t c = 0; c < cols && ok; ++c) {
      auto q = rational_reconstruction(residues[c], modulus);
      if (!q) ok = false;
      else rec.push_back(*q);
    }
    if (!ok) continue;
    if (previous && *previous == rec) {
      Integer lcm = 1;
      for (const auto& q : rec) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
      std::vector<Integer> out;
      Integer g = 0;
      for (const auto& q : rec) {
        out.push_back(q.get_num() * (lcm / q.get_den()));
        g = gcd(g, out.back());
      }
      if (g > 1) {
        for (auto& c : out) c /= g;
      }
      // a stable reconstruction that fails exact validation is a spurious kernel
      if (accept(out)) return out;
      return std::nullopt;
    }
    previous = std::move(rec);
  }
  return std::nullopt;
}

u64 reduce_rational(const Rational& q, const Field& f) {
  const u64 d = modp::reduce(q.get_den(), f.p);
  if (d == 0) throw InvalidArgument("series coefficient denominator vanishes modulo a working prime");
  return f.mul(modp::reduce(q.get_num(), f.p), f.inv(d));
}

int held_back(int available) { return available / 5; }

// Powers s^0 .. s^t truncated to n terms.
template <class T, class Mul, class Add>
std::vector<std::vector<T>> series_powers(const std::vector<T>& s, int t, std::size_t n, const T& one, const T& zero,
                                          Mul mul, Add add) {
  std::vector<std::vector<T>> out;
  std::vector<T> cur(n, zero);
  cur[0] = one;
  out.push_back(cur);
  for (int e = 1; e <= t; ++e) {
    std::vector<T> next(n, zero);
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] == zero) continue;
      for (std::size_t j = 0; i + j < n; ++j) next[i + j] = add(next[i + j], mul(cur[i], s[j]));
    }
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

std::string poly_term(const Integer& c, const std::string& body, bool first) {
  std::string out;
  const bool neg = sgn(c) < 0;
  const Integer a = abs(c);
  if (first) out += neg ? "-" : "";
  else out += neg ? " - " : " + ";
  if (body.empty()) return out + a.get_str();
  if (a != 1) out += a.get_str() + "*";
  return out + body;
}

std::string power(const std::string& v, int e) {
  if (e == 0) return "";
  return e == 1 ? v : v + "^" + std::to_string(e);
}

std::string join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace

std::optional<AlgebraicRelation> guess_algebraic(const UniSeries& s, int deg_t, int deg_z, int guard) {
  if (deg_t < 1 || deg_z < 0) throw InvalidArgument("need deg_t >= 1 and deg_z >= 0");
  const int unknowns = (deg_t + 1) * (deg_z + 1);
  const int available = int(s.coefficients.size());
  if (available < unknowns + guard) {
    throw InsufficientTerms("algebraic guess with bounds (" + std::to_string(deg_t) + ", " + std::to_string(deg_z) +
                            ") needs " + std::to_string(unknowns + guard) + " terms, have " +
                            std::to_string(available));
  }
  const int solved = available - held_back(available);
  const std::size_t cols = std::size_t(unknowns);
  auto col = [deg_z](int t, int e) { return std::size_t(t * (deg_z + 1) + e); };

  AlgebraicRelation rel;
  rel.deg_t = deg_t;
  rel.deg_z = deg_z;
  rel.terms_solved = solved;
  rel.terms_validated = available;

  Builder build = [&](const Field& f) {
    std::vector<u64> sp;
    for (int m = 0; m < solved; ++m) sp.push_back(reduce_rational(s.coefficients[std::size_t(m)], f));
    const auto pw = series_powers<u64>(
        sp, deg_t, std::size_t(solved), 1, 0, [&](u64 a, u64 b) { return f.mul(a, b); },
        [&](u64 a, u64 b) { return f.add(a, b); });
    std::vector<std::vector<u64>> A(std::size_t(solved), std::vector<u64>(cols, 0));
    for (int m = 0; m < solved; ++m) {
      for (int t = 0; t <= deg_t; ++t) {
        for (int e = 0; e <= deg_z && e <= m; ++e) A[std::size_t(m)][col(t, e)] = pw[std::size_t(t)][std::size_t(m - e)];
      }
    }
    return A;
  };
  Acceptor accept = [&](const std::vector<Integer>& v) {
    rel.coeffs.assign(std::size_t(deg_t) + 1, std::vector<Integer>(std::size_t(deg_z) + 1));
    for (int t = 0; t <= deg_t; ++t) {
      for (int e = 0; e <= deg_z; ++e) rel.coeffs[std::size_t(t)][std::size_t(e)] = v[col(t, e)];
    }
    return annihilates(rel, s);
  };
  if (!modular_kernel_vector(cols, build, accept)) return std::nullopt;
  return rel;
}

std::optional<Recurrence> guess_recurrence(const UniSeries& s, int order, int degree, int guard) {
  if (order < 1 || degree < 0) throw InvalidArgument("need order >= 1 and degree >= 0");
  const int unknowns = (order + 1) * (degree + 1);
  const int available = int(s.coefficients.size());
  if (available < unknowns + guard) {
    throw InsufficientTerms("recurrence guess with bounds (" + std::to_string(order) + ", " + std::to_string(degree) +
                            ") needs " + std::to_string(unknowns + guard) + " terms, have " +
                            std::to_string(available));
  }
  const int solved = available - held_back(available);
  const std::size_t cols = std::size_t(unknowns);
  auto col = [degree](int r, int d) { return std::size_t(r * (degree + 1) + d); };

  Recurrence rec;
  rec.order = order;
  rec.degree = degree;
  rec.terms_solved = solved;
  rec.terms_validated = available;

  Builder build = [&](const Field& f) {
    std::vector<std::vector<u64>> A;
    for (int k = 0; k + order < solved; ++k) {
      std::vector<u64> row(cols, 0);
      for (int r = 0; r <= order; ++r) {
        const u64 sv = reduce_rational(s.coefficients[std::size_t(k + r)], f);
        u64 kp = 1;
        for (int d = 0; d <= degree; ++d) {
          row[col(r, d)] = f.mul(kp, sv);
          kp = f.mul(kp, u64(k) % f.p);
        }
      }
      A.push_back(std::move(row));
    }
    return A;
  };
  Acceptor accept = [&](const std::vector<Integer>& v) {
    rec.coeffs.assign(std::size_t(order) + 1, std::vector<Integer>(std::size_t(degree) + 1));
    for (int r = 0; r <= order; ++r) {
      for (int d = 0; d <= degree; ++d) rec.coeffs[std::size_t(r)][std::size_t(d)] = v[col(r, d)];
    }
    return annihilates(rec, s);
  };
  if (!modular_kernel_vector(cols, build, accept)) return std::nullopt;
  return rec;
}

bool annihilates(const AlgebraicRelation& rel, const UniSeries& s) {
  const std::size_t n = s.coefficients.size();
  bool nonzero = false;
  for (const auto& row : rel.coeffs) {
    for (const auto& c : row) nonzero = nonzero || sgn(c) != 0;
  }
  if (!nonzero) return false;
  const auto pw = series_powers<Rational>(
      s.coefficients, rel.deg_t, n, Rational(1), Rational(0), [](const Rational& a, const Rational& b) { return Rational(a * b); },
      [](const Rational& a, const Rational& b) { return Rational(a + b); });
  for (std::size_t m = 0; m < n; ++m) {
    Rational acc = 0;
    for (int t = 0; t <= rel.deg_t; ++t) {
      for (int e = 0; e <= rel.deg_z && std::size_t(e) <= m; ++e) {
        const Integer& c = rel.coeffs[std::size_t(t)][std::size_t(e)];
        if (sgn(c) != 0) acc += c * pw[std::size_t(t)][m - std::size_t(e)];
      }
    }
    if (acc != 0) return false;
  }
  return true;
}

bool annihilates(const Recurrence& rec, const UniSeries& s) {
  bool nonzero = false;
  for (const auto& row : rec.coeffs) {
    for (const auto& c : row) nonzero = nonzero || sgn(c) != 0;
  }
  if (!nonzero) return false;
  const int n = int(s.coefficients.size());
  for (int k = 0; k + rec.order < n; ++k) {
    Rational acc = 0;
    for (int r = 0; r <= rec.order; ++r) {
      Integer p = 0, kp = 1;
      for (int d = 0; d <= rec.degree; ++d) {
        p += rec.coeffs[std::size_t(r)][std::size_t(d)] * kp;
        kp *= k;
      }
      acc += p * s.coefficients[std::size_t(k + r)];
    }
    if (acc != 0) return false;
  }
  return true;
}

std::string AlgebraicRelation::to_string() const {
  std::string out;
  for (int t = deg_t; t >= 0; --t) {
    for (int e = deg_z; e >= 0; --e) {
      const Integer& c = coeffs[std::size_t(t)][std::size_t(e)];
      if (sgn(c) == 0) continue;
      out += poly_term(c, join(power("T", t), power("z", e)), out.empty());
    }
  }
  return out.empty() ? "0" : out;
}

std::string Recurrence::to_string() const {
  std::string out;
  for (int r = order; r >= 0; --r) {
    std::string p;
    for (int d = degree; d >= 0; --d) {
      const Integer& c = coeffs[std::size_t(r)][std::size_t(d)];
      if (sgn(c) == 0) continue;
      p += poly_term(c, power("k", d), p.empty());
    }
    if (p.empty()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + p + ")*s(k" + (r ? "+" + std::to_string(r) : std::string()) + ")";
  }
  return (out.empty() ? "0" : out) + " = 0";
}

}  // namespace qpw
