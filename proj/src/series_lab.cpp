#include "qpw/series_lab.hpp"

#include <ostream>

#include "qpw/errors.hpp"

namespace qpw {

SeriesBox::SeriesBox(StepSet steps, int kmax) : steps_(steps), kmax_(kmax) {
  if (kmax < 0) throw InvalidArgument("kmax must be non-negative");
  const std::size_t n = std::size_t(kmax) + 1;
  counts_.assign(n * n * n, Integer(0));
}

Integer SeriesBox::get(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i > kmax_ || j > kmax_ || k > kmax_) return 0;
  return at(i, j, k);
}

SeriesBox count_walks(StepSet s, int kmax) {
  SeriesBox box(s, kmax);
  box.at(0, 0, 0) = 1;
  const auto steps = s.steps();
  for (int k = 1; k <= kmax; ++k) {
    for (int j = 0; j <= k; ++j) {
      for (int i = 0; i <= k; ++i) {
        Integer& v = box.at(i, j, k);
        for (const Step& st : steps) {
          const int pi = i - st.i, pj = j - st.j;
          if (pi < 0 || pj < 0 || pi > k - 1 || pj > k - 1) continue;
          v += box.at(pi, pj, k - 1);
        }
      }
    }
  }
  return box;
}

bool verify_functional_equation(StepSet s, const SeriesBox& box, int deg) {
  if (deg + 2 > box.kmax()) {
    throw TruncationTooShallow("degree " + std::to_string(deg) + " needs kmax >= " + std::to_string(deg + 2) +
                               ", box has " + std::to_string(box.kmax()));
  }
  const Kernel ker = kernel_of(s);
  const auto steps = s.steps();
  for (int k = 0; k <= deg; ++k) {
    for (int b = 0; b + k <= deg; ++b) {
      for (int a = 0; a + b + k <= deg; ++a) {
        Integer lhs = -box.get(a - 1, b - 1, k);
        Integer rhs = 0;
        if (k >= 1) {
          for (const Step& st : steps) lhs += box.get(a - st.i - 1, b - st.j - 1, k - 1);
          for (const Step& st : steps) {
            if (st.j == -1 && b == 0) rhs += box.get(a - st.i - 1, 0, k - 1);
            if (st.i == -1 && a == 0) rhs += box.get(0, b - st.j - 1, k - 1);
          }
          if (a == 0 && b == 0) rhs -= ker.sw_indicator * box.get(0, 0, k - 1);
        }
        if (a == 1 && b == 1 && k == 0) rhs -= 1;
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

UniSeries specialize(const SeriesBox& box, const Rational& x0, const Rational& y0) {
  const int n = box.kmax();
  std::vector<Rational> xp(std::size_t(n) + 1, Rational(1)), yp(std::size_t(n) + 1, Rational(1));
  for (int e = 1; e <= n; ++e) {
    xp[std::size_t(e)] = xp[std::size_t(e - 1)] * x0;
    yp[std::size_t(e)] = yp[std::size_t(e - 1)] * y0;
  }
  UniSeries out;
  out.origin = "F(" + x0.get_str() + ", " + y0.get_str() + ", z), steps " + box.steps().to_string();
  for (int k = 0; k <= n; ++k) {
    Rational c = 0;
    for (int j = 0; j <= k; ++j) {
      for (int i = 0; i <= k; ++i) {
        const Integer& f = box.at(i, j, k);
        if (sgn(f) != 0) c += Rational(f) * xp[std::size_t(i)] * yp[std::size_t(j)];
      }
    }
    out.coefficients.push_back(c);
  }
  return out;
}

UniSeries excursion_series(StepSet s, int kmax) {
  if (kmax < 0) throw InvalidArgument("kmax must be non-negative");
  const auto steps = s.steps();
  const int n = kmax + 1;
  // a walk that ends at the origin at time kmax is within kmax - k of it at time k
  std::vector<Integer> cur(std::size_t(n) * std::size_t(n), Integer(0)), next = cur;
  auto idx = [n](int i, int j) { return std::size_t(j) * std::size_t(n) + std::size_t(i); };
  cur[idx(0, 0)] = 1;
  UniSeries out;
  out.origin = "F(0, 0, z), steps " + s.to_string();
  out.coefficients.push_back(Rational(1));
  for (int k = 1; k <= kmax; ++k) {
    const int reach = std::min(k, kmax - k), prev_reach = std::min(k - 1, kmax - k + 1);
    for (int j = 0; j <= reach; ++j) {
      for (int i = 0; i <= reach; ++i) {
        Integer& v = next[idx(i, j)];
        v = 0;
        for (const Step& st : steps) {
          const int pi = i - st.i, pj = j - st.j;
          if (pi < 0 || pj < 0 || pi > prev_reach || pj > prev_reach) continue;
          v += cur[idx(pi, pj)];
        }
      }
    }
    std::swap(cur, next);
    out.coefficients.push_back(Rational(cur[idx(0, 0)]));
  }
  return out;
}

void write_tsv(std::ostream& out, const SeriesBox& box) {
  out << "i\tj\tk\tcount\n";
  for (int k = 0; k <= box.kmax(); ++k) {
    for (int j = 0; j <= k; ++j) {
      for (int i = 0; i <= k; ++i) {
        const Integer& f = box.at(i, j, k);
        if (sgn(f) != 0) out << i << '\t' << j << '\t' << k << '\t' << f.get_str() << '\n';
      }
    }
  }
}

void write_series(std::ostream& out, const UniSeries& s) {
  for (const Rational& c : s.coefficients) out << c.get_str() << '\n';
}

}  // namespace qpw
