#include "seqlab/seq.hpp"

#include <cmath>
#include <string>

namespace seqlab {

namespace {

void require_finite(const Seq& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j])) {
      throw Error(Errc::NonFiniteCoordinate, "coordinate " + std::to_string(j) + " is not finite");
    }
  }
}

// Scaled p-norm of coords[from..), robust against overflow/underflow.
double partial_lp(std::span<const double> c, double p) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : c) s += std::fabs(v);
    return s;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double v : c) {
      double r = v / m;
      s += r * r;
    }
    return m * std::sqrt(s);
  }
  for (double v : c) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double partial_sup(std::span<const double> c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::fabs(v));
  return m;
}

void require_prefix(std::size_t n, std::size_t truncation) {
  if (n < 1 || n > truncation) {
    throw Error(Errc::IndexOutOfRange, "tail index " + std::to_string(n) + " outside [1, " +
                                           std::to_string(truncation) + "]");
  }
}

// Norm of (u, v) with disjoint supports from |u| = a and |v| <= b.
double combine(double a, double b, const AmbientSpace& space) {
  if (space.is_sup()) return std::max(a, b);
  if (b == 0.0) return a;
  if (space.p() == 1.0) return a + b;
  const double m = std::max(a, b);
  const double p = space.p();
  return m * std::pow(std::pow(a / m, p) + std::pow(b / m, p), 1.0 / p);
}

}  // namespace

double norm(const Seq& x, const AmbientSpace& space) {
  require_finite(x);
  if (space.is_sup()) return partial_sup(x.coords());
  return partial_lp(x.coords(), space.p());
}

Rational norm(const ExactSeq& x, const AmbientSpace& space) {
  if (space.is_sup()) return sup_norm(x);
  if (space.p() == 1.0) return l1_norm(x);
  throw Error(Errc::PreconditionViolated,
              "exact norm is only available for l1 and sup norms; compare p-th powers instead");
}

Rational norm_pow(const ExactSeq& x, const AmbientSpace& space) {
  if (!space.integer_p()) {
    throw Error(Errc::PreconditionViolated, "norm_pow needs an Lp space with integer p");
  }
  auto p = static_cast<unsigned long>(space.p());
  Rational total(0);
  for (const auto& c : x.coords()) {
    Rational a = abs(c);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), p);
    mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), p);
    total += Rational(num, den);
  }
  total.canonicalize();
  return total;
}

double tail_norm(const Seq& x, std::size_t n, const AmbientSpace& space) {
  require_prefix(n, x.size());
  require_finite(x);
  auto tail = x.coords().subspan(n);
  const double a = space.is_sup() ? partial_sup(tail) : partial_lp(tail, space.p());
  return combine(a, x.tail_bound(), space);
}

double norm_with_tail(const Seq& x, const AmbientSpace& space) {
  return combine(norm(x, space), x.tail_bound(), space);
}

Rational tail_norm(const ExactSeq& x, std::size_t n, const AmbientSpace& space) {
  require_prefix(n, x.size());
  ExactSeq tail(std::vector<Rational>(x.coords().begin() + static_cast<std::ptrdiff_t>(n),
                                      x.coords().end()));
  if (space.is_sup()) {
    Rational a = sup_norm(tail);
    return a > x.tail_bound() ? a : x.tail_bound();
  }
  if (space.p() == 1.0) return l1_norm(tail) + x.tail_bound();
  throw Error(Errc::PreconditionViolated, "exact tail_norm is only available for l1 and sup norms");
}

Seq to_float(const ExactSeq& x) {
  std::vector<double> c(x.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = x[j].get_d();
  // get_d truncates; a bound must not shrink.
  double tb = x.tail_bound().get_d();
  if (Rational(tb) < x.tail_bound()) tb = std::nextafter(tb, HUGE_VAL);
  return Seq(std::move(c), tb);
}

ExactSeq to_exact(const Seq& x) {
  std::vector<Rational> c(x.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = rational_from_double(x[j]);
  return ExactSeq(std::move(c), rational_from_double(x.tail_bound()));
}

}  // namespace seqlab
