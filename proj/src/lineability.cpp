#include "seqlab/lineability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seqlab/errors.hpp"
#include "seqlab/linalg.hpp"

namespace seqlab {

namespace {

void require_ratio(const Rational& p) {
  if (sgn(p) <= 0 || p >= 1) {
    throw Error(Errc::RatioOutOfRange, "ratio " + rational_to_string(p) + " is not in (0,1)");
  }
}

Rational power(const Rational& q, std::size_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
  return Rational(num, den);
}

// Does |sum_{i<N} l_i p_i^j| < |l_N| p_N^j hold, given the powers p_i^j?
bool dominates(const GeometricCombination& c, const std::vector<Rational>& powers) {
  const std::size_t last = c.ratios.size() - 1;
  Rational head(0);
  for (std::size_t i = 0; i < last; ++i) head += c.coeffs[i] * powers[i];
  return abs(head) < abs(c.coeffs[last]) * powers[last];
}

}  // namespace

ExactSeq geometric_generator(const Rational& p, std::size_t truncation, SpaceKind tail_mode) {
  require_ratio(p);
  Rational q(p);
  q.canonicalize();
  // Powers of coprime numerator and denominator stay coprime, so no gcd is needed.
  std::vector<Rational> coords(truncation);
  mpz_class num = q.get_num(), den = q.get_den();
  for (std::size_t j = 0; j < truncation; ++j) {
    coords[j] = Rational(num, den);
    num *= q.get_num();
    den *= q.get_den();
  }
  // num/den = p^(T+1) now.
  Rational pw(num, den);
  Rational tail = tail_mode == SpaceKind::Lp ? Rational(pw / (1 - q)) : pw;
  return ExactSeq(std::move(coords), tail);
}

void GeometricCombination::validate() const {
  if (ratios.empty()) throw Error(Errc::PreconditionViolated, "combination needs at least one term");
  if (ratios.size() != coeffs.size()) {
    throw Error(Errc::LengthMismatch, "ratios and coeffs differ in length");
  }
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    require_ratio(ratios[i]);
    if (sgn(coeffs[i]) == 0) throw Error(Errc::PreconditionViolated, "coefficients must be nonzero");
    if (i > 0 && ratios[i] == ratios[i - 1]) {
      throw Error(Errc::DuplicateRatio, "ratio " + rational_to_string(ratios[i]) + " repeated");
    }
    if (i > 0 && ratios[i] < ratios[i - 1]) {
      throw Error(Errc::PreconditionViolated, "ratios must be sorted increasingly");
    }
  }
}

Rational GeometricCombination::coordinate(std::size_t exponent) const {
  Rational x(0);
  for (std::size_t i = 0; i < ratios.size(); ++i) x += coeffs[i] * power(ratios[i], exponent);
  return x;
}

GeometricCombination GeometricCombination::make(std::vector<Rational> ratios,
                                                std::vector<Rational> coeffs) {
  if (ratios.size() != coeffs.size()) {
    throw Error(Errc::LengthMismatch, "ratios and coeffs differ in length");
  }
  std::vector<std::size_t> order(ratios.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratios[a] < ratios[b]; });
  GeometricCombination c;
  for (auto i : order) {
    if (!c.ratios.empty() && c.ratios.back() == ratios[i]) {
      throw Error(Errc::DuplicateRatio, "ratio " + rational_to_string(ratios[i]) + " repeated");
    }
    require_ratio(ratios[i]);
    if (sgn(coeffs[i]) == 0) continue;
    c.ratios.push_back(ratios[i]);
    c.coeffs.push_back(coeffs[i]);
  }
  c.validate();
  return c;
}

std::size_t certified_zero_bound(const GeometricCombination& c) {
  c.validate();
  const std::size_t n = c.ratios.size();
  if (n == 1) return 0;

  Rational a(0);
  for (std::size_t i = 0; i + 1 < n; ++i) a += abs(c.coeffs[i]);
  const Rational b = abs(c.coeffs[n - 1]);
  const Rational r = c.ratios[n - 2] / c.ratios[n - 1];

  // Least j >= 1 with a r^j < b; the envelope decreases in j.
  auto envelope_ok = [&](std::size_t j) { return a * power(r, j) < b; };
  double guess = std::log(a.get_d() / b.get_d()) / std::log(1.0 / r.get_d());
  std::size_t j0 = guess < 1.0 ? 1 : static_cast<std::size_t>(std::ceil(guess));
  while (j0 > 1 && envelope_ok(j0 - 1)) --j0;
  while (!envelope_ok(j0)) ++j0;

  // Every j >= j0 is certified; scan the rest exactly.
  std::size_t m = 0;
  std::vector<Rational> powers(c.ratios);
  for (std::size_t j = 1; j < j0; ++j) {
    if (!dominates(c, powers)) m = j;
    for (std::size_t i = 0; i < n; ++i) powers[i] *= c.ratios[i];
  }
  return m;
}

std::vector<std::size_t> zero_exponents(const GeometricCombination& c, std::size_t max_exponent) {
  c.validate();
  std::vector<std::size_t> zeros;
  std::vector<Rational> powers(c.ratios);
  for (std::size_t j = 1; j <= max_exponent; ++j) {
    Rational x(0);
    for (std::size_t i = 0; i < powers.size(); ++i) x += c.coeffs[i] * powers[i];
    if (sgn(x) == 0) zeros.push_back(j);
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= c.ratios[i];
  }
  return zeros;
}

std::size_t independence_rank(std::span<const Rational> ratios, std::size_t truncation) {
  std::vector<Rational> sorted(ratios.begin(), ratios.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    require_ratio(sorted[i]);
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw Error(Errc::DuplicateRatio, "ratio " + rational_to_string(sorted[i]) + " repeated");
    }
  }
  if (truncation < ratios.size()) {
    throw Error(Errc::PreconditionViolated, "truncation must be at least the number of ratios");
  }
  Matrix<Rational> m;
  m.reserve(ratios.size());
  for (const auto& p : ratios) {
    auto x = geometric_generator(p, truncation);
    m.emplace_back(x.coords().begin(), x.coords().end());
  }
  return rank(std::move(m), 0.0);
}

LineabilityCert certify_lineability(const GeometricCombination& c, std::size_t scan_limit) {
  LineabilityCert cert;
  cert.combination = c;
  cert.scan_limit = scan_limit;
  cert.zero_set = zero_exponents(c, scan_limit);
  cert.certified_bound = certified_zero_bound(c);
  cert.rank = independence_rank(c.ratios, c.ratios.size());
  cert.pass = cert.rank == c.ratios.size() &&
              std::all_of(cert.zero_set.begin(), cert.zero_set.end(),
                          [&](std::size_t j) { return j <= cert.certified_bound; });
  return cert;
}

}  // namespace seqlab
