#include "emso/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "emso/errors.hpp"
#include "emso/parallel.hpp"

namespace emso {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
}

// ln(1 - (1-p)^k) without cancellation; lq = ln(1-p), k > 0.
double ln_one_minus_qpow(double lq, double k) {
  double t = k * lq;  // ln (1-p)^k, negative
  if (t > -0.6931471805599453) return std::log(-std::expm1(t));
  return std::log1p(-std::exp(t));
}

// ln n!/(n-s)!. The lgamma difference cancels catastrophically when s << n,
// so sum the s logarithms directly whenever that is affordable.
double ln_falling_factorial(std::int64_t n, std::int64_t s) {
  if (s < 0 || s > n) throw std::invalid_argument("falling factorial: bad arguments");
  if (s <= 1'000'000) {
    double sum = 0, c = 0;
    for (std::int64_t j = 0; j < s; ++j) {
      double y = std::log(static_cast<double>(n - j)) - c;
      double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    return sum;
  }
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(n - s) + 1);
}

}  // namespace

bool in_domain(std::int64_t n, std::int64_t k, std::int64_t l, std::int64_t m) {
  return k >= 1 && l >= 1 && m >= 1 && k + l + m <= n;
}

LogReal expected_count(std::int64_t n, double p, std::int64_t k, std::int64_t l, std::int64_t m) {
  require_p(p);
  if (!in_domain(n, k, l, m)) throw std::invalid_argument("expected_count: (k,l,m) outside D_n");
  const double lq = std::log1p(-p);
  const double kd = static_cast<double>(k), ld = static_cast<double>(l), md = static_cast<double>(m);
  double lnmult = ln_falling_factorial(n, k + l + m) - std::lgamma(kd + 1) - std::lgamma(ld + 1) -
                  std::lgamma(md + 1);
  double outside = static_cast<double>(n - k - l - m);
  double dom = outside * (ln_one_minus_qpow(lq, kd) + ln_one_minus_qpow(lq, ld) +
                          ln_one_minus_qpow(lq, md));
  double logmag = lnmult + std::log(kd) + std::log(ld) + std::log(md) +
                  (kd * ld + kd * md + ld * md - 3.0) * lq + 3.0 * std::log(p) + dom;
  return LogReal::from_log(logmag);
}

namespace {

void require_positive_coords(double k, double l, double m) {
  if (!(k > 0 && l > 0 && m > 0)) throw std::invalid_argument("coordinates must be positive");
}

}  // namespace

double f_value(std::int64_t n, double p, double k, double l, double m) {
  require_p(p);
  require_positive_coords(k, l, m);
  const double lq = std::log1p(-p);
  const double nd = static_cast<double>(n);
  return k * std::log(nd / k) + l * std::log(nd / l) + m * std::log(nd / m) +
         std::log(k * l * m) + k + l + m -
         nd * (std::exp(k * lq) + std::exp(l * lq) + std::exp(m * lq)) +
         (k * l + k * m + l * m - 3.0) * lq + 3.0 * std::log(p);
}

double g_value(std::int64_t n, double p, double k, double l, double m) {
  require_p(p);
  require_positive_coords(k, l, m);
  (void)n;
  const double lq = std::log1p(-p);
  return (k + l + m) * (std::exp(k * lq) + std::exp(l * lq) + std::exp(m * lq));
}

std::array<double, 3> grad_f(std::int64_t n, double p, double k, double l, double m) {
  require_p(p);
  require_positive_coords(k, l, m);
  const double lq = std::log1p(-p);
  const double nd = static_cast<double>(n);
  auto partial = [&](double a, double b, double c) {
    return std::log(nd / a) + (b + c) * lq + 1.0 / a - nd * std::exp(a * lq) * lq + 1.0;
  };
  return {partial(k, l, m), partial(l, k, m), partial(m, k, l)};
}

HessianReport hessian_f(std::int64_t n, double p, double k, double l, double m) {
  require_p(p);
  require_positive_coords(k, l, m);
  const double lq = std::log1p(-p);
  const double nd = static_cast<double>(n);
  auto diag = [&](double a) { return -1.0 / a - 1.0 / (a * a) - nd * std::exp(a * lq) * lq * lq; };
  HessianReport rep;
  rep.matrix = {{{diag(k), lq, lq}, {lq, diag(l), lq}, {lq, lq, diag(m)}}};
  const auto& h = rep.matrix;
  rep.leading_minors[0] = h[0][0];
  rep.leading_minors[1] = h[0][0] * h[1][1] - h[0][1] * h[1][0];
  rep.leading_minors[2] = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                          h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                          h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
  rep.negative_definite =
      rep.leading_minors[0] < 0 && rep.leading_minors[1] > 0 && rep.leading_minors[2] < 0;
  return rep;
}

double k_star_residual(std::int64_t n, double p, double k) {
  const double lq = std::log1p(-p);
  const double nd = static_cast<double>(n);
  return std::log(nd / k) + 2.0 * k * lq + 1.0 / k - nd * std::exp(k * lq) * lq + 1.0;
}

double k_star_exact(std::int64_t n, double p) {
  require_p(p);
  if (n < 3) throw std::invalid_argument("k_star_exact: n must be >= 3");
  const double lq = std::log1p(-p);
  const double nd = static_cast<double>(n);
  auto F = [&](double k) { return k_star_residual(n, p, k); };
  double lo = 1.0, hi = nd;
  if (!(F(lo) > 0 && F(hi) < 0)) {
    // scan a geometric grid for a sign change before giving up
    bool found = false;
    double prev = 1.0 / nd, fprev = F(prev);
    for (int s = 1; s <= 256 && !found; ++s) {
      double x = prev * std::pow(nd * nd, 1.0 / 256);
      double fx = F(x);
      if (fprev > 0 && fx < 0) {
        lo = prev;
        hi = x;
        found = true;
      }
      prev = x;
      fprev = fx;
    }
    if (!found) throw NumericError("k_star_exact: no sign change bracketed on [1/n, n]");
  }
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (F(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  double k = 0.5 * (lo + hi);
  // F'(k) along the diagonal
  auto dF = [&](double x) {
    return -1.0 / x - 1.0 / (x * x) - nd * std::exp(x * lq) * lq * lq + 2.0 * lq;
  };
  for (int it = 0; it < 5; ++it) {
    double step = F(k) / dF(k);
    double next = k - step;
    if (next <= lo - 1e-6 || next >= hi + 1e-6 || !std::isfinite(next)) break;
    k = next;
  }
  if (std::fabs(F(k)) > 1e-10) throw NumericError("k_star_exact: residual exceeds 1e-10");
  return k;
}

double k_star_asymptotic(std::int64_t n, double p) {
  require_p(p);
  const double lnn = std::log(static_cast<double>(n));
  if (lnn <= 1.0) throw std::invalid_argument("k_star_asymptotic: requires n > e");
  const double L = -std::log1p(-p);
  return (lnn - std::log(lnn) + std::log(L)) / L;
}

double f_at_optimum(std::int64_t n, double p) {
  double ks = k_star_exact(n, p);
  return f_value(n, p, ks, ks, ks);
}

double lemma1_rhs(std::int64_t n, double p, double k, double l, double m) {
  require_p(p);
  require_positive_coords(k, l, m);
  double ks = k_star_exact(n, p);
  double dk = k - ks, dl = l - ks, dm = m - ks;
  if (std::min({std::fabs(dk), std::fabs(dl), std::fabs(dm)}) < 0.5)
    throw std::invalid_argument("lemma1_rhs: every coordinate must deviate from k* by >= 1/2");
  const double L = -std::log1p(-p);
  return -(L / 2.0) * std::log(static_cast<double>(n)) * (dk * dk + dl * dl + dm * dm);
}

double gamma_fn(double x) {
  if (std::fabs(x) < 1e-4) {
    return 0.5 * x * x * (1.0 - x / 3.0 + x * x / 12.0 - x * x * x / 60.0);
  }
  return x + std::expm1(-x);
}

namespace {

using boost::multiprecision::cpp_int;

// p as an exact dyadic rational mant / 2^shift.
void decompose_probability(double p, cpp_int& mant, int& shift) {
  int ex = 0;
  double fr = std::frexp(p, &ex);          // p = fr * 2^ex, fr in [0.5, 1)
  auto m = static_cast<std::uint64_t>(std::ldexp(fr, 53));  // exact 53-bit integer
  shift = 53 - ex;
  mant = m;
}

std::uint64_t checked_to_u64(const cpp_int& v, const char* what) {
  if (v > cpp_int(std::numeric_limits<std::uint64_t>::max()))
    throw InfeasibleError(std::string(what) + ": value exceeds the 64-bit range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t seq_large(double p, int i) {
  require_p(p);
  if (i < 1) throw std::invalid_argument("seq_large: i must be >= 1");
  cpp_int pm;
  int s = 0;
  decompose_probability(p, pm, s);
  cpp_int qnum = (cpp_int(1) << s) - pm;  // 1-p = qnum / 2^s exactly
  // (1/(1-p))^i * i = i * 2^{s i} / qnum^i; floor by integer division
  cpp_int num = cpp_int(i) << (static_cast<unsigned>(s) * static_cast<unsigned>(i));
  cpp_int den = pow(qnum, static_cast<unsigned>(i));
  return checked_to_u64(num / den, "seq_large");
}

std::uint64_t seq_small(double p, int i) {
  require_p(p);
  if (i < 1) throw std::invalid_argument("seq_small: i must be >= 1");
  cpp_int pm;
  int s = 0;
  decompose_probability(p, pm, s);
  cpp_int qnum = (cpp_int(1) << s) - pm;
  // value^2 = i^2 * 2^{s(2i+1)} / qnum^{2i+1}; floor(value) = isqrt(floor(value^2))
  unsigned e = static_cast<unsigned>(2 * i + 1);
  cpp_int num2 = cpp_int(i) * i;
  num2 <<= static_cast<unsigned>(s) * e;
  cpp_int den2 = pow(qnum, e);
  cpp_int floor_sq = num2 / den2;
  cpp_int fl = sqrt(floor_sq);
  return checked_to_u64(fl, "seq_small");
}

FirstMomentResult first_moment_sum(std::int64_t n, double p) {
  require_p(p);
  if (n < 3) throw std::invalid_argument("first_moment_sum: n must be >= 3");
  double ks = k_star_exact(n, p);
  std::int64_t K = std::max<std::int64_t>(3, static_cast<std::int64_t>(std::ceil(4.0 * ks)));
  const double cutoff = std::log(1e-25);
  for (;;) {
    std::int64_t cap = std::min<std::int64_t>(K, n - 2);
    bool covered = cap >= n - 2;
    double capd = static_cast<double>(cap);
    if (capd * capd * capd > 5e7)
      throw NumericError("first_moment_sum: window grew past 5e7 lattice points without converging");

    std::vector<std::vector<double>> slices(static_cast<std::size_t>(cap));
    std::vector<double> slice_boundary_max(static_cast<std::size_t>(cap),
                                           -std::numeric_limits<double>::infinity());
    parallel_chunks(static_cast<std::uint64_t>(cap), static_cast<std::uint64_t>(cap),
                    [&](std::uint64_t c, std::uint64_t, std::uint64_t) {
                      std::int64_t k = static_cast<std::int64_t>(c) + 1;
                      auto& out = slices[c];
                      double bmax = -std::numeric_limits<double>::infinity();
                      for (std::int64_t l = 1; l <= cap && k + l + 1 <= n; ++l)
                        for (std::int64_t m = 1; m <= cap && k + l + m <= n; ++m) {
                          double lg = expected_count(n, p, k, l, m).logmag;
                          out.push_back(lg);
                          if (std::max({k, l, m}) == cap && lg > bmax) bmax = lg;
                        }
                      slice_boundary_max[c] = bmax;
                    });

    double boundary_max = -std::numeric_limits<double>::infinity();
    std::uint64_t count = 0;
    for (std::size_t c = 0; c < slices.size(); ++c) {
      boundary_max = std::max(boundary_max, slice_boundary_max[c]);
      count += slices[c].size();
    }
    if (covered || boundary_max < cutoff) {
      std::vector<double> terms;
      terms.reserve(count);
      for (auto& s : slices) terms.insert(terms.end(), s.begin(), s.end());
      // fixed summation order: magnitude descending; stable sort keeps the
      // lattice generation order on ties, so the result is thread-invariant
      std::stable_sort(terms.begin(), terms.end(), std::greater<double>());
      double acc = terms.empty() ? -std::numeric_limits<double>::infinity() : terms[0];
      for (std::size_t idx = 1; idx < terms.size(); ++idx)
        acc += std::log1p(std::exp(terms[idx] - acc));
      FirstMomentResult res;
      res.sum = terms.empty() ? LogReal::zero() : LogReal::from_log(acc);
      res.window = cap;
      res.covered_domain = covered;
      res.terms = count;
      return res;
    }
    K *= 2;
  }
}

double diag_expectation_asymptotic(double p, std::int64_t k) {
  require_p(p);
  if (k < 1) throw std::invalid_argument("diag_expectation_asymptotic: k must be >= 1");
  double kd = static_cast<double>(k);
  return std::pow(p / (1.0 - p), 3) * kd * std::sqrt(kd) / std::pow(kTwoPi, 1.5);
}

int r0_of(double p) {
  require_p(p);
  const double L = -std::log1p(-p);
  return static_cast<int>(std::ceil(16.0 / L));
}

LogReal lemma2_bound(double p, std::int64_t k, std::int64_t r) {
  require_p(p);
  if (k < 1 || r < 0 || r > 3 * k) throw std::invalid_argument("lemma2_bound: need 0 <= r <= 3k");
  const double lq = std::log1p(-p);
  double kd = static_cast<double>(k), rd = static_cast<double>(r);
  return LogReal::from_log((3.0 * kd * kd - rd * rd / 3.0 - 3.0) * lq);
}

LogReal lemma3_bound(double p, std::int64_t k, std::int64_t r, int r0, bool hypothesis_met) {
  require_p(p);
  if (!(r0 >= 1) || !(static_cast<double>(r0) < static_cast<double>(k) / 30.0))
    throw std::invalid_argument("lemma3_bound: requires 1 <= r0 < k/30");
  if (!hypothesis_met)
    throw std::invalid_argument("lemma3_bound: overlap pattern does not satisfy the hypothesis");
  const double lq = std::log1p(-p);
  return lemma2_bound(p, k, r) * LogReal::from_log(4.0 * static_cast<double>(k) * r0 * lq);
}

double lemma4_vertex_bound(double p, std::int64_t k) {
  require_p(p);
  if (k < 1) throw std::invalid_argument("lemma4_vertex_bound: k must be >= 1");
  const double lq = std::log1p(-p);
  double qk = std::exp(static_cast<double>(k) * lq);
  return 1.0 - 6.0 * qk + 36.0 * qk * qk;
}

double joint_domination_probability(const OverlapPattern& pat, double p, std::int64_t k) {
  require_p(p);
  if (k < 1) throw std::invalid_argument("joint_domination_probability: k must be >= 1");
  // validate against k and collect atom sizes with their membership masks;
  // bits 0..2 = X1..X3, bits 3..5 = Y1..Y3
  std::array<int, 15> size{};
  std::array<unsigned, 15> member{};
  int idx = 0, r = 0;
  for (int i = 0; i < 3; ++i) {
    int row = 0;
    for (int j = 0; j < 3; ++j) {
      int c = pat.cell[i][j];
      if (c < 0) throw std::invalid_argument("joint_domination_probability: negative cell");
      row += c;
      size[idx] = c;
      member[idx] = (1u << j) | (1u << (3 + i));
      ++idx;
    }
    if (row > k) throw std::invalid_argument("joint_domination_probability: row sum exceeds k");
    size[idx] = static_cast<int>(k) - row;  // Y_i only
    member[idx] = 1u << (3 + i);
    ++idx;
    r += row;
  }
  for (int j = 0; j < 3; ++j) {
    int col = 0;
    for (int i = 0; i < 3; ++i) col += pat.cell[i][j];
    if (col > k) throw std::invalid_argument("joint_domination_probability: column sum exceeds k");
    size[idx] = static_cast<int>(k) - col;  // X_j only
    member[idx] = 1u << j;
    ++idx;
  }
  if (r > r0_of(p))
    throw std::invalid_argument("joint_domination_probability: pattern has r > r0(p)");

  const double lq = std::log1p(-p);
  double sum = 0, comp = 0;
  for (unsigned T = 0; T < 64; ++T) {
    std::int64_t uncovered = 0;
    for (int a = 0; a < 15; ++a)
      if (member[a] & T) uncovered += size[a];
    double term = std::exp(static_cast<double>(uncovered) * lq);
    if (__builtin_popcount(T) & 1) term = -term;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double paley_zygmund(double ex, double ex2, double lambda) {
  if (!(ex >= 0)) throw std::invalid_argument("paley_zygmund: E X must be nonnegative");
  if (!(ex2 > 0)) throw std::invalid_argument("paley_zygmund: E X^2 must be positive");
  if (ex2 < ex * ex) throw std::invalid_argument("paley_zygmund: impossible moments (E X^2 < (E X)^2)");
  if (!(lambda >= 0 && lambda < 1)) throw std::invalid_argument("paley_zygmund: lambda must lie in [0,1)");
  return (1.0 - lambda) * (1.0 - lambda) * ex * ex / ex2;
}

LogReal s1_term_bound(double p, std::int64_t k, std::int64_t r) {
  require_p(p);
  int r0 = r0_of(p);
  if (!(k >= 1) || r < r0 || r > 3 * k - r0)
    throw std::invalid_argument("s1_term_bound: requires r0 <= r <= 3k - r0");
  const double lq = std::log1p(-p);
  double kd = static_cast<double>(k), rd = static_cast<double>(r);
  double inner = (rd - 6.0 / kd - rd * rd / (3.0 * kd)) * lq + 15.0;
  return LogReal::from_log(kd * inner);
}

LogReal s2_envelope(double p, std::int64_t k) {
  require_p(p);
  if (k < 1) throw std::invalid_argument("s2_envelope: k must be >= 1");
  return LogReal::from_log(3.0 * std::log(static_cast<double>(k)));
}

S3Exponents s3_exponents(double p, std::int64_t k, std::int64_t r, int r0) {
  require_p(p);
  if (r < 3 * k - r0 || r > 3 * k)
    throw std::invalid_argument("s3_exponents: requires 3k - r0 <= r <= 3k");
  const double lq = std::log1p(-p);
  double kd = static_cast<double>(k), rd = static_cast<double>(r);
  S3Exponents out;
  out.pair_exponent_lower = 2.0 * rd * (3.0 * kd - rd) / 3.0;
  // n along the diagonal sequence; only ln n enters, so fall back to the
  // logarithmic form when the certified integer no longer fits 64 bits
  // (the floor shifts ln n by far less than one ulp at that size).
  double log_n;
  try {
    log_n = std::log(static_cast<double>(seq_large(p, static_cast<int>(k))));
  } catch (const InfeasibleError&) {
    log_n = -kd * lq + std::log(kd);
  }
  double log_base = std::log(3.0) + log_n + std::log(kd) + (2.0 * rd / 3.0) * lq;
  out.count_factor = LogReal::from_log((3.0 * kd - rd) * log_base);
  return out;
}

}  // namespace emso
