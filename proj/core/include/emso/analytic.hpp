#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "emso/logreal.hpp"
#include "emso/witness.hpp"

namespace emso {

// Hessian of f at a point, with the Sylvester data used to classify it.
struct HessianReport {
  std::array<std::array<double, 3>, 3> matrix{};
  std::array<double, 3> leading_minors{};
  bool negative_definite = false;  // minors signed (-, +, -)
};

struct FirstMomentResult {
  LogReal sum;
  std::int64_t window = 0;      // final box edge K
  bool covered_domain = false;  // box reached all of D_n: the sum is exact
  std::uint64_t terms = 0;
};

struct S3Exponents {
  double pair_exponent_lower = 0;  // 2r(3k-r)/3
  LogReal count_factor;            // (3 n k (1-p)^{2r/3})^{3k-r} with n along the diagonal sequence
};

// E X(k,l,m): multinomial(n;k,l,m) klm (1-p)^{kl+lm+km-3} p^3
//             [(1-(1-p)^k)(1-(1-p)^l)(1-(1-p)^m)]^{n-k-l-m}
LogReal expected_count(std::int64_t n, double p, std::int64_t k, std::int64_t l, std::int64_t m);

double f_value(std::int64_t n, double p, double k, double l, double m);
double g_value(std::int64_t n, double p, double k, double l, double m);
std::array<double, 3> grad_f(std::int64_t n, double p, double k, double l, double m);
HessianReport hessian_f(std::int64_t n, double p, double k, double l, double m);

// Unique root of ln(n/k) + 2k ln(1-p) + 1/k - n(1-p)^k ln(1-p) + 1 = 0,
// bracketed bisection then Newton polish; |residual| <= 1e-10 or NumericError.
double k_star_exact(std::int64_t n, double p);
double k_star_residual(std::int64_t n, double p, double k);  // the equation's LHS
double k_star_asymptotic(std::int64_t n, double p);

double f_at_optimum(std::int64_t n, double p);

// -(ln(1/(1-p))/2) ln n [(k-k*)^2+(l-k*)^2+(m-k*)^2]; requires every
// coordinate to deviate from k* by at least 1/2.
double lemma1_rhs(std::int64_t n, double p, double k, double l, double m);

double gamma_fn(double x);  // x + e^{-x} - 1, series near 0

// floor((1/(1-p))^{i+1/2} i) and floor((1/(1-p))^i i), floors certified by
// exact rational arithmetic on the binary value of p.
std::uint64_t seq_small(double p, int i);
std::uint64_t seq_large(double p, int i);

// Sum of E X over integer (k,l,m) in D_n by windowed log-sum-exp: box edge
// doubles from ceil(4 k*) until the boundary shell's largest term is below
// 1e-25 or the box covers D_n.
FirstMomentResult first_moment_sum(std::int64_t n, double p);

double diag_expectation_asymptotic(double p, std::int64_t k);  // (p/(1-p))^3 k^{3/2} (2pi)^{-3/2}

int r0_of(double p);  // ceil(16 / ln(1/(1-p)))

LogReal lemma2_bound(double p, std::int64_t k, std::int64_t r);  // (1-p)^{3k^2 - r^2/3 - 3}

// (1-p)^{3k^2 - r^2/3 - 3 + 4 k r0}; callers must have checked the pattern
// hypothesis (see lemma3_hypothesis) and pass the verdict here.
LogReal lemma3_bound(double p, std::int64_t k, std::int64_t r, int r0, bool hypothesis_met);

double lemma4_vertex_bound(double p, std::int64_t k);  // 1 - 6(1-p)^k + 36(1-p)^{2k}

// Exact probability that one outside vertex has a neighbor in each of the six
// sets of two overlapping k-tuples, by inclusion-exclusion over the pattern's
// atoms. Patterns with r > r0(p) are rejected.
double joint_domination_probability(const OverlapPattern& pat, double p, std::int64_t k);

double paley_zygmund(double ex, double ex2, double lambda);

LogReal s1_term_bound(double p, std::int64_t k, std::int64_t r);  // ((1-p)^{r-6/k-r^2/(3k)} e^15)^k
LogReal s2_envelope(double p, std::int64_t k);                    // k^3 growth envelope
S3Exponents s3_exponents(double p, std::int64_t k, std::int64_t r, int r0);

bool in_domain(std::int64_t n, std::int64_t k, std::int64_t l, std::int64_t m);

}  // namespace emso
