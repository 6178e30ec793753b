#include "mvop/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace mvop {

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

// Taylor coefficients of 1/Gamma(1+x) about x = 0.
constexpr std::array<Real, 31> kRecipGamma1p = {
    1.0L,
    0.577215664901532860606512L,
    -0.65587807152025388107702L,
    -0.0420026350340952355290039L,
    0.166538611382291489501701L,
    -0.0421977345555443367482083L,
    -0.00962197152787697356211492L,
    0.00721894324666309954239501L,
    -0.00116516759185906511211397L,
    -0.00021524167411495097281573L,
    0.000128050282388116186153199L,
    -0.0000201348547807882386556894L,
    -0.00000125049348214267065734536L,
    0.00000113302723198169588237413L,
    -0.000000205633841697760710345015L,
    6.1160951044814158178625e-9L,
    5.00200764446922293005567e-9L,
    -1.18127457048702014458813e-9L,
    1.04342671169110051049154e-10L,
    7.78226343990507125404994e-12L,
    -3.69680561864220570818782e-12L,
    5.10037028745447597901548e-13L,
    -2.05832605356650678322243e-14L,
    -5.34812253942301798237002e-15L,
    1.22677862823826079015889e-15L,
    -1.18125930169745876951376e-16L,
    1.18669225475160033257978e-18L,
    1.4123806553180317815558e-18L,
    -2.29874568443537020659248e-19L,
    1.71440632192733743338396e-20L,
    1.33735173049369311486478e-22L,
};

struct TemmeGammas {
  Real gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  Real gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  Real gampl;  // 1/Gamma(1+mu)
  Real gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(Real mu) {
  // Even/odd split of the Taylor series avoids the cancellation in gam1.
  Real even = 0, odd = 0;
  Real mu2 = mu * mu;
  Real pe = 1, po = 1;
  for (std::size_t k = 0; k < kRecipGamma1p.size(); ++k) {
    if (k % 2 == 0) {
      even += kRecipGamma1p[k] * pe;
      pe *= mu2;
    } else {
      odd += kRecipGamma1p[k] * po;
      po *= mu2;
    }
  }
  // 1/Gamma(1+mu) = even + mu*odd, 1/Gamma(1-mu) = even - mu*odd
  return {-odd, even, even + mu * odd, even - mu * odd};
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2.
std::pair<Real, Real> bessel_k_fractional(Real mu, Real x) {
  constexpr int kMaxIter = 100000;
  if (x <= 2.0L) {
    const Real x2 = 0.5L * x;
    const Real pimu = kPi * mu;
    const Real fact = std::abs(pimu) < kEps ? 1.0L : pimu / std::sin(pimu);
    Real d = -std::log(x2);
    Real e = mu * d;
    const Real fact2 = std::abs(e) < kEps ? 1.0L : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    Real ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    Real sum = ff;
    e = std::exp(e);
    Real p = 0.5L * e / g.gampl;
    Real q = 0.5L / (e * g.gammi);
    Real c = 1.0L;
    d = x2 * x2;
    Real sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
      const Real fi = i;
      ff = (fi * ff + p + q) / (fi * fi - mu * mu);
      c *= d / fi;
      p /= fi - mu;
      q /= fi + mu;
      const Real del = c * ff;
      sum += del;
      const Real del1 = c * (p - fi * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return {sum, sum1 * (2.0L / x)};
  }
  // Steed's method for the continued fraction CF2.
  Real b = 2.0L * (1.0L + x);
  Real d = 1.0L / b;
  Real h = d, delh = d;
  Real q1 = 0.0L, q2 = 1.0L;
  const Real a1 = 0.25L - mu * mu;
  Real q = a1, c = a1;
  Real a = -a1;
  Real s = 1.0L + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0L * (i - 1);
    c = -a * c / i;
    const Real qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0L;
    d = 1.0L / (b + a * d);
    delh = (b * d - 1.0L) * delh;
    h += delh;
    const Real dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const Real kmu = std::sqrt(kPi / (2.0L * x)) * std::exp(-x) / s;
  const Real kmu1 = kmu * (mu + x + 0.5L - h) / x;
  return {kmu, kmu1};
}

}  // namespace

Real bessel_k(Real nu, Real z) {
  if (!std::isfinite(nu) || !std::isfinite(z)) throw InvalidArgument("bessel_k: non-finite argument");
  if (!(z > 0)) throw InvalidArgument("bessel_k: z must be positive");
  nu = std::abs(nu);
  const int steps = static_cast<int>(std::floor(nu + 0.5L));
  const Real mu = nu - steps;
  auto [kmu, kmu1] = bessel_k_fractional(mu, z);
  const Real two_over_z = 2.0L / z;
  for (int i = 1; i <= steps; ++i) {
    const Real next = (mu + i) * two_over_z * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = next;
  }
  return kmu;
}

Real scalar_moment(Real sigma, Real s) {
  if (!std::isfinite(sigma) || !std::isfinite(s)) throw InvalidArgument("scalar_moment: non-finite argument");
  if (!(sigma > 0)) throw InvalidArgument("scalar_moment: sigma must be positive");
  if (s < 0) throw InvalidArgument("scalar_moment: s must be non-negative");
  if (s == 0) return std::tgamma(sigma);
  const Real root = std::sqrt(s);
  // Combine the power and K in log space only when K itself would overflow.
  const Real k = bessel_k(sigma, 2.0L * root);
  if (std::isfinite(k) && k > 0) return 2.0L * std::pow(root, sigma) * k;
  throw InvalidArgument("scalar_moment: K_sigma overflow at sigma=" + std::to_string(static_cast<double>(sigma)));
}

Real pochhammer(Real a, int k) {
  if (k < 0) throw InvalidArgument("pochhammer: negative count");
  Real r = 1.0L;
  for (int i = 0; i < k; ++i) r *= a + i;
  return r;
}

std::vector<Real> monic_laguerre(int n, Real a) {
  if (n < 0) throw InvalidArgument("monic_laguerre: negative degree");
  // coefficient of x^k: (-1)^{n-k} C(n,k) (k+a+1)_{n-k}
  std::vector<Real> c(static_cast<std::size_t>(n) + 1);
  Real binom = 1.0L;  // C(n,k), built upward from k = 0
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    const Real sign = ((n - k) % 2 == 0) ? 1.0L : -1.0L;
    c[static_cast<std::size_t>(k)] = sign * binom * pochhammer(k + a + 1.0L, n - k);
  }
  c.back() = 1.0L;
  return c;
}

Real laguerre_overlap(int n, int m, Real a1, Real a2, Real sigma) {
  if (n < 0 || m < 0) throw InvalidArgument("laguerre_overlap: negative degree");
  if (!(sigma > 0)) throw InvalidArgument("laguerre_overlap: sigma must be positive");
  if (!(a1 > -1) || !(a2 > -1)) throw InvalidArgument("laguerre_overlap: parameters must exceed -1");
  Real total = 0.0L;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      const Real num = pochhammer(sigma, i + j) * pochhammer(-n, i) * pochhammer(-m, j);
      const Real den = pochhammer(a1 + 1.0L, i) * pochhammer(a2 + 1.0L, j) * std::tgamma(i + 1.0L) *
                       std::tgamma(j + 1.0L);
      total += num / den;
    }
  }
  const Real sign = ((n + m) % 2 == 0) ? 1.0L : -1.0L;
  return sign * std::tgamma(sigma) * pochhammer(a1 + 1.0L, n) * pochhammer(a2 + 1.0L, m) * total;
}

}  // namespace mvop
